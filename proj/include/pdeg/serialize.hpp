// Input parsing and output rendering: exact-rational curve specs, prime
// ranges, and JSON/CSV/text forms of the result types.
#ifndef PDEG_SERIALIZE_HPP
#define PDEG_SERIALIZE_HPP

#include "engine.hpp"

#include <json.hpp>

#include <sstream>
#include <string>
#include <utility>

namespace pdeg {

using Json = nlohmann::ordered_json;

inline std::string rat_str(const Rat& r) {
    std::string s = rat_num(r).str();
    if (rat_den(r) != 1) s += "/" + rat_den(r).str();
    return s;
}

// "n" or "n/d" with optional sign; no floating point accepted
inline Rat parse_rat(const std::string& s) {
    auto bad = [&] { throw std::invalid_argument("not an integer or fraction: '" + s + "'"); };
    std::string num = s, den = "1";
    if (auto slash = s.find('/'); slash != std::string::npos) {
        num = s.substr(0, slash);
        den = s.substr(slash + 1);
    }
    auto check = [&](const std::string& part, bool sign_ok) {
        if (part.empty()) bad();
        size_t i = (sign_ok && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
        if (i == part.size()) bad();
        for (; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i]))) bad();
    };
    check(num, true);
    check(den, false);
    // the big-integer parser accepts digits and '-' only
    if (num[0] == '+') num.erase(0, 1);
    if (Int(den) == 0) bad();
    return Rat(Int(num), Int(den));
}

inline CurveQ parse_curve(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("curve spec must be 'A,B', got '" + s + "'");
    return CurveQ(parse_rat(s.substr(0, comma)), parse_rat(s.substr(comma + 1)));
}

// "LO..HI", inclusive bounds
inline std::pair<Int, Int> parse_prime_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos)
        throw std::invalid_argument("prime range must be 'LO..HI', got '" + s + "'");
    Rat lo = parse_rat(s.substr(0, dots)), hi = parse_rat(s.substr(dots + 2));
    if (rat_den(lo) != 1 || rat_den(hi) != 1)
        throw std::invalid_argument("prime range bounds must be integers");
    return {rat_num(lo), rat_num(hi)};
}

inline Json to_json(const DpValue& v) {
    Json j;
    j["kind"] = v.kind;
    if (v.kind == "exact" || v.kind == "lower") j["n"] = v.n;
    if (v.kind == "interval") {
        j["lo"] = v.lo;
        j["hi"] = v.hi;
    }
    return j;
}

inline Json to_json(const DpResult& r) {
    Json j;
    j["curve"] = r.curve;
    j["p"] = r.p.convert_to<long long>();
    j["class"] = r.klass;
    j["value"] = to_json(r.value);
    j["provenance"] = r.provenance;
    if (r.a_p) j["a_p"] = r.a_p->convert_to<long long>();
    if (r.ord_a_p) j["ord_a_p"] = *r.ord_a_p;
    if (r.canonical) j["canonical"] = *r.canonical;
    if (r.bruteforce) {
        Json b;
        b["lo"] = r.bruteforce->lo;
        b["hi"] = r.bruteforce->hi;
        b["candidates"] = r.bruteforce->candidates;
        j["bruteforce"] = b;
    }
    return j;
}

inline std::string csv_header() { return "p,class,value_kind,value,a_p,ord_a_p,canonical"; }

inline std::string csv_row(const DpResult& r) {
    std::ostringstream os;
    os << r.p << "," << r.klass << "," << r.value.kind << ",";
    if (r.value.kind == "exact" || r.value.kind == "lower") os << r.value.n;
    if (r.value.kind == "interval") os << r.value.lo << ".." << r.value.hi;
    os << ",";
    if (r.a_p) os << *r.a_p;
    os << ",";
    if (r.ord_a_p) os << *r.ord_a_p;
    os << ",";
    if (r.canonical) os << (*r.canonical ? "true" : "false");
    return os.str();
}

inline std::string text_block(const DpResult& r) {
    std::ostringstream os;
    os << "curve " << r.curve << "  p = " << r.p << "\n";
    os << "class: " << r.klass << "\n";
    if (r.a_p) {
        os << "a_p = " << *r.a_p;
        if (r.ord_a_p) os << ", ord_p(a_p) = " << *r.ord_a_p;
        if (r.canonical) os << ", canonical lift: " << (*r.canonical ? "yes" : "no");
        os << "\n";
    }
    if (r.value.kind == "exact")
        os << "d_p = " << r.value.n << "\n";
    else if (r.value.kind == "lower")
        os << "d_p >= " << r.value.n << "\n";
    else if (r.value.kind == "interval")
        os << "d_p in [" << r.value.lo << ", " << r.value.hi << "]\n";
    else
        os << "d_p: not computed\n";
    if (r.bruteforce) {
        os << "bruteforce: [" << r.bruteforce->lo << ", " << r.bruteforce->hi << "] candidates {";
        for (size_t i = 0; i < r.bruteforce->candidates.size(); ++i)
            os << (i ? ", " : "") << r.bruteforce->candidates[i];
        os << "}\n";
    }
    if (!r.provenance.empty()) {
        os << "provenance:";
        for (const auto& s : r.provenance) os << " " << s;
        os << "\n";
    }
    return os.str();
}

inline Json to_json(const QpFactor& f) {
    Json j;
    j["degree"] = f.degree;
    j["root_valuation"] = rat_str(f.slope);
    j["zero_root"] = f.zero_root;
    j["status"] = f.status;
    if (!f.reason.empty()) j["reason"] = f.reason;
    if (!f.parts.empty()) {
        Json parts = Json::array();
        for (const auto& [g, len] : f.parts) parts.push_back({g, len});
        j["parts"] = parts;
    }
    // truncated digit expansions, least significant first, explicit O(p^N) tail
    Json coeffs = Json::array();
    for (const auto& c : f.coefficients) coeffs.push_back(c.str());
    if (!f.coefficients.empty()) j["coefficients"] = coeffs;
    return j;
}

inline Json to_json(const FactorReport& r) {
    Json j;
    j["p"] = r.p.convert_to<long long>();
    j["degree"] = r.degree;
    j["precision"] = r.precision;
    Json fs = Json::array();
    for (const auto& f : r.factors) fs.push_back(to_json(f));
    j["factors"] = fs;
    return j;
}

inline std::string text_block(const FactorReport& r) {
    std::ostringstream os;
    os << "psi factorization over Q_" << r.p << ", degree " << r.degree << ", precision "
       << r.precision << " digits\n";
    for (const auto& f : r.factors) {
        os << "  degree " << f.degree << "  root valuation " << rat_str(f.slope) << "  "
           << f.status;
        if (f.zero_root) os << "  (root x = 0)";
        os << "\n";
        if (!f.reason.empty()) os << "    " << f.reason << "\n";
        if (!f.coefficients.empty()) {
            for (size_t i = 0; i < f.coefficients.size(); ++i)
                os << "    x^" << i << ": " << f.coefficients[i].str() << "\n";
        }
    }
    return os.str();
}

// large integers rendered as strings so no precision is lost in JSON readers
inline Json to_json(const RecurrenceRow& r) {
    Json j;
    j["k"] = r.k;
    j["a_k"] = r.a_k.str();
    j["a_k1"] = r.a_k1.str();
    j["p"] = r.p.str();
    j["is_prime"] = r.is_prime;
    j["proven"] = r.proven;
    if (r.is_prime) j["ord_p_2s"] = r.ord_p_2s.str();
    return j;
}

inline Json to_json(const SweepReport& r) {
    Json j;
    j["pairs"] = r.pairs;
    j["comparisons"] = r.comparisons;
    j["bruteforce_checks"] = r.bruteforce_checks;
    j["exact_values"] = r.exact_values;
    j["divides_p2_minus_1"] = r.divides_p2_minus_1;
    j["violations"] = r.violations;
    return j;
}

}  // namespace pdeg

#endif
