// Top-level p-degree computation: reduction types, the decision tree over the
// canonical-lift criterion, explicit CM formulas via Cornacchia decompositions,
// Tate-curve formulas for multiplicative reduction, the recurrence-sequence
// prime scan, and the consistency sweep harness.
#ifndef PDEG_ENGINE_HPP
#define PDEG_ENGINE_HPP

#include "lifts.hpp"
#include "padic_poly.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace pdeg {

enum class Reduction { good_ordinary, good_supersingular, multiplicative, additive };

// Reduction type at p of the p-minimal model.  Good iff p does not divide the
// minimal discriminant; among bad reductions, the cubic has a node (rather
// than a cusp) iff p does not divide A, since p | disc and p | A force p | B.
inline Reduction classify_reduction(const CurveQ& E_in, const Int& p) {
    if (p < 5 || !is_prime(p)) throw std::domain_error("classify_reduction: p must be a prime >= 5");
    CurveQ E = p_minimal_model(E_in, p);
    if (vp(E.discriminant(), p) == 0)
        return is_supersingular(E, p) ? Reduction::good_supersingular : Reduction::good_ordinary;
    if (E.A != 0 && vp(E.A, p) == 0) return Reduction::multiplicative;
    return Reduction::additive;
}

// Value of a p-degree computation.  "exact" and "lower" carry n; "interval"
// carries [lo, hi]; "none" marks unsupported (additive) inputs.
struct DpValue {
    std::string kind;
    long long n = 0;
    long long lo = 0, hi = 0;

    static DpValue exact(long long v) { return {"exact", v, v, v}; }
    static DpValue lower(long long v) { return {"lower", v, v, 0}; }
    static DpValue interval(long long lo, long long hi) { return {"interval", 0, lo, hi}; }
    static DpValue none() { return {"none", 0, 0, 0}; }
    bool operator==(const DpValue& o) const {
        return kind == o.kind && n == o.n && lo == o.lo && hi == o.hi;
    }
};

struct DpResult {
    std::string curve;  // input coefficients as "A,B"
    Int p = 0;
    std::string klass;
    DpValue value;
    std::vector<std::string> provenance;
    std::optional<Int> a_p;             // good reduction only
    std::optional<int> ord_a_p;         // ordinary only
    std::optional<bool> canonical;      // ordinary only
    std::optional<DpBound> bruteforce;  // attached when the division-polynomial oracle ran
};

inline std::string curve_str(const CurveQ& E) {
    auto one = [](const Rat& r) {
        std::string s = rat_num(r).str();
        if (rat_den(r) != 1) s += "/" + rat_den(r).str();
        return s;
    };
    return one(E.A) + "," + one(E.B);
}

// Multiplicative reduction: p-degree from the Tate parametrization.  When j
// is not a p-th power in Q_p the degree is p-1; otherwise it is 1 or 2
// according to whether gamma = -2A/B is a square in Q_p (split / nonsplit).
inline DpResult multiplicative_dp(const CurveQ& E_in, const Int& p) {
    CurveQ E = p_minimal_model(E_in, p);
    if (!(vp(E.discriminant(), p) > 0 && E.A != 0 && vp(E.A, p) == 0))
        throw std::domain_error("multiplicative_dp: curve does not have multiplicative reduction at p");
    if (E.B == 0)
        throw std::logic_error("multiplicative_dp: B = 0 has j = 1728, which is p-integral");
    DpResult r;
    r.curve = curve_str(E_in);
    r.p = p;
    r.provenance = {"tate-multiplicative"};
    if (!is_pth_power_qp(E.j_invariant(), p)) {
        r.klass = "multiplicative-j-not-pth-power";
        r.value = DpValue::exact(p.convert_to<long long>() - 1);
    } else if (is_square_qp(Rat(-2) * E.A / E.B, p)) {
        r.klass = "multiplicative-pth-power-split";
        r.value = DpValue::exact(1);
    } else {
        r.klass = "multiplicative-pth-power-nonsplit";
        r.value = DpValue::exact(2);
    }
    return r;
}

struct DpOptions {
    bool use_bruteforce = true;    // fuse lower bounds with the division-polynomial oracle
    int bruteforce_p_budget = 13;  // largest p for which psi_p is factored
    bool cross_check_canonical = false;
    uint64_t seed = 0;
    uint64_t p_limit = 1'000'000;
    Int enum_budget = Int(1'000'000'000);
};

// The decision tree.  Supersingular: exactly p^2 - 1.  Ordinary with the
// curve a canonical lift mod p^2: exactly ord of a_p in F_p*.  Ordinary
// otherwise: at least p - 1, upgraded to an exact value when the
// brute-force degree interval admits exactly one candidate >= p - 1.
// Multiplicative: Tate formulas.  Additive: unsupported.
inline DpResult dp(const CurveQ& E_in, const Int& p, const DpOptions& opt = {}) {
    if (p < 5 || !is_prime(p)) throw std::domain_error("dp: p must be a prime >= 5");
    CurveQ E = p_minimal_model(E_in, p);
    DpResult r;
    r.curve = curve_str(E_in);
    r.p = p;
    if (vp(E.discriminant(), p) > 0) {
        if (E.A != 0 && vp(E.A, p) == 0) {
            DpResult m = multiplicative_dp(E, p);
            m.curve = r.curve;
            return m;
        }
        r.klass = "additive-unsupported";
        r.value = DpValue::none();
        return r;
    }
    Int a = ap(E, p, opt.p_limit);
    r.a_p = a;
    if (a == 0) {
        r.klass = "supersingular";
        r.value = DpValue::exact((p * p - 1).convert_to<long long>());
        r.provenance = {"supersingular-formula"};
        return r;
    }
    int d = ord_mod_p(a, p).convert_to<int>();
    r.ord_a_p = d;
    CanonicalCheck chk = canonical_check(rat_mod(E.A, p * p), rat_mod(E.B, p * p), p,
                                         opt.cross_check_canonical, opt.seed, opt.enum_budget);
    r.canonical = chk.canonical;
    if (chk.canonical) {
        r.klass = "ordinary-canonical";
        r.value = DpValue::exact(d);
        r.provenance = {"canonical-trace-order"};
        return r;
    }
    r.klass = "ordinary-noncanonical";
    long long b = p.convert_to<long long>() - 1;
    r.value = DpValue::lower(b);
    r.provenance = {"noncanonical-lower-bound"};
    if (opt.use_bruteforce && p <= opt.bruteforce_p_budget) {
        DpBound bf = dp_bruteforce(E, p, opt.bruteforce_p_budget, opt.seed);
        r.bruteforce = bf;
        std::vector<int> ge;
        for (int c : bf.candidates)
            if (c >= b) ge.push_back(c);
        if (ge.size() == 1) {
            r.value = DpValue::exact(ge[0]);
            r.provenance.push_back("bruteforce-fusion");
        } else {
            r.provenance.push_back("bruteforce-unresolved");
        }
    }
    return r;
}

// p = s^2 + t^2 with s odd, s + t = 1 (mod 4), t >= 0.
struct CornacchiaST {
    Int s, t;
};

inline CornacchiaST cornacchia_st(const Int& p) {
    if (p < 5 || !is_prime(p) || p % 4 != 1)
        throw std::domain_error("cornacchia_st: p must be a prime with p = 1 (mod 4)");
    for (Int s = 1; s * s < p; s += 2) {
        Int t2 = p - s * s;
        Int t = boost::multiprecision::sqrt(t2);
        if (t * t != t2) continue;
        // t is even, so s + t and -s + t differ by 2 mod 4: exactly one sign works
        return {mod_floor(s + t, 4) == 1 ? s : Int(-s), t};
    }
    throw std::logic_error("cornacchia_st: no two-square representation found");
}

// 4p = A^2 + 3B^2 with A = 1 (mod 3), 3 | B, B > 0.
struct CornacchiaAB {
    Int A, B;
};

inline CornacchiaAB cornacchia_ab(const Int& p) {
    if (p < 5 || !is_prime(p) || p % 3 != 1)
        throw std::domain_error("cornacchia_ab: p must be a prime with p = 1 (mod 3)");
    Int fourp = 4 * p;
    for (Int B = 3; 3 * B * B < fourp; B += 3) {
        Int a2 = fourp - 3 * B * B;
        Int A = boost::multiprecision::sqrt(a2);
        if (A * A != a2) continue;
        // 3 cannot divide A (it would divide 4p), so exactly one sign is 1 mod 3
        return {A % 3 == 1 ? A : Int(-A), B};
    }
    throw std::logic_error("cornacchia_ab: no representation 4p = A^2 + 3B^2 with 3 | B found");
}

// y^2 = x^3 + Dx (CM by Z[i]): p-degree by closed formula.  For p = 1 (mod 4)
// the curve is the canonical lift of its reduction and the degree is the
// order of (-D)^((p-1)/4) * 2s mod p; for p = 3 (mod 4) it is supersingular.
inline DpResult dp_cm_x(const Rat& D, const Int& p) {
    if (D == 0) throw std::domain_error("dp_cm_x: D = 0 gives a singular curve");
    if (p < 5 || !is_prime(p)) throw std::domain_error("dp_cm_x: p must be a prime >= 5");
    if (vp(D, p) != 0) throw std::domain_error("dp_cm_x: p must not divide 6D");
    DpResult r;
    r.curve = curve_str(CurveQ(D, Rat(0)));
    r.p = p;
    if (p % 4 == 3) {
        r.klass = "supersingular";
        r.value = DpValue::exact((p * p - 1).convert_to<long long>());
        r.provenance = {"cm-quartic", "supersingular-formula"};
        return r;
    }
    CornacchiaST st = cornacchia_st(p);
    Int u = mod_floor(powmod(rat_mod(-D, p), (p - 1) / 4, p) * 2 * st.s, p);
    int d = ord_mod_p(u, p).convert_to<int>();
    r.klass = "ordinary-canonical";
    r.value = DpValue::exact(d);
    r.ord_a_p = d;
    r.canonical = true;
    r.provenance = {"cm-quartic"};
    return r;
}

// y^2 = x^3 + D (CM by Z[omega]): the degree is the order of
// -(4D)^((p-1)/6) * A mod p for p = 1 (mod 3), supersingular otherwise.
inline DpResult dp_cm_y(const Rat& D, const Int& p) {
    if (D == 0) throw std::domain_error("dp_cm_y: D = 0 gives a singular curve");
    if (p < 5 || !is_prime(p)) throw std::domain_error("dp_cm_y: p must be a prime >= 5");
    if (vp(D, p) != 0) throw std::domain_error("dp_cm_y: p must not divide 6D");
    DpResult r;
    r.curve = curve_str(CurveQ(Rat(0), D));
    r.p = p;
    if (p % 3 == 2) {
        r.klass = "supersingular";
        r.value = DpValue::exact((p * p - 1).convert_to<long long>());
        r.provenance = {"cm-sextic", "supersingular-formula"};
        return r;
    }
    CornacchiaAB ab = cornacchia_ab(p);
    Int u = mod_floor(-(powmod(rat_mod(Rat(4) * D, p), (p - 1) / 6, p) * ab.A), p);
    int d = ord_mod_p(u, p).convert_to<int>();
    r.klass = "ordinary-canonical";
    r.value = DpValue::exact(d);
    r.ord_a_p = d;
    r.canonical = true;
    r.provenance = {"cm-sextic"};
    return r;
}

// CM by the full ring of integers of Q(i) or Q(omega), declared by curve
// shape (B = 0 or A = 0).  Inert p: supersingular value.  Split p: the
// curve is the canonical lift, so the degree is the order of a_p, with a_p
// from point counting rather than the closed formula (the two routes are
// compared in tests).
inline DpResult dp_cm_maximal_order(const CurveQ& E_in, const Int& p) {
    if (p < 5 || !is_prime(p))
        throw std::domain_error("dp_cm_maximal_order: p must be a prime >= 5");
    CurveQ E = p_minimal_model(E_in, p);
    bool quartic = E.B == 0;
    if (!quartic && E.A != 0)
        throw std::domain_error(
            "dp_cm_maximal_order: curve must be declared CM, y^2 = x^3 + Dx or y^2 = x^3 + D");
    if (vp(E.discriminant(), p) != 0)
        throw std::domain_error("dp_cm_maximal_order: p divides the discriminant");
    DpResult r;
    r.curve = curve_str(E_in);
    r.p = p;
    bool inert = quartic ? p % 4 == 3 : p % 3 == 2;
    if (inert) {
        r.klass = "supersingular";
        r.value = DpValue::exact((p * p - 1).convert_to<long long>());
        r.provenance = {"cm-maximal-order", "supersingular-formula"};
        return r;
    }
    Int a = ap(E, p);
    if (a == 0) throw std::logic_error("dp_cm_maximal_order: split prime with a_p = 0");
    r.a_p = a;
    int d = ord_mod_p(a, p).convert_to<int>();
    r.klass = "ordinary-canonical";
    r.value = DpValue::exact(d);
    r.ord_a_p = d;
    r.canonical = true;
    r.provenance = {"cm-maximal-order"};
    return r;
}

// One term of the scan over a_0 = 0, a_1 = 1, a_{k+2} = 4a_{k+1} - a_k.
// p = a_k^2 + a_{k+1}^2; when p is prime, ord_p_2s is the multiplicative
// order of 2s mod p with s from the two-square decomposition.
struct RecurrenceRow {
    int k = 0;
    Int a_k, a_k1;
    Int p;
    bool is_prime = false;
    bool proven = true;  // false on the probabilistic primality path
    Int ord_p_2s = 0;    // 0 when p is not prime
};

inline std::vector<RecurrenceRow> recurrence_scan(int k_max, uint64_t seed = 0) {
    if (k_max < 0) throw std::domain_error("recurrence_scan: k_max must be >= 0");
    if (k_max > 256)
        throw std::domain_error("recurrence_scan: k_max " + std::to_string(k_max) +
                                " exceeds the term-size budget (terms grow like 3.73^k)");
    std::vector<RecurrenceRow> out;
    Int a = 0, b = 1;
    for (int k = 0; k <= k_max; ++k) {
        RecurrenceRow row;
        row.k = k;
        row.a_k = a;
        row.a_k1 = b;
        row.p = a * a + b * b;
        PrimalityResult pr = is_prime_ex(row.p, splitmix64(seed ^ (uint64_t(k) + 1)));
        row.is_prime = pr.is_prime;
        row.proven = pr.proven;
        if (pr.is_prime && row.p >= 5) {
            // consecutive terms alternate in parity, so the odd one is +-s and
            // the even one is t; the congruence s + t = 1 (mod 4) fixes the sign
            Int s0 = boost::multiprecision::bit_test(a, 0) ? a : b;
            Int t0 = boost::multiprecision::bit_test(a, 0) ? b : a;
            Int s = mod_floor(s0 + t0, 4) == 1 ? s0 : Int(-s0);
            if (row.p < 1'000'000'000) {
                CornacchiaST st = cornacchia_st(row.p);
                if (st.s != s || st.t != t0)
                    throw std::logic_error("recurrence_scan: direct decomposition disagrees");
            }
            row.ord_p_2s = ord_mod_p(mod_floor(2 * s, row.p), row.p);
        }
        out.push_back(row);
        Int c = 4 * b - a;
        a = b;
        b = c;
    }
    return out;
}

// Consistency sweep: for every good-reduction pair in range, the decision
// tree must give the same class and value on (u^4 A, u^6 B) rescalings by
// p-unit u and on p^2-perturbations of the coefficients, and the
// brute-force degree interval must contain the classified value.  Violations
// are reported, never silently dropped; the p^2 - 1 divisibility counter is
// observational only.
struct SweepReport {
    int pairs = 0;
    int comparisons = 0;
    int bruteforce_checks = 0;
    int exact_values = 0;
    int divides_p2_minus_1 = 0;
    std::vector<std::string> violations;
};

inline SweepReport dp_consistency_sweep(int coeff_bound, const Int& p_max, int perturbations = 50,
                                        uint64_t seed = 0, int bruteforce_p_budget = 7) {
    if (coeff_bound < 1 || p_max < 5) throw std::domain_error("dp_consistency_sweep: empty range");
    SweepReport rep;
    DpOptions tree_only;
    tree_only.use_bruteforce = false;
    auto key = [](const DpResult& r) {
        std::ostringstream os;
        os << r.klass << "|" << r.value.kind << "|" << r.value.n << "|" << r.value.lo << "|"
           << r.value.hi;
        return os.str();
    };
    auto note = [&](const CurveQ& E, const Int& p, const std::string& what, const std::string& got,
                    const std::string& want) {
        rep.violations.push_back("curve " + curve_str(E) + " p=" + p.str() + " " + what + ": " +
                                 got + " != " + want);
    };
    for (const Int& p : primes_in(5, p_max)) {
        for (int Ai = -coeff_bound; Ai <= coeff_bound; ++Ai) {
            for (int Bi = -coeff_bound; Bi <= coeff_bound; ++Bi) {
                if (4 * Ai * Ai * Ai + 27 * Bi * Bi == 0) continue;
                CurveQ E{Rat(Ai), Rat(Bi)};
                Reduction red = classify_reduction(E, p);
                if (red == Reduction::multiplicative || red == Reduction::additive) continue;
                DpResult base = dp(E, p, tree_only);
                rep.pairs++;
                if (base.value.kind == "exact") {
                    rep.exact_values++;
                    if ((p * p - 1) % Int(base.value.n) == 0) rep.divides_p2_minus_1++;
                }
                for (const Rat& u : {Rat(2), Rat(3), Rat(1, 2)}) {
                    if (vp(u, p) != 0) continue;
                    Rat u2 = u * u, u4 = u2 * u2;
                    CurveQ T{E.A * u4, E.B * u4 * u2};
                    DpResult t = dp(T, p, tree_only);
                    rep.comparisons++;
                    if (key(t) != key(base)) note(E, p, "unit rescaling", key(t), key(base));
                }
                uint64_t h = splitmix64(seed ^ (uint64_t(Ai + 512) << 32) ^
                                        (uint64_t(Bi + 512) << 16) ^ p.convert_to<uint64_t>());
                Rng rng(h);
                for (int i = 0; i < perturbations; ++i) {
                    Int da = Int(rng.next() % 19) - 9, db = Int(rng.next() % 19) - 9;
                    Rat A2 = E.A + Rat(da * p * p), B2 = E.B + Rat(db * p * p);
                    if (Rat(4) * A2 * A2 * A2 + Rat(27) * B2 * B2 == 0) continue;
                    DpResult t = dp(CurveQ{A2, B2}, p, tree_only);
                    rep.comparisons++;
                    if (key(t) != key(base)) note(E, p, "p^2 perturbation", key(t), key(base));
                }
                if (p <= bruteforce_p_budget) {
                    DpBound bf = dp_bruteforce(E, p, bruteforce_p_budget, seed);
                    rep.bruteforce_checks++;
                    if (base.value.kind == "exact") {
                        long long v = base.value.n;
                        bool in = bf.lo <= v && v <= bf.hi;
                        if (in && !bf.candidates.empty()) {
                            in = false;
                            for (int c : bf.candidates) in = in || c == v;
                        }
                        if (!in)
                            note(E, p, "bruteforce containment", "interval", std::to_string(v));
                    } else {
                        bool any = false;
                        for (int c : bf.candidates) any = any || c >= base.value.n;
                        if (!any)
                            note(E, p, "bruteforce vs lower bound", "max candidate",
                                 std::to_string(base.value.n));
                    }
                }
            }
        }
    }
    return rep;
}

}  // namespace pdeg

#endif
