#ifndef PDEG_LOCAL_ARITH_HPP
#define PDEG_LOCAL_ARITH_HPP

/* Arithmetic in the finite local rings GR(p^j, d) -- the unramified extension
 * of Z/p^j of residue degree d -- together with finite-precision elements of
 * Q_p.  GR(p^j, 1) = Z/p^j and GR(p, d) = F_{p^d}.
 *
 * Elements are coordinate vectors over Z/p^j with respect to the power basis
 * of a monic degree-d modulus whose reduction mod p is irreducible.  Every
 * nonzero element factors as p^v * unit; units are exactly the elements with
 * nonzero image in the residue field.
 */

#include "bigint.hpp"
#include "primes.hpp"
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <vector>

namespace pdeg {

struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace fpx {
// small helpers for monic polynomial arithmetic over F_p, coefficient vectors
// little-endian, entries canonical in [0, p)

inline void trim(std::vector<Int>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::vector<Int> mulmod(const std::vector<Int>& a, const std::vector<Int>& b,
                               const std::vector<Int>& f, const Int& p) {
    // f monic of degree d
    size_t d = f.size() - 1;
    std::vector<Int> c(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < b.size(); ++k) c[i + k] = (c[i + k] + a[i] * b[k]) % p;
    for (size_t i = c.size(); i-- > d;) {
        if (c[i] == 0) continue;
        Int t = c[i];
        c[i] = 0;
        for (size_t k = 0; k < d; ++k) c[i - d + k] = mod_floor(c[i - d + k] - t * f[k], p);
    }
    c.resize(d);
    return c;
}

inline std::vector<Int> gcd_fp(std::vector<Int> a, std::vector<Int> b, const Int& p) {
    trim(a); trim(b);
    while (!b.empty()) {
        // a mod b
        Int lead_inv = invmod(b.back(), p);
        while (a.size() >= b.size()) {
            Int t = a.back() * lead_inv % p;
            size_t off = a.size() - b.size();
            for (size_t k = 0; k < b.size(); ++k)
                a[off + k] = mod_floor(a[off + k] - t * b[k], p);
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

// h^e mod (f, p)
inline std::vector<Int> powmod(std::vector<Int> h, Int e, const std::vector<Int>& f, const Int& p) {
    std::vector<Int> acc{1};
    while (e > 0) {
        if (boost::multiprecision::bit_test(e, 0)) acc = mulmod(acc, h, f, p);
        h = mulmod(h, h, f, p);
        e >>= 1;
    }
    return acc;
}

inline bool is_irreducible(const std::vector<Int>& f, const Int& p) {
    // monic f of degree d is irreducible iff it has no factor of degree <= d/2,
    // i.e. gcd(x^(p^k) - x, f) = 1 for k = 1..d/2; reducible inputs usually
    // fail at small k, well before the full Frobenius power is reached
    size_t d = f.size() - 1;
    if (d == 0) return false;
    if (d == 1) return true;
    std::vector<Int> h{0, 1};
    for (size_t k = 1; 2 * k <= d; ++k) {
        h = powmod(h, p, f, p);
        auto g = h;
        if (g.size() < 2) g.resize(2, 0);
        g[1] = mod_floor(g[1] - 1, p);
        if (gcd_fp(g, f, p).size() != 1) return false;
    }
    return true;
}
} // namespace fpx

class LocalContext {
public:
    Int p;
    int d;
    int j;
    std::vector<Int> modulus;   // monic, degree d, coefficients mod p^j
    Int pj;                     // p^j

    LocalContext(const Int& p_, int d_, int j_,
                 std::optional<std::vector<Int>> modulus_poly = std::nullopt)
        : p(p_), d(d_), j(j_) {
        if (p < 5 || !is_prime(p)) throw std::domain_error("LocalContext: p must be a prime >= 5");
        if (d < 1 || j < 1) throw std::domain_error("LocalContext: need d >= 1, j >= 1");
        pj = 1;
        for (int i = 0; i < j; ++i) pj *= p;
        if (modulus_poly) {
            modulus = *modulus_poly;
            if (static_cast<int>(modulus.size()) != d + 1 || modulus[d] % pj != 1)
                throw std::domain_error("LocalContext: modulus must be monic of degree d");
            for (auto& c : modulus) c = mod_floor(c, pj);
            auto red = modulus;
            for (auto& c : red) c = mod_floor(c, p);
            if (!fpx::is_irreducible(red, p))
                throw std::domain_error("LocalContext: modulus not irreducible mod p");
        } else {
            modulus = least_irreducible(p, d);
        }
    }

    bool operator==(const LocalContext& o) const {
        return p == o.p && d == o.d && j == o.j && modulus == o.modulus;
    }

    Int ring_size() const {
        Int s = 1;
        for (int i = 0; i < d * j; ++i) s *= p;
        return s;
    }
    Int residue_size() const {
        Int s = 1;
        for (int i = 0; i < d; ++i) s *= p;
        return s;
    }
    Int unit_group_order() const {
        // p^((j-1)d) * (p^d - 1)
        Int s = residue_size() - 1;
        for (int i = 0; i < (j - 1) * d; ++i) s *= p;
        return s;
    }

    // same p and d, precision i <= j, modulus reduced coefficient-wise
    LocalContext reduced(int i) const {
        if (i < 1 || i > j) throw std::domain_error("LocalContext::reduced: bad target precision");
        Int pi = 1;
        for (int k = 0; k < i; ++k) pi *= p;
        std::vector<Int> m = modulus;
        for (auto& c : m) c = mod_floor(c, pi);
        return LocalContext(p, d, i, m);
    }

    // same p and d, precision jj >= j, modulus lifted verbatim
    LocalContext extended(int jj) const {
        if (jj < j) throw std::domain_error("LocalContext::extended: target below current");
        return LocalContext(p, d, jj, modulus);
    }

    // lexicographically least (by constant coefficient first) monic irreducible
    // of degree d over F_p, lifted verbatim
    static std::vector<Int> least_irreducible(const Int& p, int d) {
        if (d == 1) return {0, 1};
        static std::map<std::pair<Int, int>, std::vector<Int>> cache;
        static std::mutex cache_mutex;
        {
            std::lock_guard<std::mutex> lock(cache_mutex);
            auto it = cache.find({p, d});
            if (it != cache.end()) return it->second;
        }
        Int total = 1;
        for (int i = 0; i < d; ++i) total *= p;
        // candidates with constant term 0 are divisible by x, so the scan can
        // start at the first one with c_0 = 1
        for (Int n = total / p; n < total; ++n) {
            std::vector<Int> f(d + 1, 0);
            f[d] = 1;
            Int rest = n;
            // n encodes (c_0, ..., c_{d-1}) with c_0 most significant
            for (int i = d - 1; i >= 0; --i) { f[d - 1 - i] = rest / pow_int(p, i); rest %= pow_int(p, i); }
            if (fpx::is_irreducible(f, p)) {
                std::lock_guard<std::mutex> lock(cache_mutex);
                cache.insert({{p, d}, f});
                return f;
            }
        }
        throw std::logic_error("least_irreducible: none found");
    }

private:
    static Int pow_int(const Int& b, int e) {
        Int r = 1;
        for (int i = 0; i < e; ++i) r *= b;
        return r;
    }
};

class RingElem {
public:
    const LocalContext* ctx = nullptr;
    std::vector<Int> c;     // size d, canonical in [0, p^j)

    RingElem() = default;
    RingElem(const LocalContext& context, std::vector<Int> coeffs) : ctx(&context), c(std::move(coeffs)) {
        c.resize(ctx->d, 0);
        for (auto& x : c) x = mod_floor(x, ctx->pj);
    }
    RingElem(const LocalContext& context, const Int& scalar) : ctx(&context), c(context.d, 0) {
        c[0] = mod_floor(scalar, ctx->pj);
    }

    static RingElem zero(const LocalContext& context) { return RingElem(context, Int(0)); }
    static RingElem one(const LocalContext& context) { return RingElem(context, Int(1)); }
    // the power-basis generator t (for d = 1 this is the scalar 0 + ... none; disallowed)
    static RingElem gen(const LocalContext& context) {
        std::vector<Int> v(context.d, 0);
        if (context.d == 1) throw std::domain_error("RingElem::gen: d = 1 has no generator");
        v[1] = 1;
        return RingElem(context, v);
    }

    bool is_zero() const {
        for (const auto& x : c) if (x != 0) return false;
        return true;
    }
    bool operator==(const RingElem& o) const { return *ctx == *o.ctx && c == o.c; }
    bool operator!=(const RingElem& o) const { return !(*this == o); }

    // unit iff image in the residue field F_{p^d} is nonzero
    bool is_unit() const {
        for (const auto& x : c) if (x % ctx->p != 0) return true;
        return false;
    }

    // largest v <= j with x in p^v R; j for x = 0
    int val() const {
        int v = ctx->j;
        for (const auto& x : c)
            if (x != 0) v = std::min(v, static_cast<int>(vp_int(x, ctx->p)));
        return v;
    }

    RingElem operator+(const RingElem& o) const {
        check(o);
        std::vector<Int> r(ctx->d);
        for (int i = 0; i < ctx->d; ++i) r[i] = (c[i] + o.c[i]) % ctx->pj;
        return RingElem(*ctx, std::move(r));
    }
    RingElem operator-(const RingElem& o) const {
        check(o);
        std::vector<Int> r(ctx->d);
        for (int i = 0; i < ctx->d; ++i) r[i] = mod_floor(c[i] - o.c[i], ctx->pj);
        return RingElem(*ctx, std::move(r));
    }
    RingElem operator-() const {
        std::vector<Int> r(ctx->d);
        for (int i = 0; i < ctx->d; ++i) r[i] = mod_floor(-c[i], ctx->pj);
        return RingElem(*ctx, std::move(r));
    }
    RingElem operator*(const RingElem& o) const {
        check(o);
        int d = ctx->d;
        if (d == 1) return RingElem(*ctx, std::vector<Int>{c[0] * o.c[0] % ctx->pj});
        std::vector<Int> prod(2 * d - 1, 0);
        for (int i = 0; i < d; ++i) {
            if (c[i] == 0) continue;
            for (int k = 0; k < d; ++k) prod[i + k] = (prod[i + k] + c[i] * o.c[k]) % ctx->pj;
        }
        // reduce by the monic modulus
        for (int i = 2 * d - 2; i >= d; --i) {
            if (prod[i] == 0) continue;
            Int t = prod[i];
            prod[i] = 0;
            for (int k = 0; k < d; ++k)
                prod[i - d + k] = mod_floor(prod[i - d + k] - t * ctx->modulus[k], ctx->pj);
        }
        prod.resize(d);
        return RingElem(*ctx, std::move(prod));
    }
    RingElem operator*(const Int& s) const { return *this * RingElem(*ctx, s); }

    RingElem pow(Int e) const {
        if (e < 0) return inverse().pow(-e);
        RingElem acc = one(*ctx), base = *this;
        while (e > 0) {
            if (boost::multiprecision::bit_test(e, 0)) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    // inverse of a unit: invert in the residue field, then Newton-lift
    // y -> y(2 - xy), doubling the valid precision each step
    RingElem inverse() const {
        if (!is_unit()) throw std::domain_error("RingElem::inverse: not a unit");
        RingElem y = residue_inverse();
        RingElem two = RingElem(*ctx, Int(2));
        int prec = 1;
        while (prec < ctx->j) {
            y = y * (two - *this * y);
            prec *= 2;
        }
        return y;
    }

    RingElem operator/(const RingElem& o) const { return *this * o.inverse(); }

    // strip p^v: x = p^v * unit_part (x nonzero)
    RingElem unit_part() const {
        if (is_zero()) throw std::domain_error("RingElem::unit_part: zero");
        int v = val();
        if (v == 0) return *this;
        Int pv = 1;
        for (int i = 0; i < v; ++i) pv *= ctx->p;
        std::vector<Int> r(ctx->d);
        for (int i = 0; i < ctx->d; ++i) r[i] = c[i] / pv;
        return RingElem(*ctx, std::move(r));
    }

    RingElem reduce_to(const LocalContext& target) const {
        if (target.p != ctx->p || target.d != ctx->d || target.j > ctx->j)
            throw std::domain_error("RingElem::reduce_to: incompatible context");
        std::vector<Int> r(ctx->d);
        for (int i = 0; i < ctx->d; ++i) r[i] = mod_floor(c[i], target.pj);
        return RingElem(target, std::move(r));
    }

    // coefficient-wise lift (one particular preimage of the reduction map)
    RingElem lift_to(const LocalContext& target) const {
        if (target.p != ctx->p || target.d != ctx->d || target.j < ctx->j)
            throw std::domain_error("RingElem::lift_to: incompatible context");
        return RingElem(target, c);
    }

    // enumeration: index in [0, ring_size) <-> element, row-major over coefficients
    static RingElem from_index(const LocalContext& context, Int idx) {
        std::vector<Int> r(context.d);
        for (int i = 0; i < context.d; ++i) { r[i] = idx % context.pj; idx /= context.pj; }
        return RingElem(context, std::move(r));
    }
    Int to_index() const {
        Int idx = 0;
        for (int i = ctx->d; i-- > 0;) idx = idx * ctx->pj + c[i];
        return idx;
    }

    static RingElem random(const LocalContext& context, Rng& rng) {
        std::vector<Int> r(context.d);
        for (auto& x : r) x = rng.below_int(context.pj);
        return RingElem(context, std::move(r));
    }

    std::string str() const {
        if (ctx->d == 1) return c[0].str();
        std::ostringstream os;
        os << "[";
        for (int i = 0; i < ctx->d; ++i) os << (i ? "," : "") << c[i];
        os << "]";
        return os.str();
    }

private:
    void check(const RingElem& o) const {
        if (!(*ctx == *o.ctx)) throw std::domain_error("RingElem: context mismatch");
    }
    RingElem residue_inverse() const {
        // extended Euclid in F_p[x] against the modulus
        const Int& p = ctx->p;
        std::vector<Int> a(c.begin(), c.end());
        for (auto& x : a) x = mod_floor(x, p);
        fpx::trim(a);
        std::vector<Int> m(ctx->modulus);
        for (auto& x : m) x = mod_floor(x, p);
        // invariants: s*orig = r (mod modulus)
        std::vector<Int> r0 = m, r1 = a, s0{}, s1{1};
        while (!r1.empty()) {
            // r0 = q*r1 + r2
            std::vector<Int> q(r0.size() > r1.size() - 1 ? r0.size() - r1.size() + 1 : 1, 0);
            std::vector<Int> rem = r0;
            Int lead_inv = invmod(r1.back(), p);
            while (rem.size() >= r1.size() && !rem.empty()) {
                Int t = rem.back() * lead_inv % p;
                size_t off = rem.size() - r1.size();
                q[off] = t;
                for (size_t k = 0; k < r1.size(); ++k)
                    rem[off + k] = mod_floor(rem[off + k] - t * r1[k], p);
                fpx::trim(rem);
            }
            // s2 = s0 - q*s1
            std::vector<Int> qs(q.size() + s1.size(), 0);
            for (size_t i = 0; i < q.size(); ++i)
                for (size_t k = 0; k < s1.size(); ++k) qs[i + k] = (qs[i + k] + q[i] * s1[k]) % p;
            std::vector<Int> s2(std::max(s0.size(), qs.size()), 0);
            for (size_t i = 0; i < s2.size(); ++i) {
                Int v = (i < s0.size() ? s0[i] : Int(0)) - (i < qs.size() ? qs[i] : Int(0));
                s2[i] = mod_floor(v, p);
            }
            fpx::trim(s2);
            r0 = r1; r1 = rem; s0 = s1; s1 = s2;
        }
        // r0 = gcd, must be a nonzero constant
        if (r0.size() != 1) throw std::domain_error("RingElem::inverse: residue not invertible");
        Int scale = invmod(r0[0], p);
        std::vector<Int> inv(ctx->d, 0);
        for (size_t i = 0; i < s0.size() && i < inv.size(); ++i) inv[i] = s0[i] * scale % p;
        return RingElem(*ctx, std::move(inv));
    }
};

inline RingElem operator*(const Int& s, const RingElem& x) { return x * s; }

// ---- residue field helpers (contexts with j = 1) ----

// quadratic-residue test in F_{p^d}: x^((q-1)/2) with q = p^d
inline bool fq_is_square(const RingElem& x) {
    if (x.ctx->j != 1) throw std::domain_error("fq_is_square: need a residue field (j = 1)");
    if (x.is_zero()) return true;
    Int q = x.ctx->residue_size();
    return x.pow((q - 1) / 2) == RingElem::one(*x.ctx);
}

// Tonelli-Shanks square root in F_{p^d}; nullopt when x is a non-residue
inline std::optional<RingElem> fq_sqrt(const RingElem& x, uint64_t seed = 0) {
    const LocalContext& F = *x.ctx;
    if (F.j != 1) throw std::domain_error("fq_sqrt: need a residue field (j = 1)");
    if (x.is_zero()) return RingElem::zero(F);
    if (!fq_is_square(x)) return std::nullopt;
    Int q = F.residue_size();
    Int s = q - 1;
    int e = 0;
    while (s % 2 == 0) { s /= 2; ++e; }
    // find a non-residue deterministically from the seed
    Rng rng(splitmix64(seed ^ 0xfeed5eed12345678ULL));
    RingElem n = RingElem::zero(F);
    while (true) {
        n = RingElem::random(F, rng);
        if (!n.is_zero() && !fq_is_square(n)) break;
    }
    RingElem z = n.pow(s);
    RingElem y = x.pow((s + 1) / 2);
    RingElem b = x.pow(s);
    int r = e;
    RingElem one = RingElem::one(F);
    while (b != one) {
        // least m with b^(2^m) = 1
        int m = 0;
        RingElem t = b;
        while (t != one) { t = t * t; ++m; }
        RingElem zz = z;
        for (int i = 0; i < r - m - 1; ++i) zz = zz * zz;
        y = y * zz;
        z = zz * zz;
        b = b * z;
        r = m;
    }
    return y;
}

// ---- finite-precision elements of Q_p ----

// x = p^val * unit with unit invertible mod p, carried to `prec` significant
// p-adic digits.  A fully cancelled difference is recorded as "zero to
// absolute precision abs_prec": genuinely zero values and values too small to
// see are not distinguished.
class PadicRational {
public:
    static constexpr int default_prec = 12;
    static constexpr int min_prec = 3;

    Int p;
    bool zero = true;
    long val_ = 0;       // valuation; for zero: absolute precision bound
    Int unit = 0;        // in [0, p^prec), unit % p != 0
    int prec = default_prec;

    PadicRational() = default;

    static PadicRational exact_zero(const Int& p, int abs_prec = 1 << 20) {
        PadicRational z;
        z.p = p; z.zero = true; z.val_ = abs_prec; z.prec = 0;
        return z;
    }

    static PadicRational from_rational(const Rat& x, const Int& p, int prec = default_prec) {
        if (x == 0) return exact_zero(p);
        PadicRational r;
        r.p = p; r.zero = false; r.prec = prec;
        Int num = rat_num(x), den = rat_den(x);
        long vn = num == 0 ? 0 : vp_int(num, p), vd = vp_int(den, p);
        r.val_ = vn - vd;
        Int pv = 1;
        for (long i = 0; i < vn; ++i) pv *= p;
        num /= pv;
        pv = 1;
        for (long i = 0; i < vd; ++i) pv *= p;
        den /= pv;
        Int pn = pow_int(p, prec);
        r.unit = mod_floor(num, pn) * invmod(den, pn) % pn;
        return r;
    }

    static PadicRational from_unit(const Int& p, long val, const Int& unit, int prec) {
        PadicRational r;
        r.p = p; r.zero = false; r.val_ = val; r.prec = prec;
        Int pn = pow_int(p, prec);
        r.unit = mod_floor(unit, pn);
        if (r.unit % p == 0) throw std::logic_error("PadicRational: unit not a unit");
        return r;
    }

    bool is_zero() const { return zero; }
    long valuation() const {
        if (zero) throw precision_error("valuation: element indistinguishable from zero at absolute precision " + std::to_string(val_));
        return val_;
    }
    // absolute precision: element is known modulo p^abs_prec
    long abs_prec() const { return zero ? val_ : val_ + prec; }

    PadicRational operator*(const PadicRational& o) const {
        check(o);
        if (zero || o.zero) {
            long ap = zero ? (o.zero ? std::min(val_, o.val_) : val_ + o.val_)
                           : o.val_ + val_;
            return exact_zero(p, ap);
        }
        PadicRational r;
        r.p = p; r.zero = false; r.val_ = val_ + o.val_;
        r.prec = std::min(prec, o.prec);
        Int pn = pow_int(p, r.prec);
        r.unit = unit % pn * (o.unit % pn) % pn;
        return r;
    }
    PadicRational operator/(const PadicRational& o) const {
        check(o);
        if (o.zero) throw precision_error("division by (indistinguishable-from-)zero");
        if (zero) return exact_zero(p, val_ - o.val_);
        PadicRational r;
        r.p = p; r.zero = false; r.val_ = val_ - o.val_;
        r.prec = std::min(prec, o.prec);
        Int pn = pow_int(p, r.prec);
        r.unit = unit % pn * invmod(o.unit, pn) % pn;
        return r;
    }
    PadicRational operator-() const {
        if (zero) return *this;
        PadicRational r = *this;
        Int pn = pow_int(p, prec);
        r.unit = mod_floor(-unit, pn);
        return r;
    }
    PadicRational operator+(const PadicRational& o) const {
        check(o);
        if (zero && o.zero) return exact_zero(p, std::min(val_, o.val_));
        if (zero) return o.truncated_abs(std::min(val_, o.abs_prec()));
        if (o.zero) return truncated_abs(std::min(o.val_, abs_prec()));
        long ap = std::min(abs_prec(), o.abs_prec());
        long v = std::min(val_, o.val_);
        if (ap <= v) return exact_zero(p, ap);
        // digits of the sum modulo p^(ap - v), relative to p^v
        int ndig = static_cast<int>(ap - v);
        Int pn = pow_int(p, ndig);
        Int a = unit % pn, b = o.unit % pn;
        for (long i = v; i < val_; ++i) a = a * p % pn;
        for (long i = v; i < o.val_; ++i) b = b * p % pn;
        Int s = (a + b) % pn;
        if (s == 0) return exact_zero(p, ap);
        long k = vp_int(s, p);
        if (k >= ndig) return exact_zero(p, ap);
        PadicRational r;
        r.p = p; r.zero = false; r.val_ = v + k;
        r.prec = ndig - static_cast<int>(k);
        Int pk = pow_int(p, k);
        r.unit = s / pk;
        if (r.prec < min_prec)
            throw precision_error("p-adic cancellation left " + std::to_string(r.prec) +
                                  " significant digit(s), below the floor of " + std::to_string(min_prec));
        return r;
    }
    PadicRational operator-(const PadicRational& o) const { return *this + (-o); }

    bool congruent(const PadicRational& o, long to_abs_prec) const {
        PadicRational d = *this - o;
        // for a nonzero difference val_ is its valuation, for a cancelled one
        // its absolute precision; either way >= target means "equal as far as
        // we can see"
        return d.val_ >= to_abs_prec;
    }

    // digit c_i of the expansion sum c_i p^(val + i), 0 <= c_i < p
    Int digit(int i) const {
        if (zero) return 0;
        if (i < 0 || i >= prec) throw precision_error("digit index beyond precision");
        Int u = unit;
        for (int k = 0; k < i; ++k) u /= p;
        return u % p;
    }

    // display in the truncated-series style "c0*p^v + c1*p^(v+1) + ... + O(p^N)"
    std::string str() const {
        std::ostringstream os;
        if (!zero) {
            bool first = true;
            for (int i = 0; i < prec; ++i) {
                Int d = digit(i);
                if (d == 0) continue;
                long e = val_ + i;
                if (!first) os << " + ";
                first = false;
                if (e == 0) os << d;
                else if (e == 1) { if (d != 1) os << d << "*"; os << p; }
                else { if (d != 1) os << d << "*"; os << p << "^" << e; }
            }
            if (first) os << "0";
            os << " + ";
        }
        os << "O(" << p << "^" << abs_prec() << ")";
        return os.str();
    }

    static Int pow_int(const Int& b, long e) {
        Int r = 1;
        for (long i = 0; i < e; ++i) r *= b;
        return r;
    }

private:
    void check(const PadicRational& o) const {
        if (p != o.p) throw std::domain_error("PadicRational: prime mismatch");
    }
    PadicRational truncated_abs(long ap) const {
        // same value, absolute precision capped at ap
        if (zero) return exact_zero(p, std::min(val_, ap));
        if (ap >= abs_prec()) return *this;
        if (ap <= val_) return exact_zero(p, ap);
        PadicRational r = *this;
        r.prec = static_cast<int>(ap - val_);
        r.unit = unit % pow_int(p, r.prec);
        if (r.prec < min_prec)
            throw precision_error("p-adic truncation below the precision floor");
        return r;
    }
};

// ---- free-standing helpers over Q_p ----

// true iff vp(x) is even and the unit part is a quadratic residue mod p
inline bool is_square_qp(const Rat& x, const Int& p) {
    if (x == 0) throw std::domain_error("is_square_qp: x = 0");
    long v = vp(x, p);
    if (v % 2 != 0) return false;
    Int num = rat_num(x), den = rat_den(x);
    // unit part mod p
    while (num % p == 0) num /= p;
    while (den % p == 0) den /= p;
    Int u = mod_floor(num, p) * invmod(den, p) % p;
    return powmod(u, (p - 1) / 2, p) == 1;
}

inline bool is_square_qp(const PadicRational& x) {
    if (x.is_zero()) throw std::domain_error("is_square_qp: x = 0");
    if (x.val_ % 2 != 0) return false;
    return powmod(x.unit, (x.p - 1) / 2, x.p) == 1;
}

// Q_p^p = { p^(pn) * c : c^(p-1) = 1 mod p^2 }
inline bool is_pth_power_qp(const Rat& x, const Int& p) {
    if (x == 0) throw std::domain_error("is_pth_power_qp: x = 0");
    long v = vp(x, p);
    if (v % p.convert_to<long>() != 0) return false;
    Int num = rat_num(x), den = rat_den(x);
    while (num % p == 0) num /= p;
    while (den % p == 0) den /= p;
    Int p2 = p * p;
    Int u = mod_floor(num, p2) * invmod(den, p2) % p2;
    return powmod(u, p - 1, p2) == 1;
}

inline bool is_pth_power_qp(const PadicRational& x) {
    if (x.is_zero()) throw std::domain_error("is_pth_power_qp: x = 0");
    if (x.prec < 2) throw precision_error("is_pth_power_qp: need at least 2 digits");
    if (x.val_ % x.p.convert_to<long>() != 0) return false;
    Int p2 = x.p * x.p;
    return powmod(x.unit % p2, x.p - 1, p2) == 1;
}

// Newton lift of a simple root: f given by coefficients over the target ring,
// r0 a root of f mod p with f'(r0) a unit
inline RingElem hensel_lift_root(const std::vector<RingElem>& f, const RingElem& r0_any) {
    if (f.empty()) throw std::domain_error("hensel_lift_root: empty polynomial");
    const LocalContext& R = *f[0].ctx;
    RingElem r = r0_any.ctx->j == R.j ? r0_any : r0_any.lift_to(R);
    auto eval = [&](const RingElem& x, bool derivative) {
        RingElem acc = RingElem::zero(R);
        if (!derivative) {
            for (size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
        } else {
            for (size_t i = f.size(); i-- > 1;) acc = acc * x + f[i] * Int(i);
        }
        return acc;
    };
    if (eval(r, false).val() < 1)
        throw std::domain_error("hensel_lift_root: r0 is not a root mod p");
    RingElem fp = eval(r, true);
    if (!fp.is_unit())
        throw std::domain_error("hensel_lift_root: non-simple root, lift not guaranteed");
    // quadratic convergence: precision doubles each step
    int have = 1;
    while (have < R.j) {
        r = r - eval(r, false) * eval(r, true).inverse();
        have *= 2;
    }
    if (!eval(r, false).is_zero()) throw std::logic_error("hensel_lift_root: did not converge");
    return r;
}

} // namespace pdeg

#endif
