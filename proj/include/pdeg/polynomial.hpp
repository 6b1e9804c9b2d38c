#ifndef PDEG_POLYNOMIAL_HPP
#define PDEG_POLYNOMIAL_HPP

/* Dense univariate polynomials in the three coefficient domains the library
 * needs: F_p (factorization into irreducibles), Z/p^N (quadratic Hensel
 * lifting of coprime factorizations), and Q (division polynomials).
 * Coefficient vectors are little-endian; an empty vector is the zero
 * polynomial.
 */

#include "bigint.hpp"
#include "primes.hpp"
#include <utility>
#include <vector>

namespace pdeg {

// ---- polynomials over F_p ----

struct FpPoly {
    Int p;
    std::vector<Int> c;   // canonical in [0, p), no trailing zeros

    FpPoly() = default;
    FpPoly(const Int& p_, std::vector<Int> coeffs) : p(p_), c(std::move(coeffs)) {
        for (auto& x : c) x = mod_floor(x, p);
        trim();
    }
    static FpPoly zero(const Int& p) { return FpPoly(p, {}); }
    static FpPoly constant(const Int& p, const Int& a) { return FpPoly(p, {a}); }
    static FpPoly x(const Int& p) { return FpPoly(p, {0, 1}); }

    int degree() const { return static_cast<int>(c.size()) - 1; }   // -1 for zero
    bool is_zero() const { return c.empty(); }
    void trim() { while (!c.empty() && c.back() == 0) c.pop_back(); }
    Int lead() const { return c.empty() ? Int(0) : c.back(); }
    bool operator==(const FpPoly& o) const { return p == o.p && c == o.c; }

    FpPoly operator+(const FpPoly& o) const {
        std::vector<Int> r(std::max(c.size(), o.c.size()), 0);
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = ((i < c.size() ? c[i] : Int(0)) + (i < o.c.size() ? o.c[i] : Int(0))) % p;
        return FpPoly(p, std::move(r));
    }
    FpPoly operator-(const FpPoly& o) const {
        std::vector<Int> r(std::max(c.size(), o.c.size()), 0);
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = mod_floor((i < c.size() ? c[i] : Int(0)) - (i < o.c.size() ? o.c[i] : Int(0)), p);
        return FpPoly(p, std::move(r));
    }
    FpPoly operator*(const FpPoly& o) const {
        if (is_zero() || o.is_zero()) return zero(p);
        std::vector<Int> r(c.size() + o.c.size() - 1, 0);
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i] == 0) continue;
            for (size_t k = 0; k < o.c.size(); ++k) r[i + k] = (r[i + k] + c[i] * o.c[k]) % p;
        }
        return FpPoly(p, std::move(r));
    }
    FpPoly operator*(const Int& s) const {
        std::vector<Int> r = c;
        for (auto& x : r) x = x * mod_floor(s, p) % p;
        return FpPoly(p, std::move(r));
    }

    // division with remainder; divisor leading coefficient must be a unit (any nonzero)
    std::pair<FpPoly, FpPoly> divmod(const FpPoly& b) const {
        if (b.is_zero()) throw std::domain_error("FpPoly::divmod: division by zero");
        FpPoly rem = *this;
        if (rem.degree() < b.degree()) return {zero(p), rem};
        std::vector<Int> q(rem.c.size() - b.c.size() + 1, 0);
        Int li = invmod(b.lead(), p);
        while (rem.degree() >= b.degree() && !rem.is_zero()) {
            Int t = rem.lead() * li % p;
            size_t off = rem.c.size() - b.c.size();
            q[off] = t;
            for (size_t k = 0; k < b.c.size(); ++k)
                rem.c[off + k] = mod_floor(rem.c[off + k] - t * b.c[k], p);
            rem.trim();
        }
        return {FpPoly(p, std::move(q)), rem};
    }
    FpPoly operator%(const FpPoly& b) const { return divmod(b).second; }
    FpPoly operator/(const FpPoly& b) const { return divmod(b).first; }

    FpPoly monic() const {
        if (is_zero()) return *this;
        return *this * invmod(lead(), p);
    }

    FpPoly derivative() const {
        if (c.size() <= 1) return zero(p);
        std::vector<Int> r(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * i % p;
        return FpPoly(p, std::move(r));
    }

    Int eval(const Int& x) const {
        Int acc = 0;
        for (size_t i = c.size(); i-- > 0;) acc = (acc * x + c[i]) % p;
        return mod_floor(acc, p);
    }

    static FpPoly gcd(FpPoly a, FpPoly b) {
        while (!b.is_zero()) {
            FpPoly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    // this^e mod m
    FpPoly powmod(Int e, const FpPoly& m) const {
        FpPoly acc = constant(p, 1), base = *this % m;
        while (e > 0) {
            if (boost::multiprecision::bit_test(e, 0)) acc = acc * base % m;
            base = base * base % m;
            e >>= 1;
        }
        return acc;
    }
};

// distinct-degree then equal-degree (Cantor-Zassenhaus) factorization;
// multiplicities recovered by trial division, p-th powers by the Frobenius
// identity f = u(x^p) = u(x)^p over F_p
inline std::vector<std::pair<FpPoly, int>> factor_fp(FpPoly f, uint64_t seed = 0) {
    const Int p = f.p;
    std::vector<std::pair<FpPoly, int>> out;
    if (f.degree() < 1) return out;
    f = f.monic();

    // peel p-th powers so the derivative is nonzero
    int power = 1;
    while (f.derivative().is_zero()) {
        std::vector<Int> u(f.degree() / p.convert_to<int>() + 1);
        for (size_t i = 0; i < u.size(); ++i) u[i] = f.c[i * p.convert_to<size_t>()];
        f = FpPoly(p, std::move(u));
        power *= p.convert_to<int>();
    }

    FpPoly sf = (f / FpPoly::gcd(f, f.derivative())).monic();  // squarefree part

    // distinct-degree splitting of sf
    std::vector<std::pair<FpPoly, int>> by_degree;   // (product of irreducibles, their degree)
    FpPoly rest = sf;
    FpPoly xp = FpPoly::x(p);
    FpPoly h = xp;   // x^(p^k) mod rest, recomputed as rest shrinks
    for (int k = 1; rest.degree() >= 1; ++k) {
        if (rest.degree() < 2 * k) { by_degree.push_back({rest, rest.degree()}); break; }
        h = h.powmod(p, rest);
        FpPoly g = FpPoly::gcd(h - xp % rest, rest);
        if (g.degree() >= 1) {
            by_degree.push_back({g, k});
            rest = (rest / g).monic();
            h = h % rest;
        }
    }

    // equal-degree splitting
    Rng rng(splitmix64(seed ^ 0xedf0edf0edf0edf0ULL));
    std::vector<FpPoly> irreducibles;
    for (auto& [prod, deg] : by_degree) {
        std::vector<FpPoly> work{prod};
        while (!work.empty()) {
            FpPoly g = work.back();
            work.pop_back();
            if (g.degree() == deg) { irreducibles.push_back(g.monic()); continue; }
            // random split: gcd(r^((p^deg - 1)/2) - 1, g)
            Int exp = 1;
            for (int i = 0; i < deg; ++i) exp *= p;
            exp = (exp - 1) / 2;
            while (true) {
                std::vector<Int> rc(g.degree());
                for (auto& x : rc) x = rng.below_int(p);
                FpPoly r(p, std::move(rc));
                if (r.degree() < 1) continue;
                FpPoly t = r.powmod(exp, g) - FpPoly::constant(p, 1);
                FpPoly d = FpPoly::gcd(t, g);
                if (d.degree() >= 1 && d.degree() < g.degree()) {
                    work.push_back(d.monic());
                    work.push_back((g / d).monic());
                    break;
                }
            }
        }
    }

    // multiplicities in the original input (including the peeled p-th power)
    FpPoly remainder = f;
    for (auto& q : irreducibles) {
        int e = 0;
        while (true) {
            auto [quot, rem] = remainder.divmod(q);
            if (!rem.is_zero()) break;
            remainder = quot;
            ++e;
        }
        out.push_back({q, e * power});
    }
    // factors whose multiplicity in f is divisible by p are invisible in the
    // squarefree part; they survive in the remainder, which is then a perfect
    // p-th power, so one recursion level peels it
    if (remainder.degree() >= 1)
        for (auto& [q, e] : factor_fp(remainder, splitmix64(seed + 1)))
            out.push_back({q, e * power});
    return out;
}

inline bool is_irreducible_fp(const FpPoly& f) {
    if (f.degree() < 1) return false;
    if (f.degree() == 1) return true;
    auto fs = factor_fp(f);
    return fs.size() == 1 && fs[0].second == 1;
}

// roots in F_p with multiplicities dropped
inline std::vector<Int> roots_fp(const FpPoly& f, uint64_t seed = 0) {
    std::vector<Int> out;
    for (auto& [q, e] : factor_fp(f, seed))
        if (q.degree() == 1) out.push_back(mod_floor(-q.c[0], f.p));
    std::sort(out.begin(), out.end());
    return out;
}

// ---- polynomials over Z/p^N (little-endian Int vectors) ----

namespace zpx {

inline void trim(std::vector<Int>& a) { while (!a.empty() && a.back() == 0) a.pop_back(); }

inline std::vector<Int> mul(const std::vector<Int>& a, const std::vector<Int>& b, const Int& m) {
    if (a.empty() || b.empty()) return {};
    std::vector<Int> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t k = 0; k < b.size(); ++k) r[i + k] = (r[i + k] + a[i] * b[k]) % m;
    }
    trim(r);
    return r;
}

inline std::vector<Int> add(const std::vector<Int>& a, const std::vector<Int>& b, const Int& m) {
    std::vector<Int> r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = ((i < a.size() ? a[i] : Int(0)) + (i < b.size() ? b[i] : Int(0))) % m;
    trim(r);
    return r;
}

inline std::vector<Int> sub(const std::vector<Int>& a, const std::vector<Int>& b, const Int& m) {
    std::vector<Int> r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = mod_floor((i < a.size() ? a[i] : Int(0)) - (i < b.size() ? b[i] : Int(0)), m);
    trim(r);
    return r;
}

// divisor must have unit leading coefficient mod p
inline std::pair<std::vector<Int>, std::vector<Int>>
divmod(std::vector<Int> a, const std::vector<Int>& b, const Int& m) {
    if (b.empty()) throw std::domain_error("zpx::divmod: division by zero");
    if (a.size() < b.size()) return {{}, std::move(a)};
    std::vector<Int> q(a.size() - b.size() + 1, 0);
    Int li = invmod(b.back(), m);
    while (a.size() >= b.size() && !a.empty()) {
        Int t = a.back() * li % m;
        size_t off = a.size() - b.size();
        q[off] = t;
        for (size_t k = 0; k < b.size(); ++k) a[off + k] = mod_floor(a[off + k] - t * b[k], m);
        trim(a);
    }
    trim(q);
    return {std::move(q), std::move(a)};
}

} // namespace zpx

// quadratic Hensel lifting: f = gbar*hbar mod p with gcd(gbar, hbar) = 1
// lifts to f = g*h mod p^N; f, gbar, hbar monic
struct HenselFactors {
    std::vector<Int> g, h;
};

inline HenselFactors hensel_factor(const std::vector<Int>& f_in, const FpPoly& gbar,
                                   const FpPoly& hbar, const Int& p, int N) {
    // normalize checks
    if (gbar.is_zero() || hbar.is_zero() || gbar.lead() != 1 || hbar.lead() != 1)
        throw std::domain_error("hensel_factor: factors must be monic");
    if (FpPoly::gcd(gbar, hbar).degree() != 0)
        throw std::domain_error("hensel_factor: factors not coprime mod p");
    Int pN = 1;
    for (int i = 0; i < N; ++i) pN *= p;
    std::vector<Int> f = f_in;
    for (auto& x : f) x = mod_floor(x, pN);
    zpx::trim(f);
    if (f.empty() || f.back() % p == 0)
        throw std::domain_error("hensel_factor: leading coefficient must be a unit");
    // make f monic mod p^N (tracked by the caller via the returned product convention)
    Int lc = f.back();
    if (lc != 1) {
        Int li = invmod(lc, pN);
        for (auto& x : f) x = x * li % pN;
    }
    {
        FpPoly fbar(p, f);
        if (!(fbar == (gbar * hbar).monic()) || fbar.degree() != gbar.degree() + hbar.degree())
            throw std::domain_error("hensel_factor: gbar*hbar != f mod p");
    }

    // Bezout s*g + t*h = 1 mod p via extended Euclid in F_p[x]
    FpPoly r0 = gbar, r1 = hbar;
    FpPoly s0 = FpPoly::constant(p, 1), s1 = FpPoly::zero(p);
    FpPoly t0 = FpPoly::zero(p), t1 = FpPoly::constant(p, 1);
    while (!r1.is_zero()) {
        auto [q, r2] = r0.divmod(r1);
        FpPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        r0 = r1; r1 = r2; s0 = s1; s1 = s2; t0 = t1; t1 = t2;
    }
    Int scale = invmod(r0.c[0], p);
    FpPoly sbar = s0 * scale, tbar = t0 * scale;   // sbar*g + tbar*h = 1 mod p

    std::vector<Int> g(gbar.c), h(hbar.c), s(sbar.c), t(tbar.c);
    Int m = p;
    while (m < pN) {
        Int m2 = m * m;
        if (m2 > pN) m2 = pN;
        // e = f - g h;  g' = g + (t e mod g) + ...; standard Hensel step with h monic
        auto e = zpx::sub(f, zpx::mul(g, h, m2), m2);
        auto [q, r] = zpx::divmod(zpx::mul(s, e, m2), h, m2);
        auto gstar = zpx::add(g, zpx::add(zpx::mul(t, e, m2), zpx::mul(q, g, m2), m2), m2);
        auto hstar = zpx::add(h, r, m2);
        // refresh the Bezout pair
        auto b = zpx::sub(zpx::add(zpx::mul(s, gstar, m2), zpx::mul(t, hstar, m2), m2),
                          std::vector<Int>{1}, m2);
        auto [cq, d] = zpx::divmod(zpx::mul(s, b, m2), hstar, m2);
        auto sstar = zpx::sub(s, d, m2);
        auto tstar = zpx::sub(zpx::sub(t, zpx::mul(t, b, m2), m2), zpx::mul(cq, gstar, m2), m2);
        g = gstar; h = hstar; s = sstar; t = tstar;
        m = m2;
    }
    // verify
    auto prod = zpx::mul(g, h, pN);
    if (prod != f) throw std::logic_error("hensel_factor: lift verification failed");
    return {std::move(g), std::move(h)};
}

// ---- polynomials over Q ----

struct QPoly {
    std::vector<Rat> c;

    QPoly() = default;
    explicit QPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }
    static QPoly zero() { return QPoly(); }
    static QPoly constant(const Rat& a) { return QPoly({a}); }
    static QPoly x() { return QPoly({Rat(0), Rat(1)}); }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    void trim() { while (!c.empty() && c.back() == 0) c.pop_back(); }
    Rat lead() const { return c.empty() ? Rat(0) : c.back(); }
    Rat coeff(int i) const { return i >= 0 && i < static_cast<int>(c.size()) ? c[i] : Rat(0); }
    bool operator==(const QPoly& o) const { return c == o.c; }

    QPoly operator+(const QPoly& o) const {
        std::vector<Rat> r(std::max(c.size(), o.c.size()), Rat(0));
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = (i < c.size() ? c[i] : Rat(0)) + (i < o.c.size() ? o.c[i] : Rat(0));
        return QPoly(std::move(r));
    }
    QPoly operator-(const QPoly& o) const {
        std::vector<Rat> r(std::max(c.size(), o.c.size()), Rat(0));
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = (i < c.size() ? c[i] : Rat(0)) - (i < o.c.size() ? o.c[i] : Rat(0));
        return QPoly(std::move(r));
    }
    QPoly operator*(const QPoly& o) const {
        if (is_zero() || o.is_zero()) return zero();
        std::vector<Rat> r(c.size() + o.c.size() - 1, Rat(0));
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i] == 0) continue;
            for (size_t k = 0; k < o.c.size(); ++k) r[i + k] += c[i] * o.c[k];
        }
        return QPoly(std::move(r));
    }
    QPoly operator*(const Rat& s) const {
        std::vector<Rat> r = c;
        for (auto& x : r) x *= s;
        return QPoly(std::move(r));
    }

    std::pair<QPoly, QPoly> divmod(const QPoly& b) const {
        if (b.is_zero()) throw std::domain_error("QPoly::divmod: division by zero");
        QPoly rem = *this;
        if (rem.degree() < b.degree()) return {zero(), rem};
        std::vector<Rat> q(rem.c.size() - b.c.size() + 1, Rat(0));
        while (rem.degree() >= b.degree() && !rem.is_zero()) {
            Rat t = rem.lead() / b.lead();
            size_t off = rem.c.size() - b.c.size();
            q[off] = t;
            for (size_t k = 0; k < b.c.size(); ++k) rem.c[off + k] -= t * b.c[k];
            rem.trim();
        }
        return {QPoly(std::move(q)), rem};
    }

    QPoly derivative() const {
        if (c.size() <= 1) return zero();
        std::vector<Rat> r(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * Rat(static_cast<long>(i));
        return QPoly(std::move(r));
    }

    Rat eval(const Rat& x) const {
        Rat acc = 0;
        for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    }

    // reduction mod q of the primitive integer scaling is only meaningful when
    // denominators are prime to q; the caller clears denominators first
    FpPoly mod_p(const Int& q) const {
        std::vector<Int> r(c.size());
        for (size_t i = 0; i < c.size(); ++i) {
            Int den = rat_den(c[i]);
            if (den % q == 0) throw std::domain_error("QPoly::mod_p: denominator divisible by modulus");
            r[i] = mod_floor(rat_num(c[i]), q) * invmod(den, q) % q;
        }
        return FpPoly(q, std::move(r));
    }
};

} // namespace pdeg

#endif
