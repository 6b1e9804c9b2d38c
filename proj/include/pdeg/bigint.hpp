#ifndef PDEG_BIGINT_HPP
#define PDEG_BIGINT_HPP

/* Exact integer and rational arithmetic.  Everything in this library is
 * integral; there is no floating point anywhere.  Multi-precision types come
 * from boost::multiprecision (header-only backends), with unsigned 64-bit
 * fast paths where the range is known.
 */

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pdeg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

// mod with result in [0, m), m > 0
inline Int mod_floor(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

inline Int powmod(Int base, Int exp, const Int& m) {
    if (m == 1) return 0;
    Int result = 1;
    base = mod_floor(base, m);
    while (exp > 0) {
        if (boost::multiprecision::bit_test(exp, 0)) result = result * base % m;
        base = base * base % m;
        exp >>= 1;
    }
    return result;
}

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

// inverse of a mod m, gcd(a, m) = 1 required
inline Int invmod(const Int& a, const Int& m);

// x mod m for rationals whose denominator is coprime to m
inline Int rat_mod(const Rat& x, const Int& m) {
    Int num = mod_floor(rat_num(x), m);
    Int den = mod_floor(rat_den(x), m);
    return mod_floor(num * invmod(den, m), m);
}

inline Int invmod(const Int& a, const Int& m) {
    Int r0 = mod_floor(a, m), r1 = m, s0 = 1, s1 = 0;
    while (r1 != 0) {
        Int q = r0 / r1;
        Int tmp = r0 - q * r1; r0 = r1; r1 = tmp;
        tmp = s0 - q * s1; s0 = s1; s1 = tmp;
    }
    if (r0 != 1) throw std::domain_error("invmod: not invertible, gcd = " + r0.str());
    return mod_floor(s0, m);
}

// p-adic valuation of a nonzero integer
inline long vp_int(Int x, const Int& p) {
    if (x == 0) throw std::domain_error("vp: infinite valuation of 0");
    long v = 0;
    while (x % p == 0) { x /= p; ++v; }
    return v;
}

// p-adic valuation of a nonzero rational
inline long vp(const Rat& x, const Int& p) {
    if (x == 0) throw std::domain_error("vp: infinite valuation of 0");
    return vp_int(rat_num(x), p) - vp_int(rat_den(x), p);
}

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod_u64(result, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return result;
}

// deterministic integer square root (floor); input >= 0
inline Int isqrt(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt: negative");
    return boost::multiprecision::sqrt(n);
}

} // namespace pdeg

#endif
