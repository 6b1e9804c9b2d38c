#ifndef PDEG_PRIMES_HPP
#define PDEG_PRIMES_HPP

/* Primality testing, integer factorization, and multiplicative orders.
 *
 * Miller-Rabin with the fixed witness set {2,...,37} is deterministic for
 * n < 3.317e24 (covers every prime this library sweeps); larger inputs fall
 * back to 64 seeded rounds and the caller sees "probable prime".  Orders in
 * (Z/p)^x are computed by factoring the group order and stripping primes.
 */

#include "bigint.hpp"
#include <algorithm>
#include <map>
#include <vector>

namespace pdeg {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// xorshift-style generator with explicit state, reproducible across platforms
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(splitmix64(seed ^ 0x5bf03635ab5cbfc6ULL)) {}
    uint64_t next() { state = splitmix64(state); return state; }
    // uniform in [0, n)
    uint64_t below(uint64_t n) { return n ? next() % n : 0; }
    Int below_int(const Int& n) {
        if (n <= 1) return 0;
        size_t bits = boost::multiprecision::msb(n) + 1;
        while (true) {
            Int r = 0;
            for (size_t i = 0; i < bits; i += 64) r = (r << 64) | next();
            r &= (Int(1) << bits) - 1;
            if (r < n) return r;
        }
    }
};

namespace detail {
inline bool mr_witness(const Int& n, const Int& a, const Int& d, int s) {
    Int x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n - 1) return true;
    }
    return false;
}
} // namespace detail

struct PrimalityResult {
    bool is_prime;
    bool proven;    // false only on the >= 3.3e24 probabilistic path
};

inline PrimalityResult is_prime_ex(const Int& n, uint64_t seed = 0) {
    if (n < 2) return {false, true};
    static const int small[] = {2,3,5,7,11,13,17,19,23,29,31,37};
    for (int q : small) {
        if (n == q) return {true, true};
        if (n % q == 0) return {false, true};
    }
    Int d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    static const Int det_bound("3317044064679887385961981");
    if (n < det_bound) {
        for (int a : small)
            if (!detail::mr_witness(n, a, d, s)) return {false, true};
        return {true, true};
    }
    Rng rng(splitmix64(seed) ^ 0x9d3f2b81c57ae1f3ULL);
    for (int round = 0; round < 64; ++round) {
        Int a = 2 + rng.below_int(n - 3);
        if (!detail::mr_witness(n, a, d, s)) return {false, true};
    }
    return {true, false};
}

inline bool is_prime(const Int& n, uint64_t seed = 0) { return is_prime_ex(n, seed).is_prime; }

namespace detail {
inline Int pollard_rho(const Int& n, uint64_t seed) {
    if (n % 2 == 0) return 2;
    Rng rng(seed);
    while (true) {
        Int x = 2 + rng.below_int(n - 2), c = 1 + rng.below_int(n - 1);
        Int y = x, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            d = gcd(x >= y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}
} // namespace detail

// full factorization n = prod q^e as a sorted map
inline std::map<Int, int> factorize(Int n, uint64_t seed = 0) {
    if (n <= 0) throw std::domain_error("factorize: need n >= 1");
    std::map<Int, int> out;
    for (Int q : {Int(2), Int(3), Int(5), Int(7), Int(11), Int(13)})
        while (n % q == 0) { ++out[q]; n /= q; }
    std::vector<Int> stack{n};
    while (!stack.empty()) {
        Int m = stack.back(); stack.pop_back();
        if (m == 1) continue;
        if (is_prime(m, seed)) { ++out[m]; continue; }
        Int f = detail::pollard_rho(m, splitmix64(seed ^ Int(m % 0xffffffffULL).convert_to<uint64_t>()));
        stack.push_back(f);
        stack.push_back(m / f);
    }
    return out;
}

// multiplicative order of a modulo m, where group_order is a multiple of it
// (typically |(Z/m)^x| or p^d - 1); requires gcd(a, m) = 1
inline Int order_mod(const Int& a, const Int& m, const Int& group_order, uint64_t seed = 0) {
    Int aa = mod_floor(a, m);
    if (gcd(aa, m) != 1) throw std::domain_error("order_mod: not a unit");
    Int ord = group_order;
    for (const auto& [q, e] : factorize(group_order, seed)) {
        for (int i = 0; i < e; ++i) {
            if (powmod(aa, ord / q, m) == 1) ord /= q;
            else break;
        }
    }
    return ord;
}

// least m >= 1 with a^m = 1 mod p; divides p - 1
inline Int ord_mod_p(const Int& a, const Int& p) {
    if (mod_floor(a, p) == 0) throw std::domain_error("ord_mod_p: p divides a");
    return order_mod(a, p, p - 1);
}

// ascending primes in [lo, hi)
inline std::vector<Int> primes_in(const Int& lo, const Int& hi) {
    std::vector<Int> out;
    for (Int n = lo < 2 ? 2 : lo; n < hi; ++n)
        if (is_prime(n)) out.push_back(n);
    return out;
}

} // namespace pdeg

#endif
