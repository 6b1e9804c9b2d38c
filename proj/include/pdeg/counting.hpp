#ifndef PDEG_COUNTING_HPP
#define PDEG_COUNTING_HPP

#include "curves.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace pdeg {

// trace of Frobenius a_p = p + 1 - #E(F_p), by the quadratic-character sum
// over x in F_p; the u64 fast path covers the whole supported range
inline Int ap(const Int& A, const Int& B, const Int& p, uint64_t p_limit = 1'000'000) {
    if (p < 5 || !is_prime(p)) throw std::domain_error("ap: p must be a prime >= 5");
    if (p > p_limit)
        throw std::domain_error("ap: p = " + p.str() + " exceeds the counting budget " +
                                std::to_string(p_limit));
    if (mod_floor(Int(-16) * (4 * A * A * A + 27 * B * B), p) == 0)
        throw std::domain_error("ap: bad reduction (discriminant divisible by p)");
    uint64_t pp = p.convert_to<uint64_t>();
    uint64_t a = mod_floor(A, p).convert_to<uint64_t>();
    uint64_t b = mod_floor(B, p).convert_to<uint64_t>();
    // chi[v]: 1 on nonzero squares, -1 on non-squares, 0 at 0
    std::vector<int8_t> chi(pp, -1);
    chi[0] = 0;
    for (uint64_t x = 1; x <= (pp - 1) / 2; ++x) chi[mulmod_u64(x, x, pp)] = 1;
    int64_t sum = 0;
    for (uint64_t x = 0; x < pp; ++x) {
        uint64_t v = (mulmod_u64(mulmod_u64(x, x, pp), x, pp) + mulmod_u64(a, x, pp) + b) % pp;
        sum += chi[v];
    }
    Int trace = -Int(sum);
    if (trace * trace > 4 * p) throw std::logic_error("ap: Hasse bound violated");
    return trace;
}

inline Int ap(const CurveQ& E, const Int& p, uint64_t p_limit = 1'000'000) {
    return ap(rat_mod(E.A, p), rat_mod(E.B, p), p, p_limit);
}

// #E(F_{p^d}) from the trace recurrence t_0 = 2, t_1 = a_p,
// t_{k+1} = a_p t_k - p t_{k-1}; the count is p^d + 1 - t_d
inline Int count_ext(const Int& a, const Int& p, int d) {
    if (d < 1) throw std::domain_error("count_ext: need d >= 1");
    Int t_prev = 2, t = a;
    for (int k = 1; k < d; ++k) {
        Int next = a * t - p * t_prev;
        t_prev = t;
        t = next;
    }
    Int pd = 1;
    for (int i = 0; i < d; ++i) pd *= p;
    return pd + 1 - t;
}

inline Int count_ext(const Int& A, const Int& B, const Int& p, int d) {
    return count_ext(ap(A, B, p), p, d);
}

inline Int count_ext(const CurveQ& E, const Int& p, int d) {
    return count_ext(ap(E, p), p, d);
}

// for p >= 5, supersingular is exactly a_p = 0
inline bool is_supersingular(const Int& A, const Int& B, const Int& p) {
    return ap(A, B, p) == 0;
}
inline bool is_ordinary(const Int& A, const Int& B, const Int& p) {
    return !is_supersingular(A, B, p);
}
inline bool is_supersingular(const CurveQ& E, const Int& p) { return ap(E, p) == 0; }
inline bool is_ordinary(const CurveQ& E, const Int& p) { return ap(E, p) != 0; }

// every point of E(R): points with unit z live on the chart z = 1; any point
// with non-unit z has unit y (y and z both non-unit would force x non-unit
// through the curve equation, a non-primitive triple), so the chart y = 1
// restricted to z in pR covers the remainder exactly once
inline std::vector<ProjPointNaive> enumerate_points(const CurveR& E,
                                                    const Int& budget = Int(1'000'000'000)) {
    const LocalContext& R = *E.ctx;
    Int cand = 1;
    for (int i = 0; i < 3 * R.j * R.d; ++i) cand *= R.p;
    if (cand > budget)
        throw std::domain_error("enumerate_points: p^(3jd) = " + cand.str() +
                                " candidate triples, too large for the budget " + budget.str());
    const Int n = R.ring_size();
    const RingElem one = RingElem::one(R);
    std::vector<ProjPointNaive> pts;

    std::vector<RingElem> elems, squares;
    for (Int i = 0; i < n; ++i) {
        elems.push_back(RingElem::from_index(R, i));
        squares.push_back(elems.back() * elems.back());
    }
    for (Int ix = 0; ix < n; ++ix) {
        const RingElem& x = elems[ix.convert_to<size_t>()];
        RingElem rhs = squares[ix.convert_to<size_t>()] * x + E.A * x + E.B;
        for (Int iy = 0; iy < n; ++iy)
            if (squares[iy.convert_to<size_t>()] == rhs)
                pts.emplace_back(x, elems[iy.convert_to<size_t>()], one);
    }

    Int m = 1;
    for (int i = 0; i < (R.j - 1) * R.d; ++i) m *= R.p;
    Int base = 1;
    for (int i = 0; i < R.j - 1; ++i) base *= R.p;
    for (Int iz = 0; iz < m; ++iz) {
        std::vector<Int> zc(R.d);
        Int rest = iz;
        for (int i = 0; i < R.d; ++i) {
            zc[i] = (rest % base) * R.p;
            rest /= base;
        }
        RingElem z(R, std::move(zc));
        RingElem z2 = z * z, z3 = z2 * z;
        for (Int ix = 0; ix < n; ++ix) {
            const RingElem& x = elems[ix.convert_to<size_t>()];
            if (z == squares[ix.convert_to<size_t>()] * x + E.A * x * z2 + E.B * z3)
                pts.emplace_back(x, one, z);
        }
    }

    std::sort(pts.begin(), pts.end(), [](const ProjPointNaive& a, const ProjPointNaive& b) {
        Int az = a.z.to_index(), bz = b.z.to_index();
        if (az != bz) return az < bz;
        Int ay = a.y.to_index(), by = b.y.to_index();
        if (ay != by) return ay < by;
        return a.x.to_index() < b.x.to_index();
    });
    return pts;
}

// log_p of #E(R)[p]; the count is checked to be a power of p
inline int p_rank(const CurveR& E, const Int& budget = Int(1'000'000'000)) {
    const Int& p = E.ctx->p;
    Int torsion = 0;
    for (auto& P : enumerate_points(E, budget))
        if (E.smul(p, P).is_identity()) ++torsion;
    int r = 0;
    Int t = torsion;
    while (t % p == 0) {
        t /= p;
        ++r;
    }
    if (t != 1)
        throw std::logic_error("p_rank: p-torsion count " + torsion.str() +
                               " is not a power of p");
    return r;
}

}  // namespace pdeg

#endif  // PDEG_COUNTING_HPP
