#ifndef PDEG_PADIC_POLY_HPP
#define PDEG_PADIC_POLY_HPP

/* Division polynomials and p-adic factorization.
 *
 * The x-coordinates of the nonzero n-torsion points of y^2 = x^3 + Ax + B are
 * the roots of the division polynomial psi_n.  Factoring psi_p over Q_p gives
 * the degrees of the fields generated by those x-coordinates; together with a
 * quadratic decision for y this bounds the least degree of a nonzero
 * p-torsion point.
 *
 * Factor degrees are obtained without a general Q_p factorization algorithm:
 * the Newton polygon splits roots by valuation, integral valuation groups are
 * separated by a unit rescale x -> p^t x followed by a coprime Hensel lift of
 * the mod-p factorization, and a single segment whose slope denominator
 * equals its degree is irreducible outright (its roots are totally ramified).
 * Anything the polygon and one rescale round cannot separate is reported as
 * an inconclusive block rather than guessed at.
 */

#include "curves.hpp"
#include "polynomial.hpp"
#include <algorithm>
#include <climits>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pdeg {

// ---- division polynomials ----

// psi_n for odd n as a polynomial in x alone (even n would carry a factor y).
// Table of f_k with psi_k = f_k for odd k, psi_k = y * f_k for even k; the
// doubling rules below are the standard recurrence with y^2 = x^3 + Ax + B
// substituted according to the parity of the indices involved.
inline QPoly division_polynomial(const CurveQ& E, int n) {
    if (n % 2 == 0) throw std::domain_error("division_polynomial: even index not supported");
    if (n < 3) throw std::domain_error("division_polynomial: index must be >= 3");
    const Rat& A = E.A;
    const Rat& B = E.B;
    std::vector<QPoly> f(n + 1);
    f[0] = QPoly::zero();
    f[1] = QPoly::constant(Rat(1));
    f[2] = QPoly::constant(Rat(2));
    f[3] = QPoly(std::vector<Rat>{-A * A, B * 12, A * 6, Rat(0), Rat(3)});
    if (n >= 4)
        f[4] = QPoly(std::vector<Rat>{(B * B * 8 + A * A * A) * -4, A * B * -16, A * A * -20,
                                      B * 80, A * 20, Rat(0), Rat(4)});
    QPoly F(std::vector<Rat>{B, A, Rat(0), Rat(1)});
    QPoly F2 = F * F;
    for (int k = 5; k <= n; ++k) {
        int m = k / 2;
        if (k % 2 == 1) {
            QPoly t1 = f[m + 2] * f[m] * f[m] * f[m];
            QPoly t2 = f[m - 1] * f[m + 1] * f[m + 1] * f[m + 1];
            f[k] = m % 2 == 0 ? F2 * t1 - t2 : t1 - F2 * t2;
        } else {
            f[k] = f[m] * (f[m + 2] * f[m - 1] * f[m - 1] - f[m - 2] * f[m + 1] * f[m + 1]) * Rat(1, 2);
        }
    }
    // degree (n^2-1)/2 with leading coefficient n pins the bookkeeping
    if (f[n].degree() != (n * n - 1) / 2 || f[n].coeff(f[n].degree()) != Rat(n))
        throw std::logic_error("division_polynomial: recurrence self-check failed");
    return f[n];
}

// ---- polynomials over Q_p at working precision ----

struct PolyQp {
    Int p;
    int prec = 24;                      // absolute digit budget for lattice work
    std::vector<PadicRational> c;       // little-endian, leading coefficient nonzero
    std::vector<Rat> exact;             // the source coefficients when exactly known

    int degree() const { return static_cast<int>(c.size()) - 1; }

    static PolyQp from_rational(const QPoly& f, const Int& p, int prec = 24) {
        if (f.is_zero()) throw std::domain_error("PolyQp: zero polynomial");
        if (p < 2 || !is_prime(p)) throw std::domain_error("PolyQp: p must be prime");
        if (prec < 4) throw std::domain_error("PolyQp: need at least 4 digits");
        PolyQp g;
        g.p = p;
        g.prec = prec;
        for (const Rat& x : f.c) g.c.push_back(PadicRational::from_rational(x, p, prec));
        g.exact = f.c;
        return g;
    }
};

struct NewtonSegment {
    Rat slope;      // rise over run of the hull edge; its roots have valuation -slope
    int length = 0;
};

struct NewtonPolygon {
    std::vector<std::pair<int, long>> vertices;   // (coefficient index, valuation)
    std::vector<NewtonSegment> segments;          // slopes strictly increasing
};

namespace qpf {

// zero with an absolute precision bound far beyond anything arithmetic
// produces is a genuine zero, not a cancelled difference
inline bool is_exact_zero(const PadicRational& x) { return x.is_zero() && x.val_ >= (1L << 19); }

// multiply by p^k: exact, so the valuation and the precision bound both shift
inline PadicRational shift_p(PadicRational x, long k) {
    x.val_ += k;
    return x;
}

inline std::vector<PadicRational> monic(std::vector<PadicRational> c) {
    const PadicRational lead = c.back();
    for (auto& x : c) x = x / lead;
    return c;
}

// lower convex hull of { (i, vp(c_i)) }.  A coefficient that is only known to
// be zero modulo p^N contributes no point, but if its bound N does not place
// it strictly above the hull of the others, the polygon is undecided.
// The constant and leading coefficients must be distinguishable from zero.
inline std::vector<std::pair<int, long>> lower_hull(const std::vector<PadicRational>& c) {
    std::vector<std::pair<int, long>> pts, pending, hull;
    for (int i = 0; i < static_cast<int>(c.size()); ++i) {
        if (is_exact_zero(c[i])) continue;
        if (c[i].is_zero()) pending.push_back({i, c[i].val_});
        else pts.push_back({i, c[i].valuation()});
    }
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            // drop b when it lies on or above the chord from a to pt
            if ((long long)(b.second - a.second) * (pt.first - a.first) >=
                (long long)(pt.second - a.second) * (b.first - a.first))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    for (const auto& [i, bound] : pending) {
        size_t k = 1;
        while (k < hull.size() && hull[k].first < i) ++k;
        const auto& a = hull[k - 1];
        const auto& b = hull[k];
        // the true valuation is >= bound; below the hull line it could still
        // dent the polygon, so it must clear the line outright
        if ((long long)(bound - a.second) * (b.first - a.first) <
            (long long)(b.second - a.second) * (i - a.first))
            throw precision_error("newton polygon: coefficient " + std::to_string(i) +
                                  " is zero to O(p^" + std::to_string(bound) +
                                  "), not enough to place it above the hull");
    }
    return hull;
}

struct Seg {
    Rat lambda;     // common valuation of the roots on this segment
    int length = 0;
};

inline std::vector<Seg> hull_segments(const std::vector<std::pair<int, long>>& hull) {
    std::vector<Seg> segs;
    for (size_t i = 1; i < hull.size(); ++i)
        segs.push_back({Rat(Int(hull[i - 1].second - hull[i].second), Int(hull[i].first - hull[i - 1].first)),
                        hull[i].first - hull[i - 1].first});
    return segs;
}

// integer coefficient vector modulo p^N, N capped by every coefficient's
// absolute precision; requires all valuations >= 0
struct Lattice {
    std::vector<Int> z;
    int N = 0;
    Int pN;
};

inline Lattice to_lattice(const std::vector<PadicRational>& c, const Int& p, int cap) {
    long N = cap;
    for (const auto& x : c) {
        if (is_exact_zero(x)) continue;
        if (!x.is_zero() && x.val_ < 0) throw std::logic_error("to_lattice: negative valuation");
        N = std::min(N, x.abs_prec());
    }
    if (N < 2) throw precision_error("fewer than 2 p-adic digits left for factor lifting");
    Lattice L;
    L.N = static_cast<int>(N);
    L.pN = PadicRational::pow_int(p, N);
    for (const auto& x : c) {
        if (x.is_zero()) {
            L.z.push_back(0);
        } else {
            Int u = x.unit % PadicRational::pow_int(p, N - x.val_);
            L.z.push_back(u * PadicRational::pow_int(p, x.val_) % L.pN);
        }
    }
    return L;
}

inline PadicRational from_lattice(const Int& p, const Int& z_in, int N) {
    Int z = mod_floor(z_in, PadicRational::pow_int(p, N));
    if (z == 0) return PadicRational::exact_zero(p, N);
    long v = vp_int(z, p);
    return PadicRational::from_unit(p, v, z / PadicRational::pow_int(p, v), N - static_cast<int>(v));
}

inline std::vector<PadicRational> from_lattice_vec(const Int& p, const std::vector<Int>& z, int N) {
    std::vector<PadicRational> c;
    for (const Int& x : z) c.push_back(from_lattice(p, x, N));
    return c;
}

// shift valuations so the smallest one is 0 (unit content)
inline void primitive_normalize(std::vector<PadicRational>& c) {
    long mu = LONG_MAX;
    for (const auto& x : c)
        if (!x.is_zero()) mu = std::min(mu, x.val_);
    if (mu == LONG_MAX) throw std::logic_error("primitive_normalize: zero polynomial");
    if (mu != 0)
        for (auto& x : c) x = shift_p(x, -mu);
}

// substitute x -> p^t x
inline void rescale(std::vector<PadicRational>& c, long t) {
    for (size_t i = 0; i < c.size(); ++i) c[i] = shift_p(c[i], t * static_cast<long>(i));
}

struct Ctx {
    Int p;
    int cap;
    uint64_t seed;
    uint64_t count = 0;
    uint64_t next() { return splitmix64(seed ^ (++count * 0x9e3779b97f4a7c15ULL)); }
};

// f primitive with a unit leading coefficient, so all roots have valuation
// >= 0 and the reduction is x^a * v with v(0) != 0.  Lifting that coprime
// split separates the roots of positive valuation (first factor, degree a)
// from the unit roots (second factor).
inline std::pair<std::vector<PadicRational>, std::vector<PadicRational>>
split_off_positive(const std::vector<PadicRational>& f, Ctx& ctx) {
    Lattice L = to_lattice(f, ctx.p, ctx.cap);
    int deg = static_cast<int>(L.z.size()) - 1;
    int a = 0;
    while (a <= deg && L.z[a] % ctx.p == 0) ++a;
    if (a < 1 || a >= deg) throw std::logic_error("split_off_positive: no proper split");
    std::vector<Int> xa(a + 1, 0);
    xa[a] = 1;
    FpPoly gbar(ctx.p, xa);
    FpPoly hbar = FpPoly(ctx.p, std::vector<Int>(L.z.begin() + a, L.z.end())).monic();
    HenselFactors hf = hensel_factor(L.z, gbar, hbar, ctx.p, L.N);
    return {from_lattice_vec(ctx.p, hf.g, L.N), from_lattice_vec(ctx.p, hf.h, L.N)};
}

} // namespace qpf

// Newton polygon of f: for each segment of slope s and horizontal length l,
// f has exactly l roots of valuation -s in an algebraic closure of Q_p.
inline NewtonPolygon newton_polygon(const PolyQp& f) {
    if (f.c.empty()) throw std::domain_error("newton_polygon: zero polynomial");
    if (qpf::is_exact_zero(f.c.front()))
        throw std::domain_error("newton_polygon: zero constant term, factor out x first");
    if (f.c.front().is_zero())
        throw precision_error("newton_polygon: constant term indistinguishable from zero");
    if (f.c.back().is_zero())
        throw precision_error("newton_polygon: leading coefficient indistinguishable from zero");
    NewtonPolygon np;
    np.vertices = qpf::lower_hull(f.c);
    for (const auto& s : qpf::hull_segments(np.vertices)) np.segments.push_back({-s.lambda, s.length});
    return np;
}

// ---- certified factor degrees over Q_p ----

struct QpFactor {
    int degree = 0;
    // common valuation of the factor's roots (the negated polygon slope);
    // meaningful for single-valuation entries, i.e. everything but
    // multi-segment inconclusive blocks
    Rat slope = Rat(0);
    bool zero_root = false;             // the factor is x itself
    // certified-irreducible: proven irreducible over Q_p
    // certified-product-resolved: a true factor of this exact degree whose
    //   further splitting is known only through its residue structure
    // inconclusive: a block the polygon plus one rescale could not separate
    std::string status;
    std::string reason;                 // what stopped the analysis, when it stopped
    // (g0, len) per valuation group: any irreducible factor inside the group
    // has degree a multiple of g0 and at most len
    std::vector<std::pair<int, int>> parts;
    std::vector<PadicRational> coefficients;   // monic, at working precision
    // for unramified certificates: the irreducible mod-p image (after the
    // certifying rescale), a defining polynomial of the residue field
    std::vector<Int> residue_modulus;
};

struct FactorReport {
    Int p;
    int degree = 0;
    int precision = 0;                  // absolute digit budget used
    std::vector<QpFactor> factors;
};

namespace qpf {

inline void resolve(std::vector<PadicRational> f, Ctx& ctx, std::vector<QpFactor>& out);

// all roots are units: the mod-p factorization decides the structure
inline void slope0_resolve(const std::vector<PadicRational>& f, Ctx& ctx, std::vector<QpFactor>& out) {
    Lattice L = to_lattice(f, ctx.p, ctx.cap);
    FpPoly fbar(ctx.p, L.z);
    int deg = static_cast<int>(f.size()) - 1;
    if (fbar.degree() != deg) throw std::logic_error("slope0_resolve: leading coefficient not a unit");
    auto fs = factor_fp(fbar, ctx.next());
    if (fs.size() == 1) {
        const auto& [q, e] = fs[0];
        QpFactor F;
        F.degree = deg;
        F.slope = Rat(0);
        F.parts = {{q.degree(), deg}};
        F.coefficients = monic(f);
        F.residue_modulus = fbar.monic().c;
        if (e == 1) {
            F.status = "certified-irreducible";
        } else {
            F.status = "certified-product-resolved";
            F.reason = "reduction mod p is the " + std::to_string(e) +
                       "-th power of an irreducible of degree " + std::to_string(q.degree()) +
                       "; sub-factor degrees are multiples of " + std::to_string(q.degree());
        }
        out.push_back(std::move(F));
        return;
    }
    // lift the first irreducible power against the product of the rest
    FpPoly gbar = FpPoly::constant(ctx.p, 1);
    for (int i = 0; i < fs[0].second; ++i) gbar = gbar * fs[0].first;
    FpPoly hbar = FpPoly::constant(ctx.p, 1);
    for (size_t k = 1; k < fs.size(); ++k)
        for (int i = 0; i < fs[k].second; ++i) hbar = hbar * fs[k].first;
    HenselFactors hf = hensel_factor(L.z, gbar, hbar.monic(), ctx.p, L.N);
    slope0_resolve(from_lattice_vec(ctx.p, hf.g, L.N), ctx, out);
    slope0_resolve(from_lattice_vec(ctx.p, hf.h, L.N), ctx, out);
}

inline void resolve(std::vector<PadicRational> f, Ctx& ctx, std::vector<QpFactor>& out) {
    while (!f.empty() && is_exact_zero(f.back())) f.pop_back();
    if (f.empty()) throw std::domain_error("qp factorization: zero polynomial");
    if (f.back().is_zero())
        throw precision_error("qp factorization: leading coefficient indistinguishable from zero");
    // peel roots at x = 0
    size_t v = 0;
    while (v < f.size() - 1 && is_exact_zero(f[v])) ++v;
    if (v > 0) {
        QpFactor X;
        X.degree = 1;
        X.zero_root = true;
        X.status = "certified-irreducible";
        X.parts = {{1, 1}};
        X.coefficients = {PadicRational::exact_zero(ctx.p),
                          PadicRational::from_unit(ctx.p, 0, 1, ctx.cap)};
        for (size_t i = 0; i < v; ++i) out.push_back(X);
        f.erase(f.begin(), f.begin() + static_cast<long>(v));
        if (f.size() == 1) return;
    }
    if (f[0].is_zero())
        throw precision_error("qp factorization: constant term indistinguishable from zero");
    primitive_normalize(f);
    int deg = static_cast<int>(f.size()) - 1;
    if (deg == 1) {
        QpFactor F;
        F.degree = 1;
        F.slope = Rat(Int(f[0].valuation() - f[1].valuation()));
        F.status = "certified-irreducible";
        F.parts = {{1, 1}};
        F.coefficients = monic(f);
        out.push_back(std::move(F));
        return;
    }
    auto segs = hull_segments(lower_hull(f));
    if (segs.size() == 1) {
        Rat lam = segs[0].lambda;
        if (lam == 0) {
            slope0_resolve(f, ctx, out);
            return;
        }
        if (rat_den(lam) == 1) {
            // unit-root problem after x -> p^t x; translate the results back
            long t = rat_num(lam).convert_to<long>();
            rescale(f, t);
            primitive_normalize(f);
            size_t first = out.size();
            slope0_resolve(f, ctx, out);
            for (size_t k = first; k < out.size(); ++k) {
                QpFactor& F = out[k];
                F.slope = lam;
                for (int i = 0; i <= F.degree; ++i)
                    F.coefficients[i] = shift_p(F.coefficients[i], t * (F.degree - i));
            }
            return;
        }
        int den = rat_den(lam).convert_to<int>();
        QpFactor F;
        F.degree = deg;
        F.slope = lam;
        F.parts = {{den, deg}};
        F.coefficients = monic(f);
        if (den == deg) {
            // the constant term of any factor has valuation (factor degree) *
            // lambda, an integer, so the only factor is the whole polynomial
            F.status = "certified-irreducible";
        } else {
            F.status = "inconclusive";
            std::ostringstream os;
            os << "single segment of root valuation " << lam << " with denominator " << den
               << " < " << deg << ": separation needs a ramified-extension factorization";
            F.reason = os.str();
        }
        out.push_back(std::move(F));
        return;
    }
    // several valuation groups: peel an integral extreme group if one exists
    Rat top = segs.front().lambda;
    Rat bot = segs.back().lambda;
    if (rat_den(bot) == 1) {
        // make the smallest-valuation group the unit roots; the leading
        // coefficient becomes a unit, so the reduction splits everything
        // of positive valuation away from it
        long t = rat_num(bot).convert_to<long>();
        auto g = f;
        rescale(g, t);
        primitive_normalize(g);
        auto [pos, unit] = split_off_positive(g, ctx);
        rescale(pos, -t);
        rescale(unit, -t);
        resolve(std::move(pos), ctx, out);
        resolve(std::move(unit), ctx, out);
        return;
    }
    if (rat_den(top) == 1) {
        // symmetric case: after the rescale the largest-valuation group has
        // the unit roots and the constant term is the unit coefficient, so
        // reversing puts the split into the same shape
        long t = rat_num(top).convert_to<long>();
        auto g = f;
        rescale(g, t);
        primitive_normalize(g);
        std::reverse(g.begin(), g.end());
        auto [pos, unit] = split_off_positive(g, ctx);
        std::reverse(pos.begin(), pos.end());
        std::reverse(unit.begin(), unit.end());
        rescale(pos, -t);
        rescale(unit, -t);
        resolve(std::move(pos), ctx, out);
        resolve(std::move(unit), ctx, out);
        return;
    }
    QpFactor F;
    F.degree = deg;
    F.slope = bot;
    F.status = "inconclusive";
    {
        std::ostringstream os;
        os << "root valuation groups";
        for (const auto& s : segs) os << " " << s.lambda << "x" << s.length;
        os << " have no integral extreme, so no unit-rescale separation applies";
        F.reason = os.str();
    }
    for (const auto& s : segs)
        F.parts.push_back({rat_den(s.lambda).convert_to<int>(), s.length});
    F.coefficients = monic(f);
    out.push_back(std::move(F));
}

} // namespace qpf

inline FactorReport qp_factor_degrees(const PolyQp& f, uint64_t seed = 0) {
    if (f.degree() < 1) throw std::domain_error("qp_factor_degrees: need degree >= 1");
    // squarefree certificate: a squarefree reduction modulo an auxiliary prime
    // proves the discriminant nonzero over Q
    if (!f.exact.empty()) {
        QPoly g(f.exact);
        bool certified = false;
        for (int qq : {5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61}) {
            Int q(qq);
            if (q == f.p) continue;
            try {
                FpPoly gb = g.mod_p(q);
                if (gb.degree() != g.degree()) continue;
                if (FpPoly::gcd(gb, gb.derivative()).degree() == 0) {
                    certified = true;
                    break;
                }
            } catch (const std::domain_error&) {
                continue;
            }
        }
        if (!certified) throw std::domain_error("qp_factor_degrees: input not certified squarefree");
    }
    qpf::Ctx ctx{f.p, f.prec, seed};
    std::vector<QpFactor> factors;
    qpf::resolve(f.c, ctx, factors);
    int total = 0;
    for (const auto& F : factors) total += F.degree;
    if (total != f.degree())
        throw std::logic_error("qp_factor_degrees: factor degrees do not sum to the input degree");
    std::sort(factors.begin(), factors.end(), [](const QpFactor& a, const QpFactor& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        if (a.slope != b.slope) return a.slope < b.slope;
        return a.status < b.status;
    });
    FactorReport rep;
    rep.p = f.p;
    rep.degree = f.degree();
    rep.precision = f.prec;
    rep.factors = std::move(factors);
    return rep;
}

inline FactorReport qp_factor_degrees(const QPoly& f, const Int& p, int prec = 24, uint64_t seed = 0) {
    return qp_factor_degrees(PolyQp::from_rational(f, p, prec), seed);
}

// ---- brute-force degree bounds ----

// whether y^2 = x0^3 + A*x0 + B is solvable in Q_p
inline bool curve_has_qp_y(const CurveQ& E, const PadicRational& x0) {
    const Int& p = x0.p;
    int pr = std::max(x0.is_zero() ? PadicRational::default_prec : x0.prec, 8);
    PadicRational A = PadicRational::from_rational(E.A, p, pr);
    PadicRational B = PadicRational::from_rational(E.B, p, pr);
    PadicRational w = x0 * x0 * x0 + A * x0 + B;
    if (w.is_zero()) {
        if (qpf::is_exact_zero(w)) return true;   // y = 0
        throw precision_error("curve_has_qp_y: value indistinguishable from zero");
    }
    return is_square_qp(w);
}

struct DpBound {
    int lo = 0, hi = 0;                 // min over factors of the point degree
    std::vector<int> candidates;        // admissible exact values within [lo, hi]
    FactorReport report;

    bool exact() const { return lo == hi; }
};

namespace qpf {

struct Contribution {
    int lo = 0, hi = 0;
    bool exact = false;
    std::vector<int> cand;
};

// point degree over the x-field of one reported factor.  The x-coordinate of
// a root generates a degree-m extension; the point itself lives there iff
// x^3 + Ax + B is a square in it, else in its quadratic extension.
inline Contribution point_degree(const QpFactor& F, const CurveQ& E, const Int& p) {
    Contribution c;
    int m = F.degree;
    if (F.zero_root) {
        // the point is (0, sqrt(B)); B != 0 since (0,0) would be 2-torsion
        if (E.B == 0) throw std::logic_error("point_degree: x | psi_p with B = 0");
        int e = is_square_qp(E.B, p) ? 1 : 2;
        c = {e, e, true, {e}};
        return c;
    }
    if (F.status == "certified-irreducible" && rat_den(F.slope) == 1) {
        long lam = rat_num(F.slope).convert_to<long>();
        if (m == 1) {
            // root in Q_p: decide y directly
            PadicRational x0 = -F.coefficients[0];
            int e = curve_has_qp_y(E, x0) ? 1 : 2;
            c = {e, e, true, {e}};
            return c;
        }
        // unramified field of degree m, residue field given by the certificate
        LocalContext K(p, m, 1, F.residue_modulus);
        RingElem r = RingElem::gen(K);
        bool decided = false, square = false;
        if (lam == 0) {
            RingElem w = r * r * r + CurveQ::elem(E.A, K) * r + CurveQ::elem(E.B, K);
            if (!w.is_zero()) {
                decided = true;
                square = fq_is_square(w);
            }
        } else if (lam > 0) {
            // the value is B + O(p^min(lam,...)); decidable when B is a unit
            if (E.B != 0 && vp(E.B, p) == 0) {
                decided = true;
                square = fq_is_square(CurveQ::elem(E.B, K));
            }
        } else {
            // val(x^3 + Ax + B) = 3*lam exactly
            if ((3 * lam) % 2 != 0) {
                decided = true;
                square = false;
            } else {
                decided = true;
                square = fq_is_square(r * r * r);
            }
        }
        if (decided) {
            int e = square ? m : 2 * m;
            c = {e, e, true, {e}};
        } else {
            c = {m, 2 * m, false, {m, 2 * m}};
        }
        return c;
    }
    if (F.status == "certified-irreducible") {
        // ramified x-field; the quadratic y-decision is not attempted
        c = {m, 2 * m, false, {m, 2 * m}};
        return c;
    }
    // block: x-degrees are multiples of g0 within each group
    int lo = INT_MAX;
    for (const auto& [g0, len] : F.parts) {
        lo = std::min(lo, g0);
        for (int d = g0; d <= len; d += g0) {
            c.cand.push_back(d);
            c.cand.push_back(2 * d);
        }
    }
    c.lo = lo;
    c.hi = 2 * m;
    c.exact = false;
    return c;
}

} // namespace qpf

// Factor psi_p over Q_p and bound the least degree of a nonzero p-torsion
// point.  Exact when some factor's point degree is decided and no other
// factor could go lower; otherwise an interval with its admissible values.
inline DpBound dp_bruteforce(const CurveQ& E_in, const Int& p, int p_budget = 13, uint64_t seed = 0) {
    if (p < 5 || !is_prime(p)) throw std::domain_error("dp_bruteforce: p must be a prime >= 5");
    if (p > p_budget)
        throw std::domain_error("dp_bruteforce: psi_p has degree " +
                                Int((p * p - 1) / 2).str() + ", beyond the factorization budget");
    CurveQ E = p_minimal_model(E_in, p);
    if (vp(E.discriminant(), p) != 0 && (E.A == 0 || vp(E.A, p) != 0))
        throw std::domain_error("dp_bruteforce: additive reduction at p");
    QPoly psi = division_polynomial(E, p.convert_to<int>());

    // precision ladder: lattice work that runs out of digits retries doubled
    for (int prec = 24;; prec *= 2) {
        bool last = prec >= 192;
        try {
            FactorReport rep = qp_factor_degrees(PolyQp::from_rational(psi, p, prec), seed);
            std::vector<qpf::Contribution> parts;
            for (const QpFactor& F : rep.factors) {
                try {
                    parts.push_back(qpf::point_degree(F, E, p));
                } catch (const precision_error&) {
                    if (!last) throw;
                    // keep the sound interval when digits ran out for the y-test
                    parts.push_back({F.degree, 2 * F.degree, false, {F.degree, 2 * F.degree}});
                }
            }
            DpBound out;
            out.report = std::move(rep);
            int lo = INT_MAX, hi = INT_MAX, best = INT_MAX;
            for (const auto& c : parts) {
                lo = std::min(lo, c.lo);
                hi = std::min(hi, c.hi);
                if (c.exact) best = std::min(best, c.lo);
            }
            bool is_exact = best != INT_MAX;
            for (const auto& c : parts) is_exact = is_exact && c.lo >= best;
            if (is_exact) {
                out.lo = out.hi = best;
                out.candidates = {best};
            } else {
                out.lo = lo;
                out.hi = hi;
                std::vector<int> cand;
                for (const auto& c : parts)
                    for (int d : c.cand)
                        if (d >= lo && d <= hi) cand.push_back(d);
                std::sort(cand.begin(), cand.end());
                cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
                out.candidates = std::move(cand);
            }
            return out;
        } catch (const precision_error&) {
            if (last) throw;
        }
    }
}

namespace qpf {

// Certified simple roots of f in Z_p, from its lattice image mod p^N.  A
// residue that is a simple root of the reduction Newton-lifts directly; a
// repeated residue r is zoomed into via x = r + p*y, stripping the content
// p^v (v >= 1, so the recursion loses digits and terminates).  Roots that
// stay congruent to a conjugate cluster to the last digit are dropped:
// only separations the lattice can see are reported.  Returns (value, m)
// with the value certified mod p^m.
inline std::vector<std::pair<Int, int>> zp_simple_roots(const std::vector<Int>& z, int N,
                                                        const Int& p, uint64_t seed) {
    std::vector<std::pair<Int, int>> out;
    if (N < 2) return out;
    Int pN = 1;
    for (int i = 0; i < N; ++i) pN *= p;
    FpPoly gbar(p, z);
    if (gbar.degree() < 1) return out;
    FpPoly gbar_d = gbar.derivative();
    for (const Int& r : roots_fp(gbar, seed)) {
        if (gbar_d.eval(r) != 0) {
            LocalContext R(p, 1, N);
            std::vector<RingElem> gr;
            gr.reserve(z.size());
            for (const Int& c : z) gr.push_back(RingElem(R, c));
            out.push_back({hensel_lift_root(gr, RingElem(R, r)).c[0], N});
            continue;
        }
        // Taylor shift to r, then scale y by p; every coefficient gains a
        // factor of p beyond the constant, and the constant is divisible by
        // p, so the content exponent v is at least 1
        std::vector<Int> w = z;
        for (size_t k = 0; k + 1 < w.size(); ++k)
            for (size_t i = w.size() - 1; i > k; --i) w[i - 1] = (w[i - 1] + w[i] * r) % pN;
        Int pj = 1;
        for (size_t j = 0; j < w.size(); ++j) {
            w[j] = w[j] * pj % pN;
            if (j + 1 < w.size()) pj = std::min(Int(pj * p), pN);
        }
        int v = N;
        for (const Int& c : w)
            if (c != 0) v = std::min(v, static_cast<int>(vp_int(c, p)));
        if (v >= N) continue;  // the whole zoom is below lattice resolution
        Int pv = 1;
        for (int i = 0; i < v; ++i) pv *= p;
        for (auto& c : w) c /= pv;
        for (auto [y, m] : zp_simple_roots(w, N - v, p, splitmix64(seed + 1))) {
            int mm = std::min(N, m + 1);
            Int pm = 1;
            for (int i = 0; i < mm; ++i) pm *= p;
            out.push_back({mod_floor(r + p * y, pm), mm});
        }
    }
    return out;
}

}  // namespace qpf

// Simple roots of f lying in Z_p (exact zero roots are peeled off first;
// negative-valuation roots are out of scope).  Each reported root is
// certified simple at the working precision.
inline std::vector<PadicRational> qp_simple_roots(const QPoly& f_in, const Int& p, int prec = 24,
                                                  uint64_t seed = 0) {
    PolyQp F = PolyQp::from_rational(f_in, p, prec);
    std::vector<PadicRational> roots;
    std::vector<PadicRational> f = F.c;
    size_t v = 0;
    while (v < f.size() - 1 && qpf::is_exact_zero(f[v])) ++v;
    if (v == 1) roots.push_back(PadicRational::exact_zero(p));   // simple root at 0
    if (v > 0) f.erase(f.begin(), f.begin() + static_cast<long>(v));
    if (f.size() <= 1) return roots;
    qpf::primitive_normalize(f);
    qpf::Lattice L = qpf::to_lattice(f, p, prec);
    for (auto [y, m] : qpf::zp_simple_roots(L.z, L.N, p, seed)) {
        if (y == 0) continue;  // congruent to 0 at full precision: not separable
        long t = vp_int(y, p);
        Int pt = 1;
        for (long i = 0; i < t; ++i) pt *= p;
        roots.push_back(PadicRational::from_unit(p, t, y / pt, m - static_cast<int>(t)));
    }
    std::sort(roots.begin(), roots.end(), [](const PadicRational& a, const PadicRational& b) {
        long va = a.is_zero() ? LONG_MAX : a.val_;
        long vb = b.is_zero() ? LONG_MAX : b.val_;
        if (va != vb) return va < vb;
        return a.unit < b.unit;
    });
    return roots;
}

} // namespace pdeg

#endif
