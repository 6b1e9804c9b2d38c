#ifndef PDEG_CURVES_HPP
#define PDEG_CURVES_HPP

/* Short Weierstrass curves y^2 z = x^3 + A x z^2 + B z^3 over Q and over the
 * finite local rings GR(p^j, d), with naive projective points and a complete
 * group law.
 *
 * The group law evaluates a complete system of three bidegree-(2,2) addition
 * laws and keeps the first output with a unit coordinate.  Each law computes
 * P + Q wherever its output is primitive; the failure loci (pairs whose
 * output has all coordinates in the maximal ideal) are controlled by the
 * reductions of P and Q:
 *
 *   law 0 fails only when P - Q reduces to a point of exact order 2,
 *   law 1 fails only when P and Q have equal reductions,
 *   law 2 fails only when P - Q reduces into the line x = 0.
 *
 * The first two failure sets are disjoint, so the selection always succeeds;
 * law 2 is a redundant backstop.  Law 0 is the Bosma-Lenstra law centered at
 * the line y = 0; laws 1 and 2 (lines z = 0 and x = 0) were computed by exact
 * linear algebra in the 3-dimensional space of addition laws and verified
 * symbolically against the chord formulas.
 */

#include "local_arith.hpp"
#include <array>
#include <optional>

namespace pdeg {

class CurveR;

// primitive projective triple over a finite local ring, canonically scaled so
// the last unit coordinate in the order (z, y, x) equals 1
class ProjPointNaive {
public:
    RingElem x, y, z;

    ProjPointNaive() = default;
    ProjPointNaive(RingElem x_, RingElem y_, RingElem z_)
        : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {
        if (!x.is_unit() && !y.is_unit() && !z.is_unit())
            throw std::domain_error("ProjPointNaive: coordinates generate a proper ideal");
        canonicalize();
    }

    static ProjPointNaive identity(const LocalContext& R) {
        return ProjPointNaive(RingElem::zero(R), RingElem::one(R), RingElem::zero(R));
    }

    bool is_identity() const { return x.is_zero() && z.is_zero(); }
    bool operator==(const ProjPointNaive& o) const { return x == o.x && y == o.y && z == o.z; }
    bool operator!=(const ProjPointNaive& o) const { return !(*this == o); }

    ProjPointNaive negated() const { return ProjPointNaive(x, -y, z); }

    const LocalContext& ctx() const { return *x.ctx; }

    std::string str() const { return "(" + x.str() + ":" + y.str() + ":" + z.str() + ")"; }

    // reduction to lower precision stays primitive: some coordinate is a unit
    ProjPointNaive reduce_to(const LocalContext& target) const {
        return ProjPointNaive(x.reduce_to(target), y.reduce_to(target), z.reduce_to(target));
    }

private:
    void canonicalize() {
        RingElem* pivot = nullptr;
        if (z.is_unit()) pivot = &z;
        else if (y.is_unit()) pivot = &y;
        else pivot = &x;
        RingElem inv = pivot->inverse();
        x = x * inv;
        y = y * inv;
        z = z * inv;
    }
};

class CurveR {
public:
    const LocalContext* ctx;
    RingElem A, B;

    CurveR(const LocalContext& R, RingElem A_, RingElem B_)
        : ctx(&R), A(std::move(A_)), B(std::move(B_)) {
        if (!discriminant().is_unit())
            throw std::domain_error("CurveR: discriminant is not a unit");
    }

    RingElem discriminant() const {
        // -16(4A^3 + 27B^2)
        RingElem a3 = A * A * A, b2 = B * B;
        return -(a3 * Int(4) + b2 * Int(27)) * Int(16);
    }

    RingElem j_invariant() const {
        // 6912 A^3 / (4A^3 + 27B^2)
        RingElem a3 = A * A * A;
        RingElem den = a3 * Int(4) + B * B * Int(27);
        return a3 * Int(6912) * den.inverse();
    }

    bool on_curve(const ProjPointNaive& P) const {
        RingElem lhs = P.y * P.y * P.z;
        RingElem rhs = P.x * P.x * P.x + A * P.x * P.z * P.z + B * P.z * P.z * P.z;
        return lhs == rhs;
    }

    ProjPointNaive identity() const { return ProjPointNaive::identity(*ctx); }

    ProjPointNaive add(const ProjPointNaive& P, const ProjPointNaive& Q) const {
        const RingElem &X1 = P.x, &Y1 = P.y, &Z1 = P.z, &X2 = Q.x, &Y2 = Q.y, &Z2 = Q.z;
        RingElem b3 = B * Int(3);

        // shared bilinear pieces
        RingElem XY = X1 * Y2 + X2 * Y1;
        RingElem YZ = Y1 * Z2 + Y2 * Z1;
        RingElem XZ = X1 * Z2 + X2 * Z1;
        RingElem YY = Y1 * Y2;
        RingElem XX = X1 * X2;
        RingElem ZZ = Z1 * Z2;

        // law 0 is exceptional only over differences of exact residue order 2
        {
            RingElem t0 = YY - A * XZ - b3 * ZZ;        // Y1Y2 - a(X1Z2+X2Z1) - 3bZ1Z2
            RingElem t1 = YY + A * XZ + b3 * ZZ;
            RingElem t2 = A * XX + b3 * XZ - A * A * ZZ;
            RingElem t3 = XX * Int(3) + A * ZZ;
            RingElem X3 = XY * t0 - YZ * t2;
            RingElem Y3 = t1 * t0 + t3 * t2;
            RingElem Z3 = YZ * t1 + XY * t3;
            if (X3.is_unit() || Y3.is_unit() || Z3.is_unit())
                return ProjPointNaive(std::move(X3), std::move(Y3), std::move(Z3));
        }
        // law 1 is exceptional only over equal reductions
        {
            RingElem aXZm = X1 * Z2 - X2 * Z1;          // antisymmetric pieces
            RingElem X3 = -A * (X1 * X1 * Z2 * Z2 - X2 * X2 * Z1 * Z1) - b3 * ZZ * aXZm
                          + X1 * Y2 * (Y1 * Z2 * Int(2) + Y2 * Z1) - X2 * Y1 * (Y1 * Z2 + Y2 * Z1 * Int(2));
            RingElem Y3 = A * (X1 * Y1 * Z2 * Z2 - X2 * Y2 * Z1 * Z1)
                          + A * ZZ * (X2 * Y1 - X1 * Y2) * Int(2)
                          + b3 * ZZ * (Y1 * Z2 - Y2 * Z1)
                          - XX * (X1 * Y2 - X2 * Y1) * Int(3)
                          - YY * (Y1 * Z2 - Y2 * Z1);
            RingElem Z3 = A * ZZ * aXZm + XX * aXZm * Int(3) - (Y1 * Y1 * Z2 * Z2 - Y2 * Y2 * Z1 * Z1);
            if (X3.is_unit() || Y3.is_unit() || Z3.is_unit())
                return ProjPointNaive(std::move(X3), std::move(Y3), std::move(Z3));
        }
        // law 2 is exceptional only over differences reducing into the line x = 0
        {
            RingElem X3 = -A * A * ZZ * (X1 * Z2 - X2 * Z1) + A * XX * (X1 * Z2 - X2 * Z1)
                          + b3 * (X1 * X1 * Z2 * Z2 - X2 * X2 * Z1 * Z1)
                          + (X1 * Y2 - X2 * Y1) * (X1 * Y2 + X2 * Y1);
            RingElem Y3 = A * A * ZZ * (Y1 * Z2 - Y2 * Z1)
                          + A * (X1 * X1 * Y2 * Z2 - X2 * X2 * Y1 * Z1)
                          + A * XX * (Y2 * Z1 - Y1 * Z2) * Int(2)
                          - b3 * (X1 * Y1 * Z2 * Z2 - X2 * Y2 * Z1 * Z1)
                          + b3 * ZZ * (X1 * Y2 - X2 * Y1) * Int(2)
                          + YY * (X1 * Y2 - X2 * Y1);
            RingElem Z3 = -A * (X1 * X1 * Z2 * Z2 - X2 * X2 * Z1 * Z1) - b3 * ZZ * (X1 * Z2 - X2 * Z1)
                          - X1 * Y2 * (Y1 * Z2 * Int(2) - Y2 * Z1) - X2 * Y1 * (Y1 * Z2 - Y2 * Z1 * Int(2));
            if (X3.is_unit() || Y3.is_unit() || Z3.is_unit())
                return ProjPointNaive(std::move(X3), std::move(Y3), std::move(Z3));
        }
        throw std::logic_error("CurveR::add: no addition law produced a primitive output");
    }

    ProjPointNaive smul(Int n, const ProjPointNaive& P) const {
        ProjPointNaive base = n < 0 ? P.negated() : P;
        if (n < 0) n = -n;
        ProjPointNaive acc = identity();
        if (n == 0) return acc;
        // left-to-right double-and-add
        long top = static_cast<long>(boost::multiprecision::msb(n));
        for (long i = top; i >= 0; --i) {
            acc = add(acc, acc);
            if (boost::multiprecision::bit_test(n, static_cast<unsigned>(i))) acc = add(acc, base);
        }
        return acc;
    }

    CurveR reduce_to(const LocalContext& target) const {
        return CurveR(target, A.reduce_to(target), B.reduce_to(target));
    }

    bool operator==(const CurveR& o) const { return *ctx == *o.ctx && A == o.A && B == o.B; }
};

// exact p-divisibilities (m, n) of (A, B); -1 encodes the infinite sentinel of
// a zero coefficient
struct CurveType {
    int m, n;
    static constexpr int inf = -1;
    bool operator==(const CurveType& o) const { return m == o.m && n == o.n; }
};

inline CurveType curve_type(const CurveR& E) {
    int m = E.A.is_zero() ? CurveType::inf : E.A.val();
    int n = E.B.is_zero() ? CurveType::inf : E.B.val();
    return {m, n};
}

// j1 = B^2/alpha^3 in GR(p^(j-m), d) for type (m, 0), A = p^m alpha;
// symmetrically A^3/beta^2 in GR(p^(j-n), d) for type (0, n)
struct J1Invariant {
    LocalContext ring;
    RingElem value;
};

inline J1Invariant j1_invariant(const CurveR& E) {
    CurveType t = curve_type(E);
    const LocalContext& R = *E.ctx;
    if (t.m >= 1 && t.m != CurveType::inf && t.n == 0) {
        if (t.m >= R.j) throw std::domain_error("j1_invariant: precision too low for type");
        LocalContext S = R.reduced(R.j - t.m);
        RingElem alpha = E.A.unit_part().reduce_to(S);
        RingElem b = E.B.reduce_to(S);
        return {S, b * b * (alpha * alpha * alpha).inverse()};
    }
    if (t.n >= 1 && t.n != CurveType::inf && t.m == 0) {
        if (t.n >= R.j) throw std::domain_error("j1_invariant: precision too low for type");
        LocalContext S = R.reduced(R.j - t.n);
        RingElem beta = E.B.unit_part().reduce_to(S);
        RingElem a = E.A.reduce_to(S);
        return {S, a * a * a * (beta * beta).inverse()};
    }
    throw std::domain_error("j1 undefined for this type");
}

// search for a unit u with A1 = u^4 A2 and B1 = u^6 B2: residue-field scan for
// the class of u, then a Hensel lift through whichever coefficient is a unit
// (the unit discriminant rules out A and B both non-units)
inline std::optional<RingElem> is_isomorphic(const CurveR& E1, const CurveR& E2) {
    const LocalContext& R = *E1.ctx;
    if (!(R == *E2.ctx)) throw std::domain_error("is_isomorphic: context mismatch");
    if (E1.A.is_zero() != E2.A.is_zero() || E1.B.is_zero() != E2.B.is_zero()) return std::nullopt;
    if (!E1.A.is_zero() && E1.A.val() != E2.A.val()) return std::nullopt;
    if (!E1.B.is_zero() && E1.B.val() != E2.B.val()) return std::nullopt;

    const bool via_A = E2.A.is_unit();
    if (!via_A && !E2.B.is_unit()) return std::nullopt;   // cannot happen for unit discriminants
    const int k = via_A ? 4 : 6;
    RingElem target = via_A ? E1.A * E2.A.inverse() : E1.B * E2.B.inverse();

    LocalContext F = R.reduced(1);
    RingElem tbar = target.reduce_to(F);
    Int q = F.residue_size();
    for (Int idx = 1; idx < q; ++idx) {
        RingElem ubar = RingElem::from_index(F, idx);
        if (ubar.pow(k) != tbar) continue;
        // u^k - target has derivative k u^(k-1), a unit (p >= 5)
        std::vector<RingElem> f(k + 1, RingElem::zero(R));
        f[0] = -target;
        f[k] = RingElem::one(R);
        RingElem u = hensel_lift_root(f, ubar.lift_to(R));
        if (E1.A == u.pow(4) * E2.A && E1.B == u.pow(6) * E2.B) return u;
    }
    return std::nullopt;
}

// coordinate-wise reduction of a point (already available as method); the lift
// picks an arbitrary preimage through the chart where Hensel applies
inline ProjPointNaive lift_point(const CurveR& E_big, const ProjPointNaive& P_small) {
    const LocalContext& R = *E_big.ctx;
    const LocalContext& S = P_small.ctx();
    if (P_small.z.is_unit()) {
        // affine chart (x, y, 1); z unit forces a canonical z = 1 form
        RingElem xs = P_small.x.lift_to(R);
        RingElem ys = P_small.y.lift_to(R);
        if (P_small.y.is_unit()) {
            // solve Y^2 = x^3 + A x + B near ys (2y a unit)
            RingElem rhs = xs * xs * xs + E_big.A * xs + E_big.B;
            std::vector<RingElem> f{-rhs, RingElem::zero(R), RingElem::one(R)};
            RingElem y = hensel_lift_root(f, ys);
            return ProjPointNaive(xs, y, RingElem::one(R));
        }
        // 2-torsion residue: solve X^3 + A X + (B - y^2) = 0 near xs
        // (3x^2 + A is a unit there since the cubic is separable)
        RingElem cst = E_big.B - ys * ys;
        std::vector<RingElem> f{cst, E_big.A, RingElem::zero(R), RingElem::one(R)};
        RingElem x = hensel_lift_root(f, xs);
        return ProjPointNaive(x, ys, RingElem::one(R));
    }
    // residue identity: chart y = 1, solve Z = X^3 + A X Z^2 + B Z^3 in Z
    RingElem xs = P_small.x.lift_to(R);
    // F(Z) = x^3 + A x Z^2 + B Z^3 - Z has F'(z) = -1 mod p
    std::vector<RingElem> f{xs * xs * xs, -RingElem::one(R), E_big.A * xs, E_big.B};
    RingElem z = hensel_lift_root(f, P_small.z.lift_to(R));
    return ProjPointNaive(xs, RingElem::one(R), z);
}

// ---- curves over Q ----

struct CurveQ {
    Rat A, B;

    CurveQ(Rat A_, Rat B_) : A(std::move(A_)), B(std::move(B_)) {
        if (discriminant() == 0) throw std::domain_error("CurveQ: singular curve (discriminant 0)");
    }

    Rat discriminant() const { return Rat(-16) * (4 * A * A * A + 27 * B * B); }

    Rat j_invariant() const {
        return Rat(6912) * A * A * A / (4 * A * A * A + 27 * B * B);
    }

    // image over GR(p^j, d); coefficients must be p-integral
    CurveR over(const LocalContext& R) const {
        return CurveR(R, elem(A, R), elem(B, R));
    }

    static RingElem elem(const Rat& v, const LocalContext& R) {
        Int den = rat_den(v);
        if (den % R.p == 0) throw std::domain_error("CurveQ: coefficient not p-integral");
        Int num = mod_floor(rat_num(v), R.pj);
        return RingElem(R, num * invmod(den, R.pj) % R.pj);
    }
};

// the unique model (u^4 A, u^6 B) with u a power of p such that both
// coefficients are p-integral and not both of (A/p^4, B/p^6) are; every
// rescaling step changes vp(discriminant) by 12, so the reduction type at p
// is read off this model
inline CurveQ p_minimal_model(const CurveQ& E, const Int& p) {
    Rat A = E.A, B = E.B;
    Rat p4 = Rat(p * p * p * p), p6 = p4 * Rat(p * p);
    auto up = [&] { return (A != 0 && vp(A, p) < 0) || (B != 0 && vp(B, p) < 0); };
    auto down = [&] { return (A == 0 || vp(A, p) >= 4) && (B == 0 || vp(B, p) >= 6); };
    while (up()) { A *= p4; B *= p6; }
    while (down()) { A /= p4; B /= p6; }
    return CurveQ(A, B);
}

} // namespace pdeg

#endif
