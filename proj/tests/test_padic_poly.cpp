#include <pdeg/counting.hpp>
#include <pdeg/padic_poly.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

using namespace pdeg;

namespace {

// evaluate f at a p-adic point by Horner at matching precision
PadicRational eval_qp(const QPoly& f, const PadicRational& x, int prec) {
    PadicRational acc = PadicRational::exact_zero(x.p);
    for (size_t i = f.c.size(); i-- > 0;)
        acc = acc * x + PadicRational::from_rational(f.c[i], x.p, prec);
    return acc;
}

}  // namespace

TEST_CASE("division polynomial closed forms and degrees") {
    CurveQ E{Rat(1), Rat(1)};
    QPoly f3 = division_polynomial(E, 3);
    CHECK(f3.c == std::vector<Rat>{Rat(-1), Rat(12), Rat(6), Rat(0), Rat(3)});
    for (int n : {5, 7, 13}) {
        QPoly f = division_polynomial(E, n);
        CHECK(f.degree() == (n * n - 1) / 2);
        CHECK(f.lead() == Rat(n));
    }
    CHECK_THROWS_AS(division_polynomial(E, 4), std::domain_error);
    CHECK_THROWS_AS(division_polynomial(E, 1), std::domain_error);
}

TEST_CASE("division polynomial vanishes exactly on torsion x-coordinates") {
    // order-3 points of E_{1,1}(F_5): the group is Z/9, so exactly two
    CurveQ E{Rat(1), Rat(1)};
    QPoly f3 = division_polynomial(E, 3);
    LocalContext F(5, 1, 1);
    CurveR Ef = E.over(F);
    int hits = 0;
    for (const auto& P : enumerate_points(Ef)) {
        if (P.is_identity()) continue;
        bool tors = Ef.smul(3, P).is_identity();
        Int v = 0;
        for (size_t i = f3.c.size(); i-- > 0;) v = mod_floor(v * P.x.c[0] + rat_mod(f3.c[i], Int(5)), Int(5));
        CHECK((v == 0) == tors);
        if (tors) ++hits;
    }
    CHECK(hits == 2);
}

TEST_CASE("Newton polygons of explicit polynomials") {
    Int p = 5;
    {
        PolyQp f = PolyQp::from_rational(QPoly(std::vector<Rat>{Rat(-5), Rat(0), Rat(1)}), p, 12);
        NewtonPolygon np = newton_polygon(f);
        REQUIRE(np.vertices.size() == 2);
        CHECK(np.vertices[0] == std::pair<int, long>{0, 1});
        CHECK(np.vertices[1] == std::pair<int, long>{2, 0});
        REQUIRE(np.segments.size() == 1);
        CHECK(np.segments[0].slope == Rat(-1, 2));
        CHECK(np.segments[0].length == 2);
    }
    {
        PolyQp f = PolyQp::from_rational(QPoly(std::vector<Rat>{Rat(-1), Rat(1)}), p, 12);
        NewtonPolygon np = newton_polygon(f);
        REQUIRE(np.segments.size() == 1);
        CHECK(np.segments[0].slope == Rat(0));
    }
}

TEST_CASE("imprecise coefficients below the hull are tolerated, on it rejected") {
    Int p = 5;
    // x^2 + z*x + 1 with z an imprecise zero: the hull ignores the middle
    // coefficient when its precision bound clears the hull, and refuses when
    // the bound could cut below it
    std::vector<PadicRational> safe{PadicRational::from_rational(Rat(1), p, 12),
                                    PadicRational::exact_zero(p, 3),
                                    PadicRational::from_rational(Rat(1), p, 12)};
    PolyQp f;
    f.p = p;
    f.prec = 12;
    f.c = safe;
    CHECK(newton_polygon(f).segments.size() == 1);

    std::vector<PadicRational> unsafe{PadicRational::from_rational(Rat(5), p, 12),
                                      PadicRational::exact_zero(p, 0),
                                      PadicRational::from_rational(Rat(1), p, 12)};
    PolyQp g;
    g.p = p;
    g.prec = 12;
    g.c = unsafe;
    CHECK_THROWS_AS(newton_polygon(g), precision_error);
}

TEST_CASE("Newton polygon of a product is the Minkowski sum") {
    // compare slope multisets: every product edge decomposes into factor edges
    Rng rng(13);
    Int p = 5;
    auto random_poly = [&](int deg) {
        std::vector<Rat> c(deg + 1);
        for (int i = 0; i <= deg; ++i) {
            Int num = Int(rng.below_int(Int(40))) - 20;
            long e = (rng.next() % 4);
            Rat scale = 1;
            for (long k = 0; k < e; ++k) scale *= 5;
            c[i] = Rat(num) * scale;
        }
        if (c[deg] == 0) c[deg] = Rat(1);
        if (c[0] == 0) c[0] = Rat(Int(1 + rng.below_int(Int(10))));
        return QPoly(std::move(c));
    };
    auto slopes = [&](const QPoly& f) {
        NewtonPolygon np = newton_polygon(PolyQp::from_rational(f, p, 30));
        std::vector<Rat> out;
        for (const auto& s : np.segments)
            for (int i = 0; i < s.length; ++i) out.push_back(s.slope);
        return out;
    };
    for (int trial = 0; trial < 15; ++trial) {
        QPoly f = random_poly(2 + int(rng.next() % 4));
        QPoly g = random_poly(2 + int(rng.next() % 4));
        std::vector<Rat> sum = slopes(f);
        for (const Rat& s : slopes(g)) sum.push_back(s);
        std::sort(sum.begin(), sum.end());
        std::vector<Rat> prod = slopes(f * g);
        std::sort(prod.begin(), prod.end());
        CHECK(sum == prod);
    }
}

TEST_CASE("factor certificates on explicit polynomials") {
    {
        // x^2 - 5 over Q_5: Eisenstein, ramified
        FactorReport rep = qp_factor_degrees(QPoly(std::vector<Rat>{Rat(-5), Rat(0), Rat(1)}), Int(5));
        REQUIRE(rep.factors.size() == 1);
        CHECK(rep.factors[0].degree == 2);
        CHECK(rep.factors[0].status == "certified-irreducible");
        CHECK(rep.factors[0].slope == Rat(1, 2));
    }
    {
        // (x^2 - 2)(x - 1) over Q_7: 2 is a square mod 7, three unit roots
        QPoly f = QPoly(std::vector<Rat>{Rat(-2), Rat(0), Rat(1)}) * QPoly(std::vector<Rat>{Rat(-1), Rat(1)});
        FactorReport rep = qp_factor_degrees(f, Int(7));
        REQUIRE(rep.factors.size() == 3);
        for (const auto& F : rep.factors) {
            CHECK(F.degree == 1);
            CHECK(F.slope == Rat(0));
        }
    }
    {
        // x^2 + x + 1 over Q_5: irreducible mod p, unramified certificate
        FactorReport rep = qp_factor_degrees(QPoly(std::vector<Rat>{Rat(1), Rat(1), Rat(1)}), Int(5));
        REQUIRE(rep.factors.size() == 1);
        CHECK(rep.factors[0].degree == 2);
        CHECK(rep.factors[0].status == "certified-irreducible");
        CHECK(rep.factors[0].residue_modulus.size() == 3);
    }
}

TEST_CASE("certificate structure over division polynomials") {
    // degrees sum to deg psi_p; unramified certificates reduce irreducibly;
    // ramified certificates have slope denominator equal to their degree
    for (auto [A, B, p] : {std::tuple{1, 1, 5}, {1, 0, 7}, {2, 1, 5}, {1, 1, 7}}) {
        CurveQ E{Rat(A), Rat(B)};
        QPoly psi = division_polynomial(E, p);
        FactorReport rep = qp_factor_degrees(psi, Int(p));
        int total = 0;
        for (const QpFactor& F : rep.factors) {
            total += F.degree;
            if (F.status == "inconclusive") {
                CHECK(!F.reason.empty());
                continue;
            }
            if (!F.residue_modulus.empty() && F.status == "certified-irreducible") {
                CHECK(fpx::is_irreducible(F.residue_modulus, Int(p)));
                CHECK(int(F.residue_modulus.size()) == F.degree + 1);
            }
            if (rat_den(F.slope) > 1 && F.status == "certified-irreducible")
                CHECK(rat_den(F.slope) == F.degree);
        }
        CHECK(total == (p * p - 1) / 2);
    }
}

TEST_CASE("reconstructed product matches the division polynomial") {
    CurveQ E{Rat(1), Rat(1)};
    Int p = 5;
    QPoly psi = division_polynomial(E, 5);
    FactorReport rep = qp_factor_degrees(psi, p);
    REQUIRE(rep.factors.size() == 2);
    std::multiset<int> degs;
    for (const auto& F : rep.factors) degs.insert(F.degree);
    CHECK(degs == std::multiset<int>{2, 10});

    // multiply the monic factors back together and compare with psi/lead
    std::vector<PadicRational> prod{PadicRational::from_rational(Rat(1), p, rep.precision)};
    for (const auto& F : rep.factors) {
        std::vector<PadicRational> next(prod.size() + F.coefficients.size() - 1,
                                        PadicRational::exact_zero(p));
        for (size_t i = 0; i < prod.size(); ++i)
            for (size_t k = 0; k < F.coefficients.size(); ++k) {
                PadicRational term = prod[i] * F.coefficients[k];
                next[i + k] = qpf::is_exact_zero(next[i + k]) ? term : next[i + k] + term;
            }
        prod = std::move(next);
    }
    REQUIRE(int(prod.size()) == psi.degree() + 1);
    for (size_t i = 0; i < prod.size(); ++i) {
        PadicRational ref = PadicRational::from_rational(psi.c[i] / psi.lead(), p, rep.precision);
        PadicRational diff = prod[i] - ref;
        CHECK(diff.is_zero());
        if (diff.is_zero()) CHECK(diff.val_ >= 10);
    }
}

TEST_CASE("golden factorization of psi_5 for E_{1,1}") {
    CurveQ E{Rat(1), Rat(1)};
    FactorReport rep = qp_factor_degrees(division_polynomial(E, 5), Int(5));
    REQUIRE(rep.factors.size() == 2);
    const QpFactor* f2 = &rep.factors[0];
    const QpFactor* f10 = &rep.factors[1];
    if (f2->degree != 2) std::swap(f2, f10);
    REQUIRE(f2->degree == 2);
    REQUIRE(f10->degree == 10);

    CHECK(f2->status == "certified-irreducible");
    CHECK(f2->slope == Rat(-1, 2));
    CHECK(f10->status == "certified-product-resolved");
    CHECK(f10->parts == std::vector<std::pair<int, int>>{{2, 10}});

    // displayed digits of the degree-2 factor: constant 2*5^-1 + 2 + ...,
    // linear 2*5 + 4*5^2 + ...
    const PadicRational& c0 = f2->coefficients[0];
    const PadicRational& c1 = f2->coefficients[1];
    CHECK(c0.valuation() == -1);
    CHECK(c0.digit(0) == 2);
    CHECK(c0.digit(1) == 2);
    CHECK(c1.valuation() == 1);
    CHECK(c1.digit(0) == 2);
    CHECK(c1.digit(1) == 4);
}

TEST_CASE("brute-force point degree bounds") {
    {
        DpBound b = dp_bruteforce(CurveQ{Rat(1), Rat(1)}, Int(5));
        CHECK(b.lo == 2);
        CHECK(b.hi == 4);
        CHECK(b.candidates == std::vector<int>{2, 4});
        CHECK(!b.exact());
    }
    {
        // supersingular: one Eisenstein factor of degree 24, slope -1/24
        DpBound b = dp_bruteforce(CurveQ{Rat(1), Rat(0)}, Int(7));
        CHECK(b.lo == 24);
        CHECK(b.hi == 48);
        REQUIRE(b.report.factors.size() == 1);
        CHECK(b.report.factors[0].degree == 24);
        CHECK(b.report.factors[0].slope == Rat(-1, 24));
        CHECK(b.report.factors[0].status == "certified-irreducible");
    }
    {
        // the interval always contains the true degree (12 here)
        DpBound b = dp_bruteforce(CurveQ{Rat(1), Rat(0)}, Int(13));
        CHECK(b.lo <= 12);
        CHECK(12 <= b.hi);
        bool has12 = std::find(b.candidates.begin(), b.candidates.end(), 12) != b.candidates.end();
        CHECK(has12);
    }
    CHECK_THROWS_AS(dp_bruteforce(CurveQ{Rat(1), Rat(1)}, Int(17)), std::domain_error);
}

TEST_CASE("simple p-adic roots") {
    {
        // three simple unit roots over Q_7
        QPoly f = QPoly(std::vector<Rat>{Rat(-2), Rat(0), Rat(1)}) * QPoly(std::vector<Rat>{Rat(-1), Rat(1)});
        auto roots = qp_simple_roots(f, Int(7));
        REQUIRE(roots.size() == 3);
        for (const auto& r : roots) {
            PadicRational v = eval_qp(f, r, 20);
            CHECK(v.is_zero());
            CHECK(v.val_ >= 10);
        }
    }
    // ramified roots are not in Q_p
    CHECK(qp_simple_roots(QPoly(std::vector<Rat>{Rat(-5), Rat(0), Rat(1)}), Int(5)).empty());
    {
        // zero root, a unit root, and a valuation-1 root
        QPoly g = QPoly(std::vector<Rat>{Rat(0), Rat(1)}) * QPoly(std::vector<Rat>{Rat(-3), Rat(1)}) *
                  QPoly(std::vector<Rat>{Rat(-5), Rat(1)});
        auto roots = qp_simple_roots(g, Int(5));
        REQUIRE(roots.size() == 3);
        CHECK(roots[0].valuation() == 0);
        CHECK(roots[0].unit == 3);
        CHECK(roots[1].valuation() == 1);
        CHECK(roots[1].unit == 1);
        CHECK(roots[2].is_zero());
    }
    {
        // congruent roots mod p are separated by the translation recursion
        QPoly h = QPoly(std::vector<Rat>{Rat(-1), Rat(1)}) * QPoly(std::vector<Rat>{Rat(-6), Rat(1)}) *
                  QPoly(std::vector<Rat>{Rat(-2), Rat(1)});
        auto roots = qp_simple_roots(h, Int(5), 20);
        REQUIRE(roots.size() == 3);
        std::set<Int> units;
        for (const auto& r : roots) {
            CHECK(r.valuation() == 0);
            units.insert(mod_floor(r.unit, Int(25)));
        }
        CHECK(units == std::set<Int>{1, 2, 6});
    }
}

TEST_CASE("rational y-coordinate test over Q_p") {
    CurveQ E{Rat(1), Rat(1)};
    // x = 0: y^2 = 1 has rational solutions; x = 1: y^2 = 3 does not (mod 5)
    CHECK(curve_has_qp_y(E, PadicRational::from_rational(Rat(0), Int(5), 12)));
    CHECK(!curve_has_qp_y(E, PadicRational::from_rational(Rat(1), Int(5), 12)));
}
