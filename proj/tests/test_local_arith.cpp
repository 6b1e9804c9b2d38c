#include <pdeg/local_arith.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace pdeg;

TEST_CASE("integer helpers") {
    CHECK(mod_floor(Int(-7), Int(5)) == 3);
    CHECK(mod_floor(Int(7), Int(5)) == 2);
    CHECK(mod_floor(Int(0), Int(5)) == 0);
    CHECK(powmod(Int(2), Int(10), Int(1000)) == 24);
    CHECK(powmod(Int(3), Int(0), Int(7)) == 1);
    CHECK(invmod(Int(3), Int(25)) * 3 % 25 == 1);
    CHECK(invmod(Int(-2), Int(7)) * mod_floor(Int(-2), Int(7)) % 7 == 1);
    CHECK(vp_int(Int(250), Int(5)) == 3);
    CHECK(vp(Rat(4, 25), Int(5)) == -2);
    CHECK(vp(Rat(50), Int(5)) == 2);
    CHECK(isqrt(Int(143)) == 11);
    CHECK(isqrt(Int(144)) == 12);
    CHECK(rat_mod(Rat(1, 3), Int(25)) * 3 % 25 == 1);
}

TEST_CASE("multiplicative order divides p-1 and only depends on a mod p") {
    Rng rng(11);
    for (Int p : {Int(5), Int(13), Int(101)}) {
        for (int i = 0; i < 20; ++i) {
            Int a = 1 + rng.below_int(p - 1);
            Int d = ord_mod_p(a, p);
            CHECK((p - 1) % d == 0);
            CHECK(powmod(a, d, p) == 1);
            for (Int e = 1; e < d; ++e) CHECK(powmod(a, e, p) != 1);
            CHECK(ord_mod_p(a + p * (1 + rng.below_int(Int(50))), p) == d);
        }
    }
}

TEST_CASE("Galois ring construction and sizes") {
    LocalContext R(5, 2, 2);
    CHECK(R.ring_size() == 625);
    CHECK(R.residue_size() == 25);
    CHECK(R.unit_group_order() == 600);

    // the default modulus is the least irreducible, x^2 + x + 1 over F_5
    CHECK(R.modulus == std::vector<Int>{1, 1, 1});

    CHECK_THROWS_AS(LocalContext(4, 1, 1), std::domain_error);
    CHECK_THROWS_AS(LocalContext(3, 1, 1), std::domain_error);
    // x^2 + 1 splits mod 5, so it is rejected as a modulus
    CHECK_THROWS_AS(LocalContext(5, 2, 2, std::vector<Int>{1, 0, 1}), std::domain_error);

    // unit count by full enumeration matches the formula
    Int units = 0;
    for (Int i = 0; i < R.ring_size(); ++i)
        if (RingElem::from_index(R, i).is_unit()) ++units;
    CHECK(units == R.unit_group_order());
}

TEST_CASE("Galois ring axioms on random triples") {
    LocalContext R(5, 2, 3);
    Rng rng(17);
    RingElem one = RingElem::one(R);
    for (int i = 0; i < 40; ++i) {
        RingElem x = RingElem::random(R, rng);
        RingElem y = RingElem::random(R, rng);
        RingElem z = RingElem::random(R, rng);
        CHECK((x + y) + z == x + (y + z));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x + y == y + x);
        CHECK(x * y == y * x);
        CHECK(x * one == x);
        CHECK(x + (-x) == RingElem::zero(R));
        if (x.is_unit()) CHECK(x * x.inverse() == one);
        if (!x.is_zero()) {
            RingElem u = x.unit_part();
            CHECK(u.is_unit());
            Int pv = 1;
            for (int k = 0; k < x.val(); ++k) pv *= R.p;
            CHECK(u * pv == x);
        }
    }
}

TEST_CASE("reduction to lower precision is a surjective ring homomorphism") {
    LocalContext R(5, 2, 3);
    LocalContext S = R.reduced(2);
    Rng rng(23);
    for (int i = 0; i < 30; ++i) {
        RingElem x = RingElem::random(R, rng);
        RingElem y = RingElem::random(R, rng);
        CHECK((x + y).reduce_to(S) == x.reduce_to(S) + y.reduce_to(S));
        CHECK((x * y).reduce_to(S) == x.reduce_to(S) * y.reduce_to(S));
    }
    // lift-then-reduce is the identity on the target, so the map is onto
    for (Int i = 0; i < 60; ++i) {
        RingElem t = RingElem::from_index(S, rng.below_int(S.ring_size()));
        CHECK(t.lift_to(R).reduce_to(S) == t);
    }
}

TEST_CASE("residue field square roots") {
    LocalContext F(5, 2, 1);
    Int q = F.residue_size();
    Int square_count = 0;
    for (Int i = 0; i < q; ++i) {
        RingElem x = RingElem::from_index(F, i);
        if (fq_is_square(x)) {
            ++square_count;
            auto r = fq_sqrt(x, 7);
            REQUIRE(r.has_value());
            CHECK(*r * *r == x);
        } else {
            CHECK(!fq_sqrt(x, 7).has_value());
        }
    }
    // zero plus half the units
    CHECK(square_count == (q + 1) / 2);
}

TEST_CASE("Hensel lifting of simple roots") {
    {
        LocalContext R(5, 1, 2);
        std::vector<RingElem> f{RingElem(R, Int(-1)), RingElem::zero(R), RingElem::one(R)};
        CHECK(hensel_lift_root(f, RingElem(R, Int(1))).c[0] == 1);
    }
    {
        LocalContext R(7, 1, 2);
        std::vector<RingElem> f{RingElem(R, Int(-2)), RingElem::zero(R), RingElem::one(R)};
        Int r = hensel_lift_root(f, RingElem(R, Int(3))).c[0];
        CHECK(r == 10);
        CHECK(r * r % 49 == 2);
    }
    {
        // x^2 - 5 at r0 = 0: the derivative vanishes mod 5
        LocalContext R(5, 1, 3);
        std::vector<RingElem> f{RingElem(R, Int(-5)), RingElem::zero(R), RingElem::one(R)};
        CHECK_THROWS_AS(hensel_lift_root(f, RingElem::zero(R)), std::domain_error);
    }
    {
        // lifted root satisfies f exactly at the ring's precision
        LocalContext R(5, 2, 4);
        std::vector<RingElem> f{RingElem(R, Int(3)), RingElem(R, Int(2)), RingElem::one(R)};
        // f = x^2 + 2x + 3 mod 5 has roots in F_25; find one by scan
        LocalContext F = R.reduced(1);
        std::vector<RingElem> fbar{RingElem(F, Int(3)), RingElem(F, Int(2)), RingElem::one(F)};
        for (Int i = 0; i < F.ring_size(); ++i) {
            RingElem r0 = RingElem::from_index(F, i);
            if (((r0 * r0 + RingElem(F, Int(2)) * r0 + RingElem(F, Int(3)))).is_zero()) {
                RingElem r = hensel_lift_root(f, r0);
                CHECK(r.reduce_to(F) == r0);
                CHECK((r * r + RingElem(R, Int(2)) * r + RingElem(R, Int(3))).is_zero());
            }
        }
    }
}

TEST_CASE("p-adic rationals: digits and arithmetic") {
    Int p = 5;
    PadicRational third = PadicRational::from_rational(Rat(1, 3), p, 12);
    CHECK(third.valuation() == 0);
    CHECK(third.digit(0) == 2);   // 3 * 2 = 6 = 1 + 5
    CHECK(PadicRational::from_rational(Rat(50), p).valuation() == 2);
    CHECK(PadicRational::from_rational(Rat(3, 25), p).valuation() == -2);

    Rng rng(31);
    for (int i = 0; i < 20; ++i) {
        Rat a(Int(rng.below_int(Int(1000))) - 500, 1 + rng.below_int(Int(30)));
        Rat b(Int(rng.below_int(Int(1000))) - 500, 1 + rng.below_int(Int(30)));
        if (a == 0 || b == 0 || a + b == 0) continue;
        PadicRational pa = PadicRational::from_rational(a, p, 15);
        PadicRational pb = PadicRational::from_rational(b, p, 15);
        PadicRational sum = pa + pb;
        PadicRational ref = PadicRational::from_rational(a + b, p, 15);
        CHECK(sum.valuation() == ref.valuation());
        CHECK((sum - ref).is_zero());
        PadicRational prod = pa * pb;
        PadicRational pref = PadicRational::from_rational(a * b, p, 15);
        CHECK(prod.valuation() == pref.valuation());
        CHECK((prod - pref).is_zero());
    }
}

TEST_CASE("p-adic cancellation is tracked, not hidden") {
    Int p = 5;
    // the difference cancels entirely: zero recorded with an absolute bound
    PadicRational a = PadicRational::from_rational(Rat(7), p, 12);
    PadicRational z = a - a;
    CHECK(z.is_zero());
    CHECK_THROWS_AS(z.valuation(), precision_error);

    // cancelling 4 leading digits leaves 8 significant ones
    PadicRational b = PadicRational::from_rational(Rat(1 + 625), p, 12);
    PadicRational one = PadicRational::from_rational(Rat(1), p, 12);
    PadicRational diff = b - one;
    CHECK(diff.valuation() == 4);
    CHECK(diff.prec == 8);

    // below the 3-digit floor the subtraction refuses to answer
    PadicRational c = PadicRational::from_rational(Rat(1) + Rat(Int(48828125)), p, 12);  // 1 + 5^11
    CHECK_THROWS_AS(c - one, precision_error);
}

TEST_CASE("square classes of Q_p") {
    CHECK(is_square_qp(Rat(4), Int(5)));
    CHECK(is_square_qp(Rat(-1), Int(5)));      // p = 1 mod 4
    CHECK(!is_square_qp(Rat(-1), Int(7)));     // p = 3 mod 4
    CHECK(!is_square_qp(Rat(2), Int(5)));
    CHECK(!is_square_qp(Rat(5), Int(5)));      // odd valuation
    CHECK(is_square_qp(Rat(25), Int(5)));
    CHECK_THROWS_AS(is_square_qp(Rat(0), Int(5)), std::domain_error);

    // invariance under multiplication by a nonzero square
    Rng rng(41);
    for (Int p : {Int(5), Int(7), Int(13)}) {
        for (int i = 0; i < 25; ++i) {
            Rat x(Int(rng.below_int(Int(400))) - 200, 1 + rng.below_int(Int(40)));
            Rat y(1 + rng.below_int(Int(50)), 1 + rng.below_int(Int(20)));
            if (x == 0) continue;
            CHECK(is_square_qp(x, p) == is_square_qp(x * y * y, p));
        }
    }
}

TEST_CASE("p-th power classes of Q_p") {
    CHECK(is_pth_power_qp(Rat(32), Int(5)));       // 2^5
    CHECK(!is_pth_power_qp(Rat(2), Int(5)));       // 2^4 != 1 mod 25
    CHECK(!is_pth_power_qp(Rat(5), Int(5)));       // valuation not divisible by p
    CHECK(is_pth_power_qp(Rat(3125), Int(5)));     // 5^5
    CHECK(is_pth_power_qp(Rat(1, 32), Int(5)));
    CHECK_THROWS_AS(is_pth_power_qp(Rat(0), Int(5)), std::domain_error);

    Rng rng(43);
    for (Int p : {Int(5), Int(7)}) {
        long pl = p.convert_to<long>();
        for (int i = 0; i < 25; ++i) {
            Rat x(Int(rng.below_int(Int(400))) - 200, 1 + rng.below_int(Int(40)));
            Rat y(1 + rng.below_int(Int(9)), 1 + rng.below_int(Int(9)));
            if (x == 0) continue;
            Rat yp = 1;
            for (long k = 0; k < pl; ++k) yp *= y;
            CHECK(is_pth_power_qp(x, p) == is_pth_power_qp(x * yp, p));
        }
    }
}
