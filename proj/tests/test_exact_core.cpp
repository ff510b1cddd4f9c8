#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace cfrow;
using cfrow::testing::Gen;

TEST_CASE("mobius_apply examples", "[exact_core]") {
    CHECK(mobius_apply(Mat2Z::identity(), ExtRational(Rat(3, 7))) == ExtRational(Rat(3, 7)));
    CHECK(mobius_apply(Mat2Z(0, 1, 1, 1), ExtRational::infinity()) == ExtRational(0L));
    CHECK(mobius_apply(Mat2Z(0, 1, 1, 2), ExtRational(0L)) == ExtRational(Rat(1, 2)));
    CHECK(mobius_apply(Mat2Z(0, 1, 1, 0), ExtRational(0L)).is_inf());
    CHECK_THROWS_AS(mobius_apply(Mat2Z(1, 2, 2, 4), ExtRational(1L)), ZeroDeterminant);
}

TEST_CASE("ExtRational conventions", "[exact_core]") {
    CHECK(ExtRational(Int(3), Int(0)).is_inf());
    CHECK(ExtRational::infinity().reciprocal() == ExtRational(0L));
    CHECK(ExtRational(Int(-4), Int(-6)) == ExtRational(Rat(2, 3)));
    CHECK(ExtRational(Int(2), Int(-4)).value().get_den() == 2);
}

TEST_CASE("mat_product examples", "[exact_core]") {
    CHECK(mat_product({Mat2Z::identity(), Mat2Z::identity()}) == Mat2Z::identity());
    CHECK(mat_product({A0(), A1()}) == Mat2Z(0, 1, 1, 2));
    for (long k = 1; k <= 6; ++k) {
        std::vector<Mat2Z> ms(static_cast<std::size_t>(k), A0());
        CHECK(mat_product(ms) == Mat2Z(1, 0, k, 1));
    }
}

TEST_CASE("Mobius action properties", "[exact_core][property]") {
    Gen g(11);
    for (int trial = 0; trial < 300; ++trial) {
        Mat2Z m1(g.uniform(-9, 9), g.uniform(-9, 9), g.uniform(-9, 9), g.uniform(-9, 9));
        Mat2Z m2(g.uniform(-9, 9), g.uniform(-9, 9), g.uniform(-9, 9), g.uniform(-9, 9));
        if (m1.det() == 0 || m2.det() == 0) continue;
        ExtRational z = g.uniform(0, 9) == 0 ? ExtRational::infinity()
                                             : ExtRational(make_rat(Int(g.uniform(-20, 20)), Int(g.uniform(1, 20))));
        Int r(g.uniform(1, 5) * (g.coin() ? 1 : -1));
        CHECK(mobius_apply(m1.scaled(r), z) == mobius_apply(m1, z));
        CHECK(mobius_apply(m1 * m2, z) == mobius_apply(m1, mobius_apply(m2, z)));
        CHECK((m1 * m2).det() == m1.det() * m2.det());
        CHECK(proportional(m1.scaled(r), m1));
    }
}

TEST_CASE("RationalInterval refinement shrinks", "[exact_core][property]") {
    Gen g(12);
    Real x = parse_real("sqrt(2)-1");
    RationalInterval cur = x.enclosure(4);
    for (unsigned bits = 5; bits < 80; ++bits) {
        RationalInterval next = cur.refine(x.enclosure(bits));
        CHECK(cur.contains(next));
        cur = next;
    }
    CHECK(cur.width() <= make_rat(Int(1), Int(1) << 79));
    CHECK(cur.compare(Rat(1, 2)) == -1);
    CHECK(cur.compare(Rat(1, 3)) == 1);
    CHECK_THROWS(RationalInterval(Rat(1), Rat(0)));
}

TEST_CASE("Quadratic reals compare and floor exactly", "[exact_core]") {
    Real g = parse_real("g");
    CHECK(g.mobius(Mat2Z(0, 1, 1, 0)).mobius(Mat2Z(1, -1, 0, 1)).identical(g));
    CHECK(parse_real("(sqrt(5)-1)/2").identical(g));
    CHECK(parse_real("[0;(1)]").identical(g));
    CHECK(parse_real("[0;(2)]").identical(parse_real("sqrt(2)-1")));
    CHECK(parse_real("[0;2,2]").rational() == Rat(2, 5));
    CHECK(parse_real("0.3").rational() == Rat(3, 10));
    CHECK(parse_real("sqrt(8)").identical(parse_real("2*sqrt(2)")));
    CHECK(parse_real("sqrt(2)-1").floor() == 0);
    CHECK(Real(Rat(1), -1).floor() == 0);
    CHECK(Real(Rat(1), 1).floor() == 1);
    CHECK(Real(Rat(1), -1).compare(Real(1L)) < 0);
    CHECK_THROWS_AS(parse_real("sqrt(2)+sqrt(3)"), ParseError);
    CHECK_THROWS_AS(parse_real("1/"), ParseError);
    Real e = parse_real("e-frac");
    CHECK(e.floor() == 0);
    CHECK(rcf_digits(e, 9) == cfrow::testing::ints({1, 2, 1, 1, 4, 1, 1, 6, 1}));
}
