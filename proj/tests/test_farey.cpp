#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace cfrow;
using cfrow::testing::Gen;
using cfrow::testing::ints;

TEST_CASE("farey_step examples", "[farey_maps]") {
    Real g = parse_real("g");
    auto s = farey_step(g);
    CHECK(s.eps == 1);
    CHECK(s.next.identical(g));
    auto z = farey_step(Real(0L));
    CHECK(z.eps == 0);
    CHECK(z.next.value_is_zero());
    auto r = farey_step(parse_real("[0;(2)]"));
    CHECK(r.eps == 0);
    CHECK(r.next.identical(parse_real("[0;1,(2)]")));
    CHECK_THROWS_AS(farey_step(Real(2L)), OutOfDomain);
    CHECK(farey_step(Real(Rat(1, 2))).eps == 0);
}

TEST_CASE("gauss_step examples", "[farey_maps]") {
    auto s = gauss_step(parse_real("sqrt(2)-1"));
    CHECK(*s.a == 2);
    CHECK(s.next.identical(parse_real("sqrt(2)-1")));
    auto z = gauss_step(Real(0L));
    CHECK(!z.a);
    auto r = gauss_step(Real(Rat(2, 5)));
    CHECK(*r.a == 2);
    CHECK(r.next.rational() == Rat(1, 2));
    CHECK(rcf_digits(Real(Rat(1, 2)), 5) == ints({2}));
}

TEST_CASE("alpha_step examples", "[farey_maps]") {
    Real half_a(Rat(1, 2));
    Real x = parse_real("(sqrt(5)-3)/2");
    auto s = alpha_step(half_a, x);
    CHECK(s.sign == -1);
    CHECK(s.digit == 3);
    CHECK(s.next.identical(x));
    auto t = alpha_step(half_a, Real(Rat(2, 5)));
    CHECK(t.sign == 1);
    CHECK(t.digit == 3);
    CHECK(t.next.rational() == Rat(-1, 2));
    CHECK_THROWS_AS(alpha_step(half_a, Real(Rat(1, 2))), OutOfDomain);
    CHECK_THROWS_AS(alpha_step(half_a, Real(0L)), ZeroInput);
    CHECK_THROWS_AS(alpha_step(Real(0L), Real(0L)), OutOfDomain);
}

TEST_CASE("alpha_step with alpha = 1 is the Gauss map", "[farey_maps][property]") {
    Gen g(41);
    for (int i = 0; i < 200; ++i) {
        Real x = g.quadratic().value;
        auto a = alpha_step(Real(1L), x);
        auto b = gauss_step(x);
        CHECK(a.sign == 1);
        CHECK(a.digit == *b.a);
        CHECK(a.next.identical(b.next));
    }
}

TEST_CASE("farey_expansion examples", "[farey_maps]") {
    auto g = farey_expansion(parse_real("g")).take(8);
    CHECK(g[0] == GcfDigit{Int(1), Int(0)});
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] == GcfDigit{Int(1), Int(1)});
    auto r = farey_expansion(parse_real("sqrt(2)-1")).take(9);
    CHECK(r[0] == GcfDigit{Int(1), Int(1)});
    for (std::size_t i = 1; i < r.size(); ++i)
        CHECK(r[i] == (i % 2 ? GcfDigit{Int(-1), Int(1)} : GcfDigit{Int(1), Int(2)}));
    auto z = farey_expansion(Real(0L)).take(4);
    CHECK(z[0].beta == 1);
    for (std::size_t i = 1; i < z.size(); ++i) CHECK(z[i] == GcfDigit{Int(-1), Int(2)});
    CHECK(validate_srcf(farey_expansion(parse_real("sqrt(7)-2")), 60).is_srcf());
}

TEST_CASE("A-matrix closed forms", "[farey_maps]") {
    Real x = parse_real("sqrt(2)-1");
    CHECK(a_matrix_forward(x, 0) == Mat2Z::identity());
    CHECK(a_matrix_backward(x, 0) == Mat2Z::identity());
    Mat2Z m3 = a_matrix_forward(x, 3);
    CHECK(ExtRational(m3.a, m3.c) == ExtRational(Rat(1, 3)));
    Mat2Z m4 = a_matrix_forward(x, 4);
    CHECK(ExtRational(m4.a, m4.c) == ExtRational(Rat(1, 2)));
    CHECK(a_matrix_backward(x, 2) == A1() * A0());
    Mat2Z A1inv(-1, 1, 1, 0);
    for (std::size_t n = 0; n < 12; ++n)
        CHECK(A1() * a_matrix_forward(x, n).transpose() * A1inv == a_matrix_backward(x, n));
}

TEST_CASE("A-matrix forward equals the literal product", "[farey_maps][property]") {
    Gen g(42);
    for (int i = 0; i < 100; ++i) {
        Real x = g.quadratic().value;
        std::size_t n = static_cast<std::size_t>(g.uniform(0, 60));
        CHECK(a_matrix_forward(x, n) == a_matrix_forward_literal(x, n));
        CHECK(a_matrix_backward(x, n) == a_matrix_backward_literal(x, n));
    }
    CHECK(a_matrix_forward(Real(Rat(2, 5)), 9) == a_matrix_forward_literal(Real(Rat(2, 5)), 9));
}

TEST_CASE("farey_convergents examples", "[farey_maps]") {
    auto c = farey_convergents(parse_real("sqrt(2)-1"), 6);
    std::vector<ExtRational> want{ExtRational::infinity(), ExtRational(1L),         ExtRational(0L),
                                  ExtRational(Rat(1, 3)),  ExtRational(Rat(1, 2)), ExtRational(Rat(3, 7)),
                                  ExtRational(Rat(2, 5))};
    for (std::size_t k = 0; k < want.size(); ++k) CHECK(c[k].value() == want[k]);
    CHECK(c[0] == ConvergentPair{Int(1), Int(0)});
    auto gc = farey_convergents(parse_real("g"), 5);
    std::vector<ExtRational> gw{ExtRational::infinity(), ExtRational(0L), ExtRational(1L), ExtRational(Rat(1, 2)),
                                ExtRational(Rat(2, 3)), ExtRational(Rat(3, 5))};
    for (std::size_t k = 0; k < gw.size(); ++k) CHECK(gc[k].value() == gw[k]);
}

TEST_CASE("Farey convergents are the Farey expansion convergents", "[farey_maps][property]") {
    Gen g(43);
    for (int i = 0; i < 60; ++i) {
        Real x = g.quadratic().value;
        auto fc = farey_convergents(x, 40);
        Convergents c = convergents(farey_expansion(x), 39);
        for (long k = 0; k <= 40; ++k) CHECK(fc[static_cast<std::size_t>(k)] == c.at(k - 1));
    }
}

TEST_CASE("lehner expansion examples", "[farey_maps]") {
    for (const auto& p : lehner_pairs(parse_real("g"), 6)) {
        CHECK(p.b == 1);
        CHECK(p.e == 1);
    }
    for (const auto& p : lehner_pairs(Real(0L), 6)) {
        CHECK(p.b == 2);
        CHECK(p.e == -1);
    }
    auto lp = lehner_pairs(parse_real("sqrt(2)-1"), 6);
    for (std::size_t i = 0; i < lp.size(); ++i) {
        CHECK(lp[i].b == (i % 2 ? 1 : 2));
        CHECK(lp[i].e == (i % 2 ? 1 : -1));
    }
    Real x = parse_real("sqrt(3)-1");
    CHECK(lehner_to_farey(lehner_expansion(x)).take(30) == farey_expansion(x).take(30));
    auto lv = evaluate_prefix(lehner_expansion(Real(Rat(3, 7))), 40);
    // Rationals end in the parabolic tail (2, -1), which converges like 1/n.
    CHECK(Rat(abs(lv.value() - Rat(10, 7))) < Rat(1, 1000));
}

TEST_CASE("epsilon stream factorisation and the jump property", "[farey_maps][property]") {
    Gen g(44);
    for (int i = 0; i < 300; ++i) {
        auto q = g.quadratic();
        auto eps = epsilon_stream(q.value, 200);
        std::vector<int> want;
        for (const Int& a : q.rcf(200)) {
            for (long k = 1; k < a.get_si(); ++k) want.push_back(0);
            want.push_back(1);
            if (want.size() >= 200) break;
        }
        want.resize(200);
        CHECK(eps == want);

        auto gs = gauss_step(q.value);
        Real cur = q.value;
        for (long k = 0; k < gs.a->get_si(); ++k) {
            auto st = farey_step(cur);
            if (k + 1 < gs.a->get_si()) CHECK(st.eps == 0);
            cur = st.next;
        }
        CHECK(cur.identical(gs.next));
    }
}

TEST_CASE("Farey convergents interleave convergents and mediants", "[farey_maps][property]") {
    Gen g(45);
    for (int i = 0; i < 200; ++i) {
        auto q = g.quadratic(7);
        CHECK(cfrow::testing::mediant_chains_hold(q.value, q.rcf(14)));
        auto fc = farey_convergents(q.value, 20);
        for (std::size_t n = 1; n < fc.size(); ++n) {
            Mat2Z m = a_matrix_forward(q.value, n);
            CHECK(fc[n] == ConvergentPair{m.a, m.c});
        }
    }
    CHECK(!cfrow::testing::mediant_chains_hold(parse_real("sqrt(2)-1"), ints({2, 3})));
}
