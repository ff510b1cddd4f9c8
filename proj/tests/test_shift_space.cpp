#include <sstream>

#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace cfrow;
using cfrow::testing::Gen;

namespace {

constexpr long kCap = 20000;

Real h1_y(const Real& t) { return t.mobius(Mat2Z(0, 1, 1, 1)); }

// A few F_R steps from (x, 1) give a point of R off the top edge.
OmegaPoint point_in(const Region& R, const Real& x, std::size_t steps = 3) {
    return induced_products(R, {x, Real(1L)}, steps, kCap).points.back();
}

bool same(const ShiftPoint& a, const ShiftPoint& b) { return a.X.identical(b.X) && a.Y.identical(b.Y); }

}  // namespace

TEST_CASE("phi examples", "[shift_space]") {
    Real t = parse_real("sqrt(5)-2");
    ShiftPoint w = phi(region_h1(), {parse_real("sqrt(2)-1"), h1_y(t)});
    CHECK(w.X.identical(parse_real("sqrt(2)-1")));
    CHECK(w.Y.identical(t));

    ShiftPoint a = phi(build_alpha_region({Real(Rat(1, 2))}), {parse_real("g"), Real(1L)});
    CHECK(a.X.compare(parse_real("(sqrt(5)-3)/2")) == 0);

    CHECK_THROWS_AS(phi(region_h1(), {Real(1L), Real(1L)}), NullSetPoint);
    CHECK_THROWS_AS(phi(region_h1(), {Real(0L), Real(1L)}), NullSetPoint);
    CHECK_THROWS_AS(phi(region_omega(), {parse_real("g"), Real(1L)}), UnsupportedRegion);
    CHECK_THROWS_AS(phi(region_h(1), {parse_real("g"), Real(Rat(2, 5))}), UnsupportedRegion);
    CHECK_THROWS_AS(phi(region_h1(), {parse_real("g"), Real(Rat(1, 3))}), OutOfDomain);
}

TEST_CASE("tau_step on the fixed ray", "[shift_space]") {
    ShiftPoint w{Real(0L), Real(Rat(1, 3))};
    CHECK(same(tau_step(region_h1(), w), w));
    CHECK_THROWS_AS(tau_step_strict(region_h1(), w), FixedRay);
}

TEST_CASE("shift CSV layout", "[shift_space]") {
    std::ostringstream os;
    write_shift_csv(os, {ShiftPoint{Real(Rat(1, 2)), Real(Rat(1, 3))}});
    CHECK(os.str().rfind("n,X_lo,X_hi,Y_lo,Y_hi\n0,0.5,0.5,", 0) == 0);
}

TEST_CASE("phi round trip", "[shift_space][property]") {
    Gen g(81);
    std::vector<Region> regions{region_h1(), build_alpha_region({Real(Rat(1, 2))}),
                                build_alpha_region({Real(Rat(3, 10))}), build_s_expansion_region(s_area_preset(1))};
    for (const Region& R : regions) {
        for (int i = 0; i < 25; ++i) {
            OmegaPoint z = point_in(R, g.quadratic(6, 4).value);
            CHECK(phi_inverse(R, phi(R, z)).identical(z));
        }
    }
}

TEST_CASE("tau on H_1 is the Gauss natural extension", "[shift_space][property]") {
    Gen g(82);
    for (int i = 0; i < 200; ++i) {
        ShiftPoint w{g.quadratic(9).value, g.quadratic(9).value};
        ShiftPoint t = tau_step(region_h1(), w);
        OmegaPoint G = gauss_ne_step({w.X, w.Y});
        CHECK(t.X.identical(G.x));
        CHECK(t.Y.identical(G.y));
    }
}

TEST_CASE("conjugacy phi o F_R = tau o phi", "[shift_space][property]") {
    Gen g(83);
    std::vector<Region> regions{region_h1(), build_alpha_region({Real(Rat(1, 2))}),
                                build_alpha_region({Real(Rat(1, 4))}), build_s_expansion_region(s_area_preset(5))};
    for (const Region& R : regions) {
        for (int i = 0; i < 10; ++i) {
            OmegaPoint z = point_in(R, g.quadratic(6, 4).value, 2);
            ShiftPoint w = phi(R, z);
            for (int n = 0; n < 10; ++n) {
                OmegaPoint next = induced_step(R, z, kCap).z_next;
                ShiftPoint tw = tau_step(R, w);
                CHECK(same(tw, phi(R, next)));
                z = next;
                w = tw;
            }
        }
    }
}

TEST_CASE("alpha-region tau projects to G_alpha", "[shift_space][property]") {
    Gen g(84);
    for (const char* as : {"1/4", "9/20", "sqrt(2)-1", "g"}) {
        Real alpha = parse_real(as);
        Region R = build_alpha_region({alpha});
        for (int i = 0; i < 8; ++i) {
            ShiftPoint w = phi(R, {g.quadratic(6, 4).value, Real(1L)});
            Real X = w.X;
            for (int n = 0; n < 12; ++n) {
                auto st = alpha_step(alpha, X);
                w = tau_step(R, w);
                X = st.next;
                CHECK(w.X.identical(X));
            }
        }
    }
}

TEST_CASE("bilateral digit strings shift by one slot", "[shift_space][property]") {
    Gen g(85);
    std::vector<Region> regions{region_h1(), build_alpha_region({Real(Rat(1, 2))})};
    for (const Region& R : regions) {
        for (int i = 0; i < 8; ++i) {
            OmegaPoint z = point_in(R, g.quadratic(6, 4).value, 4);
            auto b0 = bilateral_digits(R, z, 3, 6, kCap, kCap);
            auto b1 = bilateral_digits(R, induced_step(R, z, kCap).z_next, 4, 5, kCap, kCap);
            REQUIRE(b0.past.size() == 3);
            REQUIRE(b1.past.size() == 4);
            CHECK(b1.past[0] == b0.future[0]);
            for (std::size_t k = 0; k < 3; ++k) CHECK(b1.past[k + 1] == b0.past[k]);
            for (std::size_t k = 0; k + 1 < b0.future.size(); ++k) CHECK(b1.future[k] == b0.future[k + 1]);
        }
    }
    Real x = parse_real("[0;(3,1,4)]");
    auto h = bilateral_digits(region_h1(), {x, Real(1L)}, 0, 8);
    auto a = rcf_digits(x, 9);
    for (std::size_t k = 0; k < h.future.size(); ++k) CHECK(h.future[k] == GcfDigit{Int(1), a[k]});
}

TEST_CASE("tau on H_1 preserves its invariant density", "[shift_space][property]") {
    std::mt19937_64 rng(86);
    NuGSampler draw;
    Region h1 = region_h1();
    const int n = 10000;
    std::vector<ShiftPoint> img;
    for (int i = 0; i < n; ++i) {
        OmegaPoint w = draw(rng);
        img.push_back(tau_step(h1, {w.x, w.y}, kCap, true));
    }
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            RegionRect A{Rat(i, 3), Rat(i + 1, 3), Rat(j, 3), Rat(j + 1, 3)};
            double p = nu_g_rect_exact(i / 3.0, (i + 1) / 3.0, j / 3.0, (j + 1) / 3.0);
            double hits = 0;
            for (const auto& w : img) hits += A.contains({w.X, w.Y});
            CHECK(std::abs(hits / n - p) < 3 * std::sqrt(p * (1 - p) / n));
        }
    }
}
