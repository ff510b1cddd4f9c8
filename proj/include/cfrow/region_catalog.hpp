#pragma once

#include <optional>
#include <string>
#include <vector>

#include "induced.hpp"

namespace cfrow {

inline Region region_omega() { return Region::omega(); }

// H_1 = [0,1] x (1/2,1], with the top-edge convention and the closed-form jump
// N = a(x), A_R = [[0,1],[1,a(x)]].
inline Region region_h1() {
    Region r = Region::geometric("h1", {CellSpec{std::nullopt, Int(1)}}, {}, true);
    r.set_unit_s(true).set_builder("h1", {});
    r.set_jump([](const OmegaPoint& z) {
        auto a = rcf_digit(z.x);
        if (!a) throw ZeroInput("H_1 jump at x = 0");
        InducedRecord rec;
        rec.N = a->get_si();
        rec.A = Mat2Z(Int(0), Int(1), Int(1), *a);
        rec.z_next = induced_image_formula(rec.A, z);
        return rec;
    });
    return r;
}

// H_{lambda+1}: the lambda-th mediants (lambda = 0 gives H_1).
inline Region region_h(long lambda) {
    if (lambda < 0) throw OutOfDomain("region_h: lambda < 0");
    if (lambda == 0) return region_h1();
    Region r = Region::geometric("h:" + std::to_string(lambda), {CellSpec{std::nullopt, Int(lambda + 1)}}, {});
    r.set_builder("h", {{"lambda", std::to_string(lambda)}});
    return r;
}

inline Region region_v(long a) {
    if (a < 1) throw OutOfDomain("region_v: a < 1");
    Region r = Region::geometric("v:" + std::to_string(a), {CellSpec{Int(a), std::nullopt}}, {});
    r.set_builder("v", {{"a", std::to_string(a)}});
    return r;
}

// V_{a-lambda} ∩ H_{lambda+1}: lambda-th mediants with partial quotient a.
inline Region region_cell(long a, long lambda) {
    if (lambda < 0 || a - lambda < 1) throw OutOfDomain("region_cell: need 0 <= lambda < a");
    Region r = Region::geometric("cell:" + std::to_string(a) + "," + std::to_string(lambda),
                                 {CellSpec{Int(a - lambda), Int(lambda + 1)}}, {}, lambda == 0);
    r.set_builder("cell", {{"a", std::to_string(a)}, {"lambda", std::to_string(lambda)}});
    return r;
}

// ---- S-expansions ----------------------------------------------------------

// (x_lo, x_hi] x [y_lo, y_hi]
struct SBox {
    Rat x_lo, x_hi, y_lo, y_hi;

    bool contains(const OmegaPoint& z) const {
        return z.x.compare(Real(x_lo)) > 0 && z.x.compare(Real(x_hi)) <= 0 && z.y.compare(Real(y_lo)) >= 0 &&
               z.y.compare(Real(y_hi)) <= 0;
    }
    std::string str() const {
        return "(" + to_string(x_lo) + "," + to_string(x_hi) + "]x[" + to_string(y_lo) + "," + to_string(y_hi) + "]";
    }
};

struct SingularisationArea {
    std::vector<SBox> boxes;

    bool contains(const OmegaPoint& z) const {
        for (const auto& b : boxes)
            if (b.contains(z)) return true;
        return false;
    }

    // Checks S ⊂ V_1 and that the closures of S and G(S) are disjoint box by box.
    void validate() const {
        for (const auto& b : boxes) {
            if (!(b.x_lo < b.x_hi) || !(b.y_lo <= b.y_hi) || b.y_lo < 0 || b.y_hi > 1)
                throw InvalidSingularisationArea("malformed box " + b.str());
            if (b.x_lo < half() || b.x_hi > 1) throw InvalidSingularisationArea("(a) S not inside V_1: " + b.str());
        }
        // On V_1, G(x,y) = (1/x - 1, 1/(1+y)).
        for (const auto& s : boxes) {
            for (const auto& t : boxes) {
                Rat gx_lo = Rat(1) / t.x_hi - 1, gx_hi = Rat(1) / t.x_lo - 1;
                Rat gy_lo = Rat(1) / (1 + t.y_hi), gy_hi = Rat(1) / (1 + t.y_lo);
                bool sep_x = s.x_hi < gx_lo || gx_hi < s.x_lo;
                bool sep_y = s.y_hi < gy_lo || gy_hi < s.y_lo;
                if (!sep_x && !sep_y)
                    throw InvalidSingularisationArea("(b) S meets G(S): " + s.str() + " vs G" + t.str());
            }
        }
    }
};

inline const Mat2Z& phi_h1_y() {
    static const Mat2Z m(-1, 1, 1, 0);  // y -> (1-y)/y
    return m;
}

inline bool in_h1(const OmegaPoint& z) {
    auto b = rcf_digit(z.y);
    return b && *b == 1;
}

// R = psi^{-1}(Delta), psi = G^{-1} o phi_{H_1}: z in H_1 belongs to R unless
// G^{-1}(x, (1-y)/y) lies in S.
inline Region build_s_expansion_region(const SingularisationArea& S) {
    S.validate();
    auto oracle = [S](const OmegaPoint& z) {
        if (!in_h1(z)) return Membership::Out;
        Real Y = z.y.mobius(phi_h1_y());
        if (Y.value_is_zero()) return Membership::In;
        OmegaPoint pre = gauss_ne_inverse_step({z.x, Y});
        return S.contains(pre) ? Membership::Out : Membership::In;
    };
    std::string desc, boxes;
    for (const auto& b : S.boxes) {
        desc += (desc.empty() ? "" : "+") + b.str();
        boxes += std::string(boxes.empty() ? "" : ",") + "{\"x\":[\"" + to_string(b.x_lo) + "\",\"" + to_string(b.x_hi) +
                 "\"],\"y\":[\"" + to_string(b.y_lo) + "\",\"" + to_string(b.y_hi) + "\"]}";
    }
    Region r = Region::oracle("s:" + (desc.empty() ? std::string("empty") : desc), oracle, true, Rat(1, 2));
    // the S parameter is kept as JSON text so region specs round-trip
    r.set_unit_s(true).set_builder("s_expansion", {{"S", "[" + boxes + "]"}});
    return r;
}

inline SBox sbox(const char* x_lo, const char* x_hi, const char* y_lo, const char* y_hi) {
    return {Rat(x_lo), Rat(x_hi), Rat(y_lo), Rat(y_hi)};
}

// Fixed areas used by the examples and the test corpus, numbered 1..5.
inline SingularisationArea s_area_preset(int k) {
    switch (k) {
        case 1: return {{sbox("1/2", "1", "0", "1/2")}};
        case 2: return {{sbox("3/5", "1", "0", "3/5")}};
        case 3: return {{sbox("1/2", "3/4", "0", "1/2")}};
        case 4: return {{sbox("2/3", "1", "1/4", "3/5")}};
        case 5: return {{sbox("1/2", "2/3", "0", "1/3"), sbox("2/3", "1", "0", "1/2")}};
        default: throw OutOfDomain("no singularisation area preset " + std::to_string(k));
    }
}

// Positions n with G^n(x, 0^+) in S, n = 0..count-1.
inline std::vector<std::size_t> s_positions(const SingularisationArea& S, const Real& x, std::size_t count) {
    std::vector<std::size_t> out;
    OmegaPoint w{x, Real(Rat(0), 1)};
    for (std::size_t n = 0; n < count; ++n) {
        if (S.contains(w)) out.push_back(n);
        w = gauss_ne_step(w);
    }
    return out;
}

// ---- alpha-continued fractions ---------------------------------------------

struct AlphaRegionSpec {
    Real alpha{Rat(1, 2)};
    long backward_cap = 100000;
};

// k(z) = least j > 0 with F_{H_1}^{-j}(z) in [0,alpha) x [1/2,1], for z in H_1.
// With y = [0;1,c_1,c_2,...], F_{H_1}^{-1}(x,y) = (1/(c_1 + x), [0;1,c_2,...]);
// a finite expansion of y continues with c = infinity, i.e. a preimage at x = 0.
inline long alpha_k(const Real& alpha, const OmegaPoint& z, long cap) {
    Real x = z.x;
    Real Y = z.y.mobius(phi_h1_y());
    for (long j = 1; j <= cap; ++j) {
        if (Y.value_is_zero()) return j;
        Real inv = Y.mobius(Mat2Z(0, 1, 1, 0));
        Int c = inv.floor();
        Y = inv.mobius(Mat2Z(Int(1), Int(-c), Int(0), Int(1)));
        x = x.mobius(Mat2Z(Int(0), Int(1), Int(1), c));
        if (x.compare(alpha) < 0) return j;
    }
    throw BackwardCapExceeded("k(z) search exceeded " + std::to_string(cap) + " steps at " + z.str());
}

// R = A ∪ F^l(A_a), A = {z in H_1 : k(z) odd}, A_a = A ∩ V_a ∩ ([alpha,1] x [1/2,1]).
// A point of H_{l+1}, l >= 1, is tested through its l-fold F-preimage
// (x/(1+l x), y/(1-l y)).
inline Region build_alpha_region(const AlphaRegionSpec& spec) {
    require_alpha(spec.alpha);
    const Real alpha = spec.alpha;
    const long cap = spec.backward_cap;
    auto oracle = [alpha, cap](const OmegaPoint& z) {
        auto b = rcf_digit(z.y);
        if (!b) return Membership::Out;
        if (*b == 1) return alpha_k(alpha, z, cap) % 2 == 1 ? Membership::In : Membership::Out;
        Int lambda = *b - 1;
        Real wx = z.x.mobius(Mat2Z(Int(1), Int(0), lambda, Int(1)));
        if (wx.compare(alpha) < 0) return Membership::Out;
        Real wy = z.y.mobius(Mat2Z(Int(1), Int(0), -lambda, Int(1)));
        return alpha_k(alpha, {wx, wy}, cap) % 2 == 1 ? Membership::In : Membership::Out;
    };
    Int m = alpha.mobius(Mat2Z(0, 1, 1, 0)).floor();
    Region r = Region::oracle("alpha:" + alpha.str(), oracle, true, make_rat(Int(1), m + 1));
    r.set_unit_s(true).set_builder("alpha", {{"alpha", alpha.str()}});
    return r;
}

}  // namespace cfrow
