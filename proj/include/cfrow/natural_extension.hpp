#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "farey.hpp"

namespace cfrow {

// A point of [0,1]^2 with exact (or lazily refinable) coordinates.
struct OmegaPoint {
    Real x;
    Real y;

    std::string str() const { return "(" + x.str() + ", " + y.str() + ")"; }
    bool identical(const OmegaPoint& o) const { return x.identical(o.x) && y.identical(o.y); }
};

// V_a ∩ H_b: x in (1/(a+1), 1/a], y in (1/(b+1), 1/b]; nullopt marks 0 (index infinity).
struct CellIndex {
    PartialQuotient a;
    PartialQuotient b;

    friend bool operator==(const CellIndex& p, const CellIndex& q) { return p.a == q.a && p.b == q.b; }
    std::string str() const {
        return "(" + (a ? to_string(*a) : std::string("inf")) + "," + (b ? to_string(*b) : std::string("inf")) + ")";
    }
};

inline CellIndex cell_of(const OmegaPoint& z) { return {rcf_digit(z.x), rcf_digit(z.y)}; }

inline void require_omega(const OmegaPoint& z, const char* who) {
    require_unit_interval(z.x, who);
    require_unit_interval(z.y, who);
}

// Ito's map: (A_e^{-1} x, A_e y) with e = [x > 1/2].
inline OmegaPoint ito_step(const OmegaPoint& z) {
    require_omega(z, "ito_step");
    auto st = farey_step(z.x);
    return {st.next, z.y.mobius(A_eps(st.eps))};
}

struct ItoInverse {
    int eps;  // branch of the preimage
    OmegaPoint z;
};

// y <= 1/2: (x/(1+x), y/(1-y)); otherwise (1/(1+x), (1-y)/y).
inline ItoInverse ito_inverse_step(const OmegaPoint& z) {
    require_omega(z, "ito_inverse_step");
    if (z.y.compare(Real(half())) <= 0) return {0, {z.x.mobius(Mat2Z(1, 0, 1, 1)), z.y.mobius(Mat2Z(1, 0, -1, 1))}};
    return {1, {z.x.mobius(Mat2Z(0, 1, 1, 1)), z.y.mobius(Mat2Z(-1, 1, 1, 0))}};
}

struct OrbitEntry {
    OmegaPoint z;
    CellIndex cell;
};

// z_0, ..., z_n with their cells.
inline std::vector<OrbitEntry> ito_orbit(const OmegaPoint& z, std::size_t n) {
    std::vector<OrbitEntry> out;
    out.reserve(n + 1);
    OmegaPoint cur = z;
    for (std::size_t i = 0;; ++i) {
        out.push_back({cur, cell_of(cur)});
        if (i == n) break;
        cur = ito_step(cur);
    }
    return out;
}

// Digit prefixes of z_n from those of z = ([0;a_1,...],[0;b_1,...]) with a_1.. irrational tail:
// n < a_1: ([0;a_1-n, a_2,...],[0;n+b_1, b_2,...]);
// n >= a_1: ([0;a_{j+1}-l, a_{j+2},...],[0;l+1, a_j,...,a_2, a_1-1+b_1, b_2,...]).
// `a` must cover index j+1 of n; the returned prefixes are as long as the inputs allow.
inline std::pair<std::vector<Int>, std::vector<Int>> symbolic_orbit_digits(const std::vector<Int>& a,
                                                                            const std::vector<Int>& b,
                                                                            const Int& n) {
    if (a.empty() || b.empty()) throw std::invalid_argument("symbolic_orbit_digits: empty digit list");
    FareyIndex fi = classify_farey_index(a, n);
    std::vector<Int> xs, ys;
    if (n < a[0]) {
        xs.push_back(a[0] - n);
        xs.insert(xs.end(), a.begin() + 1, a.end());
        ys.push_back(n + b[0]);
        ys.insert(ys.end(), b.begin() + 1, b.end());
        return {xs, ys};
    }
    const std::size_t j = fi.j;
    xs.push_back(a[j] - fi.lambda);
    xs.insert(xs.end(), a.begin() + static_cast<long>(j) + 1, a.end());
    ys.push_back(fi.lambda + 1);
    for (std::size_t i = j; i-- > 1;) ys.push_back(a[i]);
    ys.push_back(a[0] - 1 + b[0]);
    ys.insert(ys.end(), b.begin() + 1, b.end());
    return {xs, ys};
}

// Gauss natural extension: (G(x), 1/(a(x) + y)); the line x = 0 is fixed.
inline OmegaPoint gauss_ne_step(const OmegaPoint& w) {
    require_omega(w, "gauss_ne_step");
    auto st = gauss_step(w.x);
    if (!st.a) return w;
    return {st.next, w.y.mobius(Mat2Z(Int(0), Int(1), Int(1), *st.a))};
}

// Inverse of gauss_ne_step: (1/(a(y) + x), G(y)); the line y = 0 is fixed.
inline OmegaPoint gauss_ne_inverse_step(const OmegaPoint& w) {
    require_omega(w, "gauss_ne_inverse_step");
    auto st = gauss_step(w.y);
    if (!st.a) return w;
    return {w.x.mobius(Mat2Z(Int(0), Int(1), Int(1), *st.a)), st.next};
}

inline double mu_bar_density(double x, double y) {
    double s = x + y - x * y;
    if (s == 0.0) throw SingularAtOrigin("mu_bar density at (0,0)");
    return 1.0 / (s * s);
}

inline double nu_g_density(double x, double y) {
    double s = 1.0 + x * y;
    return 1.0 / (std::log(2.0) * s * s);
}

// CSV columns n, x_lo, x_hi, y_lo, y_hi, cell_a, cell_b (cell index 0 stands for infinity).
inline void write_orbit_csv(std::ostream& os, const std::vector<OrbitEntry>& orbit, unsigned bits = 53) {
    os << "n,x_lo,x_hi,y_lo,y_hi,cell_a,cell_b\n";
    char buf[256];
    for (std::size_t i = 0; i < orbit.size(); ++i) {
        auto ex = orbit[i].z.x.enclosure(bits);
        auto ey = orbit[i].z.y.enclosure(bits);
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,", i, ex.lo_double(), ex.hi_double(),
                      ey.lo_double(), ey.hi_double());
        os << buf << (orbit[i].cell.a ? to_string(*orbit[i].cell.a) : "0") << ','
           << (orbit[i].cell.b ? to_string(*orbit[i].cell.b) : "0") << '\n';
    }
}

}  // namespace cfrow
