#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "induced.hpp"

namespace cfrow {

struct ShiftPoint {
    Real X;
    Real Y;
    std::string str() const { return "(" + X.str() + ", " + Y.str() + ")"; }
};

inline void require_shift_region(const Region& R) {
    if (!R.unit_s() || R.is_omega() || !R.y_floor() || *R.y_floor() <= 0)
        throw UnsupportedRegion(R.name() + ": shift space needs s_R = 1, y > 0 and a region away from the origin");
}

// (x - u_R(z), (1-y)/y) for u_R = 0 and (x - 1, 1 - y) for u_R = 1.
inline ShiftPoint phi_with_u(const OmegaPoint& z, const Int& u) {
    if (u == 0) return {z.x, z.y.mobius(Mat2Z(-1, 1, 1, 0))};
    return {z.x.mobius(Mat2Z(1, -1, 0, 1)), z.y.mobius(Mat2Z(-1, 1, 0, 1))};
}

inline ShiftPoint phi(const Region& R, const OmegaPoint& z, long cap = kDefaultCap) {
    require_shift_region(R);
    OmegaPoint zz = R.prepare(z);
    if (zz.x.value_is_zero() || zz.x.compare(Real(1L)) == 0) throw NullSetPoint("phi: x in {0,1}");
    if (!R.certainly_contains(zz)) throw OutOfDomain("phi: point " + z.str() + " not in " + R.name());
    InducedRecord rec = induced_step(R, zz, cap);
    return phi_with_u(zz, rec.u());
}

// X > 0: (X, 1/(Y+1)); X < 0: (X+1, 1-Y).
inline OmegaPoint phi_inverse(const ShiftPoint& w) {
    int s = w.X.sign();
    if (s == 0) throw NullSetPoint("phi_inverse on the ray X = 0");
    if (s > 0) return {w.X, w.Y.mobius(Mat2Z(0, 1, 1, 1))};
    return {w.X.mobius(Mat2Z(1, 1, 0, 1)), w.Y.mobius(Mat2Z(-1, 1, 0, 1))};
}

inline OmegaPoint phi_inverse(const Region& R, const ShiftPoint& w) {
    require_shift_region(R);
    return phi_inverse(w);
}

// (alpha/X - beta, 1/(beta + alpha Y)) with the digit maps at phi^{-1}(w); the ray X = 0 is fixed.
inline ShiftPoint tau_step(const Region& R, const ShiftPoint& w, long cap = kDefaultCap, bool fast = false) {
    require_shift_region(R);
    if (w.X.value_is_zero()) return w;
    OmegaPoint z = phi_inverse(w);
    DigitMaps m = digit_maps(R, z, cap, 10000, fast);
    return {w.X.mobius(Mat2Z(-m.beta, m.alpha, Int(1), Int(0))), w.Y.mobius(Mat2Z(Int(0), Int(1), m.alpha, m.beta))};
}

// Same map, refusing the fixed ray.
inline ShiftPoint tau_step_strict(const Region& R, const ShiftPoint& w, long cap = kDefaultCap) {
    if (w.X.value_is_zero()) throw FixedRay("tau_step on X = 0");
    return tau_step(R, w, cap);
}

struct BilateralDigits {
    std::vector<GcfDigit> past;    // (alpha_R, beta_R)(z^R_{-k}), k = 1..m
    std::vector<GcfDigit> future;  // (alpha_R, beta_R)(z^R_k), k = 0..n
    bool past_ended = false;       // backward orbit left R for good before m steps
};

inline BilateralDigits bilateral_digits(const Region& R, const OmegaPoint& z, std::size_t m, std::size_t n,
                                        long cap = kDefaultCap, long backward_cap = 100000) {
    require_shift_region(R);
    BilateralDigits out;
    OmegaPoint cur = R.prepare(z);
    InducedRecord rec = induced_step(R, cur, cap);
    for (std::size_t k = 0; k <= n; ++k) {
        InducedRecord next = induced_step(R, rec.z_next, cap);
        DigitMaps dm = digit_maps_from(rec, next, Int(1));
        out.future.push_back({dm.alpha, dm.beta});
        rec = std::move(next);
    }
    cur = R.prepare(z);
    for (std::size_t k = 0; k < m; ++k) {
        auto pre = induced_preimage(R, cur, backward_cap);
        if (pre.status == InducedPreimage::Status::CapExceeded)
            throw BackwardCapExceeded(R.name() + ": preimage " + std::to_string(k + 1) + " of " + z.str());
        if (pre.status == InducedPreimage::Status::NoPreimage) {
            out.past_ended = true;
            break;
        }
        InducedRecord fwd = induced_step(R, cur, cap);
        DigitMaps dm = digit_maps_from(pre.rec, fwd, Int(1));
        out.past.push_back({dm.alpha, dm.beta});
        cur = pre.w;
    }
    return out;
}

// CSV columns n, X_lo, X_hi, Y_lo, Y_hi.
inline void write_shift_csv(std::ostream& os, const std::vector<ShiftPoint>& track, unsigned bits = 53) {
    os << "n,X_lo,X_hi,Y_lo,Y_hi\n";
    char buf[256];
    for (std::size_t i = 0; i < track.size(); ++i) {
        auto ex = track[i].X.enclosure(bits);
        auto ey = track[i].Y.enclosure(bits);
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g\n", i, ex.lo_double(), ex.hi_double(),
                      ey.lo_double(), ey.hi_double());
        os << buf;
    }
}

}  // namespace cfrow
