#pragma once

#include <atomic>
#include <optional>
#include <string>
#include <vector>

#include "region.hpp"

namespace cfrow {

// Counters for the s_R bounds check run on every induced record.
struct InducedStats {
    std::atomic<std::uint64_t> records{0};
    std::atomic<std::uint64_t> bound_failures{0};
};

inline InducedStats& induced_stats() {
    static InducedStats s;
    return s;
}

// s_R >= 1 and 0 <= u_R <= s_R.
inline void check_record_bounds(const InducedRecord& rec) {
    auto& st = induced_stats();
    st.records.fetch_add(1, std::memory_order_relaxed);
    if (rec.s() < 1 || rec.u() < 0 || rec.u() > rec.s()) {
        st.bound_failures.fetch_add(1, std::memory_order_relaxed);
        throw std::logic_error("induced record violates s_R bounds: A_R = " + rec.A.str());
    }
}

inline constexpr long kDefaultCap = 1000000;

// Least n >= 1 with F^n(z) in R, together with A_{[0,n]} and F^n(z).
inline InducedRecord induced_step_generic(const Region& R, const OmegaPoint& z, long cap) {
    OmegaPoint cur = R.prepare(z);
    InducedRecord rec;
    for (long n = 1; n <= cap; ++n) {
        require_omega(cur, "induced_step");
        auto st = farey_step(cur.x);
        rec.A *= A_eps(st.eps);
        cur = {st.next, cur.y.mobius(A_eps(st.eps))};
        if (R.certainly_contains(cur)) {
            rec.N = n;
            rec.z_next = cur;
            return rec;
        }
    }
    throw CapExceeded(R.name() + ": orbit of " + z.str() + " did not enter within " + std::to_string(cap) + " steps");
}

// One step of F_R (hitting semantics when z is outside R). `fast` permits a
// region-supplied closed form instead of iterating F.
inline InducedRecord induced_step(const Region& R, const OmegaPoint& z, long cap = kDefaultCap, bool fast = false) {
    InducedRecord rec = fast && R.jump() ? (*R.jump())(R.prepare(z)) : induced_step_generic(R, z, cap);
    check_record_bounds(rec);
    return rec;
}

inline long hitting_time(const Region& R, const OmegaPoint& z, long cap = kDefaultCap) {
    return induced_step(R, z, cap).N;
}

// F_R(z) = (A_R^{-1} x, A_1 A_R^T A_1^{-1} y).
inline OmegaPoint induced_image_formula(const Mat2Z& A, const OmegaPoint& z) {
    static const Mat2Z A1inv(-1, 1, 1, 0);
    return {z.x.mobius(A.adjugate()), z.y.mobius(A1() * A.transpose() * A1inv)};
}

struct InducedProducts {
    std::vector<OmegaPoint> points;      // z^R_k, k = 0..n
    std::vector<InducedRecord> records;  // record at z^R_k, k = 0..n-1
    std::vector<Int> N;                  // N^R_k, k = 0..n
    std::vector<Mat2Z> A;                // A^R_{[0,k]}, k = 0..n
};

inline InducedProducts induced_products(const Region& R, const OmegaPoint& z, std::size_t n, long cap = kDefaultCap,
                                        bool fast = false) {
    InducedProducts out;
    out.points.push_back(R.prepare(z));
    out.N.push_back(Int(0));
    out.A.push_back(Mat2Z::identity());
    for (std::size_t k = 0; k < n; ++k) {
        InducedRecord rec = induced_step(R, out.points.back(), cap, fast);
        out.N.push_back(out.N.back() + rec.N);
        out.A.push_back(out.A.back() * rec.A);
        out.points.push_back(rec.z_next);
        out.records.push_back(std::move(rec));
    }
    return out;
}

struct InducedPreimage {
    enum class Status { Found, NoPreimage, CapExceeded };
    Status status = Status::NoPreimage;
    OmegaPoint w;     // F_R^{-1}(z) when found
    InducedRecord rec;  // the forward record at w
};

// F_R^{-1}(z): the first backward iterate F^{-n}(z) in R. Backward orbits on
// the line y = 0 stay there; when R is bounded away from that line the
// search stops with NoPreimage.
inline InducedPreimage induced_preimage(const Region& R, const OmegaPoint& z, long cap) {
    InducedPreimage out;
    OmegaPoint zz = R.prepare(z);
    if (!R.certainly_contains(zz)) return out;
    OmegaPoint cur = zz;
    Mat2Z A;
    const bool floor_positive = R.y_floor() && *R.y_floor() > 0;
    for (long n = 1; n <= cap; ++n) {
        if (floor_positive && cur.y.value_is_zero()) return out;
        auto inv = ito_inverse_step(cur);
        cur = inv.z;
        A = A_eps(inv.eps) * A;
        if (R.certainly_contains(cur)) {
            out.status = InducedPreimage::Status::Found;
            out.w = cur;
            out.rec.N = n;
            out.rec.A = A;
            out.rec.z_next = zz;
            check_record_bounds(out.rec);
            return out;
        }
    }
    out.status = InducedPreimage::Status::CapExceeded;
    return out;
}

struct DigitMaps {
    enum class DSource { TopEdge, UnitS, Preimage, NoPreimage, CapExceeded };
    Int d{1};
    Int alpha{0};
    Int beta{0};
    DSource d_source = DSource::NoPreimage;
    InducedRecord rec;       // A_R(z)
    InducedRecord rec_next;  // A_R(F_R z)
};

inline const char* to_cstr(DigitMaps::DSource s) {
    switch (s) {
        case DigitMaps::DSource::TopEdge: return "top-edge";
        case DigitMaps::DSource::UnitS: return "unit-s";
        case DigitMaps::DSource::Preimage: return "preimage";
        case DigitMaps::DSource::NoPreimage: return "no-preimage";
        default: return "cap-exceeded";
    }
}

// d_R(z) = s_R(F_R^{-1} z) or 1; the two "1" cases are told apart in d_source.
inline std::pair<Int, DigitMaps::DSource> d_R(const Region& R, const OmegaPoint& z, long backward_cap) {
    OmegaPoint zz = R.prepare(z);
    if (zz.y.is_rational() && zz.y.quad().A == 1) return {Int(1), DigitMaps::DSource::TopEdge};
    if (R.unit_s()) return {Int(1), DigitMaps::DSource::UnitS};
    auto pre = induced_preimage(R, zz, backward_cap);
    switch (pre.status) {
        case InducedPreimage::Status::Found: return {pre.rec.s(), DigitMaps::DSource::Preimage};
        case InducedPreimage::Status::NoPreimage: return {Int(1), DigitMaps::DSource::NoPreimage};
        default: return {Int(1), DigitMaps::DSource::CapExceeded};
    }
}

inline DigitMaps digit_maps_from(const InducedRecord& rec, const InducedRecord& next, const Int& d) {
    DigitMaps m;
    m.d = d;
    m.rec = rec;
    m.rec_next = next;
    m.alpha = -rec.A.det() * d * next.s();
    m.beta = rec.s() * next.u() + rec.r() * next.s();
    if (m.alpha == 0) throw std::logic_error("alpha_R = 0");
    return m;
}

inline DigitMaps digit_maps(const Region& R, const OmegaPoint& z, long cap = kDefaultCap, long backward_cap = 10000,
                            bool fast = false) {
    InducedRecord rec = induced_step(R, z, cap, fast);
    InducedRecord next = induced_step(R, rec.z_next, cap, fast);
    auto [d, src] = d_R(R, z, backward_cap);
    DigitMaps m = digit_maps_from(rec, next, d);
    m.d_source = src;
    return m;
}

}  // namespace cfrow
