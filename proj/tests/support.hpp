#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cfrow/cfe.hpp"
#include "cfrow/io.hpp"
#include "cfrow/measure.hpp"
#include "cfrow/shift_space.hpp"

namespace cfrow::testing {

// Seeded generators for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }
    bool coin() { return uniform(0, 1) == 1; }
    std::mt19937_64& engine() { return rng_; }

    std::vector<Int> digits(std::size_t n, long lo, long hi) {
        std::vector<Int> out;
        for (std::size_t i = 0; i < n; ++i) out.emplace_back(uniform(lo, hi));
        return out;
    }

    // p/q in (0,1] with q <= max_den.
    Rat rational_unit(long max_den) {
        long q = uniform(1, max_den);
        long p = uniform(1, q);
        return make_rat(Int(p), Int(q));
    }

    // [0; pre..., (period...)] with digits in [1,hi]; the period holds every value 1..cover.
    struct QuadPoint {
        std::vector<Int> pre, period;
        Real value;
        std::vector<Int> rcf(std::size_t n) const {
            std::vector<Int> out;
            for (std::size_t i = 0; i < n; ++i)
                out.push_back(i < pre.size() ? pre[i] : period[(i - pre.size()) % period.size()]);
            return out;
        }
    };
    QuadPoint quadratic(long hi = 6, long cover = 0) {
        QuadPoint q;
        q.pre = digits(static_cast<std::size_t>(uniform(0, 3)), 1, hi);
        q.period = digits(static_cast<std::size_t>(uniform(1, 3)), 1, hi);
        for (long c = 1; c <= cover; ++c) q.period.insert(q.period.begin() + uniform(0, static_cast<long>(q.period.size())), Int(c));
        Real v(periodic_rcf_value(q.period));
        for (auto it = q.pre.rbegin(); it != q.pre.rend(); ++it) v = v.mobius(Mat2Z(Int(0), Int(1), Int(1), *it));
        q.value = v;
        return q;
    }

    // Random GCF with integer digits in [1,9], sign of alpha random.
    std::vector<GcfDigit> gcf(std::size_t n) {
        std::vector<GcfDigit> d;
        for (std::size_t i = 0; i < n; ++i) d.push_back({Int(uniform(1, 9) * (coin() ? 1 : -1)), Int(uniform(1, 9))});
        return d;
    }

    std::vector<long> plan(long max_index, std::size_t len) {
        std::vector<long> out;
        long cur = uniform(0, 2);
        while (out.size() < len && cur <= max_index) {
            out.push_back(cur);
            cur += uniform(1, 3);
        }
        return out;
    }

private:
    std::mt19937_64 rng_;
};

// The convergent/mediant ordering chains around x, for every n with 2n+2 <= a.size();
// a holds a_1, a_2, ... of x.
inline bool mediant_chains_hold(const Real& x, const std::vector<Int>& a) {
    std::vector<Int> full{Int(0)};
    full.insert(full.end(), a.begin(), a.end());
    Convergents c = convergents(GcfDigits::rcf(full), static_cast<long>(a.size()));
    auto frac = [&](const Int& lam, long n) {
        return Real(make_rat(lam * c.at(n).P + c.at(n - 1).P, lam * c.at(n).Q + c.at(n - 1).Q));
    };
    auto increasing = [](const std::vector<Real>& v) {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i - 1].compare(v[i]) >= 0) return false;
        return true;
    };
    for (long n = 0; 2 * n + 2 <= static_cast<long>(a.size()); ++n) {
        const Int& a_odd = a[static_cast<std::size_t>(2 * n)];
        const Int& a_even = a[static_cast<std::size_t>(2 * n + 1)];
        if (!frac(a_odd, 2 * n).identical(Real(make_rat(c.at(2 * n + 1).P, c.at(2 * n + 1).Q)))) return false;
        if (!frac(a_even, 2 * n + 1).identical(Real(make_rat(c.at(2 * n + 2).P, c.at(2 * n + 2).Q)))) return false;
        std::vector<Real> odd{x};
        for (Int lam = a_odd; lam >= 1; --lam) odd.push_back(frac(lam, 2 * n));
        if (c.at(2 * n - 1).Q != 0) odd.push_back(Real(make_rat(c.at(2 * n - 1).P, c.at(2 * n - 1).Q)));
        std::vector<Real> even{Real(make_rat(c.at(2 * n).P, c.at(2 * n).Q))};
        for (Int lam = 1; lam <= a_even; ++lam) even.push_back(frac(lam, 2 * n + 1));
        even.push_back(x);
        if (!increasing(odd) || !increasing(even)) return false;
    }
    return true;
}

// Empty when the CFE convergents for the S-expansion region match both the RCF convergents
// kept by the G-orbit of (x, 0^+) and the singularise() rewrite; otherwise a description.
inline std::string s_expansion_mismatch(const SingularisationArea& S, const Real& x, std::size_t count,
                                        long cap = 20000) {
    Region R = build_s_expansion_region(S);
    CfeResult res = cfe_direct(R, {x, Real(1L)}, count - 1, cap);
    const std::size_t m = 2 * count + 2;
    std::vector<Int> a{Int(0)};
    for (const Int& v : rcf_digits(x, m + 1)) a.push_back(v);
    GcfDigits rcf = GcfDigits::rcf(a);
    Convergents c = convergents(rcf, static_cast<long>(m));
    auto pos = s_positions(S, x, m);
    std::vector<ExtRational> kept;
    for (std::size_t j = 0; j < m; ++j)
        if (std::find(pos.begin(), pos.end(), j) == pos.end()) kept.push_back(c.at(static_cast<long>(j)).value());
    std::vector<std::size_t> sing_pos;
    for (std::size_t p : pos)
        if (p + 2 < a.size()) sing_pos.push_back(p);
    GcfDigits sing = singularise(rcf, sing_pos);
    Convergents cs = convergents(sing, static_cast<long>(sing.finite_size()) - 1);
    if (kept.size() < count || static_cast<std::size_t>(cs.last() + 1) < count) return "too few reference convergents";
    for (std::size_t k = 0; k < count; ++k) {
        ExtRational v = res.convergents[k].value();
        if (!(v == kept[k])) return "orbit filter differs at " + std::to_string(k) + ": " + v.str() + " vs " + kept[k].str();
        if (!(v == cs.at(static_cast<long>(k)).value())) return "singularisation differs at " + std::to_string(k);
    }
    return {};
}

inline std::vector<Int> ints(std::initializer_list<long> v) {
    std::vector<Int> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

inline OmegaPoint pt(const std::string& x, const std::string& y) { return {parse_real(x), parse_real(y)}; }

}  // namespace cfrow::testing
