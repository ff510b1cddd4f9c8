#pragma once

#include <string>
#include <vector>

#include "gcf.hpp"

namespace cfrow {

// Strictly increasing n_0 < n_1 < ... with n_0 >= 0; n_k = k for k < 0.
class ContractionPlan {
public:
    ContractionPlan() = default;
    explicit ContractionPlan(std::vector<long> n) : n_(std::move(n)) {
        if (!n_.empty() && n_[0] < 0) throw BadPlan("n_0 must be >= 0");
        for (std::size_t i = 1; i < n_.size(); ++i)
            if (n_[i] <= n_[i - 1]) throw BadPlan("plan must be strictly increasing at k=" + std::to_string(i));
    }

    static ContractionPlan identity(std::size_t len) {
        std::vector<long> n(len);
        for (std::size_t i = 0; i < len; ++i) n[i] = static_cast<long>(i);
        return ContractionPlan(std::move(n));
    }

    long operator()(long k) const {
        if (k < 0) return k;
        return n_.at(static_cast<std::size_t>(k));
    }
    std::size_t size() const { return n_.size(); }
    const std::vector<long>& indices() const { return n_; }

private:
    std::vector<long> n_;
};

namespace detail {

// Q_{[m,n]} (bottom-right of B_m ... B_n); 1 on the empty range n = m - 1.
inline Int q_range(const std::vector<GcfDigit>& d, long m, long n) {
    return partial_matrix_of(d, m, n).d;
}

inline Int det_range(const std::vector<GcfDigit>& d, long m, long n) {
    Int out(1);
    for (long i = m; i <= n; ++i) out *= i < 0 ? Int(-1) : Int(-d[static_cast<std::size_t>(i)].alpha);
    return out;
}

}  // namespace detail

struct ContractabilityVerdict {
    bool contractable = true;
    long depth = 0;   // checked 0 <= m <= n <= depth
    long bad_m = -1;  // first vanishing Q_{[m+1, n]}
    long bad_n = -1;
    std::string str() const {
        if (contractable) return "contractable up to depth " + std::to_string(depth);
        return "not contractable: Q_[" + std::to_string(bad_m + 1) + "," + std::to_string(bad_n) + "] = 0";
    }
};

// Q_{[m+1,n]} = (Q_n P_{m-1} - P_n Q_{m-1}) / det B_{[-1,m]}.
inline Int q_range_from_convergents(const Convergents& c, const std::vector<GcfDigit>& d, long m, long n) {
    Int num = c.at(n).Q * c.at(m - 1).P - c.at(n).P * c.at(m - 1).Q;
    Int det = detail::det_range(d, -1, m);
    return num / det;
}

inline ContractabilityVerdict is_contractable(const GcfDigits& g, long depth) {
    ContractabilityVerdict v;
    v.depth = depth;
    auto d = g.take(static_cast<std::size_t>(depth + 1));
    if (static_cast<long>(d.size()) < depth + 1) {
        v.depth = static_cast<long>(d.size()) - 1;
        depth = v.depth;
    }
    Convergents c = convergents_of(d);
    for (long n = 0; n <= depth; ++n) {
        for (long m = 0; m <= n; ++m) {
            Int num = c.at(n).Q * c.at(m - 1).P - c.at(n).P * c.at(m - 1).Q;
            if (num == 0) {
                v.contractable = false;
                v.bad_m = m;
                v.bad_n = n;
                return v;
            }
        }
    }
    return v;
}

// Digits of the contraction with respect to `plan`; produces digits
// 0 .. plan.size()-1 (digit k+1 needs n_{k+1}).
inline GcfDigits contract_digits(const std::vector<GcfDigit>& d, const ContractionPlan& plan) {
    const long K = static_cast<long>(plan.size());
    if (K == 0) return GcfDigits(std::vector<GcfDigit>{});
    if (plan(K - 1) >= static_cast<long>(d.size()))
        throw IndexBeyondExpansion("contract: plan reaches index " + std::to_string(plan(K - 1)));
    auto Q = [&](long m, long n) {
        Int q = detail::q_range(d, m, n);
        if (q == 0) throw NotContractable("Q_[" + std::to_string(m) + "," + std::to_string(n) + "] = 0");
        return q;
    };
    std::vector<GcfDigit> out;
    for (long k = -1; k + 1 < K; ++k) {
        Int det = detail::det_range(d, plan(k - 1) + 2, plan(k) + 1);
        Int alpha = -det * Q(plan(k - 2) + 2, plan(k - 1)) * Q(plan(k) + 2, plan(k + 1));
        Int beta = detail::q_range(d, plan(k - 1) + 2, plan(k + 1));
        out.push_back({alpha, beta});
    }
    return GcfDigits(std::move(out));
}

inline GcfDigits contract(const GcfDigits& g, const ContractionPlan& plan) {
    if (plan.size() == 0) return GcfDigits(std::vector<GcfDigit>{});
    auto d = g.take(static_cast<std::size_t>(plan(static_cast<long>(plan.size()) - 1) + 1));
    return contract_digits(d, plan);
}

// c_k = prod_{j=0}^{k-1} Q_{[n_{j-1}+2, n_j]} for k = 0 .. k_max (c_k = 1 for k < 1).
inline std::vector<Int> seidel_scalars(const GcfDigits& g, const ContractionPlan& plan, long k_max) {
    if (k_max < 0) return {};
    if (k_max > static_cast<long>(plan.size()))
        throw BadPlan("seidel_scalars: plan too short for k_max");
    long top = k_max >= 1 ? plan(k_max - 1) : 0;
    auto d = g.take(static_cast<std::size_t>(top + 1));
    std::vector<Int> c{Int(1)};
    for (long k = 1; k <= k_max; ++k) {
        Int q = detail::q_range(d, plan(k - 2) + 2, plan(k - 1));
        if (q == 0) throw NotContractable("Q_[" + std::to_string(plan(k - 2) + 2) + "," + std::to_string(plan(k - 1)) + "] = 0");
        c.push_back(c.back() * q);
    }
    return c;
}

}  // namespace cfrow
