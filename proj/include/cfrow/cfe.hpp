#pragma once

#include <string>
#include <vector>

#include "contraction.hpp"
#include "induced.hpp"

namespace cfrow {

struct CfeResult {
    GcfDigits digits;                         // indices 0..n
    std::vector<ConvergentPair> convergents;  // (P^R_k, Q^R_k), k = 0..n
    std::vector<InducedRecord> witness;       // records at z^R_k, k = 0..n
    std::vector<Mat2Z> products;              // A^R_{[0,k]}, k = 0..n+1
    std::vector<Int> c;                       // c^R_k = prod_{j<k} s_R(z^R_j), k = 0..n
    Int d0{1};
};

// Contraction plan n_k = N^R_{k+1} - 1, k = 0..n.
inline ContractionPlan cfe_plan(const InducedProducts& ip, std::size_t n) {
    std::vector<long> plan;
    for (std::size_t k = 0; k <= n; ++k) plan.push_back(ip.N.at(k + 1).get_si() - 1);
    return ContractionPlan(std::move(plan));
}

// Digits 0..n of the contraction of the Farey expansion of x along the visits to R.
inline GcfDigits cfe_by_contraction(const Region& R, const OmegaPoint& z, std::size_t n, long cap = kDefaultCap) {
    InducedProducts ip = induced_products(R, z, n + 1, cap);
    ContractionPlan plan = cfe_plan(ip, n);
    return contract(farey_expansion(z.x), plan);
}

// Digits 0..n from the digit maps along the F_R-orbit:
// (s_R(z_0), u_R(z_0)), (alpha_R(z_0)/d_R(z_0), beta_R(z_0)), (alpha_R(z_k), beta_R(z_k)),
// where d_R(z_k) = s_R(z_{k-1}) for k >= 1.
inline CfeResult cfe_direct(const Region& R, const OmegaPoint& z, std::size_t n, long cap = kDefaultCap,
                            long backward_cap = 10000) {
    CfeResult res;
    InducedProducts ip = induced_products(R, z, n + 1, cap);
    res.witness = ip.records;
    res.products = ip.A;
    res.d0 = d_R(R, ip.points[0], backward_cap).first;

    std::vector<GcfDigit> d;
    d.push_back({ip.records[0].s(), ip.records[0].u()});
    for (std::size_t k = 0; k + 1 <= n; ++k) {
        const Int dk = k == 0 ? res.d0 : ip.records[k - 1].s();
        DigitMaps m = digit_maps_from(ip.records[k], ip.records[k + 1], dk);
        Int alpha = m.alpha;
        if (k == 0) {
            if (!mpz_divisible_p(alpha.get_mpz_t(), dk.get_mpz_t()))
                throw std::logic_error("alpha_R(z_0) not divisible by d_R(z_0)");
            alpha /= dk;
        }
        d.push_back({alpha, m.beta});
    }
    res.digits = GcfDigits(d);
    Convergents conv = convergents_of(d);
    for (long k = 0; k <= static_cast<long>(n); ++k) res.convergents.push_back(conv.at(k));
    res.c.push_back(Int(1));
    for (std::size_t k = 1; k <= n; ++k) res.c.push_back(res.c.back() * ip.records[k - 1].s());
    return res;
}

// (P^R_k, Q^R_k) = c^R_k (u^R_{k+1}, s^R_{k+1}) and P/Q = u/s in lowest terms.
inline void cfe_convergents(const CfeResult& res) {
    for (std::size_t k = 0; k < res.convergents.size(); ++k) {
        const auto& pq = res.convergents[k];
        const Mat2Z& A = res.products.at(k + 1);
        if (pq.P != res.c[k] * A.a || pq.Q != res.c[k] * A.c)
            throw MismatchAt(static_cast<long>(k), "(P,Q) = (" + to_string(pq.P) + "," + to_string(pq.Q) + ") vs c*(u,s) = " +
                                                       to_string(res.c[k]) + "*(" + to_string(A.a) + "," + to_string(A.c) + ")");
        if (!(pq.value() == ExtRational(A.a, A.c)))
            throw MismatchAt(static_cast<long>(k), "reduced convergent differs");
    }
}

}  // namespace cfrow
