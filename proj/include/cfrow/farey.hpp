#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gcf.hpp"
#include "real.hpp"

namespace cfrow {

// A partial quotient; nullopt stands for infinity.
using PartialQuotient = std::optional<Int>;

inline const Mat2Z& A0() {
    static const Mat2Z m(1, 0, 1, 1);
    return m;
}
inline const Mat2Z& A1() {
    static const Mat2Z m(0, 1, 1, 1);
    return m;
}
inline const Mat2Z& A_eps(int e) { return e ? A1() : A0(); }

inline const Rat& half() {
    static const Rat h(1, 2);
    return h;
}

inline void require_unit_interval(const Real& x, const char* who) {
    if (x.sign() < 0 || x.compare(Real(1L)) > 0) throw OutOfDomain(std::string(who) + ": x = " + x.str() + " not in [0,1]");
}

// a(x) = floor(1/x), infinity at 0.
inline PartialQuotient rcf_digit(const Real& x) {
    if (x.value_is_zero()) return std::nullopt;
    return x.mobius(Mat2Z(0, 1, 1, 0)).floor();
}

struct GaussStep {
    PartialQuotient a;
    Real next;
};

// G(x) = 1/x - floor(1/x), G(0) = 0.
inline GaussStep gauss_step(const Real& x) {
    require_unit_interval(x, "gauss_step");
    if (x.value_is_zero()) return {std::nullopt, Real(0L)};
    Int a = x.mobius(Mat2Z(0, 1, 1, 0)).floor();
    return {a, x.mobius(Mat2Z(-a, Int(1), Int(1), Int(0)))};
}

// First n partial quotients a_1, ..., a_n (fewer if x is rational).
inline std::vector<Int> rcf_digits(const Real& x, std::size_t n) {
    std::vector<Int> out;
    Real cur = x;
    while (out.size() < n) {
        auto st = gauss_step(cur);
        if (!st.a) break;
        out.push_back(*st.a);
        cur = st.next;
    }
    return out;
}

// Integer part and fractional digits of any real: x = [a0; a1, a2, ...].
inline std::pair<Int, std::vector<Int>> rcf_expansion(const Real& x, std::size_t n) {
    Int a0 = x.floor();
    Real frac = x.mobius(Mat2Z(Int(1), Int(-a0), Int(0), Int(1)));
    return {a0, rcf_digits(frac, n)};
}

struct FareyStep {
    int eps;
    Real next;
};

// F(x) = x/(1-x) for x <= 1/2 (eps 0) and (1-x)/x otherwise (eps 1).
inline FareyStep farey_step(const Real& x) {
    require_unit_interval(x, "farey_step");
    if (x.compare(Real(half())) <= 0) return {0, x.mobius(Mat2Z(1, 0, -1, 1))};
    return {1, x.mobius(Mat2Z(-1, 1, 1, 0))};
}

inline std::vector<int> epsilon_stream(const Real& x, std::size_t n) {
    std::vector<int> out;
    out.reserve(n);
    Real cur = x;
    for (std::size_t i = 0; i < n; ++i) {
        auto st = farey_step(cur);
        out.push_back(st.eps);
        cur = st.next;
    }
    return out;
}

struct AlphaStep {
    int sign;
    Int digit;
    Real next;
};

inline void require_alpha(const Real& alpha) {
    if (alpha.sign() <= 0 || alpha.compare(Real(1L)) > 0) throw OutOfDomain("alpha must lie in (0,1]");
}

// G_alpha(x) = 1/|x| - floor(1/|x| + 1 - alpha) on [alpha - 1, alpha).
inline AlphaStep alpha_step(const Real& alpha, const Real& x) {
    require_alpha(alpha);
    if (x.compare(alpha) >= 0 || x.compare(alpha.mobius(Mat2Z(1, -1, 0, 1))) < 0)
        throw OutOfDomain("alpha_step: x = " + x.str() + " outside [alpha-1, alpha)");
    if (x.value_is_zero()) throw ZeroInput("alpha_step: orbit reached 0");
    int s = x.sign();
    Real ax = s < 0 ? x.mobius(Mat2Z(-1, 0, 0, 1)) : x;
    Real inv = ax.mobius(Mat2Z(0, 1, 1, 0));
    Int n0 = inv.floor();
    Real g = inv.mobius(Mat2Z(Int(1), Int(-n0), Int(0), Int(1)));
    Int d = g.compare(alpha) >= 0 ? n0 + 1 : n0;
    return {s, d, inv.mobius(Mat2Z(Int(1), Int(-d), Int(0), Int(1)))};
}

// Representative of x modulo 1 in [alpha - 1, alpha).
inline Real alpha_domain_representative(const Real& alpha, const Real& x) {
    require_alpha(alpha);
    Int k = x.floor();
    Real shifted = x.mobius(Mat2Z(Int(1), Int(-k), Int(0), Int(1)));  // in [0, 1)
    if (shifted.compare(alpha) >= 0) shifted = shifted.mobius(Mat2Z(1, -1, 0, 1));
    return shifted;
}

struct AlphaDigit {
    int sign;
    Int digit;
    friend bool operator==(const AlphaDigit& a, const AlphaDigit& b) { return a.sign == b.sign && a.digit == b.digit; }
};

// Up to n digits of the alpha-expansion; stops early at 0.
inline std::vector<AlphaDigit> alpha_expansion(const Real& alpha, const Real& x, std::size_t n) {
    std::vector<AlphaDigit> out;
    Real cur = x;
    for (std::size_t i = 0; i < n && !cur.value_is_zero(); ++i) {
        auto st = alpha_step(alpha, cur);
        out.push_back({st.sign, st.digit});
        cur = st.next;
    }
    return out;
}

// [(1-e1)/1; (2e1-1)/(2-e2), (2e2-1)/(2-e3), ...]
inline GcfDigits farey_expansion(const Real& x) {
    require_unit_interval(x, "farey_expansion");
    return GcfDigits::lazy([x](std::size_t n) {
        std::vector<GcfDigit> out;
        if (n == 0) return out;
        auto e = epsilon_stream(x, n);
        out.push_back({Int(1), Int(1 - e[0])});
        for (std::size_t k = 1; k < n; ++k) out.push_back({Int(2 * e[k - 1] - 1), Int(2 - e[k])});
        return out;
    });
}

// Digits of x + 1 = [b0; e1/b1, e2/b2, ...] with (b_n, e_{n+1}) = (2 - eps_{n+1}, 2 eps_{n+1} - 1).
inline GcfDigits lehner_expansion(const Real& x) {
    require_unit_interval(x, "lehner_expansion");
    return GcfDigits::lazy([x](std::size_t n) {
        std::vector<GcfDigit> out;
        if (n == 0) return out;
        auto e = epsilon_stream(x, n);
        out.push_back({Int(1), Int(2 - e[0])});
        for (std::size_t k = 1; k < n; ++k) out.push_back({Int(2 * e[k - 1] - 1), Int(2 - e[k])});
        return out;
    });
}

struct LehnerPair {
    Int b;
    Int e;
};

inline std::vector<LehnerPair> lehner_pairs(const Real& x, std::size_t n) {
    auto e = epsilon_stream(x, n);
    std::vector<LehnerPair> out;
    for (int v : e) out.push_back({Int(2 - v), Int(2 * v - 1)});
    return out;
}

// The Lehner expansion of x + 1 read as an expansion of x.
inline GcfDigits lehner_to_farey(const GcfDigits& lehner) {
    return GcfDigits::lazy([lehner](std::size_t n) {
        auto d = lehner.take(n);
        if (!d.empty()) d[0].beta -= 1;
        return d;
    });
}

// A_{eps_1} ... A_{eps_n} by literal multiplication.
inline Mat2Z a_matrix_forward_literal(const Real& x, std::size_t n) {
    Mat2Z m;
    for (int e : epsilon_stream(x, n)) m *= A_eps(e);
    return m;
}

// A_{eps_n} ... A_{eps_1} by literal multiplication.
inline Mat2Z a_matrix_backward_literal(const Real& x, std::size_t n) {
    Mat2Z m;
    for (int e : epsilon_stream(x, n)) m = A_eps(e) * m;
    return m;
}

// A_{[0,n]} = [[lambda p_j + p_{j-1}, p_j], [lambda q_j + q_{j-1}, q_j]] with (j, lambda) from n.
inline Mat2Z a_matrix_forward(const Real& x, std::size_t n) {
    require_unit_interval(x, "a_matrix_forward");
    std::vector<Int> a;
    Int total = 0;
    Real cur = x;
    bool ended = false;
    while (total <= Int(static_cast<unsigned long>(n))) {
        auto st = gauss_step(cur);
        if (!st.a) {
            ended = true;
            break;
        }
        a.push_back(*st.a);
        total += *st.a;
        cur = st.next;
    }
    FareyIndex fi = classify_farey_index(a, Int(static_cast<unsigned long>(n)), ended);
    // RCF [0; a_1, ...]: (P2, P1) = (p_{j-1}, p_j) starting from p_{-1} = 1, p_0 = 0.
    Int P2 = 1, P1 = 0, Q2 = 0, Q1 = 1;
    for (std::size_t i = 0; i < fi.j; ++i) {
        Int P = a[i] * P1 + P2;
        Int Q = a[i] * Q1 + Q2;
        P2 = P1;
        P1 = P;
        Q2 = Q1;
        Q1 = Q;
    }
    return {fi.lambda * P1 + P2, P1, fi.lambda * Q1 + Q2, Q1};
}

// A_{[n,0]} = [[r - t, t], [s + r - (u + t), u + t]] from the entries of A_{[0,n]}.
inline Mat2Z a_matrix_backward(const Real& x, std::size_t n) {
    Mat2Z f = a_matrix_forward(x, n);
    const Int &u = f.a, &t = f.b, &s = f.c, &r = f.d;
    return {r - t, t, s + r - (u + t), u + t};
}

// (u_k, s_k), k = 0..n: left columns of A_{[0,k]}.
inline std::vector<ConvergentPair> farey_convergents(const Real& x, std::size_t n) {
    require_unit_interval(x, "farey_convergents");
    std::vector<ConvergentPair> out;
    Mat2Z m;
    out.push_back({m.a, m.c});
    for (int e : epsilon_stream(x, n)) {
        m *= A_eps(e);
        out.push_back({m.a, m.c});
    }
    return out;
}

}  // namespace cfrow
