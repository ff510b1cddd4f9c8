#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "exact.hpp"

namespace cfrow {

// One pair (alpha_n, beta_n) of a generalised continued fraction.
struct GcfDigit {
    Int alpha{1};
    Int beta{0};

    friend bool operator==(const GcfDigit& x, const GcfDigit& y) {
        return x.alpha == y.alpha && x.beta == y.beta;
    }
    friend bool operator!=(const GcfDigit& x, const GcfDigit& y) { return !(x == y); }
};

inline Mat2Z b_matrix(const GcfDigit& g) { return {Int(0), g.alpha, Int(1), g.beta}; }

// [beta_0/alpha_0; alpha_1/beta_1, ...] with (alpha_{-1}, beta_{-1}) = (1, 0).
// Either finite (beta = inf right after the last stored digit) or lazy, in
// which case `take(n)` asks a replayable generator for the first n digits.
class GcfDigits {
public:
    using Generator = std::function<std::vector<GcfDigit>(std::size_t)>;

    GcfDigits() = default;
    explicit GcfDigits(std::vector<GcfDigit> digits) : prefix_(std::move(digits)) { check(prefix_); }
    GcfDigits(const std::vector<Int>& alpha, const std::vector<Int>& beta) {
        if (alpha.size() != beta.size()) throw std::invalid_argument("GcfDigits: size mismatch");
        for (std::size_t i = 0; i < alpha.size(); ++i) prefix_.push_back({alpha[i], beta[i]});
        check(prefix_);
    }

    // gen(n) must return the first n digits, or fewer if the expansion ends.
    static GcfDigits lazy(Generator gen) {
        GcfDigits g;
        g.gen_ = std::make_shared<const Generator>(std::move(gen));
        return g;
    }

    // RCF [a0; a1, ..., an].
    static GcfDigits rcf(const std::vector<Int>& a) {
        std::vector<GcfDigit> d;
        for (const Int& v : a) d.push_back({Int(1), v});
        return GcfDigits(std::move(d));
    }

    bool is_lazy() const { return static_cast<bool>(gen_); }
    bool is_finite() const { return !gen_; }
    std::size_t finite_size() const { return prefix_.size(); }

    std::vector<GcfDigit> take(std::size_t n) const {
        if (!gen_) {
            return std::vector<GcfDigit>(prefix_.begin(),
                                         prefix_.begin() + std::min(n, prefix_.size()));
        }
        std::vector<GcfDigit> out = (*gen_)(n);
        if (out.size() > n) out.resize(n);
        check(out);
        return out;
    }

    std::optional<GcfDigit> at(std::size_t n) const {
        auto v = take(n + 1);
        if (v.size() <= n) return std::nullopt;
        return v[n];
    }

    // All digits of a finite expansion.
    const std::vector<GcfDigit>& digits() const {
        if (gen_) throw std::logic_error("GcfDigits::digits on a lazy expansion");
        return prefix_;
    }

private:
    static void check(const std::vector<GcfDigit>& d) {
        for (const auto& g : d)
            if (g.alpha == 0) throw std::domain_error("GcfDigits: zero partial numerator");
    }

    std::vector<GcfDigit> prefix_;
    std::shared_ptr<const Generator> gen_;
};

struct ConvergentPair {
    Int P{0};
    Int Q{1};

    friend bool operator==(const ConvergentPair& x, const ConvergentPair& y) {
        return x.P == y.P && x.Q == y.Q;
    }
    friend bool operator!=(const ConvergentPair& x, const ConvergentPair& y) { return !(x == y); }
    ExtRational value() const { return ExtRational(P, Q); }
};

// (P_k, Q_k) for k = -2 .. last.
class Convergents {
public:
    Convergents() : v_{{Int(0), Int(1)}, {Int(1), Int(0)}} {}
    const ConvergentPair& at(long k) const { return v_.at(static_cast<std::size_t>(k + 2)); }
    long last() const { return static_cast<long>(v_.size()) - 3; }
    std::size_t size() const { return v_.size(); }
    void push(ConvergentPair p) { v_.push_back(std::move(p)); }
    const std::vector<ConvergentPair>& all() const { return v_; }

private:
    std::vector<ConvergentPair> v_;
};

inline Convergents convergents_of(const std::vector<GcfDigit>& d) {
    Convergents c;
    for (std::size_t i = 0; i < d.size(); ++i) {
        long k = static_cast<long>(i);
        const auto& p1 = c.at(k - 1);
        const auto& p2 = c.at(k - 2);
        c.push({d[i].beta * p1.P + d[i].alpha * p2.P, d[i].beta * p1.Q + d[i].alpha * p2.Q});
    }
    return c;
}

// P_{k+1} = beta_{k+1} P_k + alpha_{k+1} P_{k-1}, likewise Q; k = -2 .. n.
inline Convergents convergents(const GcfDigits& g, long n) {
    if (n < -1) throw BadRange("convergents: n < -1");
    auto d = g.take(static_cast<std::size_t>(n + 1));
    if (static_cast<long>(d.size()) < n + 1)
        throw IndexBeyondExpansion("expansion ends after index " + std::to_string(d.size() - 1) +
                                   ", requested " + std::to_string(n));
    return convergents_of(d);
}

inline Mat2Z partial_matrix_of(const std::vector<GcfDigit>& d, long m, long n) {
    if (m < -1 || n < m - 1) throw BadRange("partial_matrix: need -1 <= m <= n+1");
    if (n >= static_cast<long>(d.size()))
        throw IndexBeyondExpansion("partial_matrix: index " + std::to_string(n));
    Mat2Z out;
    for (long i = m; i <= n; ++i) out *= i < 0 ? Mat2Z(0, 1, 1, 0) : b_matrix(d[static_cast<std::size_t>(i)]);
    return out;
}

// B_m B_{m+1} ... B_n; an empty range (n = m - 1) gives the identity.
inline Mat2Z partial_matrix(const GcfDigits& g, long m, long n) {
    if (m < -1 || n < m - 1) throw BadRange("partial_matrix: need -1 <= m <= n+1");
    auto d = g.take(static_cast<std::size_t>(std::max(n + 1, 0L)));
    return partial_matrix_of(d, m, n);
}

// Value B_{[-1,n]} . 0 of a finite expansion (n = last index).
inline ExtRational evaluate_finite(const GcfDigits& g) {
    if (!g.is_finite()) throw std::invalid_argument("evaluate_finite: expansion is lazy; truncate first");
    const auto& d = g.digits();
    Mat2Z m = partial_matrix_of(d, -1, static_cast<long>(d.size()) - 1);
    return mobius_apply(m, ExtRational(0));
}

// Value of the expansion truncated after index n.
inline ExtRational evaluate_prefix(const GcfDigits& g, long n) {
    return evaluate_finite(GcfDigits(g.take(static_cast<std::size_t>(n + 1))));
}

// Recovers digits from (P_0, Q_0), ..., (P_n, Q_n):
// (alpha_{k+1}, beta_{k+1}) = B_{[-1,k]}^{-1} (P_{k+1}, Q_{k+1}).
inline GcfDigits digits_from_convergents(const std::vector<ConvergentPair>& ps) {
    std::vector<GcfDigit> out;
    ConvergentPair prev2{Int(0), Int(1)}, prev1{Int(1), Int(0)};
    for (std::size_t i = 0; i < ps.size(); ++i) {
        Int det = prev2.P * prev1.Q - prev1.P * prev2.Q;
        if (det == 0) throw SingularPrefix("det B_[-1," + std::to_string(long(i) - 1) + "] = 0");
        const ConvergentPair& c = ps[i];
        Int an = prev1.Q * c.P - prev1.P * c.Q;
        Int bn = prev2.P * c.Q - prev2.Q * c.P;
        if (!mpz_divisible_p(an.get_mpz_t(), det.get_mpz_t()) ||
            !mpz_divisible_p(bn.get_mpz_t(), det.get_mpz_t()))
            throw OutOfDomain("digits_from_convergents: non-integral digit at " + std::to_string(i));
        out.push_back({an / det, bn / det});
        if (out.back().alpha == 0) throw SingularPrefix("zero partial numerator at " + std::to_string(i));
        prev2 = prev1;
        prev1 = c;
    }
    return GcfDigits(std::move(out));
}

struct SrcfVerdict {
    enum class Kind { RCF, SRCF, Neither };
    Kind kind = Kind::Neither;
    std::string reason;          // empty unless Neither
    std::size_t depth = 0;       // number of digits inspected
    bool finite = false;         // whole expansion inspected
    bool tail_condition_window = false;  // (iv) seen in the second half of the window

    bool is_srcf() const { return kind != Kind::Neither; }
    std::string str() const {
        switch (kind) {
            case Kind::RCF: return "RCF";
            case Kind::SRCF:
                return finite ? "SRCF" : "SRCF (verified up to depth " + std::to_string(depth) + ")";
            default: return "Neither(" + reason + ")";
        }
    }
};

// Checks (i)-(iii) on the first `depth` digits; for lazy input (iv) is
// checked on the window [depth/2, depth).
inline SrcfVerdict validate_srcf(const GcfDigits& g, std::size_t depth = 256) {
    SrcfVerdict v;
    auto d = g.take(depth + 1);
    v.finite = g.is_finite();
    if (!v.finite && d.size() <= depth) v.finite = true;
    if (!v.finite) d.resize(depth);
    v.depth = d.size();
    auto fail = [&](std::string why) {
        v.kind = SrcfVerdict::Kind::Neither;
        v.reason = std::move(why);
        return v;
    };
    if (d.empty()) {
        v.kind = SrcfVerdict::Kind::RCF;
        return v;
    }
    if (d[0].alpha != 1) return fail("alpha_0 != 1");
    bool all_one = true;
    for (std::size_t n = 1; n < d.size(); ++n) {
        if (d[n].alpha != 1 && d[n].alpha != -1) return fail("|alpha_" + std::to_string(n) + "| != 1");
        if (d[n].alpha != 1) all_one = false;
        if (d[n].beta <= 0) return fail("beta_" + std::to_string(n) + " <= 0");
    }
    if (all_one) {
        v.kind = SrcfVerdict::Kind::RCF;
        v.tail_condition_window = true;
        return v;
    }
    for (std::size_t n = 1; n + 1 < d.size(); ++n)
        if (d[n + 1].alpha + d[n].beta < 1) return fail("alpha_" + std::to_string(n + 1) + " + beta_" + std::to_string(n) + " < 1");
    if (!v.finite) {
        for (std::size_t n = std::max<std::size_t>(1, d.size() / 2); n + 1 < d.size(); ++n)
            if (d[n + 1].alpha + d[n].beta >= 2) v.tail_condition_window = true;
        if (!v.tail_condition_window)
            return fail("alpha_{n+1} + beta_n >= 2 not seen in window up to depth " + std::to_string(d.size()));
    } else {
        v.tail_condition_window = true;
    }
    v.kind = SrcfVerdict::Kind::SRCF;
    return v;
}

namespace detail {

inline std::vector<GcfDigit> singularise_prefix(std::vector<GcfDigit> d, const std::vector<std::size_t>& pos) {
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) {
        std::size_t n = *it;
        GcfDigit a{d[n].alpha, d[n].beta + d[n + 1].alpha};
        GcfDigit b{-d[n + 1].alpha, d[n + 2].beta + 1};
        d[n] = a;
        d[n + 1] = b;
        d.erase(d.begin() + static_cast<long>(n) + 2);
    }
    return d;
}

}  // namespace detail

// Rewrites [..., alpha_n/beta_n, alpha_{n+1}/1, 1/beta_{n+2}, ...] into
// [..., alpha_n/(beta_n + alpha_{n+1}), -alpha_{n+1}/(beta_{n+2} + 1), ...]
// at each requested position (original indexing), deleting P_n/Q_n.
inline GcfDigits singularise(const GcfDigits& g, const std::vector<std::size_t>& positions) {
    if (positions.empty()) return g;
    for (std::size_t i = 1; i < positions.size(); ++i) {
        if (positions[i] <= positions[i - 1]) throw std::invalid_argument("singularise: positions must ascend");
        if (positions[i] == positions[i - 1] + 1)
            throw AdjacentPositions(std::to_string(positions[i - 1]) + "," + std::to_string(positions[i]));
    }
    const std::size_t span = positions.back() + 3;
    auto d = g.take(span);
    if (d.size() < span) throw NotSingularisable(std::to_string(positions.back()) + " (expansion too short)");
    auto verdict = validate_srcf(GcfDigits(d), span);
    if (!verdict.is_srcf()) throw NotSingularisable("input is not an SRCF: " + verdict.reason);
    for (std::size_t n : positions)
        if (d[n + 1].beta != 1 || d[n + 2].alpha != 1) throw NotSingularisable(std::to_string(n));
    auto head = detail::singularise_prefix(d, positions);
    if (g.is_finite()) {
        auto all = g.digits();
        head.insert(head.end(), all.begin() + static_cast<long>(span), all.end());
        return GcfDigits(std::move(head));
    }
    const std::size_t removed = positions.size();
    return GcfDigits::lazy([g, head, span, removed](std::size_t n) {
        if (n <= head.size()) return std::vector<GcfDigit>(head.begin(), head.begin() + static_cast<long>(n));
        auto tail = g.take(n + removed);
        std::vector<GcfDigit> out = head;
        for (std::size_t i = span; i < tail.size() && out.size() < n; ++i) out.push_back(tail[i]);
        return out;
    });
}

struct FareyIndex {
    std::size_t j = 0;
    Int lambda{0};
    friend bool operator==(const FareyIndex& x, const FareyIndex& y) { return x.j == y.j && x.lambda == y.lambda; }
};

// n = a_1 + ... + a_j + lambda with 0 <= lambda < a_{j+1}. `a` lists a_1, a_2, ...;
// when `inf_padded` the digits after the list are infinite.
inline FareyIndex classify_farey_index(const std::vector<Int>& a, const Int& n, bool inf_padded = false) {
    if (n < 0) throw BadRange("classify_farey_index: n < 0");
    Int rest = n;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (rest < a[j]) return {j, rest};
        rest -= a[j];
    }
    if (inf_padded) return {a.size(), rest};
    throw IndexBeyondExpansion("classify_farey_index: digits exhausted");
}

}  // namespace cfrow
