#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace cfrow {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& n, const Int& d) {
    if (d == 0) throw std::domain_error("make_rat: zero denominator");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

inline Int floor_div(const Int& n, const Int& d) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

inline Int floor_of(const Rat& r) { return floor_div(r.get_num(), r.get_den()); }

inline std::string to_string(const Int& v) { return v.get_str(); }

inline std::string to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// A rational number or the point at infinity. 1/0 = inf, 1/inf = 0.
class ExtRational {
public:
    ExtRational() = default;
    ExtRational(long v) : v_(v) {}
    ExtRational(const Int& v) : v_(v) {}
    ExtRational(const Rat& v) : v_(v) { v_.canonicalize(); }
    ExtRational(const Int& num, const Int& den) {
        if (den == 0) {
            if (num == 0) throw std::domain_error("ExtRational: 0/0");
            inf_ = true;
        } else {
            v_ = make_rat(num, den);
        }
    }

    static ExtRational infinity() {
        ExtRational r;
        r.inf_ = true;
        return r;
    }

    bool is_inf() const noexcept { return inf_; }
    const Rat& value() const {
        if (inf_) throw std::domain_error("ExtRational: value of infinity");
        return v_;
    }
    Int num() const { return inf_ ? Int(1) : v_.get_num(); }
    Int den() const { return inf_ ? Int(0) : v_.get_den(); }

    ExtRational reciprocal() const {
        if (inf_) return ExtRational(0);
        if (v_ == 0) return infinity();
        return ExtRational(Rat(1) / v_);
    }

    friend bool operator==(const ExtRational& a, const ExtRational& b) {
        if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
        return a.v_ == b.v_;
    }
    friend bool operator!=(const ExtRational& a, const ExtRational& b) { return !(a == b); }

    std::string str() const { return inf_ ? "inf" : to_string(v_); }
    friend std::ostream& operator<<(std::ostream& os, const ExtRational& r) { return os << r.str(); }

private:
    Rat v_{0};
    bool inf_ = false;
};

// 2x2 integer matrix [[a, b], [c, d]].
struct Mat2Z {
    Int a{1}, b{0}, c{0}, d{1};

    Mat2Z() = default;
    Mat2Z(Int a_, Int b_, Int c_, Int d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}
    Mat2Z(long a_, long b_, long c_, long d_) : a(a_), b(b_), c(c_), d(d_) {}

    static Mat2Z identity() { return {}; }

    Int det() const { return a * d - b * c; }
    Mat2Z transpose() const { return {a, c, b, d}; }
    // adj(M) = det(M) M^{-1}; acts as M^{-1} on the extended line.
    Mat2Z adjugate() const { return {d, -b, -c, a}; }
    Mat2Z scaled(const Int& r) const { return {r * a, r * b, r * c, r * d}; }

    // Exact inverse; requires |det| = 1.
    Mat2Z inverse_unimodular() const {
        Int dt = det();
        if (dt == 1) return adjugate();
        if (dt == -1) return adjugate().scaled(Int(-1));
        throw std::domain_error("inverse_unimodular: det != +-1");
    }

    friend Mat2Z operator*(const Mat2Z& x, const Mat2Z& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
                x.c * y.b + x.d * y.d};
    }
    Mat2Z& operator*=(const Mat2Z& y) { return *this = *this * y; }

    friend bool operator==(const Mat2Z& x, const Mat2Z& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    friend bool operator!=(const Mat2Z& x, const Mat2Z& y) { return !(x == y); }

    std::string str() const {
        return "[[" + to_string(a) + "," + to_string(b) + "],[" + to_string(c) + "," + to_string(d) +
               "]]";
    }
    friend std::ostream& operator<<(std::ostream& os, const Mat2Z& m) { return os << m.str(); }
};

// True when x and y are nonzero scalar multiples of each other.
inline bool proportional(const Mat2Z& x, const Mat2Z& y) {
    return x.a * y.b == x.b * y.a && x.a * y.c == x.c * y.a && x.a * y.d == x.d * y.a &&
           x.b * y.c == x.c * y.b && x.b * y.d == x.d * y.b && x.c * y.d == x.d * y.c;
}

// (az + b)/(cz + d) with c/0 = inf and c/inf = 0.
inline ExtRational mobius_apply(const Mat2Z& m, const ExtRational& z) {
    if (m.det() == 0) throw ZeroDeterminant("mobius_apply on " + m.str());
    if (z.is_inf()) return ExtRational(m.a, m.c);
    const Rat& v = z.value();
    Rat num = Rat(m.a) * v + Rat(m.b);
    Rat den = Rat(m.c) * v + Rat(m.d);
    if (den == 0) return ExtRational::infinity();
    return ExtRational(Rat(num / den));
}

inline Mat2Z mat_product(const std::vector<Mat2Z>& ms) {
    if (ms.empty()) throw std::invalid_argument("mat_product: empty sequence");
    Mat2Z out = ms.front();
    for (std::size_t i = 1; i < ms.size(); ++i) out *= ms[i];
    return out;
}

inline Mat2Z mat_product(std::initializer_list<Mat2Z> ms) {
    return mat_product(std::vector<Mat2Z>(ms));
}

// Closed interval [lo, hi] of rationals enclosing some real.
class RationalInterval {
public:
    RationalInterval() = default;
    RationalInterval(Rat lo, Rat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (hi_ < lo_) throw std::invalid_argument("RationalInterval: lo > hi");
    }
    static RationalInterval point(const Rat& v) { return {v, v}; }

    const Rat& lo() const noexcept { return lo_; }
    const Rat& hi() const noexcept { return hi_; }
    Rat width() const { return hi_ - lo_; }
    Rat midpoint() const { return (lo_ + hi_) / 2; }
    bool contains(const Rat& v) const { return lo_ <= v && v <= hi_; }
    bool contains(const RationalInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool is_point() const { return lo_ == hi_; }

    // Intersect with a new enclosure of the same real; the result never grows.
    RationalInterval refine(const RationalInterval& other) const {
        Rat lo = std::max(lo_, other.lo_);
        Rat hi = std::min(hi_, other.hi_);
        if (hi < lo) throw std::logic_error("RationalInterval::refine: disjoint enclosures");
        return {lo, hi};
    }

    // -1 if certainly below v, +1 if certainly above, 0 if undecided.
    int compare(const Rat& v) const {
        if (hi_ < v) return -1;
        if (lo_ > v) return 1;
        return 0;
    }

    double lo_double() const { return lo_.get_d(); }
    double hi_double() const { return hi_.get_d(); }

    friend bool operator==(const RationalInterval& x, const RationalInterval& y) {
        return x.lo_ == y.lo_ && x.hi_ == y.hi_;
    }

private:
    Rat lo_{0}, hi_{0};
};

}  // namespace cfrow
