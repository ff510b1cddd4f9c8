#pragma once

#include <cctype>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "exact.hpp"

namespace cfrow {

// Largest r with r*r <= n, n >= 0.
inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// Writes n = s^2 * d with d squarefree (exact for n < 2^50, partial beyond).
inline void split_square(const Int& n, Int& s, Int& d) {
    s = 1;
    d = n;
    if (n <= 1) return;
    const unsigned long limit = n < Int(1) << 50 ? 1u << 25 : 100000;
    for (unsigned long p = 2; p <= limit; ++p) {
        Int pp = Int(p) * Int(p);
        if (pp > d) break;
        while (mpz_divisible_p(d.get_mpz_t(), pp.get_mpz_t())) {
            d /= pp;
            s *= p;
        }
    }
}

// A + B*sqrt(d) + eps*delta, where delta is a positive infinitesimal.
// d = 0 marks a rational (then B = 0); otherwise d >= 2 is squarefree.
// The infinitesimal lets boundary points such as y = 1^- be iterated
// exactly: a Mobius map M sends the sign of eps to sign(det M) * eps.
struct Quad {
    Rat A{0};
    Rat B{0};
    Int d{0};
    int eps = 0;

    static Quad rational(const Rat& r, int eps = 0) {
        Quad q;
        q.A = r;
        q.A.canonicalize();
        q.eps = eps;
        return q;
    }

    // (p + q sqrt(n)) / r
    static Quad surd(const Int& p, const Int& q, const Int& n, const Int& r) {
        if (r == 0) throw OutOfDomain("quadratic with zero denominator");
        if (n < 0) throw OutOfDomain("negative radicand");
        Quad out;
        out.A = make_rat(p, r);
        if (q == 0 || n == 0) return out;
        if (is_perfect_square(n)) {
            out.A += make_rat(q * isqrt(n), r);
            return out;
        }
        Int s, d;
        split_square(n, s, d);
        out.B = make_rat(q * s, r);
        out.d = d;
        return out;
    }

    bool is_rational() const { return d == 0; }

    void normalize() {
        A.canonicalize();
        B.canonicalize();
        if (B == 0) d = 0;
    }

    // Sign of A + B sqrt(d), ignoring eps.
    int value_sign() const {
        int sa = sgn(A);
        if (d == 0 || B == 0) return sa;
        int sb = sgn(B);
        if (sa >= 0 && sb >= 0) return 1;
        if (sa <= 0 && sb <= 0) return -1;
        Rat diff = A * A - B * B * Rat(d);
        return sa > 0 ? sgn(diff) : -sgn(diff);
    }

    int sign() const {
        int s = value_sign();
        return s != 0 ? s : (eps > 0 ? 1 : (eps < 0 ? -1 : 0));
    }

    bool value_is_zero() const { return A == 0 && B == 0; }

    Int floor() const {
        if (d == 0) {
            Int f = floor_of(A);
            if (eps < 0 && A.get_den() == 1) f -= 1;
            return f;
        }
        const Int& an = A.get_num();
        const Int& ad = A.get_den();
        const Int& bn = B.get_num();
        const Int& bd = B.get_den();
        Int D = ad * bd;
        Int P = an * bd;
        Int M = bn * bn * ad * ad * d;
        Int r = isqrt(M);
        if (bn > 0) return floor_div(P + r, D);
        return floor_div(P - r - 1, D);
    }

    double to_double() const {
        return A.get_d() + (d == 0 ? 0.0 : B.get_d() * std::sqrt(d.get_d()));
    }

    // Enclosure of the value with width 2^-bits (a point when rational).
    RationalInterval enclosure(unsigned bits) const {
        if (d == 0) return RationalInterval::point(A);
        Int scale = Int(1) << bits;
        Quad s = *this;
        s.A *= Rat(scale);
        s.B *= Rat(scale);
        s.eps = 0;
        Int f = s.floor();
        return {make_rat(f, scale), make_rat(f + 1, scale)};
    }

    friend bool operator==(const Quad& x, const Quad& y) {
        return x.A == y.A && x.B == y.B && x.d == y.d && x.eps == y.eps;
    }
    friend bool operator!=(const Quad& x, const Quad& y) { return !(x == y); }

    bool same_value(const Quad& y) const { return A == y.A && B == y.B && d == y.d; }

    std::string str() const {
        std::string s;
        if (d == 0) {
            s = to_string(A);
        } else {
            // (p + q sqrt(d)) / r over a common denominator
            Int r;
            mpz_lcm(r.get_mpz_t(), A.get_den().get_mpz_t(), B.get_den().get_mpz_t());
            Int p = A.get_num() * (r / A.get_den());
            Int q = B.get_num() * (r / B.get_den());
            std::string body;
            if (p != 0) body = to_string(p);
            if (q < 0) {
                body += "-";
            } else if (p != 0) {
                body += "+";
            }
            Int aq = abs(q);
            if (aq != 1) body += to_string(aq) + "*";
            body += "sqrt(" + to_string(d) + ")";
            s = r == 1 ? body : "(" + body + ")/" + to_string(r);
        }
        if (eps > 0) s += "+0";
        if (eps < 0) s += "-0";
        return s;
    }
};

// Mobius image of q; throws when q is mapped to infinity.
inline Quad mobius_quad(const Mat2Z& m, const Quad& q) {
    Int det = m.det();
    if (q.d == 0 && det != 0) {
        // gcd(num, den) divides det because A is in lowest terms
        const Int& p = q.A.get_num();
        const Int& r = q.A.get_den();
        Int num = m.a * p + m.b * r;
        Int den = m.c * p + m.d * r;
        if (den == 0) throw OutOfDomain("Mobius map sends point to infinity");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        Int g;
        mpz_gcd(g.get_mpz_t(), det.get_mpz_t(), num.get_mpz_t());
        if (g != 1) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den.get_mpz_t());
            if (g != 1) {
                mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), g.get_mpz_t());
                mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
            }
        }
        Quad out;
        mpz_swap(mpq_numref(out.A.get_mpq_t()), num.get_mpz_t());
        mpz_swap(mpq_denref(out.A.get_mpq_t()), den.get_mpz_t());
        out.eps = q.eps * sgn(det);
        return out;
    }
    Rat n1 = Rat(m.a) * q.A + Rat(m.b);
    Rat n2 = Rat(m.a) * q.B;
    Rat m1 = Rat(m.c) * q.A + Rat(m.d);
    Rat m2 = Rat(m.c) * q.B;
    Quad out;
    out.d = q.d;
    if (q.d == 0 || m2 == 0) {
        if (m1 == 0) throw OutOfDomain("Mobius map sends point to infinity");
        out.A = n1 / m1;
        out.B = n2 / m1;
    } else {
        Rat norm = m1 * m1 - m2 * m2 * Rat(q.d);
        out.A = (n1 * m1 - n2 * m2 * Rat(q.d)) / norm;
        out.B = (n2 * m1 - n1 * m2) / norm;
    }
    out.normalize();
    if (q.eps != 0) {
        int sd = sgn(m.det());
        if (sd == 0) throw ZeroDeterminant("mobius_quad");
        out.eps = q.eps * sd;
    }
    return out;
}

// A real given by a replayable RCF digit generator: value = M . [0; g(k), g(k+1), ...].
// A generator returning nullopt ends the expansion (the remaining tail is 0).
using DigitGenerator = std::function<std::optional<Int>(std::uint64_t)>;

struct LazyReal {
    Mat2Z M;
    std::shared_ptr<const DigitGenerator> gen;
    std::uint64_t k = 0;
};

class Real {
public:
    static constexpr std::uint64_t kDefaultBudget = 200000;

    Real() : v_(Quad{}) {}
    Real(const Quad& q) : v_(q) {}
    Real(long v) : v_(Quad::rational(Rat(v))) {}
    Real(const Rat& r, int eps = 0) : v_(Quad::rational(r, eps)) {}
    Real(const Int& v) : v_(Quad::rational(Rat(v))) {}

    static Real lazy(DigitGenerator gen, Mat2Z m = Mat2Z::identity()) {
        LazyReal l;
        l.M = std::move(m);
        l.gen = std::make_shared<const DigitGenerator>(std::move(gen));
        return Real(l);
    }

    // [0; a1, a2, ...] with the given digits then ending.
    static Real from_rcf(const std::vector<Int>& digits) {
        Real out(0L);
        for (auto it = digits.rbegin(); it != digits.rend(); ++it)
            out = out.mobius(Mat2Z(Int(0), Int(1), Int(1), *it));
        return out;
    }

    bool is_quad() const { return std::holds_alternative<Quad>(v_); }
    bool is_lazy() const { return !is_quad(); }
    const Quad& quad() const { return std::get<Quad>(v_); }
    const LazyReal& lazy_rep() const { return std::get<LazyReal>(v_); }
    bool is_rational() const { return is_quad() && quad().is_rational(); }
    Rat rational() const {
        if (!is_rational()) throw std::logic_error("Real::rational on irrational value");
        return quad().A;
    }
    int eps() const { return is_quad() ? quad().eps : 0; }

    Real with_eps(int e) const {
        if (!is_quad()) return *this;
        Quad q = quad();
        q.eps = e;
        return Real(q);
    }

    Real mobius(const Mat2Z& m) const {
        if (is_quad()) return Real(mobius_quad(m, quad()));
        LazyReal l = lazy_rep();
        l.M = m * l.M;
        return Real(l).settle();
    }

    // Exact test that the value (not the infinitesimal) is zero.
    bool value_is_zero() const {
        if (is_quad()) return quad().value_is_zero();
        return false;  // an unfinished lazy stream is irrational or unresolved
    }

    int sign(std::uint64_t budget = kDefaultBudget) const {
        if (is_quad()) return quad().sign();
        return compare(Real(0L), budget);
    }

    Int floor(std::uint64_t budget = kDefaultBudget) const {
        if (is_quad()) return quad().floor();
        LazyReal l = lazy_rep();
        for (std::uint64_t i = 0; i < budget; ++i) {
            auto iv = lazy_interval(l);
            if (iv) {
                Int fl = floor_of(iv->lo());
                if (fl == floor_of(iv->hi())) return fl;
            }
            if (!ingest(l)) return Real(exact_of(l)).floor();
        }
        throw BoundaryUndecidable("floor of lazy real exceeded refinement budget");
    }

    // Enclosure of width at most 2^-bits.
    RationalInterval enclosure(unsigned bits, std::uint64_t budget = kDefaultBudget) const {
        if (is_quad()) return quad().enclosure(bits);
        LazyReal l = lazy_rep();
        Rat tol = make_rat(Int(1), Int(1) << bits);
        for (std::uint64_t i = 0; i < budget; ++i) {
            auto iv = lazy_interval(l);
            if (iv && iv->width() <= tol) return *iv;
            if (!ingest(l)) return RationalInterval::point(exact_of(l));
        }
        throw BoundaryUndecidable("enclosure of lazy real exceeded refinement budget");
    }

    // -1, 0, +1. Exact within a common quadratic field; otherwise by
    // enclosure refinement, which cannot certify equality.
    int compare(const Real& o, std::uint64_t budget = kDefaultBudget) const {
        if (is_quad() && o.is_quad()) {
            const Quad& x = quad();
            const Quad& y = o.quad();
            if (x.d == y.d || x.d == 0 || y.d == 0) {
                Quad diff;
                diff.A = x.A - y.A;
                diff.B = x.B - y.B;
                diff.d = x.d != 0 ? x.d : y.d;
                diff.normalize();
                int s = diff.value_sign();
                if (s != 0) return s;
                return (x.eps > y.eps) - (x.eps < y.eps);
            }
        }
        unsigned bits = 64;
        for (std::uint64_t round = 0; round < 64 && bits <= budget; ++round, bits *= 2) {
            RationalInterval a = enclosure(bits, budget);
            RationalInterval b = o.enclosure(bits, budget);
            if (a.hi() < b.lo()) return -1;
            if (b.hi() < a.lo()) return 1;
            if (a.is_point() && b.is_point()) return 0;
        }
        throw BoundaryUndecidable("comparison could not be certified");
    }

    int compare(const Rat& r) const { return compare(Real(r)); }

    double approx() const {
        if (is_quad()) return quad().to_double();
        RationalInterval iv = enclosure(60);
        return iv.midpoint().get_d();
    }

    std::string str() const {
        if (is_quad()) return quad().str();
        return "lazy~" + std::to_string(approx());
    }

    // Structural equality: identical quadratic values (including eps).
    bool identical(const Real& o) const { return is_quad() && o.is_quad() && quad() == o.quad(); }

private:
    explicit Real(LazyReal l) : v_(std::move(l)) {}

    // Range of M.t over t in [0, 1], if M has no pole there.
    static std::optional<RationalInterval> lazy_interval(const LazyReal& l) {
        const Mat2Z& m = l.M;
        Int d0 = m.d;
        Int d1 = m.c + m.d;
        if (sgn(d0) == 0 || sgn(d1) == 0 || sgn(d0) != sgn(d1)) return std::nullopt;
        Rat v0 = make_rat(m.b, d0);
        Rat v1 = make_rat(m.a + m.b, d1);
        if (v1 < v0) std::swap(v0, v1);
        return RationalInterval(v0, v1);
    }

    static Rat exact_of(const LazyReal& l) { return make_rat(l.M.b, l.M.d); }

    // Consume one generator digit; false when the stream has ended.
    static bool ingest(LazyReal& l) {
        std::optional<Int> g = (*l.gen)(l.k);
        if (!g) return false;
        l.M = l.M * Mat2Z(Int(0), Int(1), Int(1), *g);
        ++l.k;
        return true;
    }

    // Collapse to a rational when the stream is already exhausted.
    Real settle() const {
        if (is_quad()) return *this;
        const LazyReal& l = lazy_rep();
        if (!(*l.gen)(l.k)) {
            if (l.M.d == 0) throw OutOfDomain("Mobius map sends point to infinity");
            return Real(exact_of(l));
        }
        return *this;
    }

    std::variant<Quad, LazyReal> v_;
};

// ---- parsing --------------------------------------------------------------

namespace detail {

class RealParser {
public:
    explicit RealParser(std::string s) : s_(std::move(s)) {}

    Quad parse() {
        Quad q = expr();
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        return q;
    }

private:
    std::string s_;
    std::size_t pos_ = 0;
    Int field_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " in \"" + s_ + "\" at " + std::to_string(pos_));
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Quad combine(const Quad& x, const Quad& y, char op) {
        Int d = x.d != 0 ? x.d : y.d;
        if (x.d != 0 && y.d != 0 && x.d != y.d) fail("mixed quadratic fields");
        Quad out;
        out.d = d;
        Rat D(d);
        switch (op) {
            case '+':
                out.A = x.A + y.A;
                out.B = x.B + y.B;
                break;
            case '-':
                out.A = x.A - y.A;
                out.B = x.B - y.B;
                break;
            case '*':
                out.A = x.A * y.A + x.B * y.B * D;
                out.B = x.A * y.B + x.B * y.A;
                break;
            default: {
                Rat norm = y.A * y.A - y.B * y.B * D;
                if (norm == 0) fail("division by zero");
                out.A = (x.A * y.A - x.B * y.B * D) / norm;
                out.B = (x.B * y.A - x.A * y.B) / norm;
            }
        }
        out.normalize();
        return out;
    }

    Quad expr() {
        Quad v = term();
        for (;;) {
            if (eat('+'))
                v = combine(v, term(), '+');
            else if (eat('-'))
                v = combine(v, term(), '-');
            else
                return v;
        }
    }
    Quad term() {
        Quad v = factor();
        for (;;) {
            if (eat('*'))
                v = combine(v, factor(), '*');
            else if (eat('/'))
                v = combine(v, factor(), '/');
            else
                return v;
        }
    }
    Quad factor() {
        skip();
        if (eat('-')) return combine(Quad{}, factor(), '-');
        if (eat('(')) {
            Quad v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (s_.compare(pos_, 5, "sqrt(") == 0) {
            pos_ += 5;
            Quad n = expr();
            if (!eat(')')) fail("expected ')'");
            if (!n.is_rational() || n.A.get_den() != 1 || n.A < 0) fail("sqrt needs a nonnegative integer");
            return Quad::surd(Int(0), Int(1), n.A.get_num(), Int(1));
        }
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected number");
        Int num(s_.substr(start, pos_ - start));
        Int den = 1;
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                num = num * 10 + (s_[pos_++] - '0');
                den *= 10;
            }
        }
        return Quad::rational(make_rat(num, den));
    }
};

inline std::vector<Int> parse_int_list(const std::string& s) {
    std::vector<Int> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (cur.empty()) throw ParseError("empty digit in \"" + s + "\"");
            out.emplace_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.emplace_back(cur);
    return out;
}

}  // namespace detail

// Value of the purely periodic [0; p1, ..., pm, p1, ...].
inline Quad periodic_rcf_value(const std::vector<Int>& period) {
    if (period.empty()) throw ParseError("empty period");
    Mat2Z m;
    for (const Int& p : period) {
        if (p < 1) throw ParseError("periodic digits must be positive");
        m *= Mat2Z(Int(0), Int(1), Int(1), p);
    }
    // y = (a y + b)/(c y + d)  =>  c y^2 + (d - a) y - b = 0, positive root
    Int disc = (m.d - m.a) * (m.d - m.a) + 4 * m.b * m.c;
    return Quad::surd(m.a - m.d, Int(1), disc, 2 * m.c);
}

// Textual forms: "p/q", integer, arithmetic in one quadratic field such as
// "sqrt(2)-1" or "(sqrt(5)-1)/2", "phi-frac" (= (sqrt(5)-1)/2), "e-frac"
// (= e - 2, lazy), "[a0;a1,...,an]" and "[a0;a1,...,(p1,...,pm)]" (periodic).
inline Real parse_real(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s == "phi-frac" || s == "g") return Real(Quad::surd(Int(-1), Int(1), Int(5), Int(2)));
    if (s == "e-frac") {
        // e - 2 = [0; 1, 2, 1, 1, 4, 1, 1, 6, ...]
        return Real::lazy([](std::uint64_t k) -> std::optional<Int> {
            if (k % 3 == 1) return Int(2 * (k / 3 + 1));
            return Int(1);
        });
    }
    if (!s.empty() && s.front() == '[') {
        if (s.back() != ']') throw ParseError("unterminated continued fraction \"" + text + "\"");
        std::string body = s.substr(1, s.size() - 2);
        auto semi = body.find(';');
        Int a0 = Int(semi == std::string::npos ? body : body.substr(0, semi));
        std::vector<Int> pre;
        std::optional<Quad> tail;
        if (semi != std::string::npos) {
            std::string rest = body.substr(semi + 1);
            auto lp = rest.find('(');
            if (lp != std::string::npos) {
                if (rest.back() != ')') throw ParseError("period must close the expansion");
                tail = periodic_rcf_value(detail::parse_int_list(rest.substr(lp + 1, rest.size() - lp - 2)));
                rest = rest.substr(0, lp);
            }
            pre = detail::parse_int_list(rest);
        }
        for (const Int& a : pre)
            if (a < 1) throw ParseError("partial quotients must be positive");
        Real v = tail ? Real(*tail) : Real(0L);
        for (auto it = pre.rbegin(); it != pre.rend(); ++it)
            v = v.mobius(Mat2Z(Int(0), Int(1), Int(1), *it));
        return v.mobius(Mat2Z(Int(1), a0, Int(0), Int(1)));
    }
    return Real(detail::RealParser(s).parse());
}

}  // namespace cfrow
