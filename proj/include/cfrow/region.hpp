#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "natural_extension.hpp"

namespace cfrow {

enum class Membership { In, Out, Undecided };

inline const char* to_cstr(Membership m) {
    switch (m) {
        case Membership::In: return "In";
        case Membership::Out: return "Out";
        default: return "Undecided";
    }
}

// One step of an induced map: N = N_R(z), A = A_R(z) = A_{e_1}...A_{e_N}, z_next = F^N(z).
struct InducedRecord {
    long N = 0;
    Mat2Z A;
    OmegaPoint z_next;

    const Int& u() const { return A.a; }
    const Int& t() const { return A.b; }
    const Int& s() const { return A.c; }
    const Int& r() const { return A.d; }
};

// V_a ∩ H_b; an empty index means "any".
struct CellSpec {
    std::optional<Int> a;
    std::optional<Int> b;
};

// (x_lo, x_hi] x (y_lo, y_hi]; a lower bound of 0 is closed.
struct RegionRect {
    Rat x_lo{0}, x_hi{1}, y_lo{0}, y_hi{1};

    bool contains(const OmegaPoint& z) const {
        auto in = [](const Real& v, const Rat& lo, const Rat& hi) {
            int cl = v.compare(Real(lo));
            if (lo == 0 ? cl < 0 : cl <= 0) return false;
            return v.compare(Real(hi)) <= 0;
        };
        return in(z.x, x_lo, x_hi) && in(z.y, y_lo, y_hi);
    }
};

inline RegionRect rect_of_cell(const CellSpec& c) {
    RegionRect r;
    if (c.a) {
        r.x_lo = make_rat(Int(1), *c.a + 1);
        r.x_hi = make_rat(Int(1), *c.a);
    }
    if (c.b) {
        r.y_lo = make_rat(Int(1), *c.b + 1);
        r.y_hi = make_rat(Int(1), *c.b);
    }
    return r;
}

// mu-bar of [x0,x1] x [y0,y1] in closed form: log(A(y1) B(y0) / (A(y0) B(y1)))
// with A(y) = x0 + y - x0 y and B(y) = x1 + y - x1 y.
inline double mu_bar_rect_exact(const RegionRect& r) {
    if (r.x_lo == 0 && r.y_lo == 0) throw NonIntegrable("rectangle touches the origin");
    auto A = [&](const Rat& y) { return Rat(r.x_lo + y - r.x_lo * y).get_d(); };
    auto B = [&](const Rat& y) { return Rat(r.x_hi + y - r.x_hi * y).get_d(); };
    return std::log(A(r.y_hi)) - std::log(A(r.y_lo)) - std::log(B(r.y_hi)) + std::log(B(r.y_lo));
}

// A subregion of [0,1]^2 with a membership oracle.
//
// Geometric regions (cells and rectangles) are decided exactly. Oracle
// regions answer through a user function. `altered` switches on the boundary
// convention for orbits launched from the top edge: the lines y = 1 and y = 0
// are read as 1^- and 0^+, so that F^{a(x)}(x,1) lands in H_1 even when a(x) = 1.
class Region {
public:
    enum class Kind { Omega, Geometric, Oracle };
    using Oracle = std::function<Membership(const OmegaPoint&)>;
    using Jump = std::function<InducedRecord(const OmegaPoint&)>;

    Region() = default;

    static Region omega() {
        Region r;
        r.kind_ = Kind::Omega;
        r.name_ = "omega";
        r.builder_ = "omega";
        return r;
    }

    static Region geometric(std::string name, std::vector<CellSpec> cells, std::vector<RegionRect> rects,
                            bool altered = false) {
        Region r;
        r.kind_ = Kind::Geometric;
        r.name_ = std::move(name);
        r.cells_ = std::move(cells);
        r.rects_ = std::move(rects);
        r.altered_ = altered;
        r.builder_ = "geometric";
        double m = r.geometric_measure_exact();
        if (!(m > 0) || !std::isfinite(m)) throw NotInducible(r.name_ + ": measure " + std::to_string(m));
        Rat lo(1);
        for (const auto& q : r.all_rects()) lo = std::min(lo, q.y_lo);
        r.y_floor_ = lo;
        return r;
    }

    static Region oracle(std::string name, Oracle f, bool altered, std::optional<Rat> y_floor) {
        Region r;
        r.kind_ = Kind::Oracle;
        r.name_ = std::move(name);
        r.oracle_ = std::make_shared<const Oracle>(std::move(f));
        r.altered_ = altered;
        r.y_floor_ = std::move(y_floor);
        r.builder_ = "oracle";
        return r;
    }

    Kind kind() const { return kind_; }
    bool is_omega() const { return kind_ == Kind::Omega; }
    bool is_geometric() const { return kind_ == Kind::Geometric; }
    const std::string& name() const { return name_; }
    bool altered() const { return altered_; }
    bool unit_s() const { return unit_s_; }
    const std::optional<Rat>& y_floor() const { return y_floor_; }
    const std::vector<CellSpec>& cells() const { return cells_; }
    const std::vector<RegionRect>& rects() const { return rects_; }
    const std::string& builder() const { return builder_; }
    const std::map<std::string, std::string>& params() const { return params_; }
    const std::optional<Jump>& jump() const { return jump_; }

    Region& set_altered(bool v) {
        altered_ = v;
        return *this;
    }
    Region& set_unit_s(bool v) {
        unit_s_ = v;
        return *this;
    }
    Region& set_builder(std::string b, std::map<std::string, std::string> params) {
        builder_ = std::move(b);
        params_ = std::move(params);
        return *this;
    }
    Region& set_jump(Jump j) {
        jump_ = std::move(j);
        return *this;
    }
    Region& set_name(std::string n) {
        name_ = std::move(n);
        return *this;
    }

    // Rectangles covering the region (cells included); disjointness is the builder's job.
    std::vector<RegionRect> all_rects() const {
        std::vector<RegionRect> out;
        for (const auto& c : cells_) out.push_back(rect_of_cell(c));
        out.insert(out.end(), rects_.begin(), rects_.end());
        return out;
    }

    double geometric_measure_exact() const {
        double m = 0;
        for (const auto& q : all_rects()) m += mu_bar_rect_exact(q);
        return m;
    }

    // Applies the boundary convention of altered regions.
    OmegaPoint prepare(const OmegaPoint& z) const {
        if (!altered_ || !z.y.is_quad() || z.y.eps() != 0 || !z.y.is_rational()) return z;
        const Rat& v = z.y.quad().A;
        if (v == 1) return {z.x, z.y.with_eps(-1)};
        if (v == 0) return {z.x, z.y.with_eps(1)};
        return z;
    }

    Membership contains(const OmegaPoint& z) const {
        try {
            switch (kind_) {
                case Kind::Omega: return Membership::In;
                case Kind::Geometric: return geometric_contains(z) ? Membership::In : Membership::Out;
                default: return (*oracle_)(z);
            }
        } catch (const BoundaryUndecidable&) {
            return Membership::Undecided;
        }
    }

    // Throws BoundaryUndecidable instead of answering Undecided.
    bool certainly_contains(const OmegaPoint& z) const {
        Membership m = contains(z);
        if (m == Membership::Undecided) throw BoundaryUndecidable(name_ + ": membership of " + z.str());
        return m == Membership::In;
    }

private:
    bool geometric_contains(const OmegaPoint& z) const {
        if (!cells_.empty()) {
            CellIndex c = cell_of(z);
            for (const auto& s : cells_) {
                bool ok_a = !s.a || (c.a && *c.a == *s.a);
                bool ok_b = !s.b || (c.b && *c.b == *s.b);
                if (ok_a && ok_b) return true;
            }
        }
        for (const auto& q : rects_)
            if (q.contains(z)) return true;
        return false;
    }

    Kind kind_ = Kind::Omega;
    std::string name_;
    bool altered_ = false;
    bool unit_s_ = false;
    std::optional<Rat> y_floor_;
    std::vector<CellSpec> cells_;
    std::vector<RegionRect> rects_;
    std::shared_ptr<const Oracle> oracle_;
    std::optional<Jump> jump_;
    std::string builder_;
    std::map<std::string, std::string> params_;
};

}  // namespace cfrow
