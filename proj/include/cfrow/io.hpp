#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "region_catalog.hpp"

namespace cfrow {

using Json = nlohmann::ordered_json;

// Integers that fit in 53 bits are emitted as numbers, larger ones as strings.
inline Json int_json(const Int& v) {
    if (mpz_sizeinbase(v.get_mpz_t(), 2) <= 53) return v.get_si();
    return v.get_str();
}

inline Int json_int(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<long>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw ParseError("not an integer: " + j.dump());
        }
    }
    throw ParseError("not an integer: " + j.dump());
}

inline Rat json_rat(const Json& j) {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (j.is_string()) {
        Real r = parse_real(j.get<std::string>());
        if (!r.is_rational()) throw ParseError("not a rational: " + j.dump());
        return r.rational();
    }
    throw ParseError("not a rational: " + j.dump());
}

inline std::string rat_text(const Rat& r) { return to_string(r); }

// {"alpha": [...], "beta": [...]}, with "inf" appended to beta for a terminated expansion.
inline Json gcf_to_json(const std::vector<GcfDigit>& d, bool terminated = false) {
    Json a = Json::array(), b = Json::array();
    for (const auto& g : d) {
        a.push_back(int_json(g.alpha));
        b.push_back(int_json(g.beta));
    }
    if (terminated) b.push_back("inf");
    return {{"alpha", a}, {"beta", b}};
}

inline GcfDigits gcf_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("alpha") || !j.contains("beta")) throw ParseError("GCF JSON needs alpha and beta");
    const auto& a = j.at("alpha");
    const auto& b = j.at("beta");
    std::vector<GcfDigit> d;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i >= b.size()) throw ParseError("GCF JSON: beta shorter than alpha");
        if (b[i].is_string() && b[i].get<std::string>() == "inf") break;
        Int alpha = json_int(a[i]);
        if (alpha == 0) throw ParseError("GCF JSON: zero partial numerator at " + std::to_string(i));
        d.push_back({alpha, json_int(b[i])});
    }
    return GcfDigits(std::move(d));
}

inline Json convergents_json(const std::vector<ConvergentPair>& ps) {
    Json P = Json::array(), Q = Json::array();
    for (const auto& p : ps) {
        P.push_back(int_json(p.P));
        Q.push_back(int_json(p.Q));
    }
    return {{"P", P}, {"Q", Q}};
}

// ---- regions ---------------------------------------------------------------

inline SBox sbox_from_json(const Json& j) {
    const auto& x = j.at("x");
    const auto& y = j.at("y");
    return {json_rat(x.at(0)), json_rat(x.at(1)), json_rat(y.at(0)), json_rat(y.at(1))};
}

inline SingularisationArea s_area_from_json(const Json& params) {
    if (params.contains("preset")) return s_area_preset(params.at("preset").get<int>());
    SingularisationArea S;
    if (params.contains("S"))
        for (const auto& b : params.at("S")) S.boxes.push_back(sbox_from_json(b));
    return S;
}

inline Region region_from_json(const Json& j) {
    try {
        std::string builder = j.value("builder", std::string());
        Json params = j.value("params", Json::object());
        if (builder == "omega") return region_omega();
        if (builder == "h1") return region_h1();
        if (builder == "alpha") {
            AlphaRegionSpec spec;
            const auto& a = params.at("alpha");
            spec.alpha = a.is_string() ? parse_real(a.get<std::string>()) : Real(json_rat(a));
            if (params.contains("backward_cap")) spec.backward_cap = params.at("backward_cap").get<long>();
            return build_alpha_region(spec);
        }
        if (builder == "s_expansion") return build_s_expansion_region(s_area_from_json(params));
        auto param_long = [&](const char* key) {
            const auto& v = params.at(key);
            return v.is_string() ? json_int(v).get_si() : v.get<long>();
        };
        if (builder == "h") return region_h(param_long("lambda"));
        if (builder == "v") return region_v(param_long("a"));
        if (builder == "cell") return region_cell(param_long("a"), param_long("lambda"));
        if (!builder.empty() && builder != "geometric") throw ParseError("unknown builder \"" + builder + "\"");

        std::vector<CellSpec> cells;
        for (const auto& c : j.value("cells", Json::array())) {
            CellSpec cs;
            if (c.contains("a") && !c.at("a").is_null()) cs.a = json_int(c.at("a"));
            if (c.contains("b") && !c.at("b").is_null()) cs.b = json_int(c.at("b"));
            if ((cs.a && *cs.a < 1) || (cs.b && *cs.b < 1)) throw ParseError("cell indices must be >= 1");
            cells.push_back(cs);
        }
        std::vector<RegionRect> rects;
        for (const auto& r : j.value("rects", Json::array())) {
            SBox b = sbox_from_json(r);
            RegionRect q{b.x_lo, b.x_hi, b.y_lo, b.y_hi};
            if (!(0 <= q.x_lo && q.x_lo < q.x_hi && q.x_hi <= 1 && 0 <= q.y_lo && q.y_lo < q.y_hi && q.y_hi <= 1))
                throw ParseError("rectangle outside [0,1]^2 or empty");
            rects.push_back(q);
        }
        if (cells.empty() && rects.empty()) throw NotInducible("empty region");
        Region R = Region::geometric(j.value("name", std::string("custom")), cells, rects, j.value("altered", false));
        return R;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("region JSON: ") + e.what());
    }
}

// omega, h1, h:<lambda>, v:<a>, cell:<a>,<lambda>, alpha:<real>, s:<preset 1..5>,
// an inline JSON object, or a path to a JSON file.
inline Region parse_region(const std::string& text) {
    auto after = [&](const std::string& prefix) { return text.substr(prefix.size()); };
    auto starts = [&](const std::string& prefix) { return text.rfind(prefix, 0) == 0; };
    auto to_long = [](const std::string& s) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(s, &used);
        } catch (const std::exception&) {
            throw ParseError("expected an integer, got \"" + s + "\"");
        }
        if (used != s.size()) throw ParseError("expected an integer, got \"" + s + "\"");
        return v;
    };
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != 0 && first != std::string::npos) return parse_region(text.substr(first));
    if (text == "omega") return region_omega();
    if (text == "h1") return region_h1();
    if (starts("h:")) return region_h(to_long(after("h:")));
    if (starts("v:")) return region_v(to_long(after("v:")));
    if (starts("cell:")) {
        std::string rest = after("cell:");
        auto comma = rest.find(',');
        if (comma == std::string::npos) throw ParseError("cell:<a>,<lambda>");
        return region_cell(to_long(rest.substr(0, comma)), to_long(rest.substr(comma + 1)));
    }
    if (starts("alpha:")) return build_alpha_region({parse_real(after("alpha:"))});
    if (starts("s:")) return build_s_expansion_region(s_area_preset(static_cast<int>(to_long(after("s:")))));
    if (!text.empty() && text.front() == '{') {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("region JSON: ") + e.what());
        }
        return region_from_json(j);
    }
    std::ifstream in(text);
    if (!in) throw ParseError("unknown region \"" + text + "\"");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_region(ss.str());
}

inline Json region_to_json(const Region& R) {
    Json j;
    j["name"] = R.name();
    j["builder"] = R.builder();
    Json params = Json::object();
    for (const auto& [k, v] : R.params()) params[k] = k == "S" ? Json::parse(v) : Json(v);
    j["params"] = params;
    Json cells = Json::array();
    for (const auto& c : R.cells()) {
        Json cj = Json::object();
        cj["a"] = c.a ? int_json(*c.a) : Json(nullptr);
        cj["b"] = c.b ? int_json(*c.b) : Json(nullptr);
        cells.push_back(cj);
    }
    j["cells"] = cells;
    Json rects = Json::array();
    for (const auto& q : R.rects())
        rects.push_back({{"x", {rat_text(q.x_lo), rat_text(q.x_hi)}}, {"y", {rat_text(q.y_lo), rat_text(q.y_hi)}}});
    j["rects"] = rects;
    j["altered"] = R.altered();
    j["unit_s"] = R.unit_s();
    j["y_floor"] = R.y_floor() ? Json(rat_text(*R.y_floor())) : Json(nullptr);
    return j;
}

}  // namespace cfrow
