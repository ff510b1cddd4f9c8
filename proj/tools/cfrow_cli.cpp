#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cfrow/cfe.hpp"
#include "cfrow/io.hpp"
#include "cfrow/measure.hpp"
#include "cfrow/region_catalog.hpp"
#include "cfrow/shift_space.hpp"

using namespace cfrow;

namespace {

std::uint64_t default_seed() {
    const char* env = std::getenv("CFROW_SEED");
    if (!env || !*env) return 1;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw ParseError("CFROW_SEED is not an unsigned integer: \"" + std::string(env) + "\"");
    return v;
}

// Inline JSON, or a path to a file holding it.
Json read_json(const std::string& text) {
    std::string body = text;
    auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || (text[first] != '{' && text[first] != '[')) {
        std::ifstream in(text);
        if (!in) throw ParseError("cannot read \"" + text + "\"");
        std::stringstream ss;
        ss << in.rdbuf();
        body = ss.str();
    }
    try {
        return Json::parse(body);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("JSON: ") + e.what());
    }
}

std::vector<long> parse_plan(const std::string& text) {
    auto first = text.find_first_not_of(" \t");
    Json j;
    try {
        j = Json::parse(first != std::string::npos && text[first] == '[' ? text : "[" + text + "]");
    } catch (const nlohmann::json::exception&) {
        throw ParseError("plan must be a list of indices, got \"" + text + "\"");
    }
    std::vector<long> out;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw ParseError("plan entry " + v.dump() + " is not an integer");
        out.push_back(v.get<long>());
    }
    return out;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

// Writes to `path`, or stdout when it is empty.
template <class F>
void emit(const std::string& path, F&& write) {
    if (path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write \"" + path + "\"");
    write(out);
}

Json ints_json(const std::vector<Int>& v) {
    Json a = Json::array();
    for (const Int& x : v) a.push_back(int_json(x));
    return a;
}

Json measure_json(const MeasureEstimate& m) {
    Json j{{"method", m.method_name()}, {"measure", m.value}, {"measure_err", m.error_bound}};
    if (m.method == MeasureEstimate::Method::MonteCarlo) {
        j["seed"] = m.seed;
        j["samples"] = m.samples;
        j["hits"] = m.hits;
    }
    return j;
}

struct ExpandOpts {
    std::string x, kind = "rcf", alpha;
    std::size_t n = 10;
};

Json cmd_expand(const ExpandOpts& o) {
    Real x = parse_real(o.x);
    Json j{{"kind", o.kind}, {"x", x.str()}};
    if (o.kind == "rcf") {
        auto [a0, a] = rcf_expansion(x, o.n);
        std::string text = "[" + to_string(a0);
        for (std::size_t i = 0; i < a.size(); ++i) text += (i == 0 ? ";" : ",") + to_string(a[i]);
        j["digits"] = ints_json(a);
        j["a0"] = int_json(a0);
        j["text"] = text + "]";
    } else if (o.kind == "farey" || o.kind == "lehner") {
        GcfDigits g = o.kind == "farey" ? farey_expansion(x) : lehner_expansion(x);
        auto d = g.take(o.n + 1);
        j["gcf"] = gcf_to_json(d, d.size() < o.n + 1);
        std::vector<long> eps;
        for (int e : epsilon_stream(x, o.n)) eps.push_back(e);
        j["epsilon"] = eps;
    } else if (o.kind == "alpha") {
        if (o.alpha.empty()) throw ParseError("--kind alpha needs --alpha");
        Real alpha = parse_real(o.alpha);
        Real x0 = alpha_domain_representative(alpha, x);
        Json signs = Json::array(), digits = Json::array();
        for (const auto& d : alpha_expansion(alpha, x0, o.n)) {
            signs.push_back(d.sign);
            digits.push_back(int_json(d.digit));
        }
        j["alpha"] = alpha.str();
        j["x0"] = x0.str();
        j["signs"] = signs;
        j["digits"] = digits;
    } else {
        throw ParseError("unknown kind \"" + o.kind + "\"");
    }
    return j;
}

Json cmd_contract(const std::string& gcf_text, const std::string& plan_text) {
    GcfDigits g = gcf_from_json(read_json(gcf_text));
    ContractionPlan plan(parse_plan(plan_text));
    const auto& d = g.digits();
    auto out = contract_digits(d, plan).digits();
    const long kmax = static_cast<long>(out.size()) - 1;
    auto c = seidel_scalars(g, plan, kmax);
    Convergents orig = convergents_of(d), cc = convergents_of(out);
    std::vector<ConvergentPair> ps;
    for (long k = 0; k <= kmax; ++k) {
        const Int& ck = c[static_cast<std::size_t>(k)];
        if (cc.at(k).P != ck * orig.at(plan(k)).P || cc.at(k).Q != ck * orig.at(plan(k)).Q)
            throw MismatchAt(k, "contracted convergent is not c_k times the original");
        ps.push_back(cc.at(k));
    }
    return {{"digits", gcf_to_json(out)}, {"convergents", convergents_json(ps)}, {"scalars", ints_json(c)},
            {"seidel_verified", true}};
}

struct CfeOpts {
    std::string region, x, y = "1", route = "direct";
    std::size_t digits = 10;
    long cap = kDefaultCap;
};

Json cmd_cfe(const CfeOpts& o) {
    Region R = parse_region(o.region);
    OmegaPoint z{parse_real(o.x), parse_real(o.y)};
    Json j{{"region", R.name()}, {"x", z.x.str()}, {"y", z.y.str()}, {"route", o.route}};
    if (o.route == "contraction") {
        auto d = cfe_by_contraction(R, z, o.digits, o.cap).digits();
        j["digits"] = gcf_to_json(d);
        Convergents c = convergents_of(d);
        std::vector<ConvergentPair> ps;
        for (long k = 0; k <= c.last(); ++k) ps.push_back(c.at(k));
        j["convergents"] = convergents_json(ps);
        return j;
    }
    if (o.route != "direct" && o.route != "both") throw ParseError("unknown route \"" + o.route + "\"");
    CfeResult res = cfe_direct(R, z, o.digits, o.cap);
    cfe_convergents(res);
    if (o.route == "both") {
        auto by_c = cfe_by_contraction(R, z, o.digits, o.cap).digits();
        if (by_c != res.digits.digits()) throw MismatchAt(0, "contraction and direct routes differ");
        j["routes_agree"] = true;
    }
    j["digits"] = gcf_to_json(res.digits.digits());
    j["convergents"] = convergents_json(res.convergents);
    j["c"] = ints_json(res.c);
    j["d0"] = int_json(res.d0);
    return j;
}

struct OrbitOpts {
    std::string region, x, y = "1", csv;
    std::size_t n = 20;
    long cap = kDefaultCap;
    bool fast = false;
};

void cmd_orbit(const OrbitOpts& o) {
    Region R = parse_region(o.region);
    InducedProducts ip = induced_products(R, {parse_real(o.x), parse_real(o.y)}, o.n, o.cap, o.fast);
    emit(o.csv, [&](std::ostream& os) {
        os << "k,N,x_lo,x_hi,y_lo,y_hi,u,t,s,r\n";
        char buf[256];
        for (std::size_t k = 0; k < o.n; ++k) {
            const auto& z = ip.points[k];
            const auto& rec = ip.records[k];
            auto ex = z.x.enclosure(53);
            auto ey = z.y.enclosure(53);
            std::snprintf(buf, sizeof buf, "%zu,%ld,%.17g,%.17g,%.17g,%.17g,", k, rec.N, ex.lo_double(), ex.hi_double(),
                          ey.lo_double(), ey.hi_double());
            os << buf << to_string(rec.u()) << ',' << to_string(rec.t()) << ',' << to_string(rec.s()) << ','
               << to_string(rec.r()) << '\n';
        }
    });
}

struct EntropyOpts {
    std::string region;
    double tol = 1e-6;
    std::uint64_t samples = 1000000, seed = 1;
    unsigned threads = 1;
};

Json cmd_entropy(const EntropyOpts& o) {
    Region R = parse_region(o.region);
    EntropyEstimate e = entropy_estimate(R, o.tol, {o.samples, o.seed, o.threads});
    Json j = measure_json(e.measure);
    j["region"] = R.name();
    j["tol"] = o.tol;
    j["entropy"] = e.entropy;
    j["entropy_err"] = e.entropy_err;
    return j;
}

Json cmd_region_info(const std::string& spec, double tol) {
    Region R = parse_region(spec);
    Json j = region_to_json(R);
    j["kind"] = R.is_omega() ? "omega" : (R.is_geometric() ? "geometric" : "oracle");
    if (R.is_geometric()) {
        MeasureEstimate m = measure_of(R, tol);
        j["measure"] = m.value;
        j["entropy"] = entropy_from_measure(m.value);
    }
    return j;
}

struct SweepOpts {
    std::string alphas, from = "1/4", to = "1", csv;
    std::size_t steps = 6;
    double tol = 1e-6;
    std::uint64_t samples = 100000, seed = 1;
    unsigned threads = 1;
};

void cmd_sweep(const SweepOpts& o) {
    std::vector<std::string> alphas = split_list(o.alphas);
    if (alphas.empty()) {
        if (o.steps == 0) throw OutOfDomain("--steps must be positive");
        Real lo = parse_real(o.from), hi = parse_real(o.to);
        if (!lo.is_rational() || !hi.is_rational()) throw ParseError("--from and --to must be rational");
        for (std::size_t i = 0; i <= o.steps; ++i)
            alphas.push_back(to_string(lo.rational() + (hi.rational() - lo.rational()) * Rat(static_cast<long>(i)) /
                                                           Rat(static_cast<long>(o.steps))));
    }
    std::vector<SweepRow> rows;
    for (const auto& a : alphas) {
        Region R = build_alpha_region({parse_real(a)});
        rows.push_back({a, entropy_estimate(R, o.tol, {o.samples, o.seed, o.threads})});
    }
    emit(o.csv, [&](std::ostream& os) { write_sweep_csv(os, rows); });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continued fraction expansions from planar regions"};
    app.require_subcommand(1);
    std::uint64_t seed = 1;
    std::function<void()> run;
    auto print = [](const Json& j) { std::cout << j.dump() << '\n'; };

    ExpandOpts ex;
    auto* expand = app.add_subcommand("expand", "Digits of x in one of the classical expansions");
    expand->add_option("--x", ex.x, "Input real: rational, decimal, surd, [a0;a1,(p...)] or g")->required();
    expand->add_option("--kind", ex.kind, "rcf, farey, lehner or alpha")->capture_default_str();
    expand->add_option("--n", ex.n, "Number of digits")->capture_default_str();
    expand->add_option("--alpha", ex.alpha, "Parameter of the alpha-expansion");
    expand->callback([&] { run = [&] { print(cmd_expand(ex)); }; });

    std::string gcf_text, plan_text;
    auto* contract = app.add_subcommand("contract", "Contract a GCF along a plan of indices");
    contract->add_option("--gcf", gcf_text, "GCF JSON {\"alpha\":[...],\"beta\":[...]} or a file holding it")->required();
    contract->add_option("--plan", plan_text, "Increasing indices n_0 < n_1 < ..., as 0,2,4 or [0,2,4]")->required();
    contract->callback([&] { run = [&] { print(cmd_contract(gcf_text, plan_text)); }; });

    CfeOpts cf;
    auto* cfe = app.add_subcommand("cfe", "Contracted Farey expansion with respect to a region");
    cfe->add_option("--region", cf.region, "Region: omega, h1, h:L, v:A, cell:A,L, alpha:A, s:K, JSON or file")->required();
    cfe->add_option("--x", cf.x, "x coordinate of the start point")->required();
    cfe->add_option("--y", cf.y, "y coordinate of the start point")->capture_default_str();
    cfe->add_option("--digits", cf.digits, "Digits after the zeroth")->capture_default_str();
    cfe->add_option("--route", cf.route, "direct, contraction or both")->capture_default_str();
    cfe->add_option("--cap", cf.cap, "Hitting time cap")->capture_default_str();
    cfe->callback([&] { run = [&] { print(cmd_cfe(cf)); }; });

    OrbitOpts orb;
    auto* orbit = app.add_subcommand("orbit", "Orbit of the induced map as CSV");
    orbit->add_option("--region", orb.region, "Region spec")->required();
    orbit->add_option("--x", orb.x, "x coordinate of the start point")->required();
    orbit->add_option("--y", orb.y, "y coordinate of the start point")->capture_default_str();
    orbit->add_option("--n", orb.n, "Number of induced steps")->capture_default_str();
    orbit->add_option("--csv", orb.csv, "Output file (stdout when omitted)");
    orbit->add_option("--cap", orb.cap, "Hitting time cap")->capture_default_str();
    orbit->add_flag("--fast", orb.fast, "Use the region's closed-form jump when it has one");
    orbit->callback([&] { run = [&] { cmd_orbit(orb); }; });

    EntropyOpts en;
    auto* entropy = app.add_subcommand("entropy", "Measure of a region and the entropy of its induced map");
    entropy->add_option("--region", en.region, "Region spec")->required();
    entropy->add_option("--tol", en.tol, "Quadrature tolerance")->capture_default_str();
    entropy->add_option("--samples", en.samples, "Monte Carlo samples")->capture_default_str();
    entropy->add_option("--seed", seed, "Monte Carlo seed (default: CFROW_SEED or 1)");
    entropy->add_option("--threads", en.threads, "Monte Carlo worker threads")->capture_default_str();
    entropy->callback([&] {
        run = [&] {
            en.seed = entropy->count("--seed") ? seed : default_seed();
            print(cmd_entropy(en));
        };
    });

    std::string info_region;
    double info_tol = 1e-9;
    auto* info = app.add_subcommand("region-info", "Describe a region as JSON");
    info->add_option("--region", info_region, "Region spec")->required();
    info->add_option("--tol", info_tol, "Quadrature tolerance")->capture_default_str();
    info->callback([&] { run = [&] { print(cmd_region_info(info_region, info_tol)); }; });

    SweepOpts sw;
    auto* sweep = app.add_subcommand("sweep-alpha", "Entropy of the alpha-regions over a range of alpha, as CSV");
    sweep->add_option("--alphas", sw.alphas, "Comma-separated alpha values (overrides the range)");
    sweep->add_option("--from", sw.from, "First alpha of the range")->capture_default_str();
    sweep->add_option("--to", sw.to, "Last alpha of the range")->capture_default_str();
    sweep->add_option("--steps", sw.steps, "Number of intervals in the range")->capture_default_str();
    sweep->add_option("--samples", sw.samples, "Monte Carlo samples per alpha")->capture_default_str();
    sweep->add_option("--seed", seed, "Monte Carlo seed (default: CFROW_SEED or 1)");
    sweep->add_option("--threads", sw.threads, "Monte Carlo worker threads")->capture_default_str();
    sweep->add_option("--tol", sw.tol, "Quadrature tolerance")->capture_default_str();
    sweep->add_option("--csv", sw.csv, "Output file (stdout when omitted)");
    sweep->callback([&] {
        run = [&] {
            sw.seed = sweep->count("--seed") ? seed : default_seed();
            cmd_sweep(sw);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    try {
        run();
    } catch (const cfrow::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
