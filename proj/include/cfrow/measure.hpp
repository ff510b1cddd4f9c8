#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "induced.hpp"

namespace cfrow {

struct MeasureEstimate {
    enum class Method { ExactIntegral, Quadrature, MonteCarlo };
    double value = 0;
    double error_bound = 0;  // quadrature: reported bound; Monte Carlo: 3 sigma
    double sigma = 0;
    Method method = Method::ExactIntegral;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    std::uint64_t hits = 0;

    std::string method_name() const {
        switch (method) {
            case Method::ExactIntegral: return "exact-integral";
            case Method::Quadrature: return "quadrature";
            default: return "monte-carlo";
        }
    }
};

struct MonteCarloOptions {
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

// Integral over y of the closed-form inner x-integral (x1 - x0)/(A(y) B(y)).
inline MeasureEstimate mu_bar_rect_quadrature(const RegionRect& r, double tol) {
    if (r.x_lo == 0 && r.y_lo == 0) throw NonIntegrable("rectangle touches the origin");
    const double x0 = r.x_lo.get_d(), x1 = r.x_hi.get_d();
    auto f = [&](double y) { return (x1 - x0) / ((x0 + y - x0 * y) * (x1 + y - x1 * y)); };
    double err = 0;
    double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, r.y_lo.get_d(), r.y_hi.get_d(), 15,
                                                                              tol * 1e-3, &err);
    MeasureEstimate m;
    m.value = v;
    m.error_bound = err;
    m.method = MeasureEstimate::Method::Quadrature;
    return m;
}

// nu_G of [x0,x1] x [y0,y1]: log((1+x1 y1)(1+x0 y0) / ((1+x0 y1)(1+x1 y0))) / log 2.
inline double nu_g_rect_exact(double x0, double x1, double y0, double y1) {
    return (std::log1p(x1 * y1) + std::log1p(x0 * y0) - std::log1p(x0 * y1) - std::log1p(x1 * y0)) / std::numbers::ln2;
}

// Draws from mu-bar restricted to [0,1] x [c,1], normalised by its mass log(1/c):
// y = c^(1-u) has the y-marginal, x = v y/(1 - v(1-y)) inverts the conditional CDF.
struct MuBarWindowSampler {
    double c;

    template <class Rng>
    OmegaPoint operator()(Rng& gen) const {
        std::uniform_real_distribution<double> U(0.0, 1.0);
        for (;;) {
            double y = std::pow(c, 1.0 - U(gen));
            double v = U(gen);
            double x = v * y / (1.0 - v * (1.0 - y));
            if (x > 0 && x <= 1 && y > 0 && y <= 1) return {Real(Rat(x)), Real(Rat(y))};
        }
    }
    double mass() const { return -std::log(c); }
};

// Draws from nu_G on [0,1]^2 by rejection from the uniform law.
struct NuGSampler {
    template <class Rng>
    OmegaPoint operator()(Rng& gen) const {
        std::uniform_real_distribution<double> U(0.0, 1.0);
        for (;;) {
            double x = U(gen), y = U(gen);
            double s = 1 + x * y;
            if (U(gen) * s * s <= 1.0 && x > 0 && y > 0) return {Real(Rat(x)), Real(Rat(y))};
        }
    }
};

// Hits of R among `samples` points drawn from mu-bar restricted to [0,1] x [c,1].
inline std::uint64_t monte_carlo_hits(const Region& R, double c, std::uint64_t samples, std::uint64_t seed,
                                      unsigned stream) {
    std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
    std::mt19937_64 gen(ss);
    MuBarWindowSampler draw{c};
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < samples; ++i)
        if (R.certainly_contains(draw(gen))) ++hits;
    return hits;
}

inline MeasureEstimate monte_carlo_measure(const Region& R, const MonteCarloOptions& opt) {
    if (!R.y_floor() || *R.y_floor() <= 0) throw NonIntegrable(R.name() + ": no positive y floor for sampling");
    const double c = R.y_floor()->get_d();
    const double window = -std::log(c);
    const unsigned T = std::max(1u, opt.threads);
    std::vector<std::uint64_t> hits(T, 0);
    std::vector<std::uint64_t> counts(T, opt.samples / T);
    counts[0] += opt.samples % T;
    if (T == 1) {
        hits[0] = monte_carlo_hits(R, c, counts[0], opt.seed, 0);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errs(T);
        for (unsigned t = 0; t < T; ++t)
            pool.emplace_back([&, t] {
                try {
                    hits[t] = monte_carlo_hits(R, c, counts[t], opt.seed, t);
                } catch (...) {
                    errs[t] = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        for (auto& e : errs)
            if (e) std::rethrow_exception(e);
    }
    // Streams share the same window, so pooling hits is the variance-weighted combination.
    MeasureEstimate m;
    m.method = MeasureEstimate::Method::MonteCarlo;
    m.seed = opt.seed;
    m.samples = opt.samples;
    for (auto h : hits) m.hits += h;
    double p = static_cast<double>(m.hits) / static_cast<double>(opt.samples);
    m.value = window * p;
    m.sigma = window * std::sqrt(p * (1 - p) / static_cast<double>(opt.samples));
    m.error_bound = 3 * m.sigma;
    return m;
}

inline MeasureEstimate measure_of(const Region& R, double tol, const MonteCarloOptions& opt = {}) {
    if (R.is_omega()) throw NonIntegrable("omega has infinite measure");
    if (R.is_geometric()) {
        MeasureEstimate m;
        m.method = MeasureEstimate::Method::Quadrature;
        for (const auto& q : R.all_rects()) {
            auto part = mu_bar_rect_quadrature(q, tol);
            m.value += part.value;
            m.error_bound += part.error_bound;
        }
        if (m.error_bound > tol) throw NonIntegrable(R.name() + ": quadrature did not reach tolerance");
        return m;
    }
    return monte_carlo_measure(R, opt);
}

struct EntropyEstimate {
    MeasureEstimate measure;
    double entropy = 0;
    double entropy_err = 0;
};

inline double entropy_from_measure(double mu) {
    if (!(mu > 0)) throw NotInducible("measure " + std::to_string(mu));
    return std::numbers::pi * std::numbers::pi / (6 * mu);
}

inline EntropyEstimate entropy_estimate(const Region& R, double tol, const MonteCarloOptions& opt = {}) {
    EntropyEstimate e;
    e.measure = measure_of(R, tol, opt);
    e.entropy = entropy_from_measure(e.measure.value);
    e.entropy_err = e.entropy * e.measure.error_bound / e.measure.value;
    return e;
}

inline double entropy_of(const Region& R, double tol, const MonteCarloOptions& opt = {}) {
    return entropy_estimate(R, tol, opt).entropy;
}

inline double log_of(const Int& v) {
    long e = 0;
    double m = mpz_get_d_2exp(&e, v.get_mpz_t());
    return std::log(m) + static_cast<double>(e) * std::numbers::ln2;
}

// (1/n) log s^R_n(z).
inline double empirical_denominator_growth(const Region& R, const OmegaPoint& z, std::size_t n, long cap = kDefaultCap,
                                           bool fast = false) {
    if (n == 0) throw OutOfDomain("empirical_denominator_growth: n = 0");
    InducedProducts ip = induced_products(R, z, n, cap, fast);
    return log_of(ip.A[n].c) / static_cast<double>(n);
}

struct SweepRow {
    std::string alpha;
    EntropyEstimate est;
};

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "alpha,measure,measure_err,entropy,entropy_err,seed\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, ",%.10f,%.10f,%.10f,%.10f,%llu\n", r.est.measure.value,
                      r.est.measure.error_bound, r.est.entropy, r.est.entropy_err,
                      static_cast<unsigned long long>(r.est.measure.seed));
        os << r.alpha << buf;
    }
}

}  // namespace cfrow
