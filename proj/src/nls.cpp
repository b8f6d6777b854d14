#include "speclab/nls.hpp"

#include "speclab/fft.hpp"
#include "speclab/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace speclab {
namespace {

std::vector<double> potential_samples(const NlsConfig& cfg, const Grid& g) {
    std::vector<double> v(g.size(), 0.0);
    if (cfg.potential != Potential::harmonic) return v;
    const auto xs = g.axis();
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::size_t rem = i;
        double r2 = 0.0;
        for (int d = g.dim - 1; d >= 0; --d) {
            const double x = xs[rem % g.points];
            rem /= g.points;
            r2 += x * x;
        }
        v[i] = 0.5 * r2;
    }
    return v;
}

double max_abs(const std::vector<Complex>& v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

// Shared state for a trajectory: multiplier arrays and divergence threshold.
struct Stepper {
    NlsConfig cfg;
    Grid grid;
    std::vector<double> xi2;
    std::vector<double> pot;
    NonlinearityFns fns;
    double blowup_threshold;

    double cached_dt = -1.0;
    std::vector<Complex> kin_full, kin_half;

    Stepper(const NlsConfig& c, const Field& u0)
        : cfg(c),
          grid(u0.grid),
          xi2(mode_abs2(u0.grid)),
          pot(potential_samples(c, u0.grid)),
          fns(make_nonlinearity(c.sigma, c.delta_sat)),
          blowup_threshold(1e3 * max_abs(u0.values)) {}

    void cache_multipliers(double dt) {
        if (dt == cached_dt) return;
        cached_dt = dt;
        kin_full.resize(xi2.size());
        kin_half.resize(xi2.size());
        for (std::size_t i = 0; i < xi2.size(); ++i) {
            const double phase = -0.5 * cfg.eps * xi2[i];
            kin_full[i] = std::polar(1.0, phase * dt);
            kin_half[i] = std::polar(1.0, phase * 0.5 * dt);
        }
    }

    void kinetic(std::vector<Complex>& u, const std::vector<Complex>& mult, double t) const {
        auto spec = fft(grid, u);
        for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= mult[i];
        u = ifft(grid, spec);
        check(u, t);
    }

    void phase(std::vector<Complex>& u, double dt) const {
        const double scale = -dt / cfg.eps;
        for (std::size_t i = 0; i < u.size(); ++i) {
            double rate = pot[i];
            if (!cfg.linear) rate += fns.f(std::norm(u[i]));
            u[i] *= std::polar(1.0, scale * rate);
        }
    }

    void check(const std::vector<Complex>& u, double t) const {
        for (const auto& z : u) {
            const double a = std::abs(z);
            if (!std::isfinite(a) || a > blowup_threshold) throw DivergenceError(t);
        }
    }

    // n Strang steps of size dt, with interior half-kinetic factors merged.
    void advance(std::vector<Complex>& u, double& t, double dt, long n) {
        if (n <= 0) return;
        cache_multipliers(dt);
        kinetic(u, kin_half, t);
        for (long i = 0; i < n; ++i) {
            phase(u, dt);
            t += dt;
            if (i + 1 < n)
                kinetic(u, kin_full, t);
        }
        kinetic(u, kin_half, t);
    }
};

}  // namespace

double dt_max(const NlsConfig& cfg, const Field& u0) {
    if (cfg.eps <= 0.0) throw std::invalid_argument("nls: eps must be positive");
    if (cfg.sigma < 1) throw std::invalid_argument("nls: sigma must be an integer >= 1");
    const double ximax = u0.grid.max_frequency();
    double rate = 0.5 * cfg.eps * ximax * ximax;
    const NonlinearityFns fns = make_nonlinearity(cfg.sigma, cfg.delta_sat);
    const double umax = max_abs(u0.values);
    if (!cfg.linear) rate = std::max(rate, fns.f(umax * umax) / cfg.eps);
    if (cfg.potential == Potential::harmonic) {
        // Fastest potential phase on the (padded) support of the datum.
        const auto xs = u0.grid.axis();
        double r = 0.0;
        for (std::size_t i = 0; i < u0.size(); ++i) {
            if (std::abs(u0[i]) <= 1e-10 * umax) continue;
            std::size_t rem = i;
            double r2 = 0.0;
            for (int d = u0.grid.dim - 1; d >= 0; --d) {
                const double x = xs[rem % u0.grid.points];
                rem /= u0.grid.points;
                r2 += x * x;
            }
            r = std::max(r, std::sqrt(r2));
        }
        const double reff = 1.5 * r;
        rate = std::max(rate, 0.5 * reff * reff / cfg.eps);
    }
    if (rate <= 0.0) return cfg.t_final > 0.0 ? cfg.t_final / 100.0 : 1.0;
    return 0.1 / rate;
}

NlsState step(const NlsState& state, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("nls: dt must be positive");
    const double cap = dt_max(state.config, state.u);
    if (dt > cap * (1.0 + 1e-12))
        throw std::invalid_argument("nls: dt exceeds the resolution rule (dt_max = " +
                                    std::to_string(cap) + ")");
    Stepper stepper(state.config, state.u);
    NlsState next = state;
    stepper.advance(next.u.values, next.t, dt, 1);
    return next;
}

double mass(const NlsState& state) { return integrate_real(abs2(state.u)); }

double energy(const NlsState& state) {
    const auto& cfg = state.config;
    const double kin = sobolev_seminorm(state.u, 1.0, cfg.eps);
    double e = 0.5 * kin * kin;
    const NonlinearityFns fns = make_nonlinearity(cfg.sigma, cfg.delta_sat);
    const auto pot = potential_samples(cfg, state.u.grid);
    double acc = 0.0;
    for (std::size_t i = 0; i < state.u.size(); ++i) {
        const double rho = std::norm(state.u[i]);
        if (!cfg.linear) acc += fns.F(rho);
        acc += pot[i] * rho;
    }
    return e + acc * std::pow(state.u.grid.spacing(), state.u.grid.dim);
}

std::vector<NlsState> run(const NlsConfig& cfg, const Field& u0,
                          const std::vector<double>& sample_times) {
    if (!std::is_sorted(sample_times.begin(), sample_times.end()))
        throw std::invalid_argument("nls: sample times must be sorted");
    if (!sample_times.empty() &&
        (sample_times.front() < 0.0 || sample_times.back() > cfg.t_final * (1.0 + 1e-12)))
        throw std::invalid_argument("nls: sample times must lie in [0, t_final]");
    require_finite(u0, "nls: initial datum");

    double dt = dt_max(cfg, u0);
    if (cfg.dt > 0.0) dt = std::min(dt, cfg.dt);

    Stepper stepper(cfg, u0);
    std::vector<NlsState> out;
    out.reserve(sample_times.size());
    std::vector<Complex> u = u0.values;
    double t = 0.0;
    for (double target : sample_times) {
        const double span = target - t;
        if (span > 1e-14) {
            const long n = static_cast<long>(std::ceil(span / dt - 1e-9));
            stepper.advance(u, t, span / n, n);
        }
        t = target;
        out.push_back(NlsState{t, Field(u0.grid, u), cfg});
    }
    return out;
}

}  // namespace speclab
