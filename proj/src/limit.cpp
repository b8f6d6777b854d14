#include "speclab/limit.hpp"

#include "speclab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace speclab {
namespace {

Field mul(const Field& a, const Field& b) {
    Field out(a.grid);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
    return dealias(out);
}

void axpy(Field& y, double alpha, const Field& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

void axpy(VectorField& y, double alpha, const VectorField& x) {
    for (int d = 0; d < y.grid.dim; ++d) axpy(y.comps[d], alpha, x.comps[d]);
}

LimitState accumulate(const LimitState& base, double alpha, const LimitDeriv& k) {
    LimitState out = base;
    axpy(out.v, alpha, k.v);
    axpy(out.u, alpha, k.u);
    axpy(out.a, alpha, k.a);
    axpy(out.phi, alpha, k.phi);
    return out;
}

}  // namespace

Field amplitude_power(const Field& a, int sigma) {
    Field out(a.grid);
    for (std::size_t i = 0; i < out.size(); ++i) {
        Complex z = 1.0;
        for (int p = 0; p < sigma; ++p) z *= a[i];
        out[i] = z;
    }
    return out;
}

double smoothness_monitor(const LimitState& state) {
    double m = 0.0;
    const auto gu = gradient(state.u);
    for (int d = 0; d < state.u.grid.dim; ++d) m = std::max(m, linf_norm(gu.comps[d]));
    double mv = 0.0;
    for (int d = 0; d < state.v.grid.dim; ++d) {
        const auto gv = gradient(state.v.comps[d]);
        for (int e = 0; e < state.v.grid.dim; ++e) mv = std::max(mv, linf_norm(gv.comps[e]));
    }
    return m + mv;
}

LimitDeriv rhs(const LimitState& state, int sigma) {
    const Grid& g = state.u.grid;
    LimitDeriv out{VectorField(g), Field(g), Field(g), Field(g)};

    const Field rho_u = dealias(abs2(state.u));       // |u|^2
    const VectorField grad_p = gradient(rho_u);       // pressure gradient
    const Field div_v = divergence(state.v);

    // dv_j/dt = -sum_k v_k d_k v_j - d_j(|u|^2)
    for (int j = 0; j < g.dim; ++j) {
        const VectorField gvj = gradient(state.v.comps[j]);
        Field acc(g);
        for (int k = 0; k < g.dim; ++k)
            axpy(acc, 1.0, mul(state.v.comps[k], gvj.comps[k]));
        for (std::size_t i = 0; i < acc.size(); ++i)
            out.v.comps[j][i] = -acc[i] - grad_p.comps[j][i];
    }

    // du/dt = -v . grad u - (sigma/2) u div v
    const VectorField gu = gradient(state.u);
    Field adv_u(g);
    for (int k = 0; k < g.dim; ++k) axpy(adv_u, 1.0, mul(state.v.comps[k], gu.comps[k]));
    const Field u_div = mul(state.u, div_v);
    for (std::size_t i = 0; i < out.u.size(); ++i)
        out.u[i] = -adv_u[i] - 0.5 * sigma * u_div[i];

    // da/dt = -v . grad a - (1/2) a div v
    const VectorField ga = gradient(state.a);
    Field adv_a(g);
    for (int k = 0; k < g.dim; ++k) axpy(adv_a, 1.0, mul(state.v.comps[k], ga.comps[k]));
    const Field a_div = mul(state.a, div_v);
    for (std::size_t i = 0; i < out.a.size(); ++i)
        out.a[i] = -adv_a[i] - 0.5 * a_div[i];

    // dphi/dt = -(1/2)|v|^2 - |u|^2
    Field vsq(g);
    for (int k = 0; k < g.dim; ++k) axpy(vsq, 1.0, mul(state.v.comps[k], state.v.comps[k]));
    for (std::size_t i = 0; i < out.phi.size(); ++i)
        out.phi[i] = -0.5 * vsq[i] - rho_u[i];

    return out;
}

LimitState advance(const LimitState& state, int sigma, double dt) {
    const LimitDeriv k1 = rhs(state, sigma);
    const LimitDeriv k2 = rhs(accumulate(state, 0.5 * dt, k1), sigma);
    const LimitDeriv k3 = rhs(accumulate(state, 0.5 * dt, k2), sigma);
    const LimitDeriv k4 = rhs(accumulate(state, dt, k3), sigma);

    LimitState out = state;
    out.t += dt;
    const double w = dt / 6.0;
    axpy(out.v, w, k1.v); axpy(out.v, 2 * w, k2.v); axpy(out.v, 2 * w, k3.v); axpy(out.v, w, k4.v);
    axpy(out.u, w, k1.u); axpy(out.u, 2 * w, k2.u); axpy(out.u, 2 * w, k3.u); axpy(out.u, w, k4.u);
    axpy(out.a, w, k1.a); axpy(out.a, 2 * w, k2.a); axpy(out.a, 2 * w, k3.a); axpy(out.a, w, k4.a);
    axpy(out.phi, w, k1.phi); axpy(out.phi, 2 * w, k2.phi); axpy(out.phi, 2 * w, k3.phi);
    axpy(out.phi, w, k4.phi);
    return out;
}

namespace {

double cfl_dt(const LimitState& s) {
    double vmax = 0.0;
    for (int d = 0; d < s.v.grid.dim; ++d) vmax = std::max(vmax, linf_norm(s.v.comps[d]));
    const double umax = linf_norm(s.u);
    const double speed = vmax + 2.0 * umax;
    const double dx = s.u.grid.spacing();
    if (speed <= 1e-12) return 0.0;  // caller applies the fallback cap
    return 0.5 * dx / speed;
}

}  // namespace

LimitTrajectory run_limit(const LimitConfig& cfg, const Field& a0,
                          const std::vector<double>& sample_times) {
    if (cfg.sigma < 1) throw std::invalid_argument("limit: sigma must be >= 1");
    if (!std::is_sorted(sample_times.begin(), sample_times.end()))
        throw std::invalid_argument("limit: sample times must be sorted");
    if (!sample_times.empty() &&
        (sample_times.front() < 0.0 || sample_times.back() > cfg.t_max * (1.0 + 1e-12)))
        throw std::invalid_argument("limit: sample times must lie in [0, t_max]");
    require_finite(a0, "limit: initial amplitude");

    LimitState state;
    state.t = 0.0;
    state.v = VectorField(a0.grid);
    state.a = a0;
    state.u = amplitude_power(a0, cfg.sigma);
    state.phi = Field(a0.grid);

    const double m0 = smoothness_monitor(state);
    const double bound = (m0 > 0.0) ? cfg.monitor_factor * m0
                                    : std::numeric_limits<double>::infinity();

    LimitTrajectory traj;
    traj.monitor_bound = bound;
    traj.t_valid = 0.0;

    const double fallback = cfg.t_max / 64.0;
    for (double target : sample_times) {
        bool tripped = false;
        while (state.t < target - 1e-14) {
            double dt = cfl_dt(state);
            if (dt <= 0.0) dt = fallback;
            dt = std::min(dt, fallback);
            if (cfg.dt > 0.0) {
                if (cfg.dt > dt * (1.0 + 1e-12))
                    throw std::invalid_argument("limit: configured dt violates the CFL rule");
                dt = cfg.dt;
            }
            dt = std::min(dt, target - state.t);
            LimitState next = advance(state, cfg.sigma, dt);
            if (smoothness_monitor(next) > bound) {
                tripped = true;
                break;
            }
            state = std::move(next);
            traj.t_valid = state.t;
        }
        if (tripped) break;
        if (std::abs(state.t - target) <= 1e-12 * std::max(1.0, target) + 1e-14) {
            state.t = target;
            traj.states.push_back(state);
            traj.t_valid = std::max(traj.t_valid, target);
        }
    }
    if (traj.states.empty())
        throw HorizonError("limit: smoothness monitor tripped before the first sample time");
    return traj;
}

double muk_consistency(const LimitTrajectory& traj, int sigma) {
    double worst = 0.0;
    for (const auto& s : traj.states) {
        const Field as = amplitude_power(s.a, sigma);
        Field diff(s.u.grid);
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = s.u[i] - as[i];
        const double den = l2_norm(s.u);
        if (den > 0.0) worst = std::max(worst, l2_norm(diff) / den);
    }
    return worst;
}

double limit_energy(const LimitState& state, int sigma) {
    const Grid& g = state.u.grid;
    double acc = 0.0;
    for (std::size_t i = 0; i < state.a.size(); ++i) {
        const double rho = std::norm(state.a[i]);
        double v2 = 0.0;
        for (int d = 0; d < g.dim; ++d) v2 += std::norm(state.v.comps[d][i]);
        double pw = 1.0;
        for (int p = 0; p < sigma + 1; ++p) pw *= rho;
        acc += 0.5 * v2 * rho + pw / (sigma + 1);
    }
    return acc * std::pow(g.spacing(), g.dim);
}

}  // namespace speclab
