#include "speclab/inflation.hpp"

#include "speclab/fft.hpp"
#include "speclab/fit.hpp"
#include "speclab/nls.hpp"
#include "speclab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace speclab {

double ScalingParams::eps_of(double h) const {
    return std::pow(h, sigma * (critical_index() - s));
}

double ScalingParams::predicted_exponent(double k) const {
    return s - k * (1.0 + sigma * (critical_index() - s));
}

double ScalingParams::blowup_threshold() const {
    return s / (1.0 + sigma * (critical_index() - s));
}

void validate(const ScalingParams& p) {
    if (p.n < 1) throw std::invalid_argument("scaling: dimension must be >= 1");
    if (p.sigma < 1) throw std::invalid_argument("scaling: sigma must be >= 1");
    if (p.critical_index() <= 0.0)
        throw std::invalid_argument("scaling: s_c = n/2 - 1/sigma must be positive");
    if (p.s <= 0.0 || p.s >= p.critical_index())
        throw std::invalid_argument("scaling: need 0 < s < s_c");
}

namespace {

double damping(double h, bool log_damping) {
    if (!log_damping) return 1.0;
    if (h >= 1.0) throw std::invalid_argument("inflation: log damping needs h < 1");
    return 1.0 / std::abs(std::log(h));
}

}  // namespace

Field make_datum(const ScalingParams& p, const Field& a0, double h, bool log_damping) {
    validate(p);
    if (h <= 0.0) throw std::invalid_argument("inflation: h must be positive");
    const Grid g = make_grid(a0.grid.dim, a0.grid.points, h * a0.grid.length);
    const double amp = damping(h, log_damping) * std::pow(h, p.s - 0.5 * p.n);
    Field out(g);
    // x_i / h lands exactly on a0's nodes, so this is a pure rescaling.
    for (std::size_t i = 0; i < a0.size(); ++i) out[i] = amp * a0[i];
    return out;
}

double datum_sobolev_norm(const ScalingParams& p, const Field& a0, double h,
                          bool log_damping) {
    validate(p);
    if (h <= 0.0) throw std::invalid_argument("inflation: h must be positive");
    const Grid& g = a0.grid;
    const auto spec = fft(g, a0.values);
    const auto eta2 = mode_abs2(g);
    const double w = std::pow(g.spacing(), g.dim) / static_cast<double>(spec.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i)
        acc += std::pow(1.0 + eta2[i] / (h * h), p.s) * std::norm(spec[i]) * w;
    return damping(h, log_damping) * std::pow(h, p.s) * std::sqrt(acc);
}

double find_tau(const LimitTrajectory& traj, const std::vector<double>& k_list,
                double fraction) {
    if (traj.states.empty()) throw std::invalid_argument("find_tau: empty trajectory");
    if (k_list.empty()) throw std::invalid_argument("find_tau: empty k list");
    const Grid& g = traj.states.front().a.grid;
    const double w = std::pow(g.spacing(), g.dim);

    std::vector<double> score(traj.states.size());
    for (std::size_t t = 0; t < traj.states.size(); ++t) {
        const auto& st = traj.states[t];
        double min_k = std::numeric_limits<double>::infinity();
        for (double k : k_list) {
            double acc = 0.0;
            for (std::size_t i = 0; i < st.a.size(); ++i) {
                double v2 = 0.0;
                for (int d = 0; d < g.dim; ++d) v2 += std::norm(st.v.comps[d][i]);
                acc += std::pow(v2, k) * std::norm(st.a[i]);
            }
            min_k = std::min(min_k, acc * w);
        }
        score[t] = min_k;
    }
    const double peak = *std::max_element(score.begin(), score.end());
    if (peak <= 0.0) return traj.states.front().t;
    for (std::size_t t = 0; t < traj.states.size(); ++t)
        if (score[t] >= fraction * peak) return traj.states[t].t;
    return traj.states.back().t;
}

InflationReport run_inflation(const InflationConfig& cfg, const Field& a0) {
    validate(cfg.params);
    if (cfg.h_list.empty()) throw std::invalid_argument("inflation: empty h list");
    if (cfg.tau <= 0.0) throw std::invalid_argument("inflation: tau must be positive");
    const ScalingParams& p = cfg.params;

    InflationReport report;
    std::vector<std::vector<double>> per_k(cfg.k_list.size());
    std::vector<double> datum_norms;

    for (double h : cfg.h_list) {
        const double eps = p.eps_of(h);
        const double damp = damping(h, cfg.log_damping);

        NlsConfig ncfg;
        ncfg.eps = eps;
        ncfg.sigma = p.sigma;
        ncfg.t_final = cfg.tau;
        Field u0 = a0;
        for (auto& z : u0.values) z *= damp;
        const Field u_tau = run(ncfg, u0, {cfg.tau}).back().u;

        InflationRow row;
        row.h = h;
        row.eps = eps;
        row.t_h = h * h * eps * cfg.tau;
        row.datum_norm = datum_sobolev_norm(p, a0, h, cfg.log_damping);
        for (std::size_t j = 0; j < cfg.k_list.size(); ++j) {
            const double k = cfg.k_list[j];
            const double m = sobolev_seminorm(u_tau, k, eps);
            const double ledger = std::pow(h, p.s - k) * std::pow(eps, -k) * m;
            row.ledger_norms.push_back(ledger);
            per_k[j].push_back(ledger);
        }
        datum_norms.push_back(row.datum_norm);
        report.rows.push_back(std::move(row));
    }

    if (cfg.h_list.size() >= 2) {
        for (std::size_t j = 0; j < cfg.k_list.size(); ++j) {
            const LineFit fit = fit_loglog(cfg.h_list, per_k[j]);
            report.fits.push_back(
                InflationFit{cfg.k_list[j], fit.slope, p.predicted_exponent(cfg.k_list[j])});
        }
        report.datum_slope = fit_loglog(cfg.h_list, datum_norms).slope;
    }
    return report;
}

double frame_map_check(const ScalingParams& p, const Field& a0, double h, double tau) {
    validate(p);
    if (a0.grid.dim != 1) throw std::invalid_argument("frame_map_check: 1D only");
    const double eps = p.eps_of(h);
    const double scale = h * h * eps;

    NlsConfig ucfg;
    ucfg.eps = eps;
    ucfg.sigma = p.sigma;
    ucfg.t_final = tau;
    const long n = std::max(1L, static_cast<long>(std::ceil(tau / dt_max(ucfg, a0))));
    ucfg.dt = tau / static_cast<double>(n);
    const Field u_tau = run(ucfg, a0, {tau}).back().u;

    // Concentrated frame: unit-scale NLS, conjugate grid and step size.
    const double lam = std::pow(eps * h, -1.0 / p.sigma);
    const Grid gpsi = make_grid(1, a0.grid.points, h * a0.grid.length);
    Field psi0(gpsi);
    for (std::size_t i = 0; i < a0.size(); ++i) psi0[i] = lam * a0[i];

    NlsConfig pcfg;
    pcfg.eps = 1.0;
    pcfg.sigma = p.sigma;
    pcfg.t_final = scale * tau;
    pcfg.dt = scale * ucfg.dt;
    const Field psi = run(pcfg, psi0, {pcfg.t_final}).back().u;

    double ref = 0.0;
    for (std::size_t i = 0; i < u_tau.size(); ++i)
        ref = std::max(ref, std::abs(lam * u_tau[i]));
    double worst = 0.0;
    for (std::size_t i = 0; i < u_tau.size(); ++i)
        worst = std::max(worst, std::abs(psi[i] - lam * u_tau[i]));
    return worst / ref;
}

}  // namespace speclab
