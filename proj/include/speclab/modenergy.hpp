#pragma once

#include "speclab/grid.hpp"
#include "speclab/limit.hpp"
#include "speclab/nonlinearity.hpp"

#include <vector>

namespace speclab {

// Hydrodynamic variables rho = |u|^2 and current J = Im(eps conj(u) grad u).
struct HydroFields {
    Field rho;
    VectorField J;
};
HydroFields hydro(const Field& u, double eps);

// Modulated energy report at one time.
struct EnergyReport {
    double t = 0.0;
    double H = 0.0;            // modulated energy
    double K = 0.0;            // covariant kinetic part (1/2)||(eps grad - iv)u||^2
    double P = 0.0;            // modulated potential part, H - K
    double lower_bound = 0.0;  // K + c*conv_term, c = 1/(sigma+1) (1/4 at sigma = 1)
    double conv_term = 0.0;    // int (rho^eps-rho)^2 ((rho^eps)^(sigma-1)+rho^(sigma-1))
    double plain_kinetic = 0.0;  // (1/2)||eps grad u||^2
};

// (eps grad - iv) u, componentwise.
VectorField covariant_gradient(const Field& u, const VectorField& v, double eps);

EnergyReport modulated_energy(const Field& u_eps, const VectorField& v, const Field& a,
                              double eps, const NonlinearityFns& fns);

// The eps-sweep behind the semiclassical-limit rate measurement: for each
// eps, run the semiclassical solver against the shared limit trajectory and
// track sup over [0,T] of the two error components.
struct SweepRow {
    double eps, t;
    EnergyReport report;
    double thm_c1, thm_c2;  // ||(eps grad - iv)u||^2 and the density remainder
};

struct SweepSummary {
    double eps, sup_quantity, sup_c1, sup_c2;
    int grid_points;
    double kinetic_at_tau, kinetic_at_zero;        // plain kinetic energies
    std::vector<double> frac_norm_at_tau;          // |||eps D|^k u(tau)|| per requested k
};

struct SweepConfig {
    std::vector<double> eps_list;
    double T = 0.2;
    int sigma = 3;
    double box_length = 12.0;
    int limit_points = 512;
    int max_points = 8192;
    int min_points = 256;
    int n_samples = 41;              // sample times in [0, max(T, tau)]
    double tau = -1.0;               // < 0: no extra snapshot requested
    std::vector<double> k_list;      // fractional orders measured at tau
};

struct SweepReport {
    std::vector<SweepRow> rows;
    std::vector<SweepSummary> summaries;
    double slope = 0.0, intercept = 0.0;  // fit of log sup(c1+c2) vs log eps
    LimitTrajectory limit;                 // the shared reference trajectory
    std::vector<double> target_norm_at_tau;  // |||v(tau)|^k a(tau)|| per k
    double half_va_sq_at_tau = 0.0;          // (1/2)|| v(tau) a(tau) ||^2
};

SweepReport theorem_og_sweep(const SweepConfig& cfg, const Field& a0);

}  // namespace speclab
