#pragma once

#include "speclab/grid.hpp"

#include <stdexcept>
#include <vector>

namespace speclab {

// One time slice of the limiting WKB system, in both the transport
// variables (v, a, phi) and the symmetrizing variable u = a^sigma.
struct LimitState {
    double t = 0.0;
    VectorField v;  // velocity = grad phi
    Field u;        // a^sigma
    Field a;        // amplitude
    Field phi;      // phase (real-valued)
};

struct LimitConfig {
    int sigma = 1;
    double t_max = 1.0;
    double dt = 0.0;              // 0 = automatic from the advective CFL rule
    double monitor_factor = 5.0;  // trip when the monitor exceeds factor * initial
};

struct LimitTrajectory {
    std::vector<LimitState> states;  // at the requested sample times <= t_valid
    double t_valid = 0.0;
    double monitor_bound = 0.0;
};

struct HorizonError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// max over components of ||grad v||_inf + ||grad u||_inf.
double smoothness_monitor(const LimitState& state);

// Time derivatives of (v, u, a, phi); all spatial derivatives spectral,
// products dealiased by the 2/3 rule.
struct LimitDeriv {
    VectorField v;
    Field u, a, phi;
};
LimitDeriv rhs(const LimitState& state, int sigma);

// One classical RK4 step of size dt on the full (v, u, a, phi) tuple.
LimitState advance(const LimitState& state, int sigma, double dt);

// Advance from a0 (v = phi = 0, u = a0^sigma) and collect the states at the
// sample times. Stops early when the smoothness monitor trips; states beyond
// t_valid are not returned.
LimitTrajectory run_limit(const LimitConfig& cfg, const Field& a0,
                          const std::vector<double>& sample_times);

// max over retained times of ||u - a^sigma||_L2 / ||u||_L2.
double muk_consistency(const LimitTrajectory& traj, int sigma);

// Conserved energy of the limit system:
// (1/2) int |v|^2 |a|^2 + 1/(sigma+1) int |a|^(2 sigma + 2).
double limit_energy(const LimitState& state, int sigma);

// a^sigma, pointwise (integer power).
Field amplitude_power(const Field& a, int sigma);

}  // namespace speclab
