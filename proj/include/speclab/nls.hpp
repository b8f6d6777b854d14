#pragma once

#include "speclab/grid.hpp"
#include "speclab/nonlinearity.hpp"

#include <stdexcept>
#include <vector>

namespace speclab {

enum class Potential { none, harmonic };

struct NlsConfig {
    double eps = 1.0;       // semiclassical parameter
    int sigma = 1;          // nonlinearity exponent, integer >= 1
    double delta_sat = 0.0; // saturation parameter, 0 = pure power
    Potential potential = Potential::none;
    bool linear = false;    // disable the nonlinear term (harmonic benchmark)
    double dt = 0.0;        // 0 = automatic from the phase-resolution rule
    double t_final = 1.0;
};

struct NlsState {
    double t = 0.0;
    Field u;
    NlsConfig config;
};

// Thrown when the modulus amplifies past the defocusing bound or goes NaN.
struct DivergenceError : std::runtime_error {
    double t;
    explicit DivergenceError(double t_)
        : std::runtime_error("nls: divergence detected at t = " + std::to_string(t_)), t(t_) {}
};

// Largest stable/accurate step for this configuration and initial datum:
// 0.1 over the fastest phase rate among kinetic (eps*ximax^2/2),
// nonlinear (f(max|u0|^2)/eps) and potential (V/eps on the datum support).
double dt_max(const NlsConfig& cfg, const Field& u0);

// One Strang step: half kinetic, exact nonlinear/potential phase, half kinetic.
NlsState step(const NlsState& state, double dt);

double mass(const NlsState& state);

// (1/2)||eps grad u||^2 + int F(|u|^2) (+ int V |u|^2 with the harmonic
// potential; the F term is dropped in linear mode).
double energy(const NlsState& state);

// Advance from u0 and return the states at the requested times
// (sorted, within [0, t_final]; dt is shortened to land exactly on them).
std::vector<NlsState> run(const NlsConfig& cfg, const Field& u0,
                          const std::vector<double>& sample_times);

}  // namespace speclab
