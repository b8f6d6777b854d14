#pragma once

#include "speclab/grid.hpp"

#include <stdexcept>

namespace speclab {

// Gaussian wave-packet (FBI) transform at scale sqrt(eps), 1D.
struct WavePacketConfig {
    double eps = 1.0;
    Grid x_grid;   // shared with the input field
    Grid xi_grid;  // momentum side, own extent and spacing
    // Certified bound on the mass fraction in the outermost xi rows. Rough
    // symbols (|v|^s u and friends) leak polynomially and need a looser bar.
    double tail_tol = 1e-9;
    // c_n = 2^{-n/2} pi^{-3n/4} for dimension n.
    double normalization() const;
};

// Samples on the product grid, row-major: values[j * Nx + i] = W(x_i, xi_j).
struct PhaseSpaceField {
    Grid x_grid;
    Grid xi_grid;
    std::vector<Complex> values;

    double l2_norm() const;  // L2(dx dxi)
};

struct WavePacketConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Momentum extent from the field content: max(4 max|v|, 8 * spectral radius
// of u in the eps-scaled dual variable), with resolution ~ sqrt(eps)/4.
WavePacketConfig make_wp_config(double eps, const Field& u, double vmax = 0.0);

// True when the x grid resolves the fastest kernel row (carrier xi/eps plus
// window bandwidth plus the field's own content) and dx <= sqrt(eps)/4.
bool wp_resolution_sufficient(const Field& u, const WavePacketConfig& cfg);

// W u (x, xi) = c_n eps^(-3n/4) int exp(i (x-y) xi / eps - (x-y)^2 / (2 eps)) u(y) dy,
// trapezoid quadrature on the periodic grid, one circular convolution per xi row.
// Throws WavePacketConfigError when the xi extent fails the tail-mass test.
PhaseSpaceField wp_transform(const Field& u, const WavePacketConfig& cfg);

// | ||W u||^2 - ||u||^2 | / ||u||^2.
double isometry_defect(const Field& u, const WavePacketConfig& cfg);

// The three rough-symbol commutator residuals with their rate envelopes.
struct CommutatorResiduals {
    double res1, res2, res3;  // measured left-hand sides
    double env1, env2, env3;  // eps^(s/2) (resp. eps^(1/2)) envelopes, K = 1
    double k1() const { return res1 / env1; }
    double k2() const { return res2 / env2; }
    double k3() const { return res3 / env3; }
};
CommutatorResiduals commutator_residuals(const Field& u, const Field& v_real, double s,
                                         const WavePacketConfig& cfg);

// |x|^s <= |y|^s + |x-y|^s for s in [0,1] (vectors of equal length).
bool elementary_inequality_check(const std::vector<double>& x, const std::vector<double>& y,
                                 double s);

// Every term of the phase-space lower-bound chain at one time slice.
struct MicrolocalBound {
    double lhs;          // || |v|^k u ||
    double frac_norm;    // || |eps D|^k u ||
    double covariant;    // ||(eps grad - iv)u||^k ||u||^(1-k)
    double envelope;     // eps^(k/2) (1 + ||grad v||_inf) ||u||
    double target;       // || |v|^k a ||
    double bridge;       // || |v|^(2k) ||_{L^(1+1/sigma)} * || rho^eps - rho ||_{L^(sigma+1)}
};
MicrolocalBound microlocal_lower_bound(const Field& u_eps, const VectorField& v,
                                       const Field& a, double k, double eps, int sigma);

}  // namespace speclab
