#pragma once

#include "speclab/grid.hpp"

namespace speclab {

// Flat per-node arrays of the dual variable, FFT ordering.
std::vector<double> mode_component(const Grid& g, int axis);  // xi_d at each node
std::vector<double> mode_abs2(const Grid& g);                 // |xi|^2 at each node

// eps * grad f, computed spectrally. eps = 1 gives the plain gradient.
// The Nyquist mode is excluded so that real input yields real derivatives.
VectorField gradient(const Field& f, double eps = 1.0);

// div of a vector field, spectrally (eps scaling as in gradient).
Field divergence(const VectorField& v, double eps = 1.0);

// |eps D|^k f, the Fourier multiplier |eps xi|^k, k in [0,1].
Field frac_deriv(const Field& f, double k, double eps);

// L2 norm of frac_deriv(f, k, eps), evaluated by Plancherel.
double sobolev_seminorm(const Field& f, double k, double eps);

// Rectangle rule on the torus: dx^n * sum of samples.
Complex integrate(const Field& f);
double integrate_real(const Field& f);

double l2_norm(const Field& f);
double lp_norm(const Field& f, double p);
double linf_norm(const Field& f);

// Pointwise |f|^2 (real-valued, returned as a Field with zero imaginary part).
Field abs2(const Field& f);

// Zero the top third of the spectrum (2/3-rule dealiasing for products).
Field dealias(const Field& f);

// Fourier interpolation onto a finer (or coarser) grid with the same box.
Field resample(const Field& f, const Grid& target);

// Fraction of spectral energy carried by modes with |xi_d| > frac * xi_max.
double spectral_tail_fraction(const Field& f, double frac = 0.9);

}  // namespace speclab
