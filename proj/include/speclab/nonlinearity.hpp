#pragma once

namespace speclab {

// Defocusing power nonlinearity f(y) = y^sigma and its saturated
// regularization f(y) = y^sigma / (1 + (delta y)^sigma), delta = 0 for the
// pure power. F is the primitive of f, G(y) = y f(y) - F(y).
struct NonlinearityFns {
    int sigma = 1;
    double delta = 0.0;

    double f(double y) const;
    double fprime(double y) const;
    double F(double y) const;      // quadrature for delta > 0
    double G(double y) const;      // y f(y) - F(y)
    double Gprime(double y) const; // y f'(y)
};

NonlinearityFns make_nonlinearity(int sigma, double delta = 0.0);

struct RemainderComparison {
    double G_rem = 0.0;
    double F_rem = 0.0;
    double ratio = 0.0;  // |G_rem| / |F_rem|, reported as sigma when 0/0
};

// Second-order Taylor remainders of G and F between rho (base) and rho1.
RemainderComparison remainder_comparison(const NonlinearityFns& fns, double rho1, double rho);

// Residual of the identity y h''(y) = h'(y) (sigma-1-(sigma+1)y^sigma)/(1+y^sigma)
// for h(y) = y^sigma/(1+y^sigma), with h'' by central finite differences.
double h_identity_check(int sigma, double y);

// The two sides of the sweep bound |y h''(y)| <= (sigma+1) h'(y).
double h_prime(int sigma, double y);
double h_second_fd(int sigma, double y);

}  // namespace speclab
