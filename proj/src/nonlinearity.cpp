#include "speclab/nonlinearity.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>

namespace speclab {
namespace {

double ipow(double y, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= y;
    return r;
}

void require_nonneg(double y, const char* what) {
    if (y < 0.0) throw std::domain_error(std::string(what) + ": argument must be >= 0");
}

}  // namespace

double NonlinearityFns::f(double y) const {
    require_nonneg(y, "f");
    const double ys = ipow(y, sigma);
    if (delta == 0.0) return ys;
    return ys / (1.0 + ipow(delta * y, sigma));
}

double NonlinearityFns::fprime(double y) const {
    require_nonneg(y, "fprime");
    const double ysm1 = (sigma == 1) ? 1.0 : ipow(y, sigma - 1);
    if (delta == 0.0) return sigma * ysm1;
    const double d = 1.0 + ipow(delta * y, sigma);
    return sigma * ysm1 / (d * d);
}

double NonlinearityFns::F(double y) const {
    require_nonneg(y, "F");
    if (delta == 0.0) return ipow(y, sigma + 1) / (sigma + 1);
    if (y == 0.0) return 0.0;
    using boost::math::quadrature::gauss_kronrod;
    return gauss_kronrod<double, 31>::integrate(
        [this](double z) { return f(z); }, 0.0, y, 12, 1e-12);
}

double NonlinearityFns::G(double y) const {
    require_nonneg(y, "G");
    if (delta == 0.0) return sigma * ipow(y, sigma + 1) / (sigma + 1);
    return y * f(y) - F(y);
}

double NonlinearityFns::Gprime(double y) const {
    require_nonneg(y, "Gprime");
    return y * fprime(y);
}

NonlinearityFns make_nonlinearity(int sigma, double delta) {
    if (sigma < 1) throw std::invalid_argument("nonlinearity: sigma must be >= 1");
    if (delta < 0.0) throw std::invalid_argument("nonlinearity: delta must be >= 0");
    return NonlinearityFns{sigma, delta};
}

RemainderComparison remainder_comparison(const NonlinearityFns& fns, double rho1, double rho) {
    require_nonneg(rho1, "remainder_comparison");
    require_nonneg(rho, "remainder_comparison");
    RemainderComparison out;
    const double d = rho1 - rho;
    if (fns.delta == 0.0) {
        // Taylor's formula with h'' constant times y^(sigma-1): the remainder
        // is d^2 int_0^1 (1-theta) h''(rho + theta d) dtheta, and the Beta
        // integrals int (1-theta) theta^j = 1/((j+1)(j+2)) evaluate the
        // expansion exactly. Direct subtraction of the primitives loses the
        // leading digits near rho1 = rho; this form does not cancel.
        double sum = 0.0, binom = 1.0;
        for (int j = 0; j <= fns.sigma - 1; ++j) {
            sum += binom * ipow(rho, fns.sigma - 1 - j) * ipow(d, j) /
                   ((j + 1.0) * (j + 2.0));
            binom *= static_cast<double>(fns.sigma - 1 - j) / (j + 1.0);
        }
        // F'' = sigma y^(sigma-1), G'' = sigma^2 y^(sigma-1)
        out.F_rem = fns.sigma * d * d * sum;
        out.G_rem = fns.sigma * fns.sigma * d * d * sum;
    } else {
        out.G_rem = fns.G(rho1) - fns.G(rho) - d * fns.Gprime(rho);
        out.F_rem = fns.F(rho1) - fns.F(rho) - d * fns.f(rho);
    }
    out.ratio = (out.F_rem == 0.0) ? static_cast<double>(fns.sigma)
                                   : std::abs(out.G_rem) / std::abs(out.F_rem);
    return out;
}

double h_prime(int sigma, double y) {
    require_nonneg(y, "h_prime");
    const double ysm1 = (sigma == 1) ? 1.0 : ipow(y, sigma - 1);
    const double d = 1.0 + ipow(y, sigma);
    return sigma * ysm1 / (d * d);
}

double h_second_fd(int sigma, double y) {
    const double step = 1e-5 * std::max(1.0, y);
    auto h = [sigma](double z) { return ipow(z, sigma) / (1.0 + ipow(z, sigma)); };
    const double lo = std::max(0.0, y - step);
    // One-sided away from 0 would lose accuracy; y - step < 0 only if y < step.
    if (lo != y - step) {
        const double s = y > 0.0 ? y : step;
        return (h(y + 2 * s) - 2 * h(y + s) + h(y)) / (s * s);
    }
    return (h(y + step) - 2.0 * h(y) + h(y - step)) / (step * step);
}

double h_identity_check(int sigma, double y) {
    require_nonneg(y, "h_identity_check");
    const double ys = ipow(y, sigma);
    const double rhs = h_prime(sigma, y) * (sigma - 1 - (sigma + 1) * ys) / (1.0 + ys);
    return y * h_second_fd(sigma, y) - rhs;
}

}  // namespace speclab
