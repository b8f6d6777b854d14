#include "speclab/spectral.hpp"

#include "speclab/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace speclab {

std::vector<double> mode_component(const Grid& g, int axis) {
    const auto xi = g.frequencies();
    const std::size_t n = g.size();
    std::vector<double> out(n);
    // Row-major flattening, last axis fastest.
    std::size_t stride = 1;
    for (int d = g.dim - 1; d > axis; --d) stride *= g.points;
    for (std::size_t i = 0; i < n; ++i)
        out[i] = xi[(i / stride) % g.points];
    return out;
}

std::vector<double> mode_abs2(const Grid& g) {
    std::vector<double> out(g.size(), 0.0);
    for (int d = 0; d < g.dim; ++d) {
        const auto xd = mode_component(g, d);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += xd[i] * xd[i];
    }
    return out;
}

namespace {

bool is_nyquist(int m, int points) { return m == points / 2; }

// Per-node flag: any axis sits on the Nyquist mode.
std::vector<char> nyquist_mask(const Grid& g) {
    std::vector<char> mask(g.size(), 0);
    std::size_t stride = 1;
    for (int d = g.dim - 1; d >= 0; --d) {
        for (std::size_t i = 0; i < mask.size(); ++i)
            if (is_nyquist(static_cast<int>((i / stride) % g.points), g.points)) mask[i] = 1;
        stride *= g.points;
    }
    return mask;
}

}  // namespace

VectorField gradient(const Field& f, double eps) {
    if (eps < 0.0) throw std::domain_error("gradient: eps must be >= 0");
    require_finite(f, "gradient");
    VectorField out(f.grid);
    const auto spec = fft(f.grid, f.values);
    const auto mask = nyquist_mask(f.grid);
    for (int d = 0; d < f.grid.dim; ++d) {
        const auto xd = mode_component(f.grid, d);
        std::vector<Complex> comp(spec.size());
        for (std::size_t i = 0; i < spec.size(); ++i)
            comp[i] = mask[i] ? Complex(0.0) : Complex(0.0, eps * xd[i]) * spec[i];
        out.comps[d].values = ifft(f.grid, comp);
    }
    return out;
}

Field divergence(const VectorField& v, double eps) {
    Field out(v.grid);
    const auto mask = nyquist_mask(v.grid);
    for (int d = 0; d < v.grid.dim; ++d) {
        const auto spec = fft(v.grid, v.comps[d].values);
        const auto xd = mode_component(v.grid, d);
        std::vector<Complex> tmp(spec.size());
        for (std::size_t i = 0; i < spec.size(); ++i)
            tmp[i] = mask[i] ? Complex(0.0) : Complex(0.0, eps * xd[i]) * spec[i];
        const auto part = ifft(v.grid, tmp);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += part[i];
    }
    return out;
}

Field frac_deriv(const Field& f, double k, double eps) {
    if (k < 0.0 || k > 1.0) throw std::domain_error("frac_deriv: k must be in [0,1]");
    if (eps <= 0.0) throw std::domain_error("frac_deriv: eps must be positive");
    if (k == 0.0) return f;
    auto spec = fft(f.grid, f.values);
    const auto x2 = mode_abs2(f.grid);
    for (std::size_t i = 0; i < spec.size(); ++i)
        spec[i] *= std::pow(eps * std::sqrt(x2[i]), k);
    Field out(f.grid);
    out.values = ifft(f.grid, spec);
    return out;
}

double sobolev_seminorm(const Field& f, double k, double eps) {
    if (k < 0.0 || k > 1.0) throw std::domain_error("sobolev_seminorm: k must be in [0,1]");
    if (eps <= 0.0) throw std::domain_error("sobolev_seminorm: eps must be positive");
    const auto spec = fft(f.grid, f.values);
    const auto x2 = mode_abs2(f.grid);
    // Plancherel: ||f||^2 = dx^n / N^n * sum |fhat|^2.
    const double w = std::pow(f.grid.spacing(), f.grid.dim) / static_cast<double>(f.grid.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const double mult = (k == 0.0) ? 1.0 : std::pow(eps * eps * x2[i], k);
        acc += mult * std::norm(spec[i]);
    }
    return std::sqrt(acc * w);
}

Complex integrate(const Field& f) {
    Complex acc(0.0);
    for (const auto& z : f.values) acc += z;
    return acc * std::pow(f.grid.spacing(), f.grid.dim);
}

double integrate_real(const Field& f) { return integrate(f).real(); }

double l2_norm(const Field& f) {
    double acc = 0.0;
    for (const auto& z : f.values) acc += std::norm(z);
    return std::sqrt(acc * std::pow(f.grid.spacing(), f.grid.dim));
}

double lp_norm(const Field& f, double p) {
    if (p <= 0.0) throw std::domain_error("lp_norm: p must be positive");
    double acc = 0.0;
    for (const auto& z : f.values) acc += std::pow(std::abs(z), p);
    return std::pow(acc * std::pow(f.grid.spacing(), f.grid.dim), 1.0 / p);
}

double linf_norm(const Field& f) {
    double m = 0.0;
    for (const auto& z : f.values) m = std::max(m, std::abs(z));
    return m;
}

Field abs2(const Field& f) {
    Field out(f.grid);
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::norm(f[i]);
    return out;
}

Field dealias(const Field& f) {
    auto spec = fft(f.grid, f.values);
    const double cutoff = f.grid.max_frequency() * (2.0 / 3.0);
    for (int d = 0; d < f.grid.dim; ++d) {
        const auto xd = mode_component(f.grid, d);
        for (std::size_t i = 0; i < spec.size(); ++i)
            if (std::abs(xd[i]) > cutoff) spec[i] = 0.0;
    }
    Field out(f.grid);
    out.values = ifft(f.grid, spec);
    return out;
}

Field resample(const Field& f, const Grid& target) {
    if (f.grid.dim != target.dim)
        throw std::invalid_argument("resample: dimension mismatch");
    if (f.grid.length != target.length)
        throw std::invalid_argument("resample: box length mismatch");
    if (f.grid.points == target.points) return Field(target, f.values);

    const auto spec = fft(f.grid, f.values);
    std::vector<Complex> tspec(target.size(), Complex(0.0));
    const int ns = f.grid.points, nt = target.points;
    const int dim = f.grid.dim;
    // Copy modes with signed index |k| < min(ns, nt)/2 (Nyquist rows dropped).
    const int half = std::min(ns, nt) / 2;
    const std::size_t total = spec.size();
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rem = i;
        bool keep = true;
        std::size_t j = 0;
        std::size_t stride = 1;
        for (int d = dim - 1; d >= 0; --d) {
            const int m = static_cast<int>(rem % ns);
            rem /= ns;
            const int k = (m < ns / 2) ? m : m - ns;
            if (std::abs(k) >= half) {
                keep = false;
                break;
            }
            const int mt = (k >= 0) ? k : k + nt;
            j += static_cast<std::size_t>(mt) * stride;
            stride *= nt;
        }
        if (keep) tspec[j] = spec[i];
    }
    const double scale = static_cast<double>(target.size()) / static_cast<double>(f.grid.size());
    for (auto& z : tspec) z *= scale;
    Field out(target);
    out.values = ifft(target, tspec);
    return out;
}

double spectral_tail_fraction(const Field& f, double frac) {
    const auto spec = fft(f.grid, f.values);
    const double cutoff = frac * f.grid.max_frequency();
    std::vector<char> in_tail(spec.size(), 0);
    for (int d = 0; d < f.grid.dim; ++d) {
        const auto xd = mode_component(f.grid, d);
        for (std::size_t i = 0; i < spec.size(); ++i)
            if (std::abs(xd[i]) > cutoff) in_tail[i] = 1;
    }
    double tail = 0.0, total = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const double e = std::norm(spec[i]);
        total += e;
        if (in_tail[i]) tail += e;
    }
    return (total > 0.0) ? tail / total : 0.0;
}

}  // namespace speclab
