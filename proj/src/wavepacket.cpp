#include "speclab/wavepacket.hpp"

#include "speclab/fft.hpp"
#include "speclab/spectral.hpp"

#include <cmath>
#include <numbers>

namespace speclab {

double WavePacketConfig::normalization() const {
    const int n = x_grid.dim;
    return std::pow(2.0, -0.5 * n) * std::pow(std::numbers::pi, -0.75 * n);
}

double PhaseSpaceField::l2_norm() const {
    double acc = 0.0;
    for (const auto& z : values) acc += std::norm(z);
    return std::sqrt(acc * x_grid.spacing() * xi_grid.spacing());
}

namespace {

int pow2_at_least(double x) {
    int n = 2;
    while (n < x && n < (1 << 28)) n *= 2;
    return n;
}

// Largest |eps xi| carrying spectral weight above 1e-8 of the peak.
double scaled_spectral_radius(const Field& u, double eps) {
    const auto spec = fft(u.grid, u.values);
    const auto xi = mode_component(u.grid, 0);
    double peak = 0.0;
    for (const auto& z : spec) peak = std::max(peak, std::abs(z));
    double r = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i)
        if (std::abs(spec[i]) > 1e-8 * peak) r = std::max(r, eps * std::abs(xi[i]));
    return r;
}

}  // namespace

WavePacketConfig make_wp_config(double eps, const Field& u, double vmax) {
    if (eps <= 0.0) throw std::invalid_argument("wavepacket: eps must be positive");
    if (u.grid.dim != 1) throw std::invalid_argument("wavepacket: 1D only");
    const double srad = scaled_spectral_radius(u, eps);
    const double sq = std::sqrt(eps);
    double extent = std::max({4.0 * vmax, 8.0 * srad, 10.0 * sq, 2.0});
    const double dxi = sq / 4.0;
    const int n_xi = pow2_at_least(2.0 * extent / dxi);
    WavePacketConfig cfg;
    cfg.eps = eps;
    cfg.x_grid = u.grid;
    cfg.xi_grid = make_grid(1, n_xi, 2.0 * extent);
    return cfg;
}

bool wp_resolution_sufficient(const Field& u, const WavePacketConfig& cfg) {
    const double sq = std::sqrt(cfg.eps);
    // The kernel row at xi oscillates at xi/eps on top of the sqrt(eps)
    // window bandwidth; the 1.25 headroom absorbs the field's own spectral
    // tail (rough symbols never become band-limited, but their tails carry
    // negligible L2 mass).
    const double need = 1.25 * (0.5 * cfg.xi_grid.length / cfg.eps + 6.0 / sq);
    return u.grid.max_frequency() >= need && u.grid.spacing() <= sq / 4.0 + 1e-15;
}

PhaseSpaceField wp_transform(const Field& u, const WavePacketConfig& cfg) {
    require_same_grid(u.grid, cfg.x_grid, "wp_transform");
    if (u.grid.dim != 1) throw std::invalid_argument("wp_transform: 1D only");
    const double eps = cfg.eps;
    const Grid& g = u.grid;
    const int nx = g.points;
    const double dx = g.spacing();

    if (!wp_resolution_sufficient(u, cfg))
        throw WavePacketConfigError("wp_transform: x grid too coarse for the xi extent");

    PhaseSpaceField out;
    out.x_grid = g;
    out.xi_grid = cfg.xi_grid;
    out.values.resize(static_cast<std::size_t>(nx) * cfg.xi_grid.points);

    const double amp = cfg.normalization() * std::pow(eps, -0.75) * dx;
    // Gaussian window over signed periodic displacement.
    std::vector<double> zs(nx), window(nx);
    for (int m = 0; m < nx; ++m) {
        zs[m] = ((m <= nx / 2) ? m : m - nx) * dx;
        window[m] = std::exp(-zs[m] * zs[m] / (2.0 * eps));
    }

    const auto uhat = fft(g, u.values);
    const auto xis = cfg.xi_grid.axis();
    std::vector<Complex> kernel(nx), prod(nx);
    for (int j = 0; j < cfg.xi_grid.points; ++j) {
        const double carrier = xis[j] / eps;
        for (int m = 0; m < nx; ++m)
            kernel[m] = std::polar(window[m], zs[m] * carrier);
        const auto khat = fft(g, kernel);
        for (int m = 0; m < nx; ++m) prod[m] = khat[m] * uhat[m];
        const auto row = ifft(g, prod);
        for (int i = 0; i < nx; ++i)
            out.values[static_cast<std::size_t>(j) * nx + i] = amp * row[i];
    }

    // Tail-mass certificate: the outermost xi rows must be negligible.
    double total = 0.0, edge = 0.0;
    for (int j = 0; j < cfg.xi_grid.points; ++j) {
        double rowsum = 0.0;
        for (int i = 0; i < nx; ++i)
            rowsum += std::norm(out.values[static_cast<std::size_t>(j) * nx + i]);
        total += rowsum;
        if (j < 2 || j >= cfg.xi_grid.points - 2) edge += rowsum;
    }
    if (total > 0.0 && edge > cfg.tail_tol * total)
        throw WavePacketConfigError("wp_transform: xi extent too small (tail mass test)");
    return out;
}

double isometry_defect(const Field& u, const WavePacketConfig& cfg) {
    const double nu = l2_norm(u);
    if (nu == 0.0) return 0.0;
    const double nw = wp_transform(u, cfg).l2_norm();
    return std::abs(nw * nw - nu * nu) / (nu * nu);
}

CommutatorResiduals commutator_residuals(const Field& u, const Field& v_real, double s,
                                         const WavePacketConfig& cfg) {
    if (s < 0.0 || s > 1.0) throw std::domain_error("commutator_residuals: s must be in [0,1]");
    require_same_grid(u.grid, v_real.grid, "commutator_residuals");
    const double eps = cfg.eps;
    const int nx = u.grid.points;

    // The conjugated rough fields carry polynomial xi tails by design.
    WavePacketConfig rough = cfg;
    rough.tail_tol = std::max(cfg.tail_tol, 1e-5);

    const PhaseSpaceField wu = wp_transform(u, cfg);
    const auto xis = cfg.xi_grid.axis();
    const double cell = std::sqrt(u.grid.spacing() * cfg.xi_grid.spacing());

    auto diff_norm = [&](const PhaseSpaceField& a, const std::vector<Complex>& b) {
        double acc = 0.0;
        for (std::size_t i = 0; i < a.values.size(); ++i) acc += std::norm(a.values[i] - b[i]);
        return std::sqrt(acc) * cell;
    };

    // (1) |v(x)|^s W u  vs  W(|v|^s u)
    Field vsu(u.grid);
    std::vector<double> vpow(nx);
    for (int i = 0; i < nx; ++i) {
        vpow[i] = std::pow(std::abs(v_real[i].real()), s);
        vsu[i] = vpow[i] * u[i];
    }
    std::vector<Complex> lhs1(wu.values.size());
    for (int j = 0; j < cfg.xi_grid.points; ++j)
        for (int i = 0; i < nx; ++i)
            lhs1[static_cast<std::size_t>(j) * nx + i] =
                vpow[i] * wu.values[static_cast<std::size_t>(j) * nx + i];
    const double res1 = diff_norm(wp_transform(vsu, rough), lhs1);

    // (2) |xi|^s W u  vs  W(|eps D|^s u)
    std::vector<Complex> lhs2(wu.values.size());
    for (int j = 0; j < cfg.xi_grid.points; ++j) {
        const double m = std::pow(std::abs(xis[j]), s);
        for (int i = 0; i < nx; ++i)
            lhs2[static_cast<std::size_t>(j) * nx + i] =
                m * wu.values[static_cast<std::size_t>(j) * nx + i];
    }
    const double res2 = diff_norm(wp_transform(frac_deriv(u, s, eps), rough), lhs2);

    // (3) (i xi - i v(x)) W u  vs  W((eps grad - iv)u)
    const VectorField gu = gradient(u, eps);
    Field cov(u.grid);
    for (int i = 0; i < nx; ++i)
        cov[i] = gu.comps[0][i] - Complex(0.0, 1.0) * v_real[i].real() * u[i];
    std::vector<Complex> lhs3(wu.values.size());
    for (int j = 0; j < cfg.xi_grid.points; ++j)
        for (int i = 0; i < nx; ++i)
            lhs3[static_cast<std::size_t>(j) * nx + i] =
                Complex(0.0, xis[j] - v_real[i].real()) *
                wu.values[static_cast<std::size_t>(j) * nx + i];
    const double res3 = diff_norm(wp_transform(cov, rough), lhs3);

    const double gv = linf_norm(gradient(v_real).comps[0]);
    const double nu = l2_norm(u);
    CommutatorResiduals out;
    out.res1 = res1;
    out.res2 = res2;
    out.res3 = res3;
    out.env1 = std::pow(eps, 0.5 * s) * std::pow(gv, s) * nu;
    out.env2 = std::pow(eps, 0.5 * s) * nu;
    out.env3 = std::sqrt(eps) * (1.0 + gv) * nu;
    return out;
}

bool elementary_inequality_check(const std::vector<double>& x, const std::vector<double>& y,
                                 double s) {
    if (s < 0.0 || s > 1.0) throw std::domain_error("elementary_inequality: s must be in [0,1]");
    if (x.size() != y.size()) throw std::invalid_argument("elementary_inequality: size mismatch");
    double nx = 0.0, ny = 0.0, nd = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        nx += x[i] * x[i];
        ny += y[i] * y[i];
        nd += (x[i] - y[i]) * (x[i] - y[i]);
    }
    const double lhs = std::pow(std::sqrt(nx), s);
    const double rhs = std::pow(std::sqrt(ny), s) + std::pow(std::sqrt(nd), s);
    return lhs <= rhs * (1.0 + 1e-14) + 1e-300;
}

MicrolocalBound microlocal_lower_bound(const Field& u_eps, const VectorField& v,
                                       const Field& a, double k, double eps, int sigma) {
    if (k <= 0.0 || k > 1.0)
        throw std::domain_error("microlocal_lower_bound: k must be in (0,1]");
    require_same_grid(u_eps.grid, v.grid, "microlocal_lower_bound");
    require_same_grid(u_eps.grid, a.grid, "microlocal_lower_bound");
    const Grid& g = u_eps.grid;
    const double w = std::pow(g.spacing(), g.dim);

    auto vsq_at = [&](std::size_t i) {
        double v2 = 0.0;
        for (int d = 0; d < g.dim; ++d) v2 += std::norm(v.comps[d][i]);
        return v2;
    };

    MicrolocalBound out{};
    double lhs = 0.0, tgt = 0.0, vb = 0.0, rb = 0.0;
    const double pb = 1.0 + 1.0 / sigma;
    for (std::size_t i = 0; i < u_eps.size(); ++i) {
        const double v2 = vsq_at(i);
        lhs += std::pow(v2, k) * std::norm(u_eps[i]);
        tgt += std::pow(v2, k) * std::norm(a[i]);
        vb += std::pow(v2, k * pb);
        rb += std::pow(std::abs(std::norm(u_eps[i]) - std::norm(a[i])), sigma + 1);
    }
    out.lhs = std::sqrt(lhs * w);
    out.target = std::sqrt(tgt * w);
    out.frac_norm = sobolev_seminorm(u_eps, k, eps);

    double cov2 = 0.0;
    const VectorField gueps = gradient(u_eps, eps);
    for (int d = 0; d < g.dim; ++d)
        for (std::size_t i = 0; i < u_eps.size(); ++i)
            cov2 += std::norm(gueps.comps[d][i] - Complex(0.0, 1.0) * v.comps[d][i] * u_eps[i]);
    const double cov_norm = std::sqrt(cov2 * w);
    const double nu = l2_norm(u_eps);
    out.covariant = std::pow(cov_norm, k) * std::pow(nu, 1.0 - k);

    double gvmax = 0.0;
    for (int d = 0; d < g.dim; ++d) {
        const VectorField gv = gradient(v.comps[d]);
        for (int e = 0; e < g.dim; ++e) gvmax = std::max(gvmax, linf_norm(gv.comps[e]));
    }
    out.envelope = std::pow(eps, 0.5 * k) * (1.0 + gvmax) * nu;
    out.bridge = std::pow(vb * w, 1.0 / pb) * std::pow(rb * w, 1.0 / (sigma + 1));
    return out;
}

}  // namespace speclab
