#include <doctest.h>

#include "speclab/limit.hpp"
#include "speclab/spectral.hpp"

#include <cmath>

using namespace speclab;
using doctest::Approx;

namespace {

Field gauss(const Grid& g, double amp = 1.0) {
    return sample(g, [amp](const std::vector<double>& x) {
        return Complex(amp * std::exp(-x[0] * x[0]), 0.0);
    });
}

const Grid g512 = make_grid(1, 512, 12.0);

}  // namespace

TEST_CASE("limit system conserves mass and energy over the smooth horizon") {
    LimitConfig cfg;
    cfg.sigma = 3;
    cfg.t_max = 0.2;
    const auto traj = run_limit(cfg, gauss(g512), {0.0, 0.1, 0.2});
    REQUIRE(traj.states.size() == 3);
    const double m0 = integrate_real(abs2(traj.states[0].a));
    const double e0 = limit_energy(traj.states[0], cfg.sigma);
    for (const auto& s : traj.states) {
        CHECK(integrate_real(abs2(s.a)) == Approx(m0).epsilon(1e-9));
        CHECK(limit_energy(s, cfg.sigma) == Approx(e0).epsilon(1e-8));
    }
}

TEST_CASE("grad phi equals v and u equals a^sigma along the flow") {
    LimitConfig cfg;
    cfg.sigma = 3;
    cfg.t_max = 0.2;
    const auto traj = run_limit(cfg, gauss(g512), {0.0, 0.05, 0.1, 0.15, 0.2});
    CHECK(muk_consistency(traj, cfg.sigma) < 1e-6);

    double vscale = 0.0;
    for (const auto& s : traj.states) vscale = std::max(vscale, l2_norm(s.v.comps[0]));
    for (const auto& s : traj.states) {
        const auto gp = gradient(s.phi);
        Field diff(s.phi.grid);
        for (std::size_t i = 0; i < diff.size(); ++i)
            diff[i] = gp.comps[0][i] - s.v.comps[0][i];
        CHECK(l2_norm(diff) < 1e-8 * vscale);
    }
}

TEST_CASE("RK4 time stepping converges at fourth order") {
    LimitConfig cfg;
    cfg.sigma = 3;
    cfg.t_max = 0.2;
    auto at_dt = [&](double dt) {
        LimitConfig c = cfg;
        c.dt = dt;
        return run_limit(c, gauss(g512), {0.2}).states.at(0);
    };
    const auto ref = at_dt(0.2 / 2048);
    auto err = [&](double dt) {
        const auto s = at_dt(dt);
        Field diff(s.u.grid);
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = s.u[i] - ref.u[i];
        return l2_norm(diff);
    };
    // both steps sit under the CFL bound and the t_max/64 fallback cap
    const double e1 = err(0.2 / 64), e2 = err(0.2 / 128);
    const double order = std::log2(e1 / e2);
    CHECK(order > 3.5);
    CHECK(order < 4.5);
}

TEST_CASE("the rhs respects the transport structure at t = 0") {
    // With v = 0 initially: dv/dt = -grad(u^2), du/dt = 0, da/dt = 0,
    // dphi/dt = -u^2.
    const Field a0 = gauss(g512);
    LimitState st;
    st.v = VectorField(g512);
    st.a = a0;
    st.u = amplitude_power(a0, 3);
    st.phi = Field(g512);
    const auto d = rhs(st, 3);
    CHECK(l2_norm(d.u) < 1e-12);
    CHECK(l2_norm(d.a) < 1e-12);
    const auto gr = gradient(dealias(abs2(st.u)));
    double worst = 0.0, worst_phi = 0.0;
    const Field u2 = dealias(abs2(st.u));
    for (std::size_t i = 0; i < a0.size(); ++i) {
        worst = std::max(worst, std::abs(d.v.comps[0][i] + gr.comps[0][i]));
        worst_phi = std::max(worst_phi, std::abs(d.phi[i] + u2[i]));
    }
    CHECK(worst < 1e-10);
    CHECK(worst_phi < 1e-10);
}

TEST_CASE("smoothness monitor trips before the gradient catastrophe") {
    LimitConfig cfg;
    cfg.sigma = 3;
    cfg.t_max = 2.0;  // far beyond the smooth horizon for this datum
    const Field steep = gauss(g512, 2.0);
    std::vector<double> times;
    for (int i = 0; i <= 80; ++i) times.push_back(2.0 * i / 80.0);
    const auto traj = run_limit(cfg, steep, times);
    CHECK(traj.t_valid < 2.0);
    CHECK(traj.states.back().t <= traj.t_valid + 1e-12);
    // the monitor never exceeded its bound on retained states
    for (const auto& s : traj.states) CHECK(smoothness_monitor(s) <= traj.monitor_bound);
}

TEST_CASE("horizon error when no sample is reachable") {
    LimitConfig cfg;
    cfg.sigma = 3;
    cfg.t_max = 2.0;
    const Field steep = gauss(g512, 3.0);
    CHECK_THROWS_AS(run_limit(cfg, steep, {1.9, 2.0}), HorizonError);
}

TEST_CASE("amplitude power is the exact pointwise power") {
    const Field a = gauss(g512, 1.3);
    const Field u = amplitude_power(a, 3);
    for (std::size_t i = 0; i < a.size(); i += 37)
        CHECK(u[i].real() == Approx(std::pow(a[i].real(), 3)).epsilon(1e-14));
}
