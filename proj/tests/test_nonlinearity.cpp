#include <doctest.h>

#include "speclab/nonlinearity.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

using namespace speclab;
using doctest::Approx;

TEST_CASE("pure power: closed forms") {
    const auto fns = make_nonlinearity(3, 0.0);
    CHECK(fns.f(2.0) == Approx(8.0));
    CHECK(fns.fprime(2.0) == Approx(12.0));
    CHECK(fns.F(2.0) == Approx(4.0));        // y^4/4
    CHECK(fns.G(2.0) == Approx(12.0));       // y f - F = 16 - 4
    CHECK(fns.Gprime(2.0) == Approx(24.0));  // y f'
}

TEST_CASE("saturated primitive against frozen quadrature oracle") {
    // Reference values computed independently with 30-digit quadrature of
    // int_0^y t^3/(1+t^3) dt (sigma = 3, delta = 1).
    const auto fns = make_nonlinearity(3, 1.0);
    CHECK(fns.F(0.5) == Approx(0.0145980578496120763).epsilon(1e-10));
    CHECK(fns.F(1.0) == Approx(0.1643511517352789467).epsilon(1e-10));
    CHECK(fns.F(2.5) == Approx(1.3688307129948233466).epsilon(1e-10));
    CHECK(fns.G(1.0) == Approx(0.3356488482647210533).epsilon(1e-10));
    // sigma = 2, delta = 0.7 cross-check
    const auto fns2 = make_nonlinearity(2, 0.7);
    CHECK(fns2.F(1.3) == Approx(0.5005464358098309032).epsilon(1e-10));
}

TEST_CASE("saturated f is bounded by the saturation scale") {
    const auto fns = make_nonlinearity(3, 1.0);
    // f(y) = y^3/(1+y^3) <= 1 for all y (equals 1 in fp at large y) and increasing
    CHECK(fns.f(1e6) <= 1.0);
    CHECK(fns.f(10.0) < 1.0);
    CHECK(fns.f(10.0) > 0.999);
    double prev = 0.0;
    for (double y = 0.0; y < 5.0; y += 0.1) {
        CHECK(fns.f(y) >= prev);
        prev = fns.f(y);
    }
}

TEST_CASE("F' = f by finite differences (saturated branch)") {
    const auto fns = make_nonlinearity(2, 1.0);
    for (double y : {0.2, 0.9, 2.1, 4.4}) {
        const double h = 1e-6;
        const double fd = (fns.F(y + h) - fns.F(y - h)) / (2.0 * h);
        CHECK(fd == Approx(fns.f(y)).epsilon(1e-7));
    }
}

TEST_CASE("remainder ratio is exactly sigma for the pure power") {
    const auto fns = make_nonlinearity(3, 0.0);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(0.0, 3.0);
    for (int i = 0; i < 1000; ++i) {
        const double rho = unif(rng), rho1 = unif(rng);
        const auto cmp = remainder_comparison(fns, rho1, rho);
        CHECK(cmp.ratio == Approx(3.0).epsilon(1e-10));
    }
    // coincident arguments: 0/0 reported as sigma
    CHECK(remainder_comparison(fns, 1.0, 1.0).ratio == Approx(3.0));
}

TEST_CASE("saturated remainder ratio stays below sigma + 1") {
    const auto fns = make_nonlinearity(3, 1.0);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> lg(-3.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const double rho = std::pow(10.0, lg(rng)), rho1 = std::pow(10.0, lg(rng));
        const auto cmp = remainder_comparison(fns, rho1, rho);
        CHECK(cmp.ratio <= 4.0 + 1e-9);
    }
}

TEST_CASE("h-identity residual vanishes for the saturating profile") {
    for (int sigma : {1, 2, 3}) {
        for (double y : {0.3, 0.8, 1.7, 3.2}) {
            CHECK(std::abs(h_identity_check(sigma, y)) < 1e-4);  // fd-limited
            CHECK(std::abs(y * h_second_fd(sigma, y)) <=
                  (sigma + 1) * h_prime(sigma, y) + 1e-6);
        }
    }
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(make_nonlinearity(0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_nonlinearity(2, -1.0), std::invalid_argument);
    const auto fns = make_nonlinearity(2, 0.0);
    CHECK_THROWS_AS(fns.F(-1.0), std::domain_error);
}
