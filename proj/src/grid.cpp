#include "speclab/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace speclab {

std::size_t Grid::size() const {
    std::size_t n = 1;
    for (int d = 0; d < dim; ++d) n *= static_cast<std::size_t>(points);
    return n;
}

std::vector<double> Grid::axis() const {
    std::vector<double> xs(points);
    const double dx = spacing();
    for (int i = 0; i < points; ++i) xs[i] = -0.5 * length + i * dx;
    return xs;
}

std::vector<double> Grid::frequencies() const {
    std::vector<double> xi(points);
    const double base = 2.0 * std::numbers::pi / length;
    for (int m = 0; m < points; ++m) {
        const int k = (m < points / 2) ? m : m - points;
        xi[m] = base * k;
    }
    return xi;
}

double Grid::max_frequency() const {
    return std::numbers::pi * points / length;
}

Grid make_grid(int dim, int points_per_axis, double length) {
    if (dim < 1) throw std::invalid_argument("grid: dim must be >= 1");
    if (length <= 0.0) throw std::invalid_argument("grid: box length must be positive");
    const int n = points_per_axis;
    if (n < 2 || (n & (n - 1)) != 0)
        throw std::invalid_argument("grid: points per axis must be a power of two");
    return Grid{dim, n, length};
}

Field::Field(const Grid& g, std::vector<Complex> v) : grid(g), values(std::move(v)) {
    if (values.size() != g.size())
        throw std::invalid_argument("field: sample count does not match grid");
}

bool all_finite(const Field& f) {
    for (const auto& z : f.values)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

void require_finite(const Field& f, const char* what) {
    if (!all_finite(f)) throw std::runtime_error(std::string(what) + ": non-finite samples");
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
    if (!(a == b)) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

}  // namespace speclab
