#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace speclab {

using Complex = std::complex<double>;

// Uniform periodic grid on the box [-L/2, L/2)^dim with N points per axis.
struct Grid {
    int dim = 1;
    int points = 0;   // per axis, power of two
    double length = 0;

    double spacing() const { return length / points; }
    std::size_t size() const;
    bool operator==(const Grid&) const = default;

    // Node coordinates along one axis.
    std::vector<double> axis() const;
    // Dual frequencies (2*pi/L)*{0,1,...,N/2-1,-N/2,...,-1}, FFT ordering.
    std::vector<double> frequencies() const;
    double max_frequency() const;
};

// Validates dim >= 1, N an even power of two, L > 0.
Grid make_grid(int dim, int points_per_axis, double length);

// Complex scalar field sampled on a grid.
struct Field {
    Grid grid;
    std::vector<Complex> values;

    Field() = default;
    explicit Field(const Grid& g) : grid(g), values(g.size(), Complex(0.0)) {}
    Field(const Grid& g, std::vector<Complex> v);

    std::size_t size() const { return values.size(); }
    Complex& operator[](std::size_t i) { return values[i]; }
    const Complex& operator[](std::size_t i) const { return values[i]; }
};

// One complex-valued component per spatial dimension (real for velocities).
struct VectorField {
    Grid grid;
    std::vector<Field> comps;

    VectorField() = default;
    explicit VectorField(const Grid& g) : grid(g), comps(g.dim, Field(g)) {}
};

// Sample f(x) at the grid nodes; coords has grid.dim entries.
template <class F>
Field sample(const Grid& g, F&& f) {
    Field out(g);
    const auto xs = g.axis();
    const std::size_t n = g.size();
    std::vector<double> coord(g.dim);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t rem = i;
        for (int d = g.dim - 1; d >= 0; --d) {
            coord[d] = xs[rem % g.points];
            rem /= g.points;
        }
        out.values[i] = f(coord);
    }
    return out;
}

bool all_finite(const Field& f);
void require_finite(const Field& f, const char* what);
void require_same_grid(const Grid& a, const Grid& b, const char* what);

}  // namespace speclab
