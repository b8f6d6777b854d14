#include "speclab/io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace speclab {
namespace {

constexpr char kMagic[4] = {'S', 'L', 'F', '1'};

template <class T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}

}  // namespace

void write_field_binary(const Field& f, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_field_binary: cannot open " + path);
    os.write(kMagic, 4);
    put<std::int32_t>(os, f.grid.dim);
    put<std::int32_t>(os, f.grid.points);
    put<double>(os, f.grid.length);
    for (const auto& z : f.values) {
        put<float>(os, static_cast<float>(z.real()));
        put<float>(os, static_cast<float>(z.imag()));
    }
    if (!os) throw std::runtime_error("write_field_binary: write failed for " + path);
}

Field read_field_binary(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_field_binary: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("read_field_binary: bad magic in " + path);
    const auto dim = get<std::int32_t>(is);
    const auto points = get<std::int32_t>(is);
    const auto length = get<double>(is);
    Field f(make_grid(dim, points, length));
    for (auto& z : f.values) {
        const float re = get<float>(is);
        const float im = get<float>(is);
        z = Complex(re, im);
    }
    if (!is) throw std::runtime_error("read_field_binary: truncated file " + path);
    return f;
}

void write_field_csv(const Field& f, const std::string& path) {
    if (f.grid.dim != 1)
        throw std::invalid_argument("write_field_csv: only 1D fields");
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_field_csv: cannot open " + path);
    os.precision(17);
    os << "x,re,im\n";
    const auto xs = f.grid.axis();
    for (std::size_t i = 0; i < f.size(); ++i)
        os << xs[i] << "," << f[i].real() << "," << f[i].imag() << "\n";
}

}  // namespace speclab
