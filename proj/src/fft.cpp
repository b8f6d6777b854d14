#include "speclab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace speclab {
namespace {

// Plans are created once per (dim, N, sign) on scratch buffers with
// FFTW_UNALIGNED, then re-executed on caller arrays via the new-array
// interface. FFTW_ESTIMATE keeps planning deterministic.
struct PlanKey {
    int dim, points, sign;
    auto operator<=>(const PlanKey&) const = default;
};

fftw_plan get_plan(const Grid& g, int sign) {
    static std::map<PlanKey, fftw_plan> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    const PlanKey key{g.dim, g.points, sign};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const std::size_t n = g.size();
    fftw_complex* scratch_in = fftw_alloc_complex(n);
    fftw_complex* scratch_out = fftw_alloc_complex(n);
    std::vector<int> dims(g.dim, g.points);
    fftw_plan plan = fftw_plan_dft(g.dim, dims.data(), scratch_in, scratch_out, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch_in);
    fftw_free(scratch_out);
    if (!plan) throw std::runtime_error("fft: planning failed");
    cache.emplace(key, plan);
    return plan;
}

std::vector<Complex> execute(const Grid& g, const std::vector<Complex>& in, int sign) {
    if (in.size() != g.size()) throw std::invalid_argument("fft: size mismatch");
    std::vector<Complex> out(in.size());
    fftw_plan plan = get_plan(g, sign);
    auto* src = reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data()));
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(plan, src, dst);
    return out;
}

}  // namespace

std::vector<Complex> fft(const Grid& g, const std::vector<Complex>& in) {
    return execute(g, in, FFTW_FORWARD);
}

std::vector<Complex> ifft(const Grid& g, const std::vector<Complex>& in) {
    auto out = execute(g, in, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(g.size());
    for (auto& z : out) z *= scale;
    return out;
}

}  // namespace speclab
