#pragma once

#include "speclab/grid.hpp"

namespace speclab {

// Unnormalized forward DFT of the grid samples.
std::vector<Complex> fft(const Grid& g, const std::vector<Complex>& in);
// Inverse DFT, normalized by 1/size so that ifft(fft(x)) == x.
std::vector<Complex> ifft(const Grid& g, const std::vector<Complex>& in);

}  // namespace speclab
