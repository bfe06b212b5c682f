#pragma once

#include <span>

#include "tfmod/grid.hpp"

namespace tfmod::detail {

enum class FftDirection { forward, inverse };

/// Unitary multi-dimensional DFT of `data` (row-major over `n`) in place.
void unitary_dft_inplace(std::span<cplx> data, std::span<const std::size_t> n, FftDirection dir);

}  // namespace tfmod::detail
