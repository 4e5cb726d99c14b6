#pragma once

// Discrete Fourier transform with the positive-exponent convention used for
// circulant spectra: out[k] = sum_j in[j] * exp(+2 pi i jk / n).

#include <cstddef>
#include <span>
#include <vector>

#include "circlab/structured.hpp"

namespace circlab {

struct FftOptions {
    // Non-power-of-two lengths up to this size use the direct O(n^2) sum;
    // longer ones go through Bluestein's chirp transform.
    std::size_t direct_limit = 8192;
};

bool is_power_of_two(std::size_t n);

std::vector<cplx> dft(std::span<const cplx> in, const FftOptions& opts = {});
std::vector<cplx> dft(std::span<const double> in, const FftOptions& opts = {});

// Direct O(n^2) evaluation with exponents reduced mod n.
std::vector<cplx> dft_direct(std::span<const cplx> in);

}  // namespace circlab
