#pragma once

#include <cmath>
#include <vector>

#include "circlab/random.hpp"
#include "circlab/structured.hpp"

namespace testing {

inline std::vector<double> gaussian(std::size_t n, std::uint64_t seed) {
    return circlab::TrialStream(circlab::trial_seed(seed, 0)).samples({circlab::DistributionKind::StdNormal}, n);
}

inline circlab::DenseMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    const auto re = gaussian(rows * cols, seed);
    const auto im = gaussian(rows * cols, seed + 7919);
    circlab::DenseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows * cols; ++i) m.data()[i] = {re[i], im[i]};
    return m;
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testing
