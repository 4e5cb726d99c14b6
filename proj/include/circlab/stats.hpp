#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace circlab {

struct HistogramBin {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
};

struct SummaryStats {
    std::size_t count = 0;
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double q01 = 0.0, q25 = 0.0, q50 = 0.0, q75 = 0.0, q99 = 0.0;
    std::vector<HistogramBin> bins;
};

// Type-7 (linear interpolation) quantile of already sorted data, p in [0, 1].
double quantile_sorted(std::span<const double> sorted, double p);

// Freedman-Diaconis bin width 2 IQR n^{-1/3}; a single bin for degenerate data.
// Throws std::invalid_argument on empty input.
SummaryStats summarize(std::span<const double> samples, std::size_t max_bins = 200);

struct WilsonInterval {
    double estimate = 0.0;
    double lo = 0.0;
    double hi = 0.0;

    double half_width() const { return (hi - lo) / 2.0; }
};

// Score interval for a binomial proportion; z = 1.96 gives 95%.
WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

}  // namespace circlab
