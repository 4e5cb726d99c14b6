#include "circlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace circlab {

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw std::invalid_argument("quantile of an empty sample");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * std::clamp(p, 0.0, 1.0);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

SummaryStats summarize(std::span<const double> samples, std::size_t max_bins) {
    if (samples.empty()) throw std::invalid_argument("summarize: empty sample");
    std::vector<double> s(samples.begin(), samples.end());
    std::sort(s.begin(), s.end());

    SummaryStats out;
    out.count = s.size();
    out.min = s.front();
    out.max = s.back();
    out.mean = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
    out.q01 = quantile_sorted(s, 0.01);
    out.q25 = quantile_sorted(s, 0.25);
    out.q50 = quantile_sorted(s, 0.50);
    out.q75 = quantile_sorted(s, 0.75);
    out.q99 = quantile_sorted(s, 0.99);

    const double range = out.max - out.min;
    const double width = 2.0 * (out.q75 - out.q25) * std::cbrt(1.0 / static_cast<double>(s.size()));
    std::size_t nbins = 1;
    if (range > 0.0 && width > 0.0)
        nbins = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(range / width)), 1, std::max<std::size_t>(max_bins, 1));
    out.bins.resize(nbins);
    const double step = range / static_cast<double>(nbins);
    for (std::size_t b = 0; b < nbins; ++b) {
        out.bins[b].lo = out.min + static_cast<double>(b) * step;
        out.bins[b].hi = b + 1 == nbins ? out.max : out.min + static_cast<double>(b + 1) * step;
    }
    for (double x : s) {
        std::size_t b = step > 0.0 ? static_cast<std::size_t>((x - out.min) / step) : 0;
        out.bins[std::min(b, nbins - 1)].count++;
    }
    return out;
}

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z) {
    if (trials == 0) throw std::invalid_argument("wilson_interval: no trials");
    if (successes > trials) throw std::invalid_argument("wilson_interval: successes exceed trials");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {p, std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace circlab
