#include "circlab/random.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cctype>

namespace circlab {

double Distribution::transform(double u) const {
    double x = 0.0;
    switch (kind) {
        case DistributionKind::Bernoulli01: x = u < 0.5 ? 0.0 : 1.0; break;
        case DistributionKind::Rademacher: x = u < 0.5 ? -1.0 : 1.0; break;
        case DistributionKind::Uniform01: x = u; break;
        case DistributionKind::StdNormal: {
            static const boost::math::normal_distribution<double> standard;
            x = boost::math::quantile(standard, u);
            break;
        }
    }
    return scale * x + shift;
}

bool Distribution::discrete() const {
    return kind == DistributionKind::Bernoulli01 || kind == DistributionKind::Rademacher;
}

std::optional<DistributionKind> parse_distribution(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "bernoulli" || s == "bernoulli01") return DistributionKind::Bernoulli01;
    if (s == "rademacher") return DistributionKind::Rademacher;
    if (s == "uniform" || s == "uniform01") return DistributionKind::Uniform01;
    if (s == "normal" || s == "gaussian" || s == "stdnormal") return DistributionKind::StdNormal;
    return std::nullopt;
}

std::string distribution_name(DistributionKind kind) {
    switch (kind) {
        case DistributionKind::Bernoulli01: return "bernoulli";
        case DistributionKind::Rademacher: return "rademacher";
        case DistributionKind::Uniform01: return "uniform";
        case DistributionKind::StdNormal: return "normal";
    }
    return "unknown";
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    return mix64(mix64(master_seed) ^ (trial_index * 0xd1342543de82ef95ULL + 1));
}

double TrialStream::uniform(std::uint64_t draw_index) const {
    const std::uint64_t bits = mix64(seed_ ^ mix64(draw_index + 0x632be59bd9b4e019ULL));
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double TrialStream::sample(const Distribution& d, std::uint64_t draw_index) const {
    return d.transform(uniform(draw_index));
}

std::vector<double> TrialStream::samples(const Distribution& d, std::size_t count, std::uint64_t first) const {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = sample(d, first + i);
    return out;
}

}  // namespace circlab
