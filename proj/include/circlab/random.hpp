#pragma once

// Coefficient laws and a counter-based generator: every draw is a pure function
// of (master seed, trial index, draw index), so trials can run in any order.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace circlab {

enum class DistributionKind { Bernoulli01, Rademacher, Uniform01, StdNormal };

struct Distribution {
    DistributionKind kind = DistributionKind::StdNormal;
    double scale = 1.0;
    double shift = 0.0;

    // Maps a uniform u in (0, 1) to scale * X + shift.
    double transform(double u) const;
    bool discrete() const;
};

// Accepts bernoulli, rademacher, uniform, normal (and a few aliases).
std::optional<DistributionKind> parse_distribution(std::string_view name);
std::string distribution_name(DistributionKind kind);

// 64-bit finalizer of splitmix64.
std::uint64_t mix64(std::uint64_t x);

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index);

class TrialStream {
public:
    explicit TrialStream(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }
    // Uniform in the open interval (0, 1), 53-bit resolution.
    double uniform(std::uint64_t draw_index) const;
    double sample(const Distribution& d, std::uint64_t draw_index) const;
    // Draws first..first+count-1.
    std::vector<double> samples(const Distribution& d, std::size_t count, std::uint64_t first = 0) const;

private:
    std::uint64_t seed_;
};

}  // namespace circlab
