#include <doctest.h>

#include <numeric>
#include <stdexcept>

#include "circlab/random.hpp"
#include "circlab/stats.hpp"

using namespace circlab;

TEST_CASE("draws depend only on seed, trial and draw index") {
    const TrialStream a(trial_seed(42, 3)), b(trial_seed(42, 3)), c(trial_seed(42, 4));
    CHECK(a.uniform(17) == b.uniform(17));
    CHECK(a.uniform(17) != c.uniform(17));
    CHECK(a.samples({}, 5, 10)[2] == a.sample({}, 12));
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const double u = a.uniform(i);
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("distribution supports") {
    const TrialStream s(trial_seed(1, 0));
    for (double x : s.samples({DistributionKind::Bernoulli01}, 200)) CHECK((x == 0.0 || x == 1.0));
    for (double x : s.samples({DistributionKind::Rademacher}, 200)) CHECK((x == -1.0 || x == 1.0));
    const Distribution shifted{DistributionKind::Rademacher, 2.0, 1.0};
    for (double x : s.samples(shifted, 50)) CHECK((x == -1.0 || x == 3.0));
    CHECK(Distribution{DistributionKind::Bernoulli01}.discrete());
    CHECK_FALSE(Distribution{DistributionKind::StdNormal}.discrete());
}

TEST_CASE("sample moments") {
    const TrialStream s(trial_seed(2, 0));
    const auto u = s.samples({DistributionKind::Uniform01}, 10000);
    CHECK(std::abs(std::accumulate(u.begin(), u.end(), 0.0) / 1e4 - 0.5) < 0.01);
    const auto g = s.samples({DistributionKind::StdNormal}, 10000, 50000);
    double m = 0.0, v = 0.0;
    for (double x : g) m += x;
    m /= 1e4;
    for (double x : g) v += (x - m) * (x - m);
    v /= 1e4;
    CHECK(std::abs(m) < 0.05);
    CHECK(std::abs(v - 1.0) < 0.05);
    const auto r = s.samples({DistributionKind::Rademacher}, 10000, 90000);
    CHECK(std::abs(std::accumulate(r.begin(), r.end(), 0.0) / 1e4) < 0.05);
}

TEST_CASE("distribution names round trip") {
    for (auto k : {DistributionKind::Bernoulli01, DistributionKind::Rademacher, DistributionKind::Uniform01,
                   DistributionKind::StdNormal})
        CHECK(parse_distribution(distribution_name(k)) == k);
    CHECK(parse_distribution("Gaussian") == DistributionKind::StdNormal);
    CHECK_FALSE(parse_distribution("cauchy"));
}

TEST_CASE("summary of 1..4 uses type-7 quantiles") {
    const auto s = summarize(std::vector<double>{4, 1, 3, 2});
    CHECK(s.min == 1.0);
    CHECK(s.mean == 2.5);
    CHECK(s.q25 == doctest::Approx(1.75));
    CHECK(s.q50 == doctest::Approx(2.5));
    CHECK(s.q99 == doctest::Approx(3.97));
    std::size_t total = 0;
    for (const auto& b : s.bins) total += b.count;
    CHECK(total == 4);
}

TEST_CASE("constant samples have equal quantiles") {
    const auto s = summarize(std::vector<double>(9, 1.5));
    CHECK(s.q01 == 1.5);
    CHECK(s.q99 == 1.5);
    CHECK(s.bins.size() == 1);
    CHECK(s.bins[0].count == 9);
    CHECK_THROWS_AS(summarize(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("histogram covers the range") {
    const auto u = TrialStream(trial_seed(3, 0)).samples({DistributionKind::StdNormal}, 5000);
    const auto s = summarize(u);
    CHECK(s.bins.front().lo == s.min);
    CHECK(s.bins.back().hi == s.max);
    std::size_t total = 0;
    for (const auto& b : s.bins) total += b.count;
    CHECK(total == 5000);
    CHECK(s.q01 <= s.q25);
    CHECK(s.q25 <= s.q50);
    CHECK(s.q50 <= s.q75);
    CHECK(s.q75 <= s.q99);
}

TEST_CASE("wilson interval") {
    const auto w = wilson_interval(5, 10);
    CHECK(w.lo == doctest::Approx(0.2366).epsilon(1e-3));
    CHECK(w.hi == doctest::Approx(0.7634).epsilon(1e-3));
    CHECK(wilson_interval(0, 20).lo == 0.0);
    CHECK(wilson_interval(20, 20).hi == 1.0);
    CHECK_THROWS_AS(wilson_interval(1, 0), std::invalid_argument);
}
