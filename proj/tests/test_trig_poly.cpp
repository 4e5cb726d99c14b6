#include <doctest.h>

#include <numbers>

#include "circlab/spectral.hpp"
#include "circlab/trig_poly.hpp"
#include "helpers.hpp"

using namespace circlab;

TEST_CASE("grid evaluation matches direct polynomial evaluation") {
    const auto c = testing::gaussian(10, 2);
    const TrigPolynomial p(c);
    const std::size_t m = 37;
    const auto vals = evaluate_on_grid(p, m);
    for (std::size_t k = 0; k < m; ++k) {
        cplx acc{};
        for (std::size_t j = 0; j < c.size(); ++j)
            acc += c[j] * std::polar(1.0, 2.0 * std::numbers::pi * double(j * k) / double(m));
        CHECK(std::abs(vals[k] - acc) < 1e-12);
    }
    CHECK_THROWS_AS(evaluate_on_grid(p, 5), std::invalid_argument);
}

TEST_CASE("max modulus bracket contains a fine-grid maximum") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const TrigPolynomial p(testing::gaussian(64, seed));
        const auto b = max_modulus(p, 8);
        const auto fine = evaluate_on_grid(p, 64 * 2048);
        double best = 0.0;
        for (const cplx& z : fine) best = std::max(best, std::abs(z));
        CHECK(b.lower <= best * (1 + 1e-12));
        CHECK(best <= b.upper);
        CHECK(b.upper == doctest::Approx(b.lower / (1 - std::numbers::pi / 8)));
    }
}

TEST_CASE("bracket lower bound dominates sigma_max of the circulant") {
    const auto c = testing::gaussian(50, 12);
    const auto b = max_modulus(TrigPolynomial(c), 16);
    CHECK(b.lower >= circulant_extremes(circulant_eigenvalues(CirculantSpec(c))).sigma_max * (1 - 1e-12));
}

TEST_CASE("constant polynomial is attained exactly") {
    const auto b = max_modulus(TrigPolynomial({3.0}));
    CHECK(b.lower == 3.0);
}

TEST_CASE("trig polynomial argument checks") {
    CHECK_THROWS_AS(max_modulus(TrigPolynomial({1, 2}), 4), std::invalid_argument);
    CHECK_THROWS(TrigPolynomial({1, 2, 3, 4}, true));
    CHECK_NOTHROW(TrigPolynomial({1, 2, 3, 2}, true));
    CHECK_THROWS_AS(salem_zygmund_ratio(MaxModulusBracket{}, 1), std::invalid_argument);
    const auto r = salem_zygmund_ratio(MaxModulusBracket{2.0, 4.0, 8, 0.0}, 16);
    CHECK(r.lower == doctest::Approx(2.0 / std::sqrt(16 * std::log(16.0))));
}
