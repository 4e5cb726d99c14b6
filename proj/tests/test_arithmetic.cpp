#include <doctest.h>

#include <numbers>
#include <numeric>
#include <sstream>

#include "circlab/arithmetic.hpp"
#include "helpers.hpp"

using namespace circlab;

namespace {

// Minimum over the 3^n integer points around v.
double brute_force_dist(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 3;
    double best = INFINITY;
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double z = std::floor(v[i]) + static_cast<double>(c % 3) - 1.0;
            c /= 3;
            s += (v[i] - z) * (v[i] - z);
        }
        best = std::min(best, s);
    }
    return std::sqrt(best);
}

}  // namespace

TEST_CASE("lattice distance examples") {
    CHECK(dist_to_lattice(std::vector<double>{0.4, 1.6}) == doctest::Approx(std::sqrt(0.32)));
    CHECK(dist_to_lattice(std::vector<double>{3.0, -2.0}) == 0.0);
    CHECK(dist_to_lattice(std::vector<double>{0.5, 0.5, 0.5}) == doctest::Approx(std::sqrt(3.0) / 2));
}

TEST_CASE("lattice distance equals brute force over the neighbouring cube") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto v = testing::gaussian(1 + seed % 8, seed);
        for (double& x : v) x *= 3.0;
        CHECK(dist_to_lattice(v) == doctest::Approx(brute_force_dist(v)).epsilon(1e-14));
    }
}

TEST_CASE("the defining inequality is strict") {
    CHECK_FALSE(lcd_inequality_holds(std::vector<double>{1.0}, 1.0));
    CHECK(lcd_inequality_holds(std::vector<double>(16, 1.0), 2.0));
}

TEST_CASE("lcd of the all-ones vector") {
    const std::vector<double> v(16, 1.0);
    const auto e = lcd_vector(v, 2.0);
    CHECK(e.simple_bound == 0.5);
    CHECK(e.lower_bound >= 0.5);
    REQUIRE(e.upper_witness);
    CHECK(*e.upper_witness <= 1.0);
    CHECK(*e.upper_witness >= e.lower_bound);
    std::vector<double> x(v);
    for (double& t : x) t *= *e.upper_witness;
    CHECK(lcd_inequality_holds(x, 2.0));
}

TEST_CASE("lcd boundary case does not produce a witness at equality") {
    const auto e = lcd_vector(std::vector<double>{0.5}, 1.0);
    REQUIRE(e.upper_witness);
    CHECK(*e.upper_witness > 2.0);
    CHECK(e.lower_bound >= 1.0);
}

TEST_CASE("lcd lower bound never undercuts the simple bound") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto v = testing::gaussian(6, seed);
        const double vmax = std::abs(*std::max_element(v.begin(), v.end(), [](double a, double b) {
            return std::abs(a) < std::abs(b);
        }));
        const auto e = lcd_vector(v, 0.5, {.theta_max = 5.0, .step = 1e-3});
        CHECK(e.lower_bound >= 1.0 / (2.0 * vmax));
        if (e.upper_witness) CHECK(*e.upper_witness >= e.lower_bound);
    }
    CHECK_THROWS_AS(lcd_vector(std::vector<double>{1.0}, 1.0, {.theta_max = 0.1, .step = std::nullopt}), std::invalid_argument);
    CHECK_THROWS_AS(lcd_vector(std::vector<double>{0.0}, 1.0), std::invalid_argument);
}

TEST_CASE("lcd of V_k") {
    const auto v = vk_matrix(16, 1).matrix;
    CHECK(max_column_norm(v) == doctest::Approx(1.0));
    const auto e = lcd_matrix2(v, 2.0, {.r_max = 3.0});
    CHECK(e.lower_bound >= 0.5);
}

TEST_CASE("degenerate V reduces to the vector case") {
    DenseMatrix v(2, 3);
    v(0, 0) = 1.0;
    const auto m = lcd_matrix2(v, 1.0, {.r_max = 3.0, .r_step = 1e-3, .phi_step = 1e-3});
    const auto s = lcd_vector(std::vector<double>{1.0}, 1.0, {.theta_max = 3.0, .step = 1e-3});
    REQUIRE(m.upper_witness);
    REQUIRE(s.upper_witness);
    CHECK(*m.upper_witness == doctest::Approx(*s.upper_witness).epsilon(2e-3));
}

TEST_CASE("V_12,1 certified bound is consistent with a fine-grid scan") {
    const auto v = vk_matrix(12, 1).matrix;
    const double L = 2.0;
    const auto e = lcd_matrix2(v, L, {.r_max = 4.0});
    REQUIRE(e.upper_witness);
    // Independent scan on a finer polar grid for the smallest satisfying radius.
    double first = INFINITY;
    std::vector<double> x(12);
    for (double r = 0.0; r <= *e.upper_witness + 0.01 && first == INFINITY; r += 2e-3)
        for (int a = 0; a < 3600; ++a) {
            const double phi = 2.0 * std::numbers::pi * a / 3600.0;
            for (std::size_t j = 0; j < 12; ++j)
                x[j] = v(0, j).real() * r * std::cos(phi) + v(1, j).real() * r * std::sin(phi);
            if (lcd_inequality_holds(x, L)) {
                first = r;
                break;
            }
        }
    CHECK(first >= e.lower_bound);
    CHECK(*e.upper_witness >= e.lower_bound);
}

TEST_CASE("det of V_k V_k^T is n^2/4") {
    CHECK(vk_matrix(4, 1).det == doctest::Approx(4.0));
    CHECK(vk_matrix(8, 3).det == doctest::Approx(16.0));
    CHECK(vk_matrix(6, 2).det == doctest::Approx(9.0));
    CHECK(vk_matrix(6, 2).matches);
    CHECK_THROWS_AS(vk_matrix(8, 0), std::invalid_argument);
    CHECK_THROWS_AS(vk_matrix(8, 4), std::invalid_argument);
}

TEST_CASE("cosine vectors") {
    const auto v = cosine_vector({.n = 4, .k = 1, .theta = 0.0, .r = 1.0});
    REQUIRE(v.size() == 4);
    const double expect[] = {1, 0, -1, 0};
    for (int j = 0; j < 4; ++j) CHECK(v[j] == doctest::Approx(expect[j]).scale(1.0));
    CHECK(cosine_vector({.n = 8, .k = 0, .half_range = true}) == std::vector<double>(3, 1.0));
    const CosineVectorSpec spec{.n = 30, .k = 7, .theta = 0.3, .r = 2.5};
    const auto w = cosine_vector(spec);
    for (std::size_t j = 0; j < 30; ++j)
        CHECK(std::abs(w[j] - 2.5 * std::cos(2 * std::numbers::pi * double(j) * 7 / 30 - 0.3)) < 1e-13);
}

TEST_CASE("full cosine lemma verifier") {
    const auto ok = verify_cosine_distance_full(1000, 2.0, 0.0);
    CHECK(ok.applicable);
    CHECK(ok.holds);
    CHECK(ok.margin > 0.0);
    CHECK_FALSE(verify_cosine_distance_full(50, 2.0, 0.0).applicable);
    CHECK_FALSE(verify_cosine_distance_full(1000, 14.0, 0.0).applicable);
    CHECK(verify_cosine_distance_full(1000, 14.2, 0.0).applicable);
    CHECK_FALSE(verify_cosine_distance_full(1000, 14.3, 0.0).applicable);
    CHECK(verify_cosine_distance_full(1000, 13.5, 0.0).applicable);
    CHECK_FALSE(verify_cosine_distance_full(1000, 1.5, 0.0).applicable);
}

TEST_CASE("half-range cosine lemma verifier") {
    const auto ok = verify_cosine_distance_half(2000, 3, 1.0);
    CHECK(ok.applicable);
    CHECK(ok.holds);
    CHECK_FALSE(verify_cosine_distance_half(100, 1, 1.0).applicable);
    CHECK_FALSE(verify_cosine_distance_half(2000, 3, 0.5).applicable);
    // gcd(2000, 40) = 40 shrinks the window below r = 1.
    CHECK_FALSE(verify_cosine_distance_half(2000, 40, 1.0).applicable);
}

TEST_CASE("gcd census examples") {
    const auto c = gcd_census(12, 3);
    CHECK(c.exact_count == 6);
    CHECK(c.totient_sum == 6);
    CHECK(gcd_census(97, 1).exact_count == 97);
    CHECK(gcd_census(10, 11).exact_count == 0);
    CHECK(gcd_census(10, 11).totient_sum == 0);
    CHECK(std::isinf(gcd_census(2, 1).bound_value(1.0)));
    CHECK(gcd_census(1000, 10).bound_value(0.0) == doctest::Approx(100.0));
}

TEST_CASE("moebius count agrees with enumeration") {
    GcdCensusOptions lattice;
    lattice.enumeration_limit = 0;
    for (std::uint64_t M = 1; M <= 400; ++M)
        for (std::uint64_t y : std::vector<std::uint64_t>{1, 2, 5, M}) {
            const auto a = gcd_census(M, y);
            const auto b = gcd_census(M, y, lattice);
            CHECK(a.enumerated);
            CHECK_FALSE(b.enumerated);
            CHECK(a.exact_count == b.exact_count);
        }
}

TEST_CASE("euler phi") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(12) == 4);
    CHECK(euler_phi(97) == 96);
    CHECK(euler_phi(1024) == 512);
    std::uint64_t s = 0;
    for (std::uint64_t d = 1; d <= 360; ++d)
        if (360 % d == 0) s += euler_phi(d);
    CHECK(s == 360);
}

TEST_CASE("levy concentration") {
    const TrialStream st(trial_seed(5, 0));
    const auto rad = st.samples({DistributionKind::Rademacher}, 10000);
    CHECK(levy_concentration(rad, 0.5).estimate == doctest::Approx(0.5).epsilon(0.1));
    CHECK(levy_concentration(rad, 1.0).estimate == 1.0);
    CHECK(levy_concentration(std::vector<double>(7, 2.0), 0.0).estimate == 1.0);
    CHECK_THROWS_AS(levy_concentration(std::vector<double>{}, 1.0), std::invalid_argument);

    const auto g = st.samples({DistributionKind::StdNormal}, 5000, 20000);
    double prev = 0.0;
    for (double eps = 0.0; eps <= 3.0; eps += 0.05) {
        const double e = levy_concentration(g, eps).estimate;
        CHECK(e >= prev);
        prev = e;
    }
    const auto grid = concentration_grid(g, 0.2);
    const auto on_grid = levy_concentration(g, 0.2, grid);
    CHECK(on_grid.center_grid_resolution <= 0.05 + 1e-12);
    CHECK(on_grid.estimate <= levy_concentration(g, 0.2).estimate);
    CHECK(on_grid.estimate >= levy_concentration(g, 0.15).estimate);
}

TEST_CASE("concentration of a sum does not exceed the smaller one") {
    const TrialStream st(trial_seed(6, 0));
    const auto x = st.samples({DistributionKind::Uniform01}, 10000);
    const auto y = st.samples({DistributionKind::StdNormal}, 10000, 10000);
    std::vector<double> s(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] + y[i];
    for (double eps : {0.05, 0.2, 0.5}) {
        const double bound = std::min(levy_concentration(x, eps).estimate, levy_concentration(y, eps).estimate);
        CHECK(levy_concentration(s, eps).estimate <= bound + 0.02);
    }
}

TEST_CASE("condition (H) examples") {
    const TrialStream st(trial_seed(7, 0));
    const auto rad = st.samples({DistributionKind::Rademacher}, 2000);
    // A closed unit ball around 0 holds both signs, so +-1 fails the
    // concentration clause while +-2 satisfies it.
    const auto h = condition_h_check(rad, 0.4, 2.0);
    CHECK_FALSE(h.pass);
    CHECK(h.concentration == 1.0);
    CHECK(h.tail == 0.0);
    std::vector<double> wide(rad.begin(), rad.end());
    for (double& x : wide) x *= 2.0;
    const auto w = condition_h_check(wide, 0.4, 3.0);
    CHECK(w.pass);
    CHECK(w.concentration == doctest::Approx(0.5).epsilon(0.05));
    CHECK_FALSE(condition_h_check(std::vector<double>(10, 0.0), 0.3, 1.0).clause_concentration);
    const auto u = condition_h_check(st.samples({DistributionKind::Uniform01}, 2000), 0.05, 2.0);
    CHECK_FALSE(u.clause_concentration);
    CHECK(u.concentration == 1.0);
    CHECK_THROWS_AS(condition_h_check(rad, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("lemma sweep csv") {
    std::vector<LemmaSweepRow> rows{{"a", {{"m", 50}, {"r", 2}}, verify_cosine_distance_full(50, 2.0, 0.0)},
                                   {"b", {{"m", 1000}, {"r", 2}}, verify_cosine_distance_full(1000, 2.0, 0.0)}};
    std::ostringstream out;
    write_lemma_sweep_csv(out, rows);
    const std::string s = out.str();
    CHECK(s.rfind("case_id,m,r,applicable,margin\na,50,2,0,\nb,1000,2,1,", 0) == 0);
}
