#pragma once

// Arithmetic structure of coefficient vectors: distances to the integer
// lattice, least common denominator (LCD) estimates, the Fourier-geometry
// matrices V_k, cosine-vector distance lemmas, the gcd census and empirical
// Levy concentration.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "circlab/structured.hpp"

namespace circlab {

// Exact Euclidean distance from v to Z^n (coordinate-wise rounding).
double dist_to_lattice(std::span<const double> v);

// The LCD defining inequality dist(x, Z^n) < L sqrt(log_+(||x|| / L)), strict.
bool lcd_inequality_holds(std::span<const double> x, double L);

// Interval estimate [lower_bound, witness norm] of D(V, L).
struct LcdEstimate {
    double L = 0.0;
    double lower_bound = 0.0;            // certified
    std::optional<double> upper_witness;  // ||theta|| of the first grid point satisfying the inequality
    std::optional<double> witness_phi;    // angle of the witness (matrix form only)
    double witness_distance = 0.0;       // dist(V^T theta, Z^n) at the witness
    double search_resolution = 0.0;
    double simple_bound = 0.0;           // 1 / (2 ||V||_inf)
};

struct LcdVectorOptions {
    std::optional<double> theta_max;  // default 4 sqrt(n)
    std::optional<double> step;       // default 1e-3 / ||v||_2
};

// Scans theta from 1 / (2 max_j |v_j|) upward. Grid cells [t, t + step] are
// refuted when dist(t v) - ||v||_2 step >= L sqrt(log_+(||(t + step) v|| / L));
// the lower bound is the start of the first cell that is not refuted.
LcdEstimate lcd_vector(std::span<const double> v, double L, const LcdVectorOptions& opts = {});

struct LcdMatrixOptions {
    std::optional<double> r_max;  // default 4 sqrt(n)
    double r_step = 1e-2;
    double phi_step = std::numbers::pi / 360.0;
};

// V is 2 x n (real parts used). Polar scan theta = r (cos phi, sin phi). A cell
// [r, r + dr] x [phi, phi + dphi] is refuted with the Lipschitz slack
// ||V||_F (dr + (r + dr) dphi); a radius is refuted when all its cells are.
LcdEstimate lcd_matrix2(const DenseMatrix& V, double L, const LcdMatrixOptions& opts);

// Max Euclidean column norm.
double max_column_norm(const DenseMatrix& V);

struct VkMatrix {
    DenseMatrix matrix;  // 2 x n: cos / sin rows at x_k = k / n
    double det = 0.0;    // det(V_k V_k^T)
    double expected = 0.0;  // n^2 / 4
    bool matches = false;   // within 1e-9 relative
};

// Throws std::invalid_argument for k outside (0, n) or k == n/2.
VkMatrix vk_matrix(std::size_t n, std::size_t k);

struct CosineVectorSpec {
    std::size_t n = 0;
    std::size_t k = 0;
    double theta = 0.0;
    double r = 1.0;
    bool half_range = false;  // j = 1..floor(n/2)-1 instead of j = 0..n-1
};

// Entries r cos(2 pi jk / n - theta) over the selected index range.
std::vector<double> cosine_vector(const CosineVectorSpec& spec);

struct LemmaCheck {
    bool applicable = false;
    bool holds = false;  // meaningful only when applicable
    double distance = 0.0;
    double bound = 0.0;
    double margin = 0.0;  // distance - bound

    bool violation() const { return applicable && !holds; }
};

// dist(V, Z^m) >= m / (96 pi) for V_j = r cos(2 pi j / m - theta), j = 0..m-1.
// Applicable for r >= 2 with m / (24 pi) >= r; a non-integer r is admitted when
// m / (24 pi) + 1 >= r.
LemmaCheck verify_cosine_distance_full(std::size_t m, double r, double theta);

// dist(r v, Z^{floor(n/2)-1}) >= 1 / (1728 pi x) with v_j = cos(2 pi kj / n) and
// x = gcd(n, k) / n. Applicable for 0 < k < n and n / (72 pi gcd(n, k)) >= r >= 1.
LemmaCheck verify_cosine_distance_half(std::size_t n, std::size_t k, double r);

struct GcdCensus {
    std::uint64_t M = 0;
    std::uint64_t y = 0;
    std::uint64_t exact_count = 0;   // #{1 <= k <= M : gcd(k, M) >= y}
    std::uint64_t totient_sum = 0;   // sum over d | M, d >= y of phi(M / d)
    bool enumerated = false;         // exact_count by direct enumeration

    // M^{1 + C / log log M} / y.
    double bound_value(double C) const;
};

struct GcdCensusOptions {
    // Above this M the count uses Moebius inversion over the divisor lattice.
    std::uint64_t enumeration_limit = 20000;
};

GcdCensus gcd_census(std::uint64_t M, std::uint64_t y, const GcdCensusOptions& opts = {});

// Euler's totient from the prime factorization.
std::uint64_t euler_phi(std::uint64_t n);

struct ConcentrationEstimate {
    double epsilon = 0.0;
    double estimate = 0.0;
    std::size_t sample_count = 0;
    double center_grid_resolution = 0.0;  // 0 for the exact sliding-window sup
};

// Empirical sup over all real centers x of #{|s - x| <= epsilon} / N, computed
// exactly with a sliding window over the sorted samples.
ConcentrationEstimate levy_concentration(std::span<const double> samples, double epsilon);

// Sup restricted to the given centers.
ConcentrationEstimate levy_concentration(std::span<const double> samples, double epsilon,
                                         std::span<const double> centers);

// Centers spaced epsilon / 4 spanning [min - epsilon, max + epsilon]; for
// epsilon == 0 the distinct sample values.
std::vector<double> concentration_grid(std::span<const double> samples, double epsilon);

struct ConditionHResult {
    bool pass = false;
    bool clause_concentration = false;  // sup_u P(|xi - u| <= 1) <= 1 - q
    bool clause_tail = false;           // P(|xi| > M) <= q / 2
    double concentration = 0.0;
    double tail = 0.0;
};

ConditionHResult condition_h_check(std::span<const double> samples, double q, double M);

struct LemmaSweepRow {
    std::string case_id;
    std::vector<std::pair<std::string, double>> params;
    LemmaCheck check;
};

// Header `case_id,<param names>,applicable,margin`; names come from the first row.
void write_lemma_sweep_csv(std::ostream& out, std::span<const LemmaSweepRow> rows);

}  // namespace circlab
