#include "circlab/arithmetic.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace circlab {

namespace {

constexpr double kPi = std::numbers::pi;

double log_plus(double x) { return x > 1.0 ? std::log(x) : 0.0; }

double lcd_rhs(double norm, double L) { return L * std::sqrt(log_plus(norm / L)); }

double euclidean_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        ps.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> ds;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        ds.push_back(d);
        if (d * d != n) ds.push_back(n / d);
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

// #{1 <= k <= N : gcd(k, N) = 1} as sum over squarefree e | N of mu(e) N / e.
std::uint64_t coprime_count_moebius(std::uint64_t N) {
    const auto ps = prime_factors(N);
    long long total = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ps.size()); ++mask) {
        std::uint64_t e = 1;
        int bits = 0;
        for (std::size_t i = 0; i < ps.size(); ++i)
            if (mask >> i & 1) {
                e *= ps[i];
                ++bits;
            }
        total += (bits % 2 == 0 ? 1 : -1) * static_cast<long long>(N / e);
    }
    return static_cast<std::uint64_t>(total);
}

}  // namespace

double dist_to_lattice(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) {
        const double d = x - std::nearbyint(x);
        s += d * d;
    }
    return std::sqrt(s);
}

bool lcd_inequality_holds(std::span<const double> x, double L) {
    return dist_to_lattice(x) < lcd_rhs(euclidean_norm(x), L);
}

LcdEstimate lcd_vector(std::span<const double> v, double L, const LcdVectorOptions& opts) {
    if (!(L > 0.0)) throw std::invalid_argument("lcd_vector: L must be positive");
    if (v.empty()) throw std::invalid_argument("lcd_vector: empty vector");
    double vmax = 0.0;
    for (double x : v) {
        if (!std::isfinite(x)) throw std::invalid_argument("lcd_vector: non-finite entry");
        vmax = std::max(vmax, std::abs(x));
    }
    if (vmax == 0.0) throw std::invalid_argument("lcd_vector: zero vector");
    const double vnorm = euclidean_norm(v);
    const double theta0 = 1.0 / (2.0 * vmax);
    const double theta_max = opts.theta_max.value_or(4.0 * std::sqrt(static_cast<double>(v.size())));
    const double step = opts.step.value_or(1e-3 / vnorm);
    if (!(step > 0.0)) throw std::invalid_argument("lcd_vector: step must be positive");
    if (!(theta_max > theta0)) throw std::invalid_argument("lcd_vector: empty search range");

    LcdEstimate est;
    est.L = L;
    est.search_resolution = step;
    est.simple_bound = theta0;

    std::vector<double> x(v.size());
    auto scaled = [&](double t) {
        for (std::size_t j = 0; j < v.size(); ++j) x[j] = t * v[j];
        return std::span<const double>(x);
    };

    bool lower_fixed = false;
    const auto cells = static_cast<std::size_t>(std::ceil((theta_max - theta0) / step));
    for (std::size_t c = 0; c <= cells; ++c) {
        const double t = theta0 + static_cast<double>(c) * step;
        if (t > theta_max) break;
        const double dist = dist_to_lattice(scaled(t));
        const double norm = vnorm * t;
        if (!est.upper_witness && dist < lcd_rhs(norm, L)) {
            est.upper_witness = t;
            est.witness_distance = dist;
        }
        if (!lower_fixed && dist - vnorm * step < lcd_rhs(vnorm * (t + step), L)) {
            est.lower_bound = t;
            lower_fixed = true;
        }
        if (lower_fixed && est.upper_witness) break;
    }
    if (!lower_fixed) est.lower_bound = theta_max;
    return est;
}

double max_column_norm(const DenseMatrix& V) {
    double best = 0.0;
    for (std::size_t j = 0; j < V.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < V.rows(); ++i) s += std::norm(V(i, j));
        best = std::max(best, std::sqrt(s));
    }
    return best;
}

LcdEstimate lcd_matrix2(const DenseMatrix& V, double L, const LcdMatrixOptions& opts) {
    if (!(L > 0.0)) throw std::invalid_argument("lcd_matrix2: L must be positive");
    if (V.rows() != 2 || V.cols() == 0) throw std::invalid_argument("lcd_matrix2: V must be 2 x n");
    if (!V.all_finite()) throw std::invalid_argument("lcd_matrix2: non-finite entries");
    const std::size_t n = V.cols();
    const double colmax = max_column_norm(V);
    if (colmax == 0.0) throw std::invalid_argument("lcd_matrix2: zero matrix");
    const double lip = V.frobenius_norm();
    const double r0 = 1.0 / (2.0 * colmax);
    const double r_max = opts.r_max.value_or(4.0 * std::sqrt(static_cast<double>(n)));
    if (!(opts.r_step > 0.0) || !(opts.phi_step > 0.0))
        throw std::invalid_argument("lcd_matrix2: grid steps must be positive");
    if (!(r_max > r0)) throw std::invalid_argument("lcd_matrix2: empty search range");

    LcdEstimate est;
    est.L = L;
    est.search_resolution = opts.r_step;
    est.simple_bound = r0;

    const auto n_phi = static_cast<std::size_t>(std::ceil(2.0 * kPi / opts.phi_step));
    const double dphi = 2.0 * kPi / static_cast<double>(n_phi);
    std::vector<double> x(n);
    bool lower_fixed = false;
    const auto n_r = static_cast<std::size_t>(std::ceil((r_max - r0) / opts.r_step));
    for (std::size_t c = 0; c <= n_r; ++c) {
        const double r = r0 + static_cast<double>(c) * opts.r_step;
        if (r > r_max) break;
        const double slack = lip * (opts.r_step + (r + opts.r_step) * dphi);
        bool ring_refuted = true;
        for (std::size_t a = 0; a < n_phi; ++a) {
            const double phi = static_cast<double>(a) * dphi;
            const double t1 = r * std::cos(phi);
            const double t2 = r * std::sin(phi);
            for (std::size_t j = 0; j < n; ++j) x[j] = V(0, j).real() * t1 + V(1, j).real() * t2;
            const double dist = dist_to_lattice(x);
            const double norm = euclidean_norm(x);
            if (!est.upper_witness && dist < lcd_rhs(norm, L)) {
                est.upper_witness = r;
                est.witness_phi = phi;
                est.witness_distance = dist;
            }
            if (ring_refuted && dist - slack < lcd_rhs(norm + slack, L)) ring_refuted = false;
        }
        if (!lower_fixed && !ring_refuted) {
            est.lower_bound = r;
            lower_fixed = true;
        }
        if (lower_fixed && est.upper_witness) break;
    }
    if (!lower_fixed) est.lower_bound = r_max;
    return est;
}

VkMatrix vk_matrix(std::size_t n, std::size_t k) {
    if (k == 0 || k >= n) throw std::invalid_argument("vk_matrix: need 0 < k < n");
    if (2 * k == n) throw std::invalid_argument("vk_matrix: k = n/2 gives a zero sine row");
    VkMatrix out;
    out.matrix = DenseMatrix(2, n);
    for (std::size_t j = 0; j < n; ++j) {
        const double a = 2.0 * kPi * static_cast<double>((j * k) % n) / static_cast<double>(n);
        out.matrix(0, j) = std::cos(a);
        out.matrix(1, j) = std::sin(a);
    }
    double g00 = 0.0, g01 = 0.0, g11 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double c = out.matrix(0, j).real();
        const double s = out.matrix(1, j).real();
        g00 += c * c;
        g01 += c * s;
        g11 += s * s;
    }
    out.det = g00 * g11 - g01 * g01;
    out.expected = static_cast<double>(n) * static_cast<double>(n) / 4.0;
    out.matches = std::abs(out.det - out.expected) <= 1e-9 * out.expected;
    return out;
}

std::vector<double> cosine_vector(const CosineVectorSpec& spec) {
    if (spec.n == 0) throw std::invalid_argument("cosine_vector: n must be positive");
    std::size_t first = 0, last = spec.n;  // [first, last)
    if (spec.half_range) {
        first = 1;
        last = spec.n / 2 >= 1 ? spec.n / 2 : 1;
    }
    std::vector<double> v;
    v.reserve(last > first ? last - first : 0);
    for (std::size_t j = first; j < last; ++j) {
        const double a = 2.0 * kPi * static_cast<double>((j * spec.k) % spec.n) / static_cast<double>(spec.n);
        v.push_back(spec.r * std::cos(a - spec.theta));
    }
    return v;
}

LemmaCheck verify_cosine_distance_full(std::size_t m, double r, double theta) {
    LemmaCheck out;
    if (m == 0 || !(r >= 2.0) || !std::isfinite(r)) return out;
    const double window = static_cast<double>(m) / (24.0 * kPi);
    const bool integer_r = r == std::floor(r);
    out.applicable = integer_r ? window >= r : window + 1.0 >= r;
    if (!out.applicable) return out;
    const auto v = cosine_vector({.n = m, .k = 1, .theta = theta, .r = r, .half_range = false});
    out.distance = dist_to_lattice(v);
    out.bound = static_cast<double>(m) / (96.0 * kPi);
    out.margin = out.distance - out.bound;
    out.holds = out.margin >= 0.0;
    return out;
}

LemmaCheck verify_cosine_distance_half(std::size_t n, std::size_t k, double r) {
    LemmaCheck out;
    if (k == 0 || k >= n || n / 2 < 2 || !std::isfinite(r)) return out;
    const double g = static_cast<double>(std::gcd(n, k));
    const double window = static_cast<double>(n) / (72.0 * kPi * g);
    out.applicable = r >= 1.0 && window >= r;
    if (!out.applicable) return out;
    const auto v = cosine_vector({.n = n, .k = k, .theta = 0.0, .r = r, .half_range = true});
    out.distance = dist_to_lattice(v);
    out.bound = static_cast<double>(n) / (1728.0 * kPi * g);
    out.margin = out.distance - out.bound;
    out.holds = out.margin >= 0.0;
    return out;
}

double GcdCensus::bound_value(double C) const {
    const double ll = std::log(std::log(static_cast<double>(M)));
    if (!(ll > 0.0) || y == 0) return std::numeric_limits<double>::infinity();
    return std::pow(static_cast<double>(M), 1.0 + C / ll) / static_cast<double>(y);
}

std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t phi = n;
    for (std::uint64_t p : prime_factors(n)) phi = phi / p * (p - 1);
    return phi;
}

GcdCensus gcd_census(std::uint64_t M, std::uint64_t y, const GcdCensusOptions& opts) {
    if (M == 0 || y == 0) throw std::invalid_argument("gcd_census: M and y must be positive");
    GcdCensus c;
    c.M = M;
    c.y = y;
    const auto ds = divisors(M);
    for (std::uint64_t d : ds)
        if (d >= y) c.totient_sum += euler_phi(M / d);

    if (M <= opts.enumeration_limit) {
        c.enumerated = true;
        for (std::uint64_t k = 1; k <= M; ++k)
            if (std::gcd(k, M) >= y) ++c.exact_count;
    } else {
        // gcd(k, M) = d  <=>  k = d k' with gcd(k', M / d) = 1 and k' <= M / d.
        for (std::uint64_t d : ds)
            if (d >= y) c.exact_count += coprime_count_moebius(M / d);
    }
    return c;
}

ConcentrationEstimate levy_concentration(std::span<const double> samples, double epsilon) {
    if (samples.empty()) throw std::invalid_argument("levy_concentration: no samples");
    if (!(epsilon >= 0.0)) throw std::invalid_argument("levy_concentration: epsilon must be >= 0");
    std::vector<double> s(samples.begin(), samples.end());
    std::sort(s.begin(), s.end());
    std::size_t best = 0;
    std::size_t lo = 0;
    for (std::size_t hi = 0; hi < s.size(); ++hi) {
        while (s[hi] - s[lo] > 2.0 * epsilon) ++lo;
        best = std::max(best, hi - lo + 1);
    }
    ConcentrationEstimate est;
    est.epsilon = epsilon;
    est.sample_count = s.size();
    est.estimate = static_cast<double>(best) / static_cast<double>(s.size());
    return est;
}

ConcentrationEstimate levy_concentration(std::span<const double> samples, double epsilon,
                                         std::span<const double> centers) {
    if (samples.empty()) throw std::invalid_argument("levy_concentration: no samples");
    if (!(epsilon >= 0.0)) throw std::invalid_argument("levy_concentration: epsilon must be >= 0");
    std::vector<double> s(samples.begin(), samples.end());
    std::sort(s.begin(), s.end());
    std::ptrdiff_t best = 0;
    for (double x : centers) {
        const auto lo = std::lower_bound(s.begin(), s.end(), x - epsilon);
        const auto hi = std::upper_bound(s.begin(), s.end(), x + epsilon);
        best = std::max(best, hi - lo);
    }
    ConcentrationEstimate est;
    est.epsilon = epsilon;
    est.sample_count = s.size();
    est.estimate = static_cast<double>(best) / static_cast<double>(s.size());
    if (centers.size() > 1) {
        double res = 0.0;
        for (std::size_t i = 1; i < centers.size(); ++i) res = std::max(res, std::abs(centers[i] - centers[i - 1]));
        est.center_grid_resolution = res;
    }
    return est;
}

std::vector<double> concentration_grid(std::span<const double> samples, double epsilon) {
    if (samples.empty()) throw std::invalid_argument("concentration_grid: no samples");
    if (!(epsilon >= 0.0)) throw std::invalid_argument("concentration_grid: epsilon must be >= 0");
    if (epsilon == 0.0) {
        std::vector<double> c(samples.begin(), samples.end());
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        return c;
    }
    const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
    const double lo = *mn - epsilon;
    const double hi = *mx + epsilon;
    const double h = epsilon / 4.0;
    const auto count = static_cast<std::size_t>(std::ceil((hi - lo) / h));
    std::vector<double> c(count + 1);
    for (std::size_t i = 0; i <= count; ++i) c[i] = lo + static_cast<double>(i) * h;
    return c;
}

ConditionHResult condition_h_check(std::span<const double> samples, double q, double M) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("condition_h_check: q must lie in (0, 1)");
    if (!(M > 0.0)) throw std::invalid_argument("condition_h_check: M must be positive");
    ConditionHResult r;
    r.concentration = levy_concentration(samples, 1.0).estimate;
    std::size_t over = 0;
    for (double x : samples)
        if (std::abs(x) > M) ++over;
    r.tail = static_cast<double>(over) / static_cast<double>(samples.size());
    r.clause_concentration = r.concentration <= 1.0 - q;
    r.clause_tail = r.tail <= q / 2.0;
    r.pass = r.clause_concentration && r.clause_tail;
    return r;
}

void write_lemma_sweep_csv(std::ostream& out, std::span<const LemmaSweepRow> rows) {
    out << "case_id";
    if (!rows.empty())
        for (const auto& [name, value] : rows.front().params) out << ',' << name;
    out << ",applicable,margin\n" << std::setprecision(17);
    for (const auto& row : rows) {
        out << row.case_id;
        for (const auto& [name, value] : row.params) out << ',' << value;
        out << ',' << (row.check.applicable ? 1 : 0) << ',';
        if (row.check.applicable) out << row.check.margin;
        out << '\n';
    }
}

}  // namespace circlab
