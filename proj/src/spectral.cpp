#include "circlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>

namespace circlab {

double Spectrum::max_modulus() const {
    double m = 0.0;
    for (const cplx& z : eigenvalues) m = std::max(m, std::abs(z));
    return m;
}

double Spectrum::min_modulus() const {
    double m = std::numeric_limits<double>::infinity();
    for (const cplx& z : eigenvalues) m = std::min(m, std::abs(z));
    return m;
}

double default_singular_tolerance(const Spectrum& s) {
    return 1e-12 * static_cast<double>(s.size()) * s.max_modulus();
}

Spectrum circulant_eigenvalues(const CirculantSpec& spec, const FftOptions& opts) {
    return Spectrum{dft(spec.first_row.values(), opts)};
}

Spectrum symmetric_circulant_eigenvalues(const SymmetricCirculantSpec& spec) {
    const std::size_t n = spec.n;
    const auto xi = spec.free_coeffs.values();
    const bool even = n % 2 == 0;
    // Pairs (j, n-j) contribute 2 xi_j cos(2 pi kj / n) for 1 <= j < n/2.
    const std::size_t paired = even ? n / 2 - 1 : n / 2;
    Spectrum s;
    s.eigenvalues.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        double acc = xi[0];
        for (std::size_t j = 1; j <= paired; ++j) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>((k * j) % n) / static_cast<double>(n);
            acc += 2.0 * xi[j] * std::cos(angle);
        }
        if (even) acc += (k % 2 == 0 ? 1.0 : -1.0) * xi[n / 2];
        s.eigenvalues[k] = acc;
    }
    return s;
}

ConditionReport circulant_extremes(const Spectrum& s, std::optional<double> singular_tolerance) {
    if (s.eigenvalues.empty()) throw std::invalid_argument("circulant_extremes: empty spectrum");
    ConditionReport r;
    r.sigma_max = s.max_modulus();
    r.sigma_min = s.min_modulus();
    const double tol = singular_tolerance.value_or(default_singular_tolerance(s));
    if (r.sigma_min > tol && r.sigma_min > 0.0) r.kappa = r.sigma_max / r.sigma_min;
    return r;
}

SingularValues circulant_singular_values(const Spectrum& s) {
    SingularValues sv;
    sv.values.reserve(s.size());
    for (const cplx& z : s.eigenvalues) sv.values.push_back(std::abs(z));
    std::sort(sv.values.begin(), sv.values.end(), std::greater<>());
    return sv;
}

ConditionReport condition_report(const SingularValues& sv, std::optional<double> singular_tolerance) {
    ConditionReport r;
    r.sigma_max = sv.max();
    r.sigma_min = sv.min();
    const double tol = singular_tolerance.value_or(1e-12 * static_cast<double>(sv.size()) * sv.max());
    if (r.sigma_min > tol && r.sigma_min > 0.0) r.kappa = r.sigma_max / r.sigma_min;
    return r;
}

SingularEmbeddingError::SingularEmbeddingError(std::size_t k, double modulus)
    : std::runtime_error("singular embedding: |G_2n(w^" + std::to_string(k) + ")| = " + std::to_string(modulus) +
                         " is below the singular tolerance"),
      k_(k),
      modulus_(modulus) {}

SchurBlock build_schur_block(const CirculantSpec& spec, const SchurOptions& opts) {
    const std::size_t two_n = spec.n;
    if (two_n < 2 || two_n % 2 != 0) throw std::invalid_argument("build_schur_block needs an even dimension 2n");
    const std::size_t n = two_n / 2;

    const Spectrum lambda = circulant_eigenvalues(spec, opts.fft);
    const double tol = opts.singular_tolerance.value_or(default_singular_tolerance(lambda));
    for (std::size_t k = 0; k < two_n; ++k) {
        const double mod = std::abs(lambda.eigenvalues[k]);
        if (!(mod > tol)) throw SingularEmbeddingError(k, mod);
    }

    SchurBlock out;
    out.n = n;
    out.diag1.resize(n);
    out.diag2.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.diag1[k] = 1.0 / lambda.eigenvalues[k];
        out.diag2[k] = 1.0 / lambda.eigenvalues[n + k];
    }

    // Entries of the unnormalized F_2n: F(a, b) = w^{ab}, indexed through a table.
    std::vector<cplx> w(two_n);
    for (std::size_t e = 0; e < two_n; ++e) w[e] = root_of_unity(static_cast<long long>(e), two_n);
    auto f = [&](std::size_t a, std::size_t b) { return w[(a * b) % two_n]; };
    const double scale =
        opts.normalization == FourierNormalization::Unitary ? 1.0 / static_cast<double>(two_n) : 1.0;

    // (F2^H D1 F2 + F4^H D2 F4)(i, j) with F2, F4 the rows 0..n-1 and n..2n-1 of
    // the columns n..2n-1 of conj(F_2n), since C_2n = F_2n Lambda F_2n^H.
    auto entry = [&](std::size_t i, std::size_t j) {
        cplx acc{};
        for (std::size_t k = 0; k < n; ++k) {
            acc += f(k, n + i) * out.diag1[k] * std::conj(f(k, n + j));
            acc += f(n + k, n + i) * out.diag2[k] * std::conj(f(n + k, n + j));
        }
        return scale * acc;
    };

    // Each entry depends only on j - i, so one evaluation per diagonal suffices.
    std::vector<cplx> diag(2 * n - 1);
    for (std::size_t j = 0; j < n; ++j) diag[n - 1 + j] = entry(0, j);
    for (std::size_t i = 1; i < n; ++i) diag[n - 1 - i] = entry(i, 0);
    out.matrix = DenseMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.matrix(i, j) = diag[n - 1 + j - i];
    return out;
}

SchurBlock schur_block_oracle(const CirculantSpec& spec) {
    const std::size_t two_n = spec.n;
    if (two_n < 2 || two_n % 2 != 0) throw std::invalid_argument("schur_block_oracle needs an even dimension 2n");
    const std::size_t n = two_n / 2;
    const LuDecomposition lu(materialize_circulant(spec));
    if (lu.singular()) throw SingularMatrixError("schur_block_oracle: C_2n is singular");
    SchurBlock out;
    out.n = n;
    out.matrix = lu.inverse().block(n, n, n, n);
    return out;
}

InterlacingReport verify_interlacing(const ToeplitzSpec& spec, double xi_star, double relative_tolerance) {
    const std::size_t n = spec.n;
    const CirculantSpec embedded = embed_toeplitz(spec, xi_star);
    const Spectrum lambda = circulant_eigenvalues(embedded);
    const SingularValues sc = circulant_singular_values(lambda);
    const double smax = sc.max();
    const double smin = sc.min();

    InterlacingReport r;
    r.n = n;
    r.tolerance = relative_tolerance * smax;

    const DenseMatrix stacked = materialize_circulant(embedded).block(0, 0, 2 * n, n);
    const SingularValues sa = dense_svd(stacked);
    r.slack_a = std::min(smax - sa.max(), sa.min() - smin);
    r.clause_a = r.slack_a >= -r.tolerance;

    const SingularValues st = dense_svd(materialize_toeplitz(spec));
    r.slack_b = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) r.slack_b = std::min(r.slack_b, sc.values[i] - st.values[i]);
    r.clause_b = r.slack_b >= -r.tolerance;

    try {
        const SchurBlock s = build_schur_block(embedded);
        const SingularValues ss = dense_svd(s.matrix);
        r.slack_c = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            r.slack_c = std::min(r.slack_c, st.values[i] - smin * smin * ss.values[i]);
            r.slack_c = std::min(r.slack_c, smax * smax * ss.values[i] - st.values[i]);
        }
        r.clause_c = r.slack_c >= -r.tolerance;
    } catch (const SingularEmbeddingError& e) {
        r.singular_embedding = true;
        r.singular_index = e.index();
    }
    return r;
}

CauchyInterlacingReport cauchy_interlacing_report(const DenseMatrix& m, double relative_tolerance) {
    if (m.rows() < m.cols() || m.cols() == 0)
        throw std::invalid_argument("cauchy_interlacing_check requires rows >= cols >= 1");
    CauchyInterlacingReport rep;
    rep.min_slack = std::numeric_limits<double>::infinity();
    if (m.cols() == 1) return rep;

    std::vector<SingularValues> prefix;
    prefix.reserve(m.cols());
    for (std::size_t r = 1; r <= m.cols(); ++r) prefix.push_back(dense_svd(m.block(0, 0, m.rows(), r)));
    rep.tolerance = relative_tolerance * prefix.back().max();

    for (std::size_t r = 1; r < m.cols(); ++r) {
        const auto& small = prefix[r - 1].values;  // r values
        const auto& big = prefix[r].values;        // r + 1 values
        for (std::size_t i = 0; i < r; ++i) {
            rep.min_slack = std::min(rep.min_slack, big[i] - small[i]);
            rep.min_slack = std::min(rep.min_slack, small[i] - big[i + 1]);
        }
    }
    rep.holds = rep.min_slack >= -rep.tolerance;
    return rep;
}

bool cauchy_interlacing_check(const DenseMatrix& m) { return cauchy_interlacing_report(m).holds; }

void write_spectrum_csv(std::ostream& out, const Spectrum& s) {
    out << "k,re,im\n" << std::setprecision(17);
    for (std::size_t k = 0; k < s.size(); ++k)
        out << k << ',' << s.eigenvalues[k].real() << ',' << s.eigenvalues[k].imag() << '\n';
}

void write_singular_values_csv(std::ostream& out, const SingularValues& sv) {
    out << "i,sigma\n" << std::setprecision(17);
    for (std::size_t i = 0; i < sv.size(); ++i) out << i + 1 << ',' << sv.values[i] << '\n';
}

void write_matrix_csv(std::ostream& out, const DenseMatrix& m) {
    out << "row,col,re,im\n" << std::setprecision(17);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out << i << ',' << j << ',' << m(i, j).real() << ',' << m(i, j).imag() << '\n';
}

}  // namespace circlab
