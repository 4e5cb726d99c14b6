#include "circlab/structured.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace circlab {

CoefficientSequence::CoefficientSequence(std::vector<double> values, long index_origin)
    : values_(std::move(values)), origin_(index_origin) {
    if (values_.empty()) throw std::invalid_argument("coefficient sequence must be non-empty");
    for (double v : values_)
        if (!std::isfinite(v)) throw std::invalid_argument("coefficient sequence has a non-finite value");
}

double CoefficientSequence::at(long j) const {
    if (j < origin_ || j > last_index())
        throw std::out_of_range("coefficient index " + std::to_string(j) + " outside [" +
                                std::to_string(origin_) + ", " + std::to_string(last_index()) + "]");
    return values_[static_cast<std::size_t>(j - origin_)];
}

ToeplitzSpec::ToeplitzSpec(std::size_t n_, CoefficientSequence c, bool sym)
    : n(n_), coeffs(std::move(c)), symmetric(sym) {
    const long m = static_cast<long>(n);
    if (n == 0) throw std::invalid_argument("Toeplitz dimension must be positive");
    if (coeffs.size() != 2 * n - 1 || coeffs.index_origin() != -(m - 1))
        throw std::invalid_argument("Toeplitz coefficients must be indexed -(n-1)..(n-1)");
    if (symmetric)
        for (long j = 1; j < m; ++j)
            if (coeffs.at(j) != coeffs.at(-j))
                throw std::invalid_argument("symmetric Toeplitz requires xi_{-j} == xi_j");
}

ToeplitzSpec ToeplitzSpec::from_values(std::size_t n, std::vector<double> values) {
    return ToeplitzSpec(n, CoefficientSequence(std::move(values), -(static_cast<long>(n) - 1)));
}

ToeplitzSpec ToeplitzSpec::symmetric_from(std::span<const double> half) {
    const std::size_t n = half.size();
    if (n == 0) throw std::invalid_argument("Toeplitz dimension must be positive");
    std::vector<double> v(2 * n - 1);
    for (std::size_t j = 0; j < n; ++j) {
        v[n - 1 + j] = half[j];
        v[n - 1 - j] = half[j];
    }
    return ToeplitzSpec(n, CoefficientSequence(std::move(v), -(static_cast<long>(n) - 1)), true);
}

CirculantSpec::CirculantSpec(std::vector<double> row) : n(row.size()), first_row(std::move(row), 0) {}

SymmetricCirculantSpec::SymmetricCirculantSpec(std::size_t n_, std::vector<double> free)
    : n(n_), free_coeffs(std::move(free), 0) {
    if (n == 0) throw std::invalid_argument("symmetric circulant dimension must be positive");
    if (free_coeffs.size() != n / 2 + 1)
        throw std::invalid_argument("symmetric circulant needs floor(n/2)+1 free coefficients");
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::from_real(std::size_t rows, std::size_t cols, std::span<const double> data) {
    if (data.size() != rows * cols) throw std::invalid_argument("from_real: size mismatch");
    DenseMatrix m(rows, cols);
    std::copy(data.begin(), data.end(), m.data_.begin());
    return m;
}

DenseMatrix DenseMatrix::block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const {
    if (row0 + nrows > rows_ || col0 + ncols > cols_) throw std::out_of_range("block outside matrix");
    DenseMatrix b(nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < ncols; ++j) b(i, j) = (*this)(row0 + i, col0 + j);
    return b;
}

DenseMatrix DenseMatrix::conjugate_transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
}

double DenseMatrix::frobenius_norm() const {
    double scale = 0.0, ssq = 1.0;
    for (const cplx& z : data_) {
        for (double a : {std::abs(z.real()), std::abs(z.imag())}) {
            if (a == 0.0) continue;
            if (scale < a) {
                ssq = 1.0 + ssq * (scale / a) * (scale / a);
                scale = a;
            } else {
                ssq += (a / scale) * (a / scale);
            }
        }
    }
    return scale * std::sqrt(ssq);
}

bool DenseMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: inner dimensions differ");
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix difference: shape mismatch");
    DenseMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.data().size(); ++i) c.data()[i] = a.data()[i] - b.data()[i];
    return c;
}

DenseMatrix materialize_toeplitz(const ToeplitzSpec& spec) {
    const std::size_t n = spec.n;
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = spec.xi(static_cast<long>(j) - static_cast<long>(i));
    return m;
}

DenseMatrix materialize_circulant(const CirculantSpec& spec) {
    const std::size_t n = spec.n;
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = spec.xi((j + n - i) % n);
    return m;
}

DenseMatrix materialize_hankel(std::size_t n, std::span<const double> h) {
    if (n == 0 || h.size() != 2 * n - 1) throw std::invalid_argument("Hankel matrix needs 2n-1 values");
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = h[i + j];
    return m;
}

CirculantSpec embed_toeplitz(const ToeplitzSpec& spec, double xi_star) {
    if (!std::isfinite(xi_star)) throw std::invalid_argument("xi_star must be finite");
    const long n = static_cast<long>(spec.n);
    std::vector<double> row;
    row.reserve(2 * spec.n);
    for (long j = 0; j < n; ++j) row.push_back(spec.xi(j));
    row.push_back(xi_star);
    for (long j = -n + 1; j <= -1; ++j) row.push_back(spec.xi(j));
    return CirculantSpec(std::move(row));
}

DenseMatrix exchange_transform(const DenseMatrix& m) {
    if (!m.square()) throw std::invalid_argument("exchange_transform requires a square matrix");
    const std::size_t n = m.rows();
    DenseMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = m(n - 1 - i, j);
    return r;
}

CirculantSpec expand_symmetric_circulant(const SymmetricCirculantSpec& spec) {
    const std::size_t n = spec.n;
    const auto free = spec.free_coeffs.values();
    std::vector<double> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = free[std::min(j, n - j)];
    return CirculantSpec(std::move(row));
}

cplx root_of_unity(long long e, std::size_t n) {
    const long long m = static_cast<long long>(n);
    long long r = e % m;
    if (r < 0) r += m;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

DenseMatrix fourier_matrix(std::size_t n) {
    if (n == 0) throw std::invalid_argument("Fourier matrix dimension must be positive");
    DenseMatrix f(n, n);
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) f(j, k) = s * root_of_unity(static_cast<long long>(j * k % n), n);
    return f;
}

void write_coefficients_csv(std::ostream& out, const CoefficientSequence& seq) {
    out << "xi_index,value\n";
    out << std::setprecision(17);
    for (long j = seq.index_origin(); j <= seq.last_index(); ++j) out << j << ',' << seq.at(j) << '\n';
}

CoefficientSequence read_coefficients_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("xi_index,value", 0) != 0)
        throw std::runtime_error("coefficient CSV must start with header 'xi_index,value'");
    std::vector<double> values;
    long origin = 0;
    long expected = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("malformed coefficient row: " + line);
        const long idx = std::stol(line.substr(0, comma));
        const double val = std::stod(line.substr(comma + 1));
        if (values.empty()) {
            origin = idx;
        } else if (idx != expected) {
            throw std::runtime_error("coefficient indices must be consecutive");
        }
        expected = idx + 1;
        values.push_back(val);
    }
    return CoefficientSequence(std::move(values), origin);
}

}  // namespace circlab
