#pragma once

// Compact coefficient representations of Toeplitz, circulant, symmetric
// circulant and Hankel matrices, plus explicit materialization to dense form.

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace circlab {

using cplx = std::complex<double>;

// Ordered real scalars xi_j, addressable by j = index_origin .. index_origin + size - 1.
class CoefficientSequence {
public:
    CoefficientSequence() = default;
    explicit CoefficientSequence(std::vector<double> values, long index_origin = 0);

    std::size_t size() const { return values_.size(); }
    long index_origin() const { return origin_; }
    long last_index() const { return origin_ + static_cast<long>(values_.size()) - 1; }
    double at(long j) const;
    std::span<const double> values() const { return values_; }

private:
    std::vector<double> values_;
    long origin_ = 0;
};

// xi_{-(n-1)} .. xi_{n-1}; entry (i,j) of the materialized matrix is xi_{j-i}.
struct ToeplitzSpec {
    std::size_t n = 0;
    CoefficientSequence coeffs;
    bool symmetric = false;

    ToeplitzSpec(std::size_t n, CoefficientSequence coeffs, bool symmetric = false);
    // `values` holds xi_{-(n-1)} .. xi_{n-1} in order.
    static ToeplitzSpec from_values(std::size_t n, std::vector<double> values);
    // Symmetric Toeplitz from xi_0 .. xi_{n-1}.
    static ToeplitzSpec symmetric_from(std::span<const double> half);

    double xi(long j) const { return coeffs.at(j); }
};

// Entry (i,j) of the materialized matrix is xi_{(j-i) mod n}.
struct CirculantSpec {
    std::size_t n = 0;
    CoefficientSequence first_row;

    explicit CirculantSpec(std::vector<double> row);
    double xi(std::size_t j) const { return first_row.values()[j]; }
};

// The floor(n/2)+1 independent entries xi_0 .. xi_{floor(n/2)} of a symmetric circulant.
struct SymmetricCirculantSpec {
    std::size_t n = 0;
    CoefficientSequence free_coeffs;

    SymmetricCirculantSpec(std::size_t n, std::vector<double> free);
};

// Row-major complex matrix; real data carries zero imaginary parts.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix from_real(std::size_t rows, std::size_t cols, std::span<const double> data);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<cplx> data() { return data_; }
    std::span<const cplx> data() const { return data_; }

    DenseMatrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
    DenseMatrix conjugate_transpose() const;
    double frobenius_norm() const;
    bool all_finite() const;

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix materialize_toeplitz(const ToeplitzSpec& spec);
DenseMatrix materialize_circulant(const CirculantSpec& spec);

// Hankel matrix H(i,j) = h_{i+j} from the 2n-1 values h_0 .. h_{2n-2}.
DenseMatrix materialize_hankel(std::size_t n, std::span<const double> h);

// First row (xi_0, .., xi_{n-1}, xi_star, xi_{-n+1}, .., xi_{-1}) of the 2n circulant
// [[T, B], [B, T]] whose top-left block is T.
CirculantSpec embed_toeplitz(const ToeplitzSpec& spec, double xi_star);

// J * m, i.e. m with its row order reversed.
DenseMatrix exchange_transform(const DenseMatrix& m);

CirculantSpec expand_symmetric_circulant(const SymmetricCirculantSpec& spec);

// (j,k) entry w^{jk} / sqrt(n), w = exp(2 pi i / n).
DenseMatrix fourier_matrix(std::size_t n);

// exp(2 pi i * e / n) with the exponent reduced mod n first.
cplx root_of_unity(long long e, std::size_t n);

// CSV with header `xi_index,value`.
void write_coefficients_csv(std::ostream& out, const CoefficientSequence& seq);
CoefficientSequence read_coefficients_csv(std::istream& in);

}  // namespace circlab
