#pragma once

// Dense linear algebra used by the spectral path: one-sided Jacobi SVD, LU with
// partial pivoting, and a fast smallest-singular-value estimator.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "circlab/structured.hpp"

namespace circlab {

// Singular values sorted descending.
struct SingularValues {
    std::vector<double> values;

    double max() const { return values.front(); }
    double min() const { return values.back(); }
    std::size_t size() const { return values.size(); }
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(std::size_t rows, std::size_t cols, double residual);
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double residual() const { return residual_; }

private:
    std::size_t rows_, cols_;
    double residual_;
};

class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct JacobiOptions {
    std::size_t max_sweeps = 60;
    // A column pair is rotated while |a_i^H a_j| > tolerance * |a_i| |a_j|. The
    // effective threshold is never below rows * machine epsilon, the attainable
    // orthogonality level for columns of that length.
    double tolerance = 1e-13;
};

// Hestenes one-sided Jacobi with cyclic-by-rows sweep order. Wide inputs are
// handled through their conjugate transpose.
SingularValues dense_svd(const DenseMatrix& m, const JacobiOptions& opts = {});

// PA = LU with partial pivoting on a square matrix.
class LuDecomposition {
public:
    explicit LuDecomposition(const DenseMatrix& a);

    bool singular() const { return singular_; }
    std::size_t size() const { return lu_.rows(); }

    std::vector<cplx> solve(std::span<const cplx> b) const;
    // Throws SingularMatrixError if a zero pivot was met.
    DenseMatrix inverse() const;

private:
    DenseMatrix lu_;
    std::vector<std::size_t> perm_;
    bool singular_ = false;
};

struct SigmaMinOptions {
    std::size_t max_iterations = 500;  // Lanczos steps
    // Stop once the Ritz residual ||B y - theta y|| <= residual_tolerance * theta
    // for B = (M^H M)^{-1}.
    double residual_tolerance = 1e-9;
    bool allow_fallback = true;
    JacobiOptions fallback{};
};

struct SigmaMinResult {
    double value = 0.0;
    bool singular = false;
    bool used_fallback = false;
    std::size_t iterations = 0;
};

// Smallest singular value of a square matrix: LU factorization with partial
// pivoting, then Lanczos on (M^H M)^{-1} through two triangular solves per
// step. Falls back to dense_svd when the iteration stalls.
SigmaMinResult sigma_min_fast(const DenseMatrix& m, const SigmaMinOptions& opts = {});

}  // namespace circlab
