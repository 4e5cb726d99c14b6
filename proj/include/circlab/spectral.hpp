#pragma once

// Circulant spectra via the DFT, extreme singular values and condition numbers,
// the Schur block S_n of an embedded circulant, and interlacing verifiers.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "circlab/fft.hpp"
#include "circlab/linalg.hpp"
#include "circlab/structured.hpp"

namespace circlab {

// Eigenvalues lambda_0 .. lambda_{n-1} in DFT order; never sorted.
struct Spectrum {
    std::vector<cplx> eigenvalues;

    std::size_t size() const { return eigenvalues.size(); }
    double max_modulus() const;
    double min_modulus() const;
};

struct ConditionReport {
    double sigma_max = 0.0;
    double sigma_min = 0.0;
    std::optional<double> kappa;  // empty when flagged singular

    bool singular() const { return !kappa.has_value(); }
};

// Default: 1e-12 * n * max_k |lambda_k|.
double default_singular_tolerance(const Spectrum& s);

// lambda_k = G_n(w^k) = sum_j xi_j w^{jk}.
Spectrum circulant_eigenvalues(const CirculantSpec& spec, const FftOptions& opts = {});

// Real eigenvalues from the cosine formulas (separate odd / even n forms).
Spectrum symmetric_circulant_eigenvalues(const SymmetricCirculantSpec& spec);

// Circulants are normal, so the singular values are the eigenvalue moduli.
ConditionReport circulant_extremes(const Spectrum& s, std::optional<double> singular_tolerance = std::nullopt);

// All singular values of a circulant, sorted descending.
SingularValues circulant_singular_values(const Spectrum& s);

ConditionReport condition_report(const SingularValues& sv, std::optional<double> singular_tolerance = std::nullopt);

class SingularEmbeddingError : public std::runtime_error {
public:
    SingularEmbeddingError(std::size_t k, double modulus);
    std::size_t index() const { return k_; }
    double modulus() const { return modulus_; }

private:
    std::size_t k_;
    double modulus_;
};

enum class FourierNormalization {
    Unitary,       // F = (w^{jk}) / sqrt(2n); S_n is exactly the block of C_2n^{-1}
    Unnormalized,  // F = (w^{jk}); S_n comes out scaled by 2n
};

struct SchurBlock {
    std::size_t n = 0;
    DenseMatrix matrix;
    // Spectral weights 1 / G_2n(w^k) for k = 0..n-1 and k = n..2n-1.
    std::vector<cplx> diag1, diag2;
};

struct SchurOptions {
    std::optional<double> singular_tolerance;
    FourierNormalization normalization = FourierNormalization::Unitary;
    FftOptions fft{};
};

// Lower-right n x n block of C_2n^{-1} assembled from the reciprocal spectrum:
// S_n(i, j) = (1/2n) sum_k w^{(i-j)k} / lambda_k. Throws SingularEmbeddingError.
SchurBlock build_schur_block(const CirculantSpec& spec, const SchurOptions& opts = {});

// Lower-right n x n block of the densely inverted C_2n.
SchurBlock schur_block_oracle(const CirculantSpec& spec);

struct InterlacingReport {
    std::size_t n = 0;
    double tolerance = 0.0;
    // (a) sigma_max(C) >= sigma_1([T;B]) and sigma_n([T;B]) >= sigma_min(C)
    bool clause_a = false;
    double slack_a = 0.0;
    // (b) sigma_i(T) <= sigma_i(C) for all i
    bool clause_b = false;
    double slack_b = 0.0;
    // (c) sigma_min(C)^2 sigma_i(S) <= sigma_i(T) <= sigma_max(C)^2 sigma_i(S)
    std::optional<bool> clause_c;  // empty when the embedding is singular
    double slack_c = 0.0;
    bool singular_embedding = false;
    std::optional<std::size_t> singular_index;

    bool ok() const { return clause_a && clause_b && clause_c.value_or(true); }
};

// Slacks are the minimum over each clause's inequalities of (rhs - lhs); a
// clause holds when its slack is >= -tolerance, tolerance = 1e-8 * sigma_max(C_2n).
InterlacingReport verify_interlacing(const ToeplitzSpec& spec, double xi_star, double relative_tolerance = 1e-8);

struct CauchyInterlacingReport {
    bool holds = true;
    double min_slack = 0.0;
    double tolerance = 0.0;
};

// Checks sigma_1(A_{r+1}) >= sigma_1(A_r) >= sigma_2(A_{r+1}) >= ... >= sigma_{r+1}(A_{r+1})
// for every column prefix A_r of m (rows >= cols).
CauchyInterlacingReport cauchy_interlacing_report(const DenseMatrix& m, double relative_tolerance = 1e-9);
bool cauchy_interlacing_check(const DenseMatrix& m);

void write_spectrum_csv(std::ostream& out, const Spectrum& s);
void write_singular_values_csv(std::ostream& out, const SingularValues& sv);
// Header `row,col,re,im`, one entry per line.
void write_matrix_csv(std::ostream& out, const DenseMatrix& m);

}  // namespace circlab
