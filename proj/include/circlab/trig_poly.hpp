#pragma once

// Random trigonometric polynomials W_n(x) = G_n(e^{ix}) and certified brackets
// for their sup-norm on the unit circle.

#include <cstddef>
#include <vector>

#include "circlab/fft.hpp"
#include "circlab/structured.hpp"

namespace circlab {

struct TrigPolynomial {
    CoefficientSequence coeffs;  // xi_0 .. xi_{n-1}
    bool symmetric = false;      // xi_j == xi_{n-j} enforced

    explicit TrigPolynomial(std::vector<double> c, bool symmetric = false);
    std::size_t degree_bound() const { return coeffs.size(); }
};

// The lower bound is attained at witness_x; the upper bound follows from
// Bernstein's inequality ||W'|| <= n ||W|| over a grid of K n points.
struct MaxModulusBracket {
    double lower = 0.0;
    double upper = 0.0;
    std::size_t oversampling = 0;
    double witness_x = 0.0;
};

// G_n(exp(2 pi i k / m)) for k = 0..m-1, m >= n.
std::vector<cplx> evaluate_on_grid(const TrigPolynomial& p, std::size_t m, const FftOptions& opts = {});

MaxModulusBracket max_modulus(const TrigPolynomial& p, std::size_t oversampling = 64);

struct SalemZygmundRatio {
    double lower = 0.0;
    double upper = 0.0;
};

// Bracket endpoints divided by sqrt(n log n).
SalemZygmundRatio salem_zygmund_ratio(const MaxModulusBracket& b, std::size_t n);

}  // namespace circlab
