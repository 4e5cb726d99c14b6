#include "circlab/trig_poly.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace circlab {

TrigPolynomial::TrigPolynomial(std::vector<double> c, bool sym) : coeffs(std::move(c), 0), symmetric(sym) {
    if (symmetric) {
        const auto v = coeffs.values();
        const std::size_t n = v.size();
        for (std::size_t j = 1; j < n; ++j)
            if (v[j] != v[n - j]) throw std::invalid_argument("symmetric polynomial requires xi_j == xi_{n-j}");
    }
}

std::vector<cplx> evaluate_on_grid(const TrigPolynomial& p, std::size_t m, const FftOptions& opts) {
    const auto c = p.coeffs.values();
    if (m < c.size()) throw std::invalid_argument("evaluation grid must have at least n points");
    std::vector<cplx> padded(m);
    for (std::size_t j = 0; j < c.size(); ++j) padded[j] = c[j];
    return dft(std::span<const cplx>(padded), opts);
}

MaxModulusBracket max_modulus(const TrigPolynomial& p, std::size_t oversampling) {
    if (oversampling <= 4) throw std::invalid_argument("max_modulus needs oversampling K > 4");
    const std::size_t m = oversampling * p.degree_bound();
    const auto values = evaluate_on_grid(p, m);
    MaxModulusBracket b;
    b.oversampling = oversampling;
    std::size_t arg = 0;
    for (std::size_t k = 0; k < m; ++k)
        if (const double a = std::abs(values[k]); a > b.lower) {
            b.lower = a;
            arg = k;
        }
    b.witness_x = 2.0 * std::numbers::pi * static_cast<double>(arg) / static_cast<double>(m);
    b.upper = b.lower / (1.0 - std::numbers::pi / static_cast<double>(oversampling));
    return b;
}

SalemZygmundRatio salem_zygmund_ratio(const MaxModulusBracket& b, std::size_t n) {
    if (n < 2) throw std::invalid_argument("salem_zygmund_ratio needs n >= 2");
    const double nn = static_cast<double>(n);
    const double norm = std::sqrt(nn * std::log(nn));
    return {b.lower / norm, b.upper / norm};
}

}  // namespace circlab
