#include "circlab/fft.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace circlab {

namespace {

// In-place iterative radix-2 transform; sign = +1 for exp(+i...), -1 for exp(-i...).
void radix2(std::vector<cplx>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    // Twiddles evaluated directly per index rather than by recurrence.
    std::vector<cplx> tw(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const cplx w = root_of_unity(static_cast<long long>(k), n);
        tw[k] = sign > 0 ? w : std::conj(w);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len)
            for (std::size_t j = 0; j < half; ++j) {
                const cplx u = a[i + j];
                const cplx v = a[i + j + half] * tw[j * stride];
                a[i + j] = u + v;
                a[i + j + half] = u - v;
            }
    }
}

std::vector<cplx> bluestein(std::span<const cplx> in) {
    const std::size_t n = in.size();
    const std::size_t m = std::bit_ceil(2 * n - 1);
    // chirp[j] = exp(+i pi j^2 / n); j^2 reduced mod 2n keeps the angle exact.
    std::vector<cplx> chirp(n);
    for (std::size_t j = 0; j < n; ++j)
        chirp[j] = root_of_unity(static_cast<long long>((j * j) % (2 * n)), 2 * n);
    // jk = (j^2 + k^2 - (k-j)^2)/2, so out[k] = chirp[k] * sum_j (in[j] chirp[j]) conj(chirp[k-j]).
    std::vector<cplx> a(m), b(m);
    for (std::size_t j = 0; j < n; ++j) a[j] = in[j] * chirp[j];
    b[0] = std::conj(chirp[0]);
    for (std::size_t j = 1; j < n; ++j) b[j] = b[m - j] = std::conj(chirp[j]);
    radix2(a, -1);
    radix2(b, -1);
    for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
    radix2(a, +1);
    std::vector<cplx> out(n);
    const double inv = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k) out[k] = chirp[k] * a[k] * inv;
    return out;
}

}  // namespace

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::vector<cplx> dft_direct(std::span<const cplx> in) {
    const std::size_t n = in.size();
    std::vector<cplx> w(n);
    for (std::size_t e = 0; e < n; ++e) w[e] = root_of_unity(static_cast<long long>(e), n);
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc{};
        std::size_t e = 0;
        for (std::size_t j = 0; j < n; ++j) {
            acc += in[j] * w[e];
            e += k;
            if (e >= n) e -= n;
        }
        out[k] = acc;
    }
    return out;
}

std::vector<cplx> dft(std::span<const cplx> in, const FftOptions& opts) {
    if (in.empty()) throw std::invalid_argument("dft of an empty sequence");
    if (is_power_of_two(in.size())) {
        std::vector<cplx> a(in.begin(), in.end());
        radix2(a, +1);
        return a;
    }
    if (in.size() <= opts.direct_limit) return dft_direct(in);
    return bluestein(in);
}

std::vector<cplx> dft(std::span<const double> in, const FftOptions& opts) {
    std::vector<cplx> c(in.begin(), in.end());
    return dft(std::span<const cplx>(c), opts);
}

}  // namespace circlab
