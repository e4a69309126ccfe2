#ifndef MCLAIMS_NUMERIC_HPP
#define MCLAIMS_NUMERIC_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace mclaims {

/// exp(i m t) with the argument reduced in extended precision, so large
/// lattice shifts (m ~ n d) keep full phase accuracy.
inline std::complex<double> expi(std::int64_t m, double t) {
    constexpr long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    const long double x = std::remainder(static_cast<long double>(m) * static_cast<long double>(t), two_pi);
    const double xr = static_cast<double>(x);
    return {std::cos(xr), std::sin(xr)};
}

/// exp(i m t) - 1 without cancellation near m t = 0.
inline std::complex<double> expi_minus_one(std::int64_t m, double t) {
    constexpr long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    const double x = static_cast<double>(
        std::remainder(static_cast<long double>(m) * static_cast<long double>(t), two_pi));
    const double s = std::sin(0.5 * x);
    return {-2.0 * s * s, std::sin(x)};
}

inline std::complex<double> ipow(std::complex<double> z, std::uint64_t n) {
    std::complex<double> acc{1.0, 0.0};
    while (n) {
        if (n & 1u) acc *= z;
        z *= z;
        n >>= 1u;
    }
    return acc;
}

}  // namespace mclaims

#endif
