// Independent reference computations used only by the tests.
#ifndef MCLAIMS_TESTS_SUPPORT_HPP
#define MCLAIMS_TESTS_SUPPORT_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "mclaims/lattice_measure.hpp"
#include "mclaims/model.hpp"

namespace testing {

using mclaims::cplx;
using mclaims::LatticeMeasure;
using mclaims::ModelParams;

/// Law of S_n by visiting all 3^n state sequences (no pruning, no DP).
inline LatticeMeasure brute_force_law(const ModelParams& p, int n) {
    const double a = p.alpha(), b = p.beta(), g = p.gamma();
    const double P[3][3] = {{1 - g, g, 0}, {1 - a - b, b, a}, {0, 0, 1}};
    const int pay[3] = {0, 1, p.d()};
    std::map<std::int64_t, double> law;
    std::int64_t paths = 1;
    for (int i = 0; i < n; ++i) paths *= 3;
    for (std::int64_t code = 0; code < paths; ++code) {
        std::int64_t c = code;
        int prev = 0;
        double prob = 1.0;
        std::int64_t sum = 0;
        for (int i = 0; i < n; ++i) {
            const int s = static_cast<int>(c % 3);
            c /= 3;
            prob *= P[prev][s];
            sum += pay[s];
            prev = s;
        }
        if (prob > 0.0) law[sum] += prob;
    }
    LatticeMeasure m;
    if (law.empty()) return m;
    m.offset = law.begin()->first;
    m.weights.assign(static_cast<std::size_t>(law.rbegin()->first - m.offset + 1), 0.0);
    for (const auto& [k, w] : law) m.weights[static_cast<std::size_t>(k - m.offset)] = w;
    return m;
}

/// sum_k M{k} e^{ikt} with std::polar.
inline cplx direct_transform(const LatticeMeasure& m, double t) {
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < m.weights.size(); ++i)
        s += std::polar(m.weights[i], static_cast<double>(m.offset + static_cast<std::int64_t>(i)) * t);
    return s;
}

inline double tv_distance(const LatticeMeasure& x, const LatticeMeasure& y) {
    const std::int64_t lo = std::min(x.lo(), y.lo()), hi = std::max(x.hi(), y.hi());
    double s = 0.0;
    for (std::int64_t k = lo; k < hi; ++k) s += std::abs(x.at(k) - y.at(k));
    return s;
}

/// Uniform draw inside the admissible box (c0 = 0.9).
inline ModelParams random_params(std::mt19937_64& rng, int d_max = 10) {
    std::uniform_real_distribution<double> ua(1e-3, 0.84), ub(1e-3, 0.15), ug(1e-3, 0.05);
    std::uniform_int_distribution<int> ud(1, d_max);
    return mclaims::make_params(ua(rng), ub(rng), ug(rng), ud(rng));
}

inline LatticeMeasure random_signed_measure(std::mt19937_64& rng, std::int64_t lo, std::size_t len) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    LatticeMeasure m;
    m.offset = lo;
    for (std::size_t i = 0; i < len; ++i) m.weights.push_back(u(rng));
    return m;
}

}  // namespace testing

#endif
