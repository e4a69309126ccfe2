#ifndef MCLAIMS_EXACT_HPP
#define MCLAIMS_EXACT_HPP

#include <cstdint>
#include <vector>

#include "mclaims/lattice_measure.hpp"
#include "mclaims/model.hpp"

namespace mclaims {

inline constexpr std::int64_t default_support_cap = 10'000'000;
inline constexpr int max_enum_periods = 12;

/// Per-step bookkeeping of the DP engine.
struct DpTrace {
    std::vector<double> total_mass;  // healthy + ill + absorbed, after each step
    std::vector<double> dead_mass;   // probability of being dead after each step
};

/// Law of S_n = f(xi_1) + ... + f(xi_n) for a chain started healthy.
/// State = (chain state, running sum). Mass entering the dead state at step k
/// with running sum s is placed directly at s + (n - k + 1) d.
LatticeMeasure exact_distribution_dp(const ModelParams& p, int n, std::int64_t support_cap = default_support_cap,
                                     DpTrace* trace = nullptr);

/// Brute-force path enumeration (n <= 12); independent cross-check of the DP.
LatticeMeasure exact_distribution_enum(const ModelParams& p, int n);

/// (1,0,0) * Ptilde(t)^n * (1,1,1)^T by repeated squaring.
cplx exact_charfn(const ModelParams& p, int n, double t);

/// Empirical law of `count` simulated claim sums; reproducible per seed.
LatticeMeasure sample_empirical(const ModelParams& p, int n, std::int64_t count, std::uint64_t seed);

}  // namespace mclaims

#endif
