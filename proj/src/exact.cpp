#include "mclaims/exact.hpp"

#include <cmath>
#include <random>
#include <string>

#include "mclaims/error.hpp"

namespace mclaims {

LatticeMeasure exact_distribution_dp(const ModelParams& p, int n, std::int64_t support_cap, DpTrace* trace) {
    require(n >= 1, ErrorCode::config, "n must be >= 1");
    const int d = p.d();
    require(static_cast<std::int64_t>(n) * d <= support_cap, ErrorCode::config,
            "support cap exceeded: n*d = " + std::to_string(static_cast<std::int64_t>(n) * d));
    const double a = p.alpha(), b = p.beta(), g = p.gamma();

    // The running sum while alive equals the number of ill periods, so <= k.
    const std::size_t width = static_cast<std::size_t>(n) + 1;
    std::vector<double> healthy(width, 0.0), ill(width, 0.0), nh(width), ni(width);
    healthy[0] = 1.0;
    const std::int64_t top = 1 + static_cast<std::int64_t>(n - 1) * d;
    std::vector<double> law(static_cast<std::size_t>(top) + 1, 0.0);
    double absorbed = 0.0;

    if (trace) {
        trace->total_mass.clear();
        trace->dead_mass.clear();
    }
    for (int k = 1; k <= n; ++k) {
        std::fill(nh.begin(), nh.end(), 0.0);
        std::fill(ni.begin(), ni.end(), 0.0);
        for (int s = 0; s < k; ++s) {
            const double h = healthy[static_cast<std::size_t>(s)], i = ill[static_cast<std::size_t>(s)];
            nh[static_cast<std::size_t>(s)] += h * (1.0 - g) + i * (1.0 - a - b);
            ni[static_cast<std::size_t>(s) + 1] += h * g + i * b;
            if (i != 0.0) {
                law[static_cast<std::size_t>(s + static_cast<std::int64_t>(n - k + 1) * d)] += i * a;
                absorbed += i * a;
            }
        }
        healthy.swap(nh);
        ill.swap(ni);
        if (trace) {
            double alive = 0.0;
            for (std::size_t s = 0; s < width; ++s) alive += healthy[s] + ill[s];
            trace->total_mass.push_back(alive + absorbed);
            trace->dead_mass.push_back(absorbed);
        }
    }
    for (std::size_t s = 0; s < width; ++s) law[s] += healthy[s] + ill[s];
    return {0, std::move(law)};
}

namespace {

void enumerate(const Matrix3& P, int d, int remaining, int state, std::int64_t sum, double prob,
               std::vector<double>& law) {
    if (remaining == 0) {
        law[static_cast<std::size_t>(sum)] += prob;
        return;
    }
    for (int next = 0; next < 3; ++next) {
        const double q = P(state, next);
        if (q == 0.0) continue;
        enumerate(P, d, remaining - 1, next, sum + payoff(static_cast<State>(next), d), prob * q, law);
    }
}

}  // namespace

LatticeMeasure exact_distribution_enum(const ModelParams& p, int n) {
    require(n >= 1, ErrorCode::config, "n must be >= 1");
    require(n <= max_enum_periods, ErrorCode::config,
            "path enumeration limited to n <= " + std::to_string(max_enum_periods));
    std::vector<double> law(static_cast<std::size_t>(n) * static_cast<std::size_t>(p.d()) + 1, 0.0);
    enumerate(transition_matrix(p), p.d(), n, 0, 0, 1.0, law);
    return LatticeMeasure(0, std::move(law)).trimmed();
}

cplx exact_charfn(const ModelParams& p, int n, double t) {
    require(n >= 0, ErrorCode::config, "n must be >= 0");
    Matrix3c base = fourier_transition_matrix(p, t);
    Eigen::RowVector3cd row(1.0, 0.0, 0.0);
    for (unsigned m = static_cast<unsigned>(n); m; m >>= 1u) {
        if (m & 1u) row = row * base;
        if (m > 1u) base = base * base;
    }
    return row.sum();
}

LatticeMeasure sample_empirical(const ModelParams& p, int n, std::int64_t count, std::uint64_t seed) {
    require(n >= 1, ErrorCode::config, "n must be >= 1");
    require(count >= 1, ErrorCode::config, "count must be >= 1");
    const Matrix3 P = transition_matrix(p);
    const int d = p.d();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> counts(static_cast<std::size_t>(n) * static_cast<std::size_t>(d) + 1, 0.0);
    for (std::int64_t r = 0; r < count; ++r) {
        int state = 0;
        std::int64_t sum = 0;
        for (int k = 0; k < n; ++k) {
            if (state == 2) {
                sum += static_cast<std::int64_t>(n - k) * d;
                break;
            }
            const double u = unif(rng);
            state = u < P(state, 0) ? 0 : (u < P(state, 0) + P(state, 1) ? 1 : 2);
            sum += payoff(static_cast<State>(state), d);
        }
        counts[static_cast<std::size_t>(sum)] += 1.0;
    }
    for (double& c : counts) c /= static_cast<double>(count);
    return LatticeMeasure(0, std::move(counts)).trimmed();
}

}  // namespace mclaims
