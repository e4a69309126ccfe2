#include "mclaims/norms.hpp"

#include <cmath>
#include <numbers>

#include "mclaims/error.hpp"
#include "mclaims/numeric.hpp"

namespace mclaims {

double local_norm(const LatticeMeasure& m) {
    double best = 0.0;
    for (double w : m.weights) best = std::max(best, std::abs(w));
    return best;
}

double kolmogorov_norm(const LatticeMeasure& m) {
    double run = 0.0, best = 0.0;
    for (double w : m.weights) {
        run += w;
        best = std::max(best, std::abs(run));
    }
    return best;
}

double tv_norm(const LatticeMeasure& m) {
    double s = 0.0;
    for (double w : m.weights) s += std::abs(w);
    return s;
}

double df_value(const LatticeMeasure& m, std::int64_t x) {
    double run = 0.0;
    for (std::int64_t k = m.lo(); k <= x && k < m.hi(); ++k) run += m.at(k);
    return run;
}

NonUniform nonuniform(const LatticeMeasure& m, double a, std::optional<std::int64_t> k_lo,
                      std::optional<std::int64_t> k_hi) {
    const std::int64_t lo = k_lo.value_or(m.lo());
    const std::int64_t hi = k_hi.value_or(m.hi() - 1);
    NonUniform out;
    if (hi < lo) return out;
    out.local.reserve(static_cast<std::size_t>(hi - lo + 1));
    out.df.reserve(static_cast<std::size_t>(hi - lo + 1));
    double run = df_value(m, lo - 1);
    for (std::int64_t k = lo; k <= hi; ++k) {
        run += m.at(k);
        const double w = std::abs(static_cast<double>(k) - a);
        out.local.emplace_back(k, w * std::abs(m.at(k)));
        out.df.emplace_back(k, w * std::abs(run));
    }
    return out;
}

NormReport norm_report(const LatticeMeasure& m, double a, std::optional<std::int64_t> k_lo,
                       std::optional<std::int64_t> k_hi) {
    NormReport r;
    r.local = local_norm(m);
    r.kolmogorov = kolmogorov_norm(m);
    r.total_variation = tv_norm(m);
    NonUniform nu = nonuniform(m, a, k_lo, k_hi);
    r.nonuniform_local = std::move(nu.local);
    r.nonuniform_df = std::move(nu.df);
    return r;
}

nlohmann::json to_json(const NormReport& r) {
    auto seq = [](const WeightedSequence& s) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& [k, v] : s) a.push_back({k, v});
        return a;
    };
    return {{"local", r.local},
            {"kolmogorov", r.kolmogorov},
            {"total_variation", r.total_variation},
            {"nonuniform_local", seq(r.nonuniform_local)},
            {"nonuniform_df", seq(r.nonuniform_df)}};
}

nlohmann::json to_json(const InversionBounds& b) {
    return {{"tsaregradskii", b.tsaregradskii},
            {"local_bound", b.local_bound},
            {"tv_bound", b.tv_bound},
            {"nonuniform_local_bound", b.nonuniform_local_bound},
            {"nonuniform_df_bound", b.nonuniform_df_bound},
            {"n_points", b.n_points},
            {"a", b.a},
            {"b", b.b}};
}

namespace {

// Shared quadrature once Mhat and Mhat' are known at every node.
template <class Deriv>
InversionBounds assemble(const CharFnGrid& values, Deriv&& derivative_at, double a, double b) {
    require(b > 0.0, ErrorCode::config, "inversion bounds need b > 0");
    const std::int64_t N = values.n_points;
    InversionBounds out;
    out.n_points = N;
    out.a = a;
    out.b = b;
    double ts = 0.0, loc = 0.0, sq = 0.0, dsq = 0.0, nu_loc = 0.0, nu_df = 0.0;
    for (std::int64_t j = 0; j < N; ++j) {
        const double t = values.t(j);
        const cplx m = values.values[static_cast<std::size_t>(j)];
        const cplx dm = derivative_at(j);
        const cplx ia{0.0, a};
        const cplx tilt = std::exp(-ia * t);
        // (e^{-ita} Mhat)' = e^{-ita} (Mhat' - i a Mhat)
        const cplx g1 = tilt * (dm - ia * m);
        // q = Mhat e^{-ita} / (e^{-it} - 1);  q' = g1 / (e^{-it}-1) + Mhat e^{-ita} i e^{-it} / (e^{-it}-1)^2
        const cplx den = expi_minus_one(-1, t);
        const cplx q1 = g1 / den + tilt * m * cplx{0.0, 1.0} * expi(-1, t) / (den * den);
        ts += std::abs(m) / std::abs(expi_minus_one(1, t));
        loc += std::abs(m);
        sq += std::norm(m);
        dsq += std::norm(g1);
        nu_loc += std::abs(g1);
        nu_df += std::abs(q1);
    }
    const double w = 1.0 / static_cast<double>(N);  // (1/2pi) * (2pi / N)
    out.tsaregradskii = ts * w;
    out.local_bound = loc * w;
    out.tv_bound = std::sqrt(1.0 + b * std::numbers::pi) * std::sqrt(sq * w + dsq * w / (b * b));
    out.nonuniform_local_bound = nu_loc * w;
    out.nonuniform_df_bound = nu_df * w;
    return out;
}

}  // namespace

InversionBounds inversion_bounds(const CharFnGrid& values, const CharFnGrid& refined, double a, double b) {
    const std::int64_t N = values.n_points;
    require(refined.n_points == 2 * N, ErrorCode::config, "refined grid must have twice the nodes");
    const double h = std::numbers::pi / (2.0 * static_cast<double>(N));
    return assemble(
        values,
        [&](std::int64_t j) {
            const auto i = static_cast<std::size_t>(2 * j);
            return (refined.values[i + 1] - refined.values[i]) / (2.0 * h);
        },
        a, b);
}

InversionBounds inversion_bounds_with_derivative(const CharFnGrid& values, const CharFnGrid& derivative, double a,
                                           double b) {
    require(derivative.n_points == values.n_points, ErrorCode::config, "derivative grid size mismatch");
    return assemble(
        values, [&](std::int64_t j) { return derivative.values[static_cast<std::size_t>(j)]; }, a, b);
}

InversionBounds inversion_bounds(const std::function<cplx(double)>& transform, std::int64_t n_points, double a, double b) {
    return inversion_bounds(sample_grid(transform, n_points), sample_grid(transform, 2 * n_points), a, b);
}

}  // namespace mclaims
