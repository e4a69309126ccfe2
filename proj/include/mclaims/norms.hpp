#ifndef MCLAIMS_NORMS_HPP
#define MCLAIMS_NORMS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mclaims/charfn.hpp"
#include "mclaims/lattice_measure.hpp"

namespace mclaims {

double local_norm(const LatticeMeasure& m);
double kolmogorov_norm(const LatticeMeasure& m);
double tv_norm(const LatticeMeasure& m);
/// M(x) = M{(-inf, x]}.
double df_value(const LatticeMeasure& m, std::int64_t x);

using WeightedSequence = std::vector<std::pair<std::int64_t, double>>;

struct NonUniform {
    WeightedSequence local;  // (k, |k-a| |M{k}|)
    WeightedSequence df;     // (k, |k-a| |M(k)|)
};

/// Weighted sequences over k in [k_lo, k_hi] (defaults: the stored window).
NonUniform nonuniform(const LatticeMeasure& m, double a, std::optional<std::int64_t> k_lo = std::nullopt,
                      std::optional<std::int64_t> k_hi = std::nullopt);

struct NormReport {
    double local = 0.0;
    double kolmogorov = 0.0;
    double total_variation = 0.0;
    WeightedSequence nonuniform_local;
    WeightedSequence nonuniform_df;
};

NormReport norm_report(const LatticeMeasure& m, double a = 0.0, std::optional<std::int64_t> k_lo = std::nullopt,
                       std::optional<std::int64_t> k_hi = std::nullopt);

nlohmann::json to_json(const NormReport& r);

/// Right-hand sides of the inversion inequalities
///   K  <= (1/2pi) int |Mhat| / |e^{it} - 1|
///   sup|M{k}| <= (1/2pi) int |Mhat|
///   TV <= (1 + b pi)^{1/2} ((1/2pi) int |Mhat|^2 + b^{-2} |(e^{-ita} Mhat)'|^2)^{1/2}
///   |k-a| |M{k}| <= (1/2pi) int |(Mhat e^{-ita})'|
///   |k-a| |M(k)| <= (1/2pi) int |(Mhat e^{-ita} / (e^{-it} - 1))'|
/// evaluated by the midpoint rule on the N-point shifted grid.
struct InversionBounds {
    double tsaregradskii = 0.0;
    double local_bound = 0.0;
    double tv_bound = 0.0;
    double nonuniform_local_bound = 0.0;
    double nonuniform_df_bound = 0.0;
    std::int64_t n_points = 0;
    double a = 0.0;
    double b = 1.0;
};

nlohmann::json to_json(const InversionBounds& b);

/// `values` on the N-point grid; `refined` on the 2N-point grid, whose nodes
/// 2j and 2j+1 sit at t_j -+ pi/(2N) and give central differences at t_j.
InversionBounds inversion_bounds(const CharFnGrid& values, const CharFnGrid& refined, double a = 0.0, double b = 1.0);

/// Same, with Mhat' supplied on the N-point grid instead of differenced.
InversionBounds inversion_bounds_with_derivative(const CharFnGrid& values, const CharFnGrid& derivative, double a = 0.0,
                                           double b = 1.0);

/// Samples `transform` on both grids and evaluates the bounds.
InversionBounds inversion_bounds(const std::function<cplx(double)>& transform, std::int64_t n_points, double a = 0.0,
                           double b = 1.0);

}  // namespace mclaims

#endif
