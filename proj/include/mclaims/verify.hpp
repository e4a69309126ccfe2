#ifndef MCLAIMS_VERIFY_HPP
#define MCLAIMS_VERIFY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mclaims/inversion.hpp"
#include "mclaims/model.hpp"
#include "mclaims/norms.hpp"

namespace mclaims {

// ---------------------------------------------------------------- parameter boxes

struct BoxSpec {
    std::vector<double> alphas;
    std::vector<double> betas;
    std::vector<double> gammas;
    std::vector<int> ds;
    double c0 = 0.9;

    std::string describe() const;
};

/// alpha in {0.1, 0.3, 0.5, 0.7, 0.9 c0}, beta in {0.01, 0.05, 0.1, 0.15},
/// gamma in {0.005, 0.02, 0.035, 0.05}, d in {1, 3, 10}.
BoxSpec default_box(double c0 = 0.9);

/// `count` evenly spaced values per axis over (0, c0], (0, 0.15], (0, 0.05].
BoxSpec uniform_box(int count, std::vector<int> ds, double c0 = 0.9);

/// Cartesian product in (alpha, beta, gamma, d) order. Throws Error(condition)
/// if any tuple is outside the admissible box.
std::vector<ModelParams> box_points(const BoxSpec& box);

nlohmann::json to_json(const BoxSpec& box);
BoxSpec box_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------- pointwise and integral bounds

enum class BoundKind {
    exact,           // numeric constant given; ratio must stay <= 1
    upper_constant,  // LHS <= C * shape; reports max LHS/shape
    lower_constant,  // LHS >= C * shape; reports min LHS/shape (the largest admissible C)
};

std::string to_string(BoundKind k);

struct LemmaSpec {
    std::string id;
    std::string statement;
    BoundKind kind = BoundKind::exact;
    bool needs_separation = false;  // only for alpha >= C2
    bool uses_n = false;            // evaluated for every n in CheckOptions::n_values
    bool integral = false;          // LHS is an integral over t rather than a pointwise value
};

/// Every inequality the checker knows, exact-constant ones first.
const std::vector<LemmaSpec>& lemma_catalog();
const LemmaSpec& lemma_spec(const std::string& id);
std::vector<std::string> exact_constant_ids();
std::vector<std::string> constant_fit_ids();

struct CheckOptions {
    std::int64_t t_points = 512;
    double C2 = 0.3;
    std::vector<int> n_values{16, 64, 256};
    double derivative_step = 1e-7;
    bool refine = false;  // also evaluate with twice the t-nodes and report the change
};

struct BoundCheck {
    std::string lemma_id;
    std::string statement;
    BoundKind kind = BoundKind::exact;
    std::string params_box;
    std::size_t points_checked = 0;   // (params, n) tuples after hypothesis filtering
    std::size_t points_skipped = 0;   // tuples with alpha < C2 for separated bounds
    double max_ratio = 0.0;           // fitted constant for C-bounds (min ratio for lower bounds)
    std::optional<bool> violated;     // only for exact-constant bounds
    RawParams worst_params;
    double worst_t = 0.0;
    int worst_n = 0;
    std::int64_t t_points = 0;
    std::optional<double> refined_ratio;
    std::optional<std::string> failure;  // numerical failure inside the sweep
};

nlohmann::json to_json(const BoundCheck& c);

BoundCheck check_lemma(const std::string& lemma_id, const std::vector<ModelParams>& grid, const CheckOptions& opt = {},
                       const std::string& box_label = "custom");

// ---------------------------------------------------------------- approximation errors

/// Approximation regimes, each with its approximant, norm and hypothesis.
enum class Regime {
    general,          // G^n V + E, Kolmogorov and local norms
    alpha_separated,  // G1^n V1 + E, Kolmogorov norm, alpha >= C2
    death_dominated,  // E alone, total variation, alpha >= C2 and gamma >= gamma_floor
    total_variation,  // G1^n V2 + E, total variation, alpha >= C2
    nonuniform,       // G1^n V2 + E, |k|-weighted local and distribution errors, alpha >= C2
};

std::string to_string(Regime r);
Regime parse_regime(const std::string& s);
ApproxVariant regime_variant(Regime r);

struct VerifyConfig {
    double C2 = 0.3;
    double gamma_floor = 0.01;
    InversionConfig inversion;
    std::int64_t spectral_points = 512;
    double spectral_tolerance = 1e-8;
    bool inversion_bounds = false;  // also evaluate the inversion-inequality bounds
    double bound_a = 0.0;
    double bound_b = 1.0;
};

nlohmann::json to_json(const VerifyConfig& c);
void from_json(const nlohmann::json& j, VerifyConfig& c);

/// Throws Error(hypothesis) if `p` does not satisfy the regime's assumptions.
void check_hypothesis(const ModelParams& p, Regime r, const VerifyConfig& cfg);

struct TheoremRun {
    Regime regime = Regime::general;
    RawParams params;
    int n = 0;
    ApproxVariant variant = ApproxVariant::GV_E;
    NormReport report;  // of F_n - approximant; weighted sequences over k in [1, n d]
    double primary_error = 0.0;
    std::int64_t n_used = 0;
    double tv_delta = 0.0;
    double spectral_residual = 0.0;
    double approximant_mass = 0.0;
    std::optional<InversionBounds> inversion_bounds;
};

nlohmann::json to_json(const TheoremRun& r);

/// Exact law minus the regime's approximant, with every distance computed on the lattice.
TheoremRun theorem_error(const ModelParams& p, int n, Regime r, const VerifyConfig& cfg = {});

/// Difference measure F_n - approximant and its transform; shared by theorem_error and tests.
LatticeMeasure difference_measure(const ModelParams& p, int n, ApproxVariant v, const InversionConfig& icfg,
                                  AliasingProbe* probe = nullptr);
cplx difference_transform(const ModelParams& p, int n, ApproxVariant v, double t);

// ---------------------------------------------------------------- rate fits

enum class PolicyKind {
    fixed,                  // parameters independent of n
    alpha_gamma_inverse_n,  // gamma fixed, alpha = c / (gamma n)
    gamma_inverse_n,        // alpha fixed, gamma = c / n
};

struct ScalingPolicy {
    PolicyKind kind = PolicyKind::fixed;
    RawParams base;
    double c = 1.0;

    RawParams at(int n) const;
    std::string describe() const;
};

std::string to_string(PolicyKind k);
PolicyKind parse_policy(const std::string& s);

enum class FitScale { log_log, log_linear };

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct RateFit {
    Regime regime = Regime::general;
    std::string policy;
    FitScale scale = FitScale::log_log;
    std::vector<int> n_values;
    std::vector<double> errors;
    std::vector<std::int64_t> n_used;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

nlohmann::json to_json(const RateFit& f);

/// Exponential regimes regress log(error) on n, polynomial ones on log n.
FitScale regime_scale(Regime r);

RateFit rate_fit(Regime r, const ScalingPolicy& policy, const std::vector<int>& n_values,
                 const VerifyConfig& cfg = {});

/// Least-squares fit of already computed errors; checks n-values and positivity.
RateFit fit_errors(Regime r, const std::string& policy, const std::vector<int>& n_values,
                   const std::vector<double>& errors);

// ---------------------------------------------------------------- empirical constants

struct EmpiricalConstant {
    Regime regime = Regime::general;
    double exponent_constant = 0.0;
    std::map<std::string, double> constants;  // norm name -> max LHS / shape
    std::map<std::string, std::pair<RawParams, int>> worst;
    std::size_t points = 0;
};

nlohmann::json to_json(const EmpiricalConstant& e);

/// Ratio of the regime's error to its bound shape with C = 1, maximised over
/// the grid. Exponential factors use `exponent_constant` as the unknown C.
EmpiricalConstant empirical_constant(Regime r, const std::vector<std::pair<ModelParams, int>>& grid,
                                     double exponent_constant, const VerifyConfig& cfg = {});

/// Per-point ratios behind empirical_constant, keyed the same way.
std::map<std::string, double> bound_ratios(const TheoremRun& run, const ModelParams& p, double exponent_constant);

/// Decay rate -slope of the death-dominated fit at fixed parameters.
double fit_exponent_constant(const ModelParams& p, const std::vector<int>& n_values, const VerifyConfig& cfg = {});

}  // namespace mclaims

#endif
