#ifndef MCLAIMS_MODEL_HPP
#define MCLAIMS_MODEL_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

namespace mclaims {

using cplx = std::complex<double>;
using Matrix3 = Eigen::Matrix3d;
using Matrix3c = Eigen::Matrix3cd;

enum class State { healthy = 0, ill = 1, dead = 2 };

/// Claim paid for one period spent in `s`: 0 healthy, 1 ill, d dead.
int payoff(State s, int d);

/// Unchecked parameter tuple as read from flags or a config file.
struct RawParams {
    double alpha = 0.5;  // ill -> dead
    double beta = 0.1;   // ill -> ill
    double gamma = 0.02; // healthy -> ill
    int d = 3;           // payment units per period once dead
    double c0 = 0.9;     // cap on alpha, strictly below 1
};

void to_json(nlohmann::json& j, const RawParams& p);
void from_json(const nlohmann::json& j, RawParams& p);

struct Validation;

/// Parameters of the three-state health chain that satisfy the working box
///   0 < beta <= 0.15,  0 < gamma <= 0.05,  alpha <= c0 < 1,  alpha + beta < 1.
/// Only obtainable through validate(), so every instance is inside the box.
class ModelParams {
public:
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double gamma() const { return gamma_; }
    int d() const { return d_; }
    double c0() const { return c0_; }

    RawParams raw() const { return {alpha_, beta_, gamma_, d_, c0_}; }

    friend Validation validate(const RawParams& raw);

private:
    ModelParams(double a, double b, double g, int d, double c0)
        : alpha_(a), beta_(b), gamma_(g), d_(d), c0_(c0) {}

    double alpha_, beta_, gamma_;
    int d_;
    double c0_;
};

struct Validation {
    std::optional<ModelParams> params;
    std::vector<std::string> violations;  // one entry per failed inequality

    bool ok() const { return violations.empty(); }
};

Validation validate(const RawParams& raw);

/// validate() that throws Error(ErrorCode::condition) listing every violation.
ModelParams make_params(const RawParams& raw);
ModelParams make_params(double alpha, double beta, double gamma, int d, double c0 = 0.9);

Matrix3 transition_matrix(const ModelParams& p);

/// Transition matrix with column k twisted by exp(i t f(a_k)); its n-th
/// power read from row "healthy" against (1,1,1) is the characteristic
/// function of the n-period claim sum.
Matrix3c fourier_transition_matrix(const ModelParams& p, double t);

}  // namespace mclaims

#endif
