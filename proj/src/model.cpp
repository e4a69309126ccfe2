#include "mclaims/model.hpp"

#include <cmath>
#include <sstream>

#include "mclaims/error.hpp"
#include "mclaims/numeric.hpp"

namespace mclaims {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::config: return "config_error";
        case ErrorCode::condition: return "condition_violation";
        case ErrorCode::hypothesis: return "hypothesis_violation";
        case ErrorCode::numerical: return "numerical_failure";
    }
    return "unknown";
}

int payoff(State s, int d) {
    switch (s) {
        case State::healthy: return 0;
        case State::ill: return 1;
        case State::dead: return d;
    }
    return 0;
}

void to_json(nlohmann::json& j, const RawParams& p) {
    j = {{"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma}, {"d", p.d}, {"c0", p.c0}};
}

void from_json(const nlohmann::json& j, RawParams& p) {
    RawParams out;
    if (j.contains("alpha")) j.at("alpha").get_to(out.alpha);
    if (j.contains("beta")) j.at("beta").get_to(out.beta);
    if (j.contains("gamma")) j.at("gamma").get_to(out.gamma);
    if (j.contains("d")) j.at("d").get_to(out.d);
    if (j.contains("c0")) j.at("c0").get_to(out.c0);
    p = out;
}

Validation validate(const RawParams& raw) {
    Validation v;
    auto check = [&](bool ok, const char* name) {
        if (!ok) v.violations.emplace_back(name);
    };
    // Written so that NaN fails every test.
    check(raw.beta > 0.0, "beta <= 0");
    check(raw.beta <= 0.15, "beta > 0.15");
    check(raw.gamma > 0.0, "gamma <= 0");
    check(raw.gamma <= 0.05, "gamma > 0.05");
    check(raw.alpha > 0.0, "alpha <= 0");
    check(raw.c0 > 0.0 && raw.c0 < 1.0, "c0 outside (0,1)");
    check(raw.alpha <= raw.c0, "alpha > c0");
    check(raw.alpha + raw.beta < 1.0, "alpha + beta >= 1");
    check(raw.d >= 1, "d < 1");
    if (!v.violations.empty()) return v;

    // Consequence of the box; the (beta + 4 gamma)^n terms depend on it.
    if (!(raw.beta + 4.0 * raw.gamma <= 0.35 + 1e-15)) v.violations.emplace_back("beta + 4 gamma > 0.35");
    if (v.violations.empty()) v.params = ModelParams(raw.alpha, raw.beta, raw.gamma, raw.d, raw.c0);
    return v;
}

ModelParams make_params(const RawParams& raw) {
    auto v = validate(raw);
    if (!v.ok()) {
        std::ostringstream os;
        os << "parameters violate the working box:";
        for (const auto& s : v.violations) os << " {" << s << "}";
        fail(ErrorCode::condition, os.str());
    }
    return *v.params;
}

ModelParams make_params(double alpha, double beta, double gamma, int d, double c0) {
    return make_params(RawParams{alpha, beta, gamma, d, c0});
}

Matrix3 transition_matrix(const ModelParams& p) {
    const double a = p.alpha(), b = p.beta(), g = p.gamma();
    Matrix3 m;
    m << 1.0 - g, g, 0.0,
         1.0 - a - b, b, a,
         0.0, 0.0, 1.0;
    return m;
}

Matrix3c fourier_transition_matrix(const ModelParams& p, double t) {
    const Matrix3 base = transition_matrix(p);
    const cplx twist[3] = {cplx{1.0, 0.0}, expi(1, t), expi(p.d(), t)};
    Matrix3c m;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m(r, c) = base(r, c) * twist[c];
    return m;
}

}  // namespace mclaims
