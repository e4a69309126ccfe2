#include "mclaims/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "mclaims/charfn.hpp"
#include "mclaims/error.hpp"
#include "mclaims/exact.hpp"
#include "mclaims/numeric.hpp"
#include "mclaims/parallel.hpp"

namespace mclaims {

// ============================================================ boxes

std::string BoxSpec::describe() const {
    std::ostringstream os;
    os << alphas.size() << "a x " << betas.size() << "b x " << gammas.size() << "g x " << ds.size() << "d (c0=" << c0
       << ")";
    return os.str();
}

BoxSpec default_box(double c0) {
    return {{0.1, 0.3, 0.5, 0.7, 0.9 * c0}, {0.01, 0.05, 0.1, 0.15}, {0.005, 0.02, 0.035, 0.05}, {1, 3, 10}, c0};
}

BoxSpec uniform_box(int count, std::vector<int> ds, double c0) {
    require(count >= 1, ErrorCode::config, "uniform box needs at least one value per axis");
    BoxSpec box;
    box.c0 = c0;
    box.ds = std::move(ds);
    for (int i = 1; i <= count; ++i) {
        const double f = static_cast<double>(i) / count;
        box.betas.push_back(0.15 * f);
        box.gammas.push_back(0.05 * f);
        // keep alpha + beta < 1 at the largest beta
        box.alphas.push_back(std::min(c0, 0.84) * f);
    }
    return box;
}

std::vector<ModelParams> box_points(const BoxSpec& box) {
    std::vector<ModelParams> out;
    out.reserve(box.alphas.size() * box.betas.size() * box.gammas.size() * box.ds.size());
    for (double a : box.alphas)
        for (double b : box.betas)
            for (double g : box.gammas)
                for (int d : box.ds) out.push_back(make_params(a, b, g, d, box.c0));
    return out;
}

nlohmann::json to_json(const BoxSpec& box) {
    return {{"alphas", box.alphas}, {"betas", box.betas}, {"gammas", box.gammas}, {"ds", box.ds}, {"c0", box.c0}};
}

BoxSpec box_from_json(const nlohmann::json& j) {
    BoxSpec box = default_box(j.value("c0", 0.9));
    if (j.contains("alphas")) box.alphas = j.at("alphas").get<std::vector<double>>();
    if (j.contains("betas")) box.betas = j.at("betas").get<std::vector<double>>();
    if (j.contains("gammas")) box.gammas = j.at("gammas").get<std::vector<double>>();
    if (j.contains("ds")) box.ds = j.at("ds").get<std::vector<int>>();
    return box;
}

// ============================================================ bound catalogue

std::string to_string(BoundKind k) {
    switch (k) {
        case BoundKind::exact: return "exact";
        case BoundKind::upper_constant: return "upper_constant";
        case BoundKind::lower_constant: return "lower_constant";
    }
    return "?";
}

namespace {

struct LhsShape {
    double lhs;
    double shape;
};

using PointFn = std::function<LhsShape(const ModelParams&, double t, int n, double h)>;
using IntegrandFn = std::function<double(const ModelParams&, double t, int n)>;
using ShapeFn = std::function<double(const ModelParams&, int n)>;

struct LemmaImpl {
    LemmaSpec spec;
    PointFn point;          // pointwise checks
    IntegrandFn integrand;  // integral checks
    ShapeFn shape;          // integral checks
};

template <class F>
cplx central_diff(F&& f, double t, double h) {
    return (f(t + h) - f(t - h)) / (2.0 * h);
}

// Root, eigenvalues and weights straight from the closed forms, without the branch guard.
struct Raw {
    cplx root, lambda1, lambda2;
};

Raw raw_spectrum(const ModelParams& p, double t) {
    const cplx e = expi(1, t);
    const cplx s = 1.0 - p.gamma() + p.beta() * e;
    const cplx root = std::sqrt(discriminant(p, t));
    return {root, 0.5 * (s + root), 0.5 * (s - root)};
}

double dp1(const ModelParams& p) { return static_cast<double>(p.d() + 1); }
double re_h_minus_1(const ModelParams& p, double t) { return base_transforms(p, t).H_minus_1.real(); }
double long_shape(const ModelParams& p, double t) {
    const double g = p.gamma(), a = p.alpha();
    const double x = -re_h_minus_1(p, t);  // 1 - Re H
    return std::pow(g, 4) * (x * x + std::pow(a, 4));
}
double sep_contraction_shape(const ModelParams& p, double t) {
    return p.gamma() * (-re_h_minus_1(p, t) + p.alpha());
}
double one_plus_bg(const ModelParams& p) { return 1.0 + p.beta() / p.gamma(); }

cplx w1_at(const ModelParams& p, double t) { return eigen_weights(p, t).w1; }
cplx w2_at(const ModelParams& p, double t) { return eigen_weights(p, t).w2; }
cplx l1_at(const ModelParams& p, double t) { return eigen_weights(p, t).lambda1; }
cplx l2_at(const ModelParams& p, double t) { return eigen_weights(p, t).lambda2; }
cplx v_at(const ModelParams& p, double t) { return approx_transforms(p, t, 1).V; }
cplx v1_at(const ModelParams& p, double t) { return approx_transforms(p, t, 1).V1; }
cplx v2_at(const ModelParams& p, double t) { return approx_transforms(p, t, 1).V2; }
cplx g1_at(const ModelParams& p, double t) { return approx_transforms(p, t, 1).G1; }
cplx delta1_at(const ModelParams& p, double t) { return correction_transforms(p, t).Delta1; }

LemmaImpl point(std::string id, std::string statement, BoundKind kind, bool sep, PointFn f, bool uses_n = false) {
    LemmaImpl li;
    li.spec = {std::move(id), std::move(statement), kind, sep, uses_n, false};
    li.point = std::move(f);
    return li;
}

LemmaImpl integral(std::string id, std::string statement, bool sep, IntegrandFn f, ShapeFn s) {
    LemmaImpl li;
    li.spec = {std::move(id), std::move(statement), BoundKind::upper_constant, sep, true, true};
    li.integrand = std::move(f);
    li.shape = std::move(s);
    return li;
}

const std::vector<LemmaImpl>& catalog_impl() {
    static const std::vector<LemmaImpl> table = [] {
        using K = BoundKind;
        std::vector<LemmaImpl> v;

        // ---- bounds with explicit numeric constants
        v.push_back(point("sqrtd-band", "|sqrtD - (1+g-b e^it)| <= 5.81 g", K::exact, false,
                          [](const ModelParams& p, double t, int, double) {
                              const cplx e = expi(1, t);
                              const Raw r = raw_spectrum(p, t);
                              return LhsShape{std::abs(r.root - (1.0 + p.gamma() - p.beta() * e)), 5.81 * p.gamma()};
                          }));
        v.push_back(point("lambda2-bound", "|lambda2| <= b + 4g", K::exact, false,
                          [](const ModelParams& p, double t, int, double) {
                              return LhsShape{std::abs(raw_spectrum(p, t).lambda2), p.beta() + 4.0 * p.gamma()};
                          }));
        v.push_back(point("lambda2-cap", "|lambda2| <= 0.35", K::exact, false,
                          [](const ModelParams& p, double t, int, double) {
                              return LhsShape{std::abs(raw_spectrum(p, t).lambda2), 0.35};
                          }));
        v.push_back(point("lambda1-contraction", "|lambda1| <= exp{0.4(1-a)g Re(H-1) - 0.2 a g}", K::exact, false,
                          [](const ModelParams& p, double t, int, double) {
                              const double a = p.alpha(), g = p.gamma();
                              const double x = 0.4 * (1.0 - a) * g * re_h_minus_1(p, t) - 0.2 * a * g;
                              return LhsShape{std::abs(raw_spectrum(p, t).lambda1), std::exp(x)};
                          }));
        v.push_back(point("lambda1-contraction-linear", "|lambda1| <= 1 + 0.4(1-a)g Re(H-1) - 0.2 a g", K::exact,
                          false, [](const ModelParams& p, double t, int, double) {
                              const double a = p.alpha(), g = p.gamma();
                              const double x = 0.4 * (1.0 - a) * g * re_h_minus_1(p, t) - 0.2 * a * g;
                              return LhsShape{std::abs(raw_spectrum(p, t).lambda1), 1.0 + x};
                          }));
        v.push_back(point("w2-bound", "|W2| <= 2(d+1)|e^it - 1|", K::exact, false,
                          [](const ModelParams& p, double t, int, double) {
                              return LhsShape{std::abs(w2_at(p, t)), 2.0 * dp1(p) * std::abs(expi_minus_one(1, t))};
                          }));
        v.push_back(point("sqrtd-floor", "|sqrtD| >= 0.6", K::exact, false,
                          [](const ModelParams& p, double t, int, double) {
                              return LhsShape{0.6, std::abs(raw_spectrum(p, t).root)};
                          }));
        v.push_back(point("lambda2-gap", "|lambda2 - e^idt| >= 0.65", K::exact, false,
                          [](const ModelParams& p, double t, int, double) {
                              return LhsShape{0.65, std::abs(raw_spectrum(p, t).lambda2 - expi(p.d(), t))};
                          }));
        v.push_back(point("beta-gamma-cap", "b + 4g <= 0.35", K::exact, false,
                          [](const ModelParams& p, double, int, double) {
                              return LhsShape{p.beta() + 4.0 * p.gamma(), 0.35};
                          }));

        // ---- bounds with an unspecified constant C
        v.push_back(point("sqrtd-expansion", "|sqrtD - (2A - 1 + g - b e^it)| <= C g^4 ((1-Re H)^2 + a^4)",
                          K::upper_constant, false, [](const ModelParams& p, double t, int, double) {
                              const cplx e = expi(1, t);
                              const cplx A = correction_transforms(p, t).A;
                              const cplx approx = 2.0 * A - 1.0 + p.gamma() - p.beta() * e;
                              return LhsShape{std::abs(sqrt_D(p, t) - approx), long_shape(p, t)};
                          }));
        v.push_back(point("sqrtd-expansion-derivative", "|(sqrtD)' - (2 Delta1 - 1 + g - b e^it)'| <= C g^3",
                          K::upper_constant, true, [](const ModelParams& p, double t, int, double h) {
                              auto f = [&](double s) {
                                  const cplx e = expi(1, s);
                                  return sqrt_D(p, s) - (2.0 * delta1_at(p, s) - 1.0 + p.gamma() - p.beta() * e);
                              };
                              return LhsShape{std::abs(central_diff(f, t, h)), std::pow(p.gamma(), 3)};
                          }));
        v.push_back(point("lambda1-vs-A", "|lambda1 - A| <= C g^4 ((1-Re H)^2 + a^4)", K::upper_constant, false,
                          [](const ModelParams& p, double t, int, double) {
                              return LhsShape{std::abs(l1_at(p, t) - correction_transforms(p, t).A), long_shape(p, t)};
                          }));
        v.push_back(point("lambda1-vs-delta1", "|lambda1 - Delta1| <= C g^3", K::upper_constant, true,
                          [](const ModelParams& p, double t, int, double) {
                              return LhsShape{std::abs(l1_at(p, t) - delta1_at(p, t)), std::pow(p.gamma(), 3)};
                          }));
        v.push_back(point("lambda1-separation", "|lambda1| <= 1 + C g (Re H - 1 - a)", K::lower_constant, false,
                          [](const ModelParams& p, double t, int, double) {
                              return LhsShape{1.0 - std::abs(l1_at(p, t)), sep_contraction_shape(p, t)};
                          }));
        v.push_back(point("A-contraction", "|A| <= 1 + C g (Re H - 1 - a)", K::lower_constant, false,
                          [](const ModelParams& p, double t, int, double) {
                              return LhsShape{1.0 - std::abs(correction_transforms(p, t).A),
                                              sep_contraction_shape(p, t)};
                          }));
        v.push_back(point("delta1-contraction", "|Delta1| <= 1 - C g", K::lower_constant, true,
                          [](const ModelParams& p, double t, int, double) {
                              return LhsShape{1.0 - std::abs(delta1_at(p, t)), p.gamma()};
                          }));
        v.push_back(point("w1-vs-V", "|W1 - V| <= C (d+1) g |e^it - 1|", K::upper_constant, false,
                          [](const ModelParams& p, double t, int, double) {
                              return LhsShape{std::abs(w1_at(p, t) - v_at(p, t)),
                                              dp1(p) * p.gamma() * std::abs(expi_minus_one(1, t))};
                          }));
        v.push_back(point("w1-vs-V1", "|W1 - V1| <= C (d+1) g |e^it - 1|", K::upper_constant, true,
                          [](const ModelParams& p, double t, int, double) {
                              return LhsShape{std::abs(w1_at(p, t) - v1_at(p, t)),
                                              dp1(p) * p.gamma() * std::abs(expi_minus_one(1, t))};
                          }));
        v.push_back(point("w1-size", "|W1| <= C (d+1) / g", K::upper_constant, true,
                          [](const ModelParams& p, double t, int, double) {
                              return LhsShape{std::abs(w1_at(p, t)), dp1(p) / p.gamma()};
                          }));
        v.push_back(point("w1-derivative", "|W1'| <= C (d+1)(1 + b/g) / g", K::upper_constant, true,
                          [](const ModelParams& p, double t, int, double h) {
                              const cplx d = central_diff([&](double s) { return w1_at(p, s); }, t, h);
                              return LhsShape{std::abs(d), dp1(p) * one_plus_bg(p) / p.gamma()};
                          }));
        v.push_back(point("w2-size", "|W2| <= C (d+1)", K::upper_constant, true,
                          [](const ModelParams& p, double t, int, double) {
                              return LhsShape{std::abs(w2_at(p, t)), dp1(p)};
                          }));
        v.push_back(point("w2-derivative", "|W2'| <= C (d+1)", K::upper_constant, true,
                          [](const ModelParams& p, double t, int, double h) {
                              const cplx d = central_diff([&](double s) { return w2_at(p, s); }, t, h);
                              return LhsShape{std::abs(d), dp1(p)};
                          }));
        v.push_back(point("v2-size", "|V2| <= C (d+1) / g", K::upper_constant, true,
                          [](const ModelParams& p, double t, int, double) {
                              return LhsShape{std::abs(v2_at(p, t)), dp1(p) / p.gamma()};
                          }));
        v.push_back(point("v2-derivative", "|V2'| <= C (d+1)(1 + b/g) / g", K::upper_constant, true,
                          [](const ModelParams& p, double t, int, double h) {
                              const cplx d = central_diff([&](double s) { return v2_at(p, s); }, t, h);
                              return LhsShape{std::abs(d), dp1(p) * one_plus_bg(p) / p.gamma()};
                          }));
        v.push_back(point("w1-vs-V2", "|W1 - V2| <= C (d+1) g", K::upper_constant, true,
                          [](const ModelParams& p, double t, int, double) {
                              return LhsShape{std::abs(w1_at(p, t) - v2_at(p, t)), dp1(p) * p.gamma()};
                          }));
        v.push_back(point("w1-vs-V2-derivative", "|W1' - V2'| <= C (d+1) g (1 + b/g)", K::upper_constant, true,
                          [](const ModelParams& p, double t, int, double h) {
                              const cplx d = central_diff([&](double s) { return w1_at(p, s) - v2_at(p, s); }, t, h);
                              return LhsShape{std::abs(d), dp1(p) * p.gamma() * one_plus_bg(p)};
                          }));
        v.push_back(point("lambda1-decay", "|lambda1| <= exp(-C g)", K::lower_constant, true,
                          [](const ModelParams& p, double t, int, double) {
                              return LhsShape{-std::log(std::abs(l1_at(p, t))), p.gamma()};
                          }));
        v.push_back(point("G1-decay", "|G1| <= exp(-C g)", K::lower_constant, true,
                          [](const ModelParams& p, double t, int, double) {
                              return LhsShape{-approx_transforms(p, t, 1).logG1.real(), p.gamma()};
                          }));
        v.push_back(point("lambda1-derivative", "|lambda1'| <= C g", K::upper_constant, true,
                          [](const ModelParams& p, double t, int, double h) {
                              const cplx d = central_diff([&](double s) { return l1_at(p, s); }, t, h);
                              return LhsShape{std::abs(d), p.gamma()};
                          }));
        v.push_back(point("G1-derivative", "|G1'| <= C g", K::upper_constant, true,
                          [](const ModelParams& p, double t, int, double h) {
                              const cplx d = central_diff([&](double s) { return g1_at(p, s); }, t, h);
                              return LhsShape{std::abs(d), p.gamma()};
                          }));
        v.push_back(point("lambda2-derivative", "|lambda2'| <= C (b + 4g)", K::upper_constant, true,
                          [](const ModelParams& p, double t, int, double h) {
                              const cplx d = central_diff([&](double s) { return l2_at(p, s); }, t, h);
                              return LhsShape{std::abs(d), p.beta() + 4.0 * p.gamma()};
                          }));
        v.push_back(point("lambda1-vs-G1", "|lambda1 - G1| <= C g^3", K::upper_constant, true,
                          [](const ModelParams& p, double t, int, double) {
                              return LhsShape{std::abs(l1_at(p, t) - g1_at(p, t)), std::pow(p.gamma(), 3)};
                          }));
        v.push_back(point(
            "power-gap-derivative", "|(lambda1^n - G1^n)'| <= C g^2", K::upper_constant, true,
            [](const ModelParams& p, double t, int n, double h) {
                const double nn = n;
                auto f = [&](double s) {
                    return ipow(l1_at(p, s), static_cast<std::uint64_t>(n)) -
                           std::exp(nn * approx_transforms(p, s, 1).logG1);
                };
                return LhsShape{std::abs(central_diff(f, t, h)), p.gamma() * p.gamma()};
            },
            true));
        v.push_back(point("death-gap-lambda1", "|1 - e^idt| / |lambda1 - e^idt| <= C", K::upper_constant, true,
                          [](const ModelParams& p, double t, int, double) {
                              return LhsShape{std::abs(expi_minus_one(p.d(), t)),
                                              std::abs(l1_at(p, t) - expi(p.d(), t))};
                          }));
        v.push_back(point("death-gap-delta1", "|1 - e^idt| / |Delta1 - e^idt| <= C", K::upper_constant, true,
                          [](const ModelParams& p, double t, int, double) {
                              return LhsShape{std::abs(expi_minus_one(p.d(), t)),
                                              std::abs(delta1_at(p, t) - expi(p.d(), t))};
                          }));

        // ---- integral bounds; the exponential factors are dropped from the shapes
        auto pow_l1 = [](const ModelParams& p, double t, int n) {
            return std::pow(std::abs(l1_at(p, t)), static_cast<double>(n));
        };
        v.push_back(integral(
            "int-w1-vs-V-kolmogorov", "int |lambda1|^n |W1 - V| / |e^it - 1| <= C (d+1) sqrt(g/n)", false,
            [=](const ModelParams& p, double t, int n) {
                return pow_l1(p, t, n) * std::abs(w1_at(p, t) - v_at(p, t)) / std::abs(expi_minus_one(1, t));
            },
            [](const ModelParams& p, int n) { return dp1(p) * std::sqrt(p.gamma() / n); }));
        v.push_back(integral(
            "int-w1-vs-V-local", "int |lambda1|^n |W1 - V| <= C (d+1) / n", false,
            [=](const ModelParams& p, double t, int n) { return pow_l1(p, t, n) * std::abs(w1_at(p, t) - v_at(p, t)); },
            [](const ModelParams& p, int n) { return dp1(p) / n; }));
        v.push_back(integral(
            "int-w1-vs-V1-kolmogorov", "int |lambda1|^n |W1 - V1| / |e^it - 1| <= C (d+1) g", true,
            [=](const ModelParams& p, double t, int n) {
                return pow_l1(p, t, n) * std::abs(w1_at(p, t) - v1_at(p, t)) / std::abs(expi_minus_one(1, t));
            },
            [](const ModelParams& p, int) { return dp1(p) * p.gamma(); }));
        auto power_gap = [](const ModelParams& p, double t, int n, bool first_order) {
            const ApproxTransforms x = approx_transforms(p, t, 1);
            const cplx l = ipow(l1_at(p, t), static_cast<std::uint64_t>(n));
            const cplx g = std::exp(static_cast<double>(n) * (first_order ? x.logG1 : x.logG));
            return std::abs(l - g) * std::abs(first_order ? x.V1 : x.V);
        };
        v.push_back(integral(
            "int-G-kolmogorov", "int |V| |lambda1^n - G^n| / |e^it - 1| <= C (d+1) g sqrt(g/n)", false,
            [=](const ModelParams& p, double t, int n) {
                return power_gap(p, t, n, false) / std::abs(expi_minus_one(1, t));
            },
            [](const ModelParams& p, int n) { return dp1(p) * p.gamma() * std::sqrt(p.gamma() / n); }));
        v.push_back(integral(
            "int-G-local", "int |V| |lambda1^n - G^n| <= C (d+1) g / n", false,
            [=](const ModelParams& p, double t, int n) { return power_gap(p, t, n, false); },
            [](const ModelParams& p, int n) { return dp1(p) * p.gamma() / n; }));
        v.push_back(integral(
            "int-G1-kolmogorov", "int |V1| |lambda1^n - G1^n| / |e^it - 1| <= C (d+1) g", true,
            [=](const ModelParams& p, double t, int n) {
                return power_gap(p, t, n, true) / std::abs(expi_minus_one(1, t));
            },
            [](const ModelParams& p, int) { return dp1(p) * p.gamma(); }));
        return v;
    }();
    return table;
}

const LemmaImpl& impl_for(const std::string& id) {
    for (const auto& li : catalog_impl())
        if (li.spec.id == id) return li;
    fail(ErrorCode::config, "unknown bound id '" + id + "'");
}

// Nodes needed to resolve features of width ~ alpha*gamma around t = 0.
std::int64_t integral_points(const ModelParams& p, std::int64_t base) {
    const double want = 64.0 / (p.alpha() * p.gamma());
    return std::max(base, next_pow2(static_cast<std::int64_t>(std::min(want, 131072.0))));
}

struct PointResult {
    double ratio = 0.0;
    double t = 0.0;
    int n = 0;
    bool used = false;
    std::optional<std::string> failure;
};

PointResult evaluate_point(const LemmaImpl& li, const ModelParams& p, const CheckOptions& opt, std::int64_t t_points) {
    const bool lower = li.spec.kind == BoundKind::lower_constant;
    PointResult best;
    best.ratio = lower ? std::numeric_limits<double>::infinity() : 0.0;
    best.used = true;
    const std::vector<int> ns = li.spec.uses_n ? opt.n_values : std::vector<int>{1};
    auto consider = [&](double ratio, double t, int n) {
        if (std::isnan(ratio)) ratio = std::numeric_limits<double>::infinity();
        if (lower ? ratio < best.ratio : ratio > best.ratio) {
            best.ratio = ratio;
            best.t = t;
            best.n = n;
        }
    };
    try {
        if (li.spec.integral) {
            const std::int64_t N = integral_points(p, t_points);
            const double dt = 2.0 * std::numbers::pi / static_cast<double>(N);
            for (int n : ns) {
                double s = 0.0;
                for (std::int64_t j = 0; j < N; ++j) s += li.integrand(p, midpoint_node(j, N), n);
                consider(s * dt / li.shape(p, n), 0.0, n);
            }
        } else {
            const double h = std::min(opt.derivative_step, std::numbers::pi / (8.0 * static_cast<double>(t_points)));
            for (int n : ns)
                for (std::int64_t j = 0; j < t_points; ++j) {
                    const double t = midpoint_node(j, t_points);
                    const LhsShape v = li.point(p, t, n, h);
                    consider(v.lhs / v.shape, t, n);
                }
        }
    } catch (const Error& e) {
        best.failure = e.what();
        best.ratio = lower ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return best;
}

BoundCheck run_check(const LemmaImpl& li, const std::vector<ModelParams>& grid, const CheckOptions& opt,
                     std::int64_t t_points) {
    BoundCheck out;
    out.lemma_id = li.spec.id;
    out.statement = li.spec.statement;
    out.kind = li.spec.kind;
    out.t_points = t_points;
    std::vector<PointResult> results(grid.size());
    parallel_for(
        static_cast<std::int64_t>(grid.size()),
        [&](std::int64_t i) {
            const ModelParams& p = grid[static_cast<std::size_t>(i)];
            if (li.spec.needs_separation && p.alpha() < opt.C2) return;
            results[static_cast<std::size_t>(i)] = evaluate_point(li, p, opt, t_points);
        },
        1);

    const bool lower = li.spec.kind == BoundKind::lower_constant;
    out.max_ratio = lower ? std::numeric_limits<double>::infinity() : 0.0;
    bool any = false;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const PointResult& r = results[i];
        if (!r.used) {
            ++out.points_skipped;
            continue;
        }
        out.points_checked += li.spec.uses_n ? opt.n_values.size() : 1;
        if (r.failure && !out.failure) out.failure = *r.failure;
        if (!any || (lower ? r.ratio < out.max_ratio : r.ratio > out.max_ratio)) {
            any = true;
            out.max_ratio = r.ratio;
            out.worst_params = grid[i].raw();
            out.worst_t = r.t;
            out.worst_n = r.n;
        }
    }
    if (!any) out.max_ratio = std::numeric_limits<double>::quiet_NaN();
    if (li.spec.kind == BoundKind::exact) out.violated = out.failure.has_value() || !(out.max_ratio <= 1.0);
    return out;
}

double json_number(double x) { return std::isfinite(x) ? x : std::numeric_limits<double>::quiet_NaN(); }

}  // namespace

const std::vector<LemmaSpec>& lemma_catalog() {
    static const std::vector<LemmaSpec> specs = [] {
        std::vector<LemmaSpec> v;
        for (const auto& li : catalog_impl()) v.push_back(li.spec);
        return v;
    }();
    return specs;
}

const LemmaSpec& lemma_spec(const std::string& id) { return impl_for(id).spec; }

std::vector<std::string> exact_constant_ids() {
    std::vector<std::string> ids;
    for (const auto& s : lemma_catalog())
        if (s.kind == BoundKind::exact) ids.push_back(s.id);
    return ids;
}

std::vector<std::string> constant_fit_ids() {
    std::vector<std::string> ids;
    for (const auto& s : lemma_catalog())
        if (s.kind != BoundKind::exact) ids.push_back(s.id);
    return ids;
}

nlohmann::json to_json(const BoundCheck& c) {
    nlohmann::json j{{"lemma_id", c.lemma_id},
                     {"statement", c.statement},
                     {"kind", to_string(c.kind)},
                     {"params_box", c.params_box},
                     {"points_checked", c.points_checked},
                     {"points_skipped", c.points_skipped},
                     {"max_ratio", json_number(c.max_ratio)},
                     {"worst_point", {{"params", c.worst_params}, {"t", c.worst_t}, {"n", c.worst_n}}},
                     {"t_points", c.t_points}};
    j["violated"] = c.violated ? nlohmann::json(*c.violated) : nlohmann::json(nullptr);
    if (c.refined_ratio) j["refined_ratio"] = json_number(*c.refined_ratio);
    if (c.failure) j["failure"] = *c.failure;
    return j;
}

BoundCheck check_lemma(const std::string& lemma_id, const std::vector<ModelParams>& grid, const CheckOptions& opt,
                       const std::string& box_label) {
    require(opt.t_points >= 2 && opt.t_points % 2 == 0, ErrorCode::config, "t grid needs an even node count");
    const LemmaImpl& li = impl_for(lemma_id);
    if (li.spec.uses_n) {
        require(!opt.n_values.empty(), ErrorCode::config, "bound '" + lemma_id + "' needs n values");
        for (int n : opt.n_values) require(n >= 1, ErrorCode::config, "n values must be positive");
    }
    BoundCheck out = run_check(li, grid, opt, opt.t_points);
    out.params_box = box_label;
    if (opt.refine) out.refined_ratio = run_check(li, grid, opt, 2 * opt.t_points).max_ratio;
    return out;
}

// ============================================================ approximation errors

std::string to_string(Regime r) {
    switch (r) {
        case Regime::general: return "general";
        case Regime::alpha_separated: return "alpha-separated";
        case Regime::death_dominated: return "death-dominated";
        case Regime::total_variation: return "total-variation";
        case Regime::nonuniform: return "nonuniform";
    }
    return "?";
}

Regime parse_regime(const std::string& s) {
    for (Regime r : {Regime::general, Regime::alpha_separated, Regime::death_dominated, Regime::total_variation,
                     Regime::nonuniform})
        if (s == to_string(r)) return r;
    fail(ErrorCode::config, "unknown regime '" + s +
                                "' (expected general, alpha-separated, death-dominated, total-variation, nonuniform)");
}

ApproxVariant regime_variant(Regime r) {
    switch (r) {
        case Regime::general: return ApproxVariant::GV_E;
        case Regime::alpha_separated: return ApproxVariant::G1V1_E;
        case Regime::death_dominated: return ApproxVariant::E_only;
        case Regime::total_variation:
        case Regime::nonuniform: return ApproxVariant::G1V2_E;
    }
    return ApproxVariant::GV_E;
}

nlohmann::json to_json(const VerifyConfig& c) {
    return {{"C2", c.C2},
            {"gamma_floor", c.gamma_floor},
            {"guard", c.inversion.guard},
            {"grid_n", c.inversion.min_points},
            {"max_doublings", c.inversion.max_doublings},
            {"tv_tolerance", c.inversion.tv_tolerance},
            {"spectral_points", c.spectral_points},
            {"spectral_tolerance", c.spectral_tolerance},
            {"inversion_bounds", c.inversion_bounds},
            {"bound_a", c.bound_a},
            {"bound_b", c.bound_b}};
}

void from_json(const nlohmann::json& j, VerifyConfig& c) {
    c.C2 = j.value("C2", c.C2);
    c.gamma_floor = j.value("gamma_floor", c.gamma_floor);
    c.inversion.guard = j.value("guard", c.inversion.guard);
    c.inversion.min_points = j.value("grid_n", c.inversion.min_points);
    c.inversion.max_doublings = j.value("max_doublings", c.inversion.max_doublings);
    c.inversion.tv_tolerance = j.value("tv_tolerance", c.inversion.tv_tolerance);
    c.spectral_points = j.value("spectral_points", c.spectral_points);
    c.spectral_tolerance = j.value("spectral_tolerance", c.spectral_tolerance);
    c.inversion_bounds = j.value("inversion_bounds", c.inversion_bounds);
    c.bound_a = j.value("bound_a", c.bound_a);
    c.bound_b = j.value("bound_b", c.bound_b);
}

void check_hypothesis(const ModelParams& p, Regime r, const VerifyConfig& cfg) {
    if (r == Regime::general) return;
    if (p.alpha() < cfg.C2) {
        std::ostringstream os;
        os << to_string(r) << " regime needs alpha >= C2 = " << cfg.C2 << ", got alpha = " << p.alpha();
        fail(ErrorCode::hypothesis, os.str());
    }
    if (r == Regime::death_dominated && p.gamma() < cfg.gamma_floor) {
        std::ostringstream os;
        os << "death-dominated regime needs gamma >= " << cfg.gamma_floor << ", got gamma = " << p.gamma();
        fail(ErrorCode::hypothesis, os.str());
    }
}

cplx difference_transform(const ModelParams& p, int n, ApproxVariant v, double t) {
    return exact_charfn(p, n, t) - approximation_transform(p, n, v, t);
}

LatticeMeasure difference_measure(const ModelParams& p, int n, ApproxVariant v, const InversionConfig& icfg,
                                  AliasingProbe* probe) {
    AliasingProbe pr = approximation_measure(p, n, v, icfg);
    LatticeMeasure diff = exact_distribution_dp(p, n) - pr.measure;
    if (probe) *probe = std::move(pr);
    return diff;
}

namespace {

double spectral_residual(const ModelParams& p, int n, std::int64_t points) {
    double worst = 0.0;
    for (std::int64_t j = 0; j < points; ++j) {
        const double t = midpoint_node(j, points);
        const SpectralParts sp = eigen_weights(p, t);
        if (sp.degenerate) continue;
        worst = std::max(worst, std::abs(exact_charfn(p, n, t) - sp.perron(n)));
    }
    return worst;
}

double primary_error(Regime r, const NormReport& rep) {
    switch (r) {
        case Regime::general:
        case Regime::alpha_separated: return rep.kolmogorov;
        case Regime::death_dominated:
        case Regime::total_variation: return rep.total_variation;
        case Regime::nonuniform: {
            double m = 0.0;
            for (const auto& [k, v] : rep.nonuniform_local) m = std::max(m, v);
            return m;
        }
    }
    return rep.total_variation;
}

}  // namespace

nlohmann::json to_json(const TheoremRun& r) {
    nlohmann::json j{{"regime", to_string(r.regime)},
                     {"params", r.params},
                     {"n", r.n},
                     {"variant", to_string(r.variant)},
                     {"report", to_json(r.report)},
                     {"primary_error", r.primary_error},
                     {"N_used", r.n_used},
                     {"tv_delta", r.tv_delta},
                     {"spectral_residual", r.spectral_residual},
                     {"approximant_mass", r.approximant_mass}};
    if (r.inversion_bounds) j["inversion_bounds"] = to_json(*r.inversion_bounds);
    return j;
}

TheoremRun theorem_error(const ModelParams& p, int n, Regime r, const VerifyConfig& cfg) {
    require(n >= 1, ErrorCode::config, "n must be >= 1");
    check_hypothesis(p, r, cfg);
    TheoremRun run;
    run.regime = r;
    run.params = p.raw();
    run.n = n;
    run.variant = regime_variant(r);

    AliasingProbe probe;
    const LatticeMeasure diff = difference_measure(p, n, run.variant, cfg.inversion, &probe);
    run.n_used = probe.n_used;
    run.tv_delta = probe.tv_delta_last_doubling;
    run.approximant_mass = probe.measure.mass();

    const std::int64_t nd = static_cast<std::int64_t>(n) * p.d();
    run.report = norm_report(diff, 0.0, std::int64_t{1}, nd);
    run.primary_error = primary_error(r, run.report);

    run.spectral_residual = spectral_residual(p, n, cfg.spectral_points);
    if (!(run.spectral_residual <= cfg.spectral_tolerance)) {
        std::ostringstream os;
        os << "spectral identity residual " << run.spectral_residual << " exceeds " << cfg.spectral_tolerance;
        fail(ErrorCode::numerical, os.str());
    }
    if (cfg.inversion_bounds)
        run.inversion_bounds = inversion_bounds([&](double t) { return difference_transform(p, n, run.variant, t); }, run.n_used,
                                   cfg.bound_a, cfg.bound_b);
    return run;
}

// ============================================================ rate fits

std::string to_string(PolicyKind k) {
    switch (k) {
        case PolicyKind::fixed: return "fixed";
        case PolicyKind::alpha_gamma_inverse_n: return "alpha-gamma-inverse-n";
        case PolicyKind::gamma_inverse_n: return "gamma-inverse-n";
    }
    return "?";
}

PolicyKind parse_policy(const std::string& s) {
    for (PolicyKind k : {PolicyKind::fixed, PolicyKind::alpha_gamma_inverse_n, PolicyKind::gamma_inverse_n})
        if (s == to_string(k)) return k;
    fail(ErrorCode::config, "unknown scaling policy '" + s + "' (expected fixed, alpha-gamma-inverse-n, gamma-inverse-n)");
}

RawParams ScalingPolicy::at(int n) const {
    RawParams r = base;
    switch (kind) {
        case PolicyKind::fixed: break;
        case PolicyKind::alpha_gamma_inverse_n: r.alpha = c / (base.gamma * n); break;
        case PolicyKind::gamma_inverse_n: r.gamma = c / n; break;
    }
    return r;
}

std::string ScalingPolicy::describe() const {
    std::ostringstream os;
    os.precision(12);
    os << to_string(kind) << " (alpha=" << base.alpha << ", beta=" << base.beta << ", gamma=" << base.gamma
       << ", d=" << base.d;
    if (kind != PolicyKind::fixed) os << ", c=" << c;
    os << ")";
    return os.str();
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    require(x.size() == y.size() && x.size() >= 2, ErrorCode::config, "line fit needs two or more points");
    const double m = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    require(sxx > 0, ErrorCode::config, "line fit needs distinct abscissae");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r_squared = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return f;
}

FitScale regime_scale(Regime r) {
    return r == Regime::death_dominated ? FitScale::log_linear : FitScale::log_log;
}

nlohmann::json to_json(const RateFit& f) {
    return {{"regime", to_string(f.regime)},
            {"policy", f.policy},
            {"scale", f.scale == FitScale::log_log ? "log-log" : "log-linear"},
            {"n_values", f.n_values},
            {"errors", f.errors},
            {"N_used", f.n_used},
            {"slope", f.slope},
            {"intercept", f.intercept},
            {"r_squared", f.r_squared}};
}

RateFit fit_errors(Regime r, const std::string& policy, const std::vector<int>& n_values,
                   const std::vector<double>& errors) {
    require(n_values.size() >= 5, ErrorCode::config, "rate fit needs at least 5 n values");
    require(errors.size() == n_values.size(), ErrorCode::config, "one error per n value");
    const double ratio = static_cast<double>(n_values[1]) / n_values[0];
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        require(n_values[i] >= 1, ErrorCode::config, "n values must be positive");
        if (i > 0) {
            require(n_values[i] > n_values[i - 1], ErrorCode::config, "n values must be strictly increasing");
            const double q = static_cast<double>(n_values[i]) / n_values[i - 1];
            require(std::abs(q - ratio) <= 1e-9 * ratio, ErrorCode::config, "n values must form a geometric sequence");
        }
        if (!(errors[i] > 0.0) || !std::isfinite(errors[i])) {
            std::ostringstream os;
            os << "degenerate error " << errors[i] << " at n=" << n_values[i] << "; cannot take logarithms";
            fail(ErrorCode::numerical, os.str());
        }
    }
    RateFit f;
    f.regime = r;
    f.policy = policy;
    f.scale = regime_scale(r);
    f.n_values = n_values;
    f.errors = errors;
    std::vector<double> x, y;
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        x.push_back(f.scale == FitScale::log_log ? std::log(static_cast<double>(n_values[i])) : n_values[i]);
        y.push_back(std::log(errors[i]));
    }
    const LineFit lf = fit_line(x, y);
    f.slope = lf.slope;
    f.intercept = lf.intercept;
    f.r_squared = lf.r_squared;
    return f;
}

RateFit rate_fit(Regime r, const ScalingPolicy& policy, const std::vector<int>& n_values, const VerifyConfig& cfg) {
    std::vector<double> errors;
    std::vector<std::int64_t> used;
    for (int n : n_values) {
        const ModelParams p = make_params(policy.at(n));
        const TheoremRun run = theorem_error(p, n, r, cfg);
        errors.push_back(run.primary_error);
        used.push_back(run.n_used);
    }
    RateFit f = fit_errors(r, policy.describe(), n_values, errors);
    f.n_used = std::move(used);
    return f;
}

// ============================================================ empirical constants

std::map<std::string, double> bound_ratios(const TheoremRun& run, const ModelParams& p, double kappa) {
    const double a = p.alpha(), b = p.beta(), g = p.gamma(), d = p.d(), n = run.n;
    const double dp = d + 1.0;
    const double geo = std::pow(b + 4.0 * g, n);
    const NormReport& rep = run.report;
    std::map<std::string, double> out;
    switch (run.regime) {
        case Regime::general: {
            const double e = std::exp(-kappa * n * g * a);
            out["kolmogorov"] = rep.kolmogorov / (dp * (e * std::sqrt(g / n) + geo));
            out["local"] = rep.local / (dp * (e / n + geo));
            out["kolmogorov_uniform"] = rep.kolmogorov / (dp / std::sqrt(n));
            break;
        }
        case Regime::alpha_separated:
            out["kolmogorov"] = rep.kolmogorov / (dp * (g * std::exp(-kappa * n * g) + geo));
            break;
        case Regime::death_dominated:
            out["total_variation"] = rep.total_variation / (dp * std::exp(-kappa * n));
            break;
        case Regime::total_variation: {
            const double e = std::exp(-kappa * n * g);
            out["total_variation"] = rep.total_variation / (dp * (g * e * (1.0 + b / g) + n * geo));
            out["total_variation_rate"] = rep.total_variation / (dp * e * (1.0 + b / g) / n);
            break;
        }
        case Regime::nonuniform: {
            const double e = std::exp(-kappa * n * g);
            double loc = 0.0, df = 0.0;
            for (const auto& [k, v] : rep.nonuniform_local) {
                const double kk = static_cast<double>(k);
                loc = std::max(loc, (v / kk) * n * (b + (kk + 1.0) * g) / (dp * e * (b + g)));
            }
            for (const auto& [k, v] : rep.nonuniform_df) {
                const double kk = static_cast<double>(k);
                df = std::max(df, (v / kk) * n * (1.0 + kk * g * g) / (d * d * e));
            }
            out["nonuniform_local"] = loc;
            out["nonuniform_df"] = df;
            break;
        }
    }
    return out;
}

nlohmann::json to_json(const EmpiricalConstant& e) {
    nlohmann::json worst = nlohmann::json::object();
    for (const auto& [k, v] : e.worst) worst[k] = {{"params", v.first}, {"n", v.second}};
    return {{"regime", to_string(e.regime)},
            {"exponent_constant", e.exponent_constant},
            {"constants", e.constants},
            {"worst", worst},
            {"points", e.points}};
}

EmpiricalConstant empirical_constant(Regime r, const std::vector<std::pair<ModelParams, int>>& grid, double kappa,
                                     const VerifyConfig& cfg) {
    for (const auto& [p, n] : grid) check_hypothesis(p, r, cfg);
    std::vector<std::map<std::string, double>> ratios(grid.size());
    parallel_for(
        static_cast<std::int64_t>(grid.size()),
        [&](std::int64_t i) {
            const auto& [p, n] = grid[static_cast<std::size_t>(i)];
            ratios[static_cast<std::size_t>(i)] = bound_ratios(theorem_error(p, n, r, cfg), p, kappa);
        },
        1);
    EmpiricalConstant out;
    out.regime = r;
    out.exponent_constant = kappa;
    out.points = grid.size();
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (const auto& [key, v] : ratios[i]) {
            auto it = out.constants.find(key);
            if (it == out.constants.end() || v > it->second) {
                out.constants[key] = v;
                out.worst[key] = {grid[i].first.raw(), grid[i].second};
            }
        }
    return out;
}

double fit_exponent_constant(const ModelParams& p, const std::vector<int>& n_values, const VerifyConfig& cfg) {
    ScalingPolicy policy;
    policy.base = p.raw();
    return -rate_fit(Regime::death_dominated, policy, n_values, cfg).slope;
}

}  // namespace mclaims
