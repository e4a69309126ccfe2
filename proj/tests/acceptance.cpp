// Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mclaims/charfn.hpp"
#include "mclaims/exact.hpp"
#include "mclaims/inversion.hpp"
#include "mclaims/norms.hpp"
#include "mclaims/verify.hpp"
#include "support.hpp"

using namespace mclaims;

namespace {

constexpr double oracle_tv_tol = 1e-12;
constexpr double oracle_charfn_tol = 1e-11;
constexpr double spectral_tol = 1e-10;
constexpr double min_r_squared = 0.98;
constexpr double sqrt_rate_band[2] = {-0.80, -0.30};
constexpr double inverse_rate_band[2] = {-1.35, -0.70};
constexpr double refinement_band = 0.10;
constexpr double quadrature_slack = 1.01;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
    if (!ok) ++failures;
    std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

/// A difference measure F_n - approximant kept for the inversion-inequality check.
struct Produced {
    ModelParams p;
    int n;
    ApproxVariant v;
    LatticeMeasure diff;
    std::int64_t n_used;
};

std::vector<Produced> produced;

const Produced& produce(const ModelParams& p, int n, ApproxVariant v, const InversionConfig& cfg = {}) {
    AliasingProbe probe;
    LatticeMeasure diff = difference_measure(p, n, v, cfg, &probe);
    produced.push_back({p, n, v, std::move(diff), probe.n_used});
    return produced.back();
}

std::vector<int> doubling(int from, int to) {
    std::vector<int> ns;
    for (int n = from; n <= to; n *= 2) ns.push_back(n);
    return ns;
}

void oracle_equivalence() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(20261018);
    double worst_tv = 0.0, worst_cf = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const ModelParams p = testing::random_params(rng);
        for (int n = 1; n <= 10; ++n) {
            const LatticeMeasure dp = exact_distribution_dp(p, n);
            worst_tv = std::max(worst_tv, testing::tv_distance(dp, exact_distribution_enum(p, n)));
            const CharFnGrid dft = transform_of(dp, 256);
            for (std::int64_t j = 0; j < dft.n_points; ++j)
                worst_cf = std::max(worst_cf, std::abs(dft.values[static_cast<std::size_t>(j)] - exact_charfn(p, n, dft.t(j))));
        }
    }
    const double secs = seconds_since(t0);
    report(1, worst_tv <= oracle_tv_tol && worst_cf <= oracle_charfn_tol && secs < 60.0, "oracle equivalence",
           "max TV " + fmt("%.2e", worst_tv) + ", max charfn error " + fmt("%.2e", worst_cf) + ", " +
               fmt("%.1f", secs) + " s");
}

void spectral_identity() {
    const auto t0 = Clock::now();
    const std::vector<double> ts = midpoint_grid(512);
    double worst = 0.0;
    std::size_t degenerate = 0;
    for (const ModelParams& p : box_points(default_box())) {
        for (double t : ts) {
            const SpectralParts s = eigen_weights(p, t);
            if (s.degenerate) {
                ++degenerate;
                continue;
            }
            for (int n : {1, 4, 16, 64}) worst = std::max(worst, std::abs(exact_charfn(p, n, t) - s.perron(n)));
        }
    }
    const double secs = seconds_since(t0);
    report(2, worst <= spectral_tol && degenerate == 0 && secs < 60.0, "spectral identity on the default box",
           "max residual " + fmt("%.2e", worst) + ", degenerate nodes " + std::to_string(degenerate) + ", " +
               fmt("%.1f", secs) + " s");
}

void exact_constants() {
    const auto t0 = Clock::now();
    const std::vector<ModelParams> box = box_points(default_box());
    std::size_t violated = 0, failed = 0;
    std::string worst_id;
    double worst = 0.0;
    for (const std::string& id : exact_constant_ids()) {
        const BoundCheck c = check_lemma(id, box, {}, "default");
        if (c.failure) ++failed;
        if (c.violated.value_or(true)) ++violated;
        if (c.max_ratio > worst) worst = c.max_ratio, worst_id = id;
    }
    const double secs = seconds_since(t0);
    report(3, violated == 0 && failed == 0 && secs < 300.0, "exact-constant bounds on the default box",
           std::to_string(exact_constant_ids().size()) + " bounds, " + std::to_string(violated) + " violated, " +
               "largest ratio " + fmt("%.4f", worst) + " (" + worst_id + "), " + fmt("%.1f", secs) + " s");
}

void death_dominated_shape() {
    const ModelParams p = make_params(0.5, 0.1, 0.04, 3);
    const std::vector<int> ns = doubling(8, 128);
    std::vector<double> errs;
    for (int n : ns) errs.push_back(tv_norm(produce(p, n, ApproxVariant::E_only).diff));
    const RateFit f = fit_errors(Regime::death_dominated, "fixed", ns, errs);
    report(4, f.slope < 0.0 && f.r_squared >= min_r_squared, "death-dominated error is exponential in n",
           "log-linear slope " + fmt("%.5f", f.slope) + ", r^2 " + fmt("%.5f", f.r_squared));
}

bool in_band(double x, const double band[2]) { return x >= band[0] && x <= band[1]; }

void general_sqrt_rate() {
    const auto t0 = Clock::now();
    ScalingPolicy pol;
    pol.kind = PolicyKind::alpha_gamma_inverse_n;
    pol.base = {0.5, 0.1, 0.02, 3, 0.9};
    pol.c = 0.16;
    const std::vector<int> ns = doubling(16, 1024);
    std::vector<double> errs;
    for (int n : ns) errs.push_back(kolmogorov_norm(produce(make_params(pol.at(n)), n, ApproxVariant::GV_E).diff));
    const RateFit f = fit_errors(Regime::general, pol.describe(), ns, errs);
    const double secs = seconds_since(t0);
    report(5, in_band(f.slope, sqrt_rate_band) && secs < 600.0, "general regime with alpha gamma = c/n, Kolmogorov error",
           pol.describe() + ", log-log slope " + fmt("%.4f", f.slope) + " vs [" + fmt("%.2f", sqrt_rate_band[0]) +
               ", " + fmt("%.2f", sqrt_rate_band[1]) + "], r^2 " + fmt("%.4f", f.r_squared) + ", " +
               fmt("%.1f", secs) + " s");
}

void separated_inverse_rate() {
    ScalingPolicy pol;
    pol.kind = PolicyKind::gamma_inverse_n;
    pol.base = {0.5, 0.1, 0.05, 3, 0.9};
    pol.c = 0.8;
    const std::vector<int> ns = doubling(16, 1024);
    const VerifyConfig vcfg;
    std::vector<double> kol, tv;
    for (int n : ns) {
        const ModelParams p = make_params(pol.at(n));
        check_hypothesis(p, Regime::alpha_separated, vcfg);
        kol.push_back(kolmogorov_norm(produce(p, n, ApproxVariant::G1V1_E).diff));
        tv.push_back(tv_norm(produce(p, n, ApproxVariant::G1V2_E).diff));
    }
    const RateFit fk = fit_errors(Regime::alpha_separated, pol.describe(), ns, kol);
    const RateFit ft = fit_errors(Regime::total_variation, pol.describe(), ns, tv);
    report(6, in_band(fk.slope, inverse_rate_band) && in_band(ft.slope, inverse_rate_band),
           "alpha-separated regime with gamma = c/n",
           pol.describe() + ", Kolmogorov slope " + fmt("%.4f", fk.slope) + ", total-variation slope " +
               fmt("%.4f", ft.slope) + " vs [" + fmt("%.2f", inverse_rate_band[0]) + ", " +
               fmt("%.2f", inverse_rate_band[1]) + "]");
}

/// Largest values of the two weighted envelopes over k in [1, n d].
std::pair<double, double> envelopes(const Produced& m) {
    const double b = m.p.beta(), g = m.p.gamma();
    double local = 0.0, df = 0.0;
    for (std::int64_t k = 1; k <= static_cast<std::int64_t>(m.n) * m.p.d(); ++k) {
        const double kk = static_cast<double>(k);
        local = std::max(local, m.n * (b + (kk + 1) * g) / (b + g) * std::abs(m.diff.at(k)));
        df = std::max(df, m.n * (1 + kk * g * g) * std::abs(df_value(m.diff, k)));
    }
    return {local, df};
}

void nonuniform_envelopes() {
    const ModelParams p = make_params(0.5, 0.1, 0.05, 3);
    bool ok = true;
    std::string detail;
    for (int n : {32, 64}) {
        const Produced base = produce(p, n, ApproxVariant::G1V2_E);
        InversionConfig fine;
        fine.min_points = 2 * base.n_used;
        const Produced refined = produce(p, n, ApproxVariant::G1V2_E, fine);
        const auto [l0, d0] = envelopes(base);
        const auto [l1, d1] = envelopes(refined);
        const double dl = std::abs(l1 / l0 - 1.0), dd = std::abs(d1 / d0 - 1.0);
        ok = ok && std::isfinite(l0) && std::isfinite(d0) && dl <= refinement_band && dd <= refinement_band;
        detail += (detail.empty() ? "" : "; ") + std::string("n=") + std::to_string(n) + ": local " +
                  fmt("%.4e", l0) + " (refined change " + fmt("%.1e", dl) + "), df " + fmt("%.4e", d0) +
                  " (refined change " + fmt("%.1e", dd) + ")";
    }
    report(7, ok, "weighted envelopes bounded and refinement-stable", detail);
}

void inversion_inequalities() {
    std::size_t retried = 0, failed = 0;
    double tightest = INFINITY;
    for (const Produced& m : produced) {
        const auto transform = [&](double t) { return difference_transform(m.p, m.n, m.v, t); };
        const double K = kolmogorov_norm(m.diff), L = local_norm(m.diff), TV = tv_norm(m.diff);
        const auto holds = [&](const InversionBounds& b) {
            return K <= quadrature_slack * b.tsaregradskii && L <= quadrature_slack * b.local_bound &&
                   TV <= quadrature_slack * b.tv_bound;
        };
        InversionBounds b = inversion_bounds(transform, m.n_used);
        if (!holds(b)) {
            ++retried;
            b = inversion_bounds(transform, 2 * m.n_used);
            if (!holds(b)) ++failed;
        }
        tightest = std::min({tightest, b.tsaregradskii / K, b.local_bound / L, b.tv_bound / TV});
    }
    report(8, failed == 0 && !produced.empty(), "inversion-inequality bounds dominate the computed norms",
           std::to_string(produced.size()) + " measures, " + std::to_string(retried) + " refined, " +
               std::to_string(failed) + " failed, smallest bound/norm " + fmt("%.4f", tightest));
}

void guarded(int id, const std::function<void()>& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(id, false, "aborted", e.what());
    }
}

}  // namespace

int main() {
    guarded(1, oracle_equivalence);
    guarded(2, spectral_identity);
    guarded(3, exact_constants);
    guarded(4, death_dominated_shape);
    guarded(5, general_sqrt_rate);
    guarded(6, separated_inverse_rate);
    guarded(7, nonuniform_envelopes);
    guarded(8, inversion_inequalities);
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
