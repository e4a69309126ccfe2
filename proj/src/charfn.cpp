#include "mclaims/charfn.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "mclaims/error.hpp"
#include "mclaims/exact.hpp"
#include "mclaims/numeric.hpp"
#include "mclaims/parallel.hpp"

namespace mclaims {

BaseTransforms base_transforms(const ModelParams& p, double t) {
    const double a = p.alpha(), b = p.beta();
    const cplx e = expi(1, t);
    const cplx q = 1.0 - b * e;
    BaseTransforms out;
    out.H = (1.0 - b) * e / q;
    out.Psi = (1.0 - a - b) * e / q;
    out.U = (1.0 - a) * e - 1.0;
    out.H_minus_1 = expi_minus_one(1, t) / q;
    out.Psi_minus_1 = out.U / q;
    return out;
}

namespace {

// A - 1 and Delta1 - 1 are needed without the cancellation of forming A first.
struct Corrections {
    CorrectionTransforms c;
    cplx A_minus_1;
    cplx Delta1_minus_1;
};

Corrections corrections(const ModelParams& p, double t) {
    const double b = p.beta(), g = p.gamma();
    const BaseTransforms bt = base_transforms(p, t);
    const cplx q = 1.0 - b * expi(1, t);
    const cplx h1 = bt.H_minus_1, ps1 = bt.Psi_minus_1;
    const double c = 1.0 + g - b;
    const double c2 = c * c, c3 = c2 * c, c4 = c3 * c, c5 = c4 * c;
    const double ob = 1.0 - b, ob3 = ob * ob * ob, ob5 = ob3 * ob * ob;

    Corrections out;
    auto& r = out.c;
    r.A1 = ob / c * ps1;
    r.A2 = -b * ob / c2 * h1 * ps1;
    r.A3 = b * b * ob * h1 * h1 * ps1 / c3;
    r.A4 = -ob3 * ps1 * ps1 / (c3 * q);
    r.A5 = 3.0 * b * ob3 * ps1 * ps1 * h1 / (c4 * q);
    r.A6 = 2.0 * ob5 * ps1 * ps1 * ps1 / (c5 * q * q);

    const cplx first = r.A1 * g;
    const cplx second = (r.A2 + r.A4) * (g * g);
    const cplx third = (r.A3 + r.A5 + r.A6) * (g * g * g);
    out.Delta1_minus_1 = first + second;
    out.A_minus_1 = out.Delta1_minus_1 + third;
    r.Delta = 1.0 + first;
    r.Delta1 = 1.0 + out.Delta1_minus_1;
    r.A = 1.0 + out.A_minus_1;
    return out;
}

// Shared numerator of W_{1,2} (with x = lambda) and of V, V1, V2 (with x = Delta).
cplx weight_numerator(const ModelParams& p, double t, cplx x) {
    const double a = p.alpha(), b = p.beta(), g = p.gamma();
    const std::int64_t d = p.d();
    const double k = b - g * (1.0 - a);
    return expi_minus_one(d + 1, t) * k - expi_minus_one(d, t) * x + expi_minus_one(1, t) * (g * x - k);
}

// (e^{i(d-1)t} - b)(e^{idt} - (1-g)) - g(1-a-b), expanded around t = 0 so the
// alpha*gamma value at the origin is not the residue of a cancellation.
cplx death_denominator(const ModelParams& p, double t) {
    const double a = p.alpha(), b = p.beta(), g = p.gamma();
    const std::int64_t d = p.d();
    const cplx em_d = expi_minus_one(d, t), em_dm1 = expi_minus_one(d - 1, t);
    return a * g + (1.0 - b) * em_d + g * em_dm1 + em_dm1 * em_d;
}

}  // namespace

CorrectionTransforms correction_transforms(const ModelParams& p, double t) { return corrections(p, t).c; }

cplx discriminant(const ModelParams& p, double t) {
    const double a = p.alpha(), b = p.beta(), g = p.gamma();
    const cplx e = expi(1, t);
    const cplx s = 1.0 - g + b * e;
    return s * s - 4.0 * e * (b - g * (1.0 - a));
}

cplx sqrt_D(const ModelParams& p, double t) {
    const double b = p.beta(), g = p.gamma();
    const cplx e = expi(1, t);
    const cplx root = std::sqrt(discriminant(p, t));
    const double band = std::abs(root - (1.0 + g - b * e));
    if (!(band <= sqrt_d_band * g + 1e-12) || !(std::abs(root) >= sqrt_d_floor - 1e-12)) {
        std::ostringstream os;
        os << std::setprecision(17) << "sqrt(D) branch check failed at t=" << t << ": |sqrtD-(1+g-b e^it)|=" << band
           << " (limit " << sqrt_d_band * g << "), |sqrtD|=" << std::abs(root);
        fail(ErrorCode::numerical, os.str());
    }
    return root;
}

cplx SpectralParts::perron(int n) const {
    const auto m = static_cast<std::uint64_t>(n);
    return ipow(lambda1, m) * w1 + ipow(lambda2, m) * w2 + ipow(lambda3, m) * w3;
}

SpectralParts eigen_weights(const ModelParams& p, double t) {
    const double a = p.alpha(), b = p.beta(), g = p.gamma();
    const cplx e = expi(1, t);
    const cplx ed_minus_1 = expi_minus_one(p.d(), t);

    SpectralParts sp;
    sp.sqrtD = sqrt_D(p, t);
    const cplx s = 1.0 - g + b * e;
    sp.lambda1 = 0.5 * (s + sp.sqrtD);
    sp.lambda2 = 0.5 * (s - sp.sqrtD);
    sp.lambda3 = expi(p.d(), t);

    // lambda1 - e^{idt} = (lambda1 - 1) - (e^{idt} - 1), lambda1 - 1 = (sqrtD - (1 + g - b e^{it})) / 2.
    const cplx gap1 = 0.5 * (sp.sqrtD - (1.0 + g - b * e)) - ed_minus_1;
    const cplx gap2 = sp.lambda2 - sp.lambda3;
    sp.degenerate = std::abs(gap1) < 1e-14 || std::abs(gap2) < 1e-14;
    if (!sp.degenerate) {
        sp.w1 = weight_numerator(p, t, sp.lambda1) / (gap1 * sp.sqrtD);
        sp.w2 = weight_numerator(p, t, sp.lambda2) / (-gap2 * sp.sqrtD);
    }
    sp.w3 = a * g * sp.lambda3 / death_denominator(p, t);
    return sp;
}

ApproxTransforms approx_transforms(const ModelParams& p, double t, int n) {
    const double a = p.alpha(), b = p.beta(), g = p.gamma();
    const std::int64_t d = p.d();
    const Corrections cr = corrections(p, t);
    const auto& c = cr.c;
    const cplx ed_minus_1 = expi_minus_one(d, t);
    const cplx tail = -1.0 + g - b * expi(1, t);

    const cplx numer = weight_numerator(p, t, c.Delta);
    const cplx A_gap = cr.A_minus_1 - ed_minus_1;
    const cplx D1_gap = cr.Delta1_minus_1 - ed_minus_1;
    const cplx root_delta = 2.0 * c.Delta + tail;
    const cplx root_delta1 = 2.0 * c.Delta1 + tail;

    ApproxTransforms out;
    out.V = numer / (A_gap * root_delta);
    out.V1 = numer / (D1_gap * root_delta);
    out.V2 = numer / (D1_gap * root_delta1);

    const double g2 = g * g, g3 = g2 * g;
    out.logG = cr.A_minus_1 - 0.5 * (c.A1 * c.A1 * g2 + 2.0 * c.A1 * (c.A2 + c.A4) * g3) +
               c.A1 * c.A1 * c.A1 * g3 / 3.0;
    out.logG1 = c.A1 * g + (c.A2 + c.A4 - 0.5 * c.A1 * c.A1) * g2;
    out.G = std::exp(out.logG);
    out.G1 = std::exp(out.logG1);
    out.E = a * g * expi((static_cast<std::int64_t>(n) + 1) * d, t) / death_denominator(p, t);
    return out;
}

double midpoint_node(std::int64_t j, std::int64_t n_points) {
    return std::numbers::pi * (static_cast<double>(2 * j + 1 - n_points) / static_cast<double>(n_points));
}

std::vector<double> midpoint_grid(std::int64_t n_points) {
    std::vector<double> t(static_cast<std::size_t>(n_points));
    for (std::int64_t j = 0; j < n_points; ++j) t[static_cast<std::size_t>(j)] = midpoint_node(j, n_points);
    return t;
}

CharFnGrid sample_grid(const std::function<cplx(double)>& f, std::int64_t n_points) {
    CharFnGrid g;
    g.n_points = n_points;
    g.values.resize(static_cast<std::size_t>(n_points));
    parallel_for(n_points, [&](std::int64_t j) { g.values[static_cast<std::size_t>(j)] = f(midpoint_node(j, n_points)); });
    return g;
}

double conjugate_asymmetry(const CharFnGrid& g) {
    double worst = 0.0;
    const auto N = static_cast<std::size_t>(g.n_points);
    for (std::size_t j = 0; j < N; ++j) worst = std::max(worst, std::abs(g.values[j] - std::conj(g.values[N - 1 - j])));
    return worst;
}

std::vector<std::string> transform_names() {
    return {"H",  "Psi", "U",     "H-1",    "Psi-1", "A1",      "A2",      "A3",      "A4", "A5", "A6",
            "Delta", "Delta1", "A", "V", "V1", "V2", "G", "G1", "E", "lambda1", "lambda2", "lambda3",
            "w1", "w2", "w3", "sqrtD", "Fn"};
}

cplx named_transform(const ModelParams& p, const std::string& name, double t, int n) {
    if (name == "H" || name == "Psi" || name == "U" || name == "H-1" || name == "Psi-1") {
        const auto b = base_transforms(p, t);
        if (name == "H") return b.H;
        if (name == "Psi") return b.Psi;
        if (name == "U") return b.U;
        if (name == "H-1") return b.H_minus_1;
        return b.Psi_minus_1;
    }
    if (name.size() == 2 && name[0] == 'A' && name[1] >= '1' && name[1] <= '6') {
        const auto c = correction_transforms(p, t);
        const cplx all[6] = {c.A1, c.A2, c.A3, c.A4, c.A5, c.A6};
        return all[name[1] - '1'];
    }
    if (name == "Delta") return correction_transforms(p, t).Delta;
    if (name == "Delta1") return correction_transforms(p, t).Delta1;
    if (name == "A") return correction_transforms(p, t).A;
    if (name == "V" || name == "V1" || name == "V2" || name == "G" || name == "G1" || name == "E") {
        const auto x = approx_transforms(p, t, n);
        if (name == "V") return x.V;
        if (name == "V1") return x.V1;
        if (name == "V2") return x.V2;
        if (name == "G") return x.G;
        if (name == "G1") return x.G1;
        return x.E;
    }
    if (name == "sqrtD") return sqrt_D(p, t);
    if (name == "Fn") return exact_charfn(p, n, t);
    if (name.rfind("lambda", 0) == 0 || name.rfind("w", 0) == 0) {
        const auto s = eigen_weights(p, t);
        if (name == "lambda1") return s.lambda1;
        if (name == "lambda2") return s.lambda2;
        if (name == "lambda3") return s.lambda3;
        if (name == "w1") return s.w1;
        if (name == "w2") return s.w2;
        if (name == "w3") return s.w3;
    }
    fail(ErrorCode::config, "unknown transform name: " + name);
}

void write_grid_csv(std::ostream& os, const CharFnGrid& g) {
    os << "t,re,im\n" << std::setprecision(17);
    for (std::int64_t j = 0; j < g.n_points; ++j) {
        const cplx v = g.values[static_cast<std::size_t>(j)];
        os << g.t(j) << ',' << v.real() << ',' << v.imag() << '\n';
    }
}

}  // namespace mclaims
