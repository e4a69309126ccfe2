#include "mclaims/inversion.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include <fftw3.h>

#include "mclaims/error.hpp"
#include "mclaims/exact.hpp"
#include "mclaims/numeric.hpp"
#include "mclaims/parallel.hpp"

namespace mclaims {

std::string to_string(ApproxVariant v) {
    switch (v) {
        case ApproxVariant::GV_E: return "GV_E";
        case ApproxVariant::G1V1_E: return "G1V1_E";
        case ApproxVariant::G1V2_E: return "G1V2_E";
        case ApproxVariant::E_only: return "E_only";
    }
    return "?";
}

ApproxVariant parse_variant(const std::string& s) {
    if (s == "GV_E") return ApproxVariant::GV_E;
    if (s == "G1V1_E") return ApproxVariant::G1V1_E;
    if (s == "G1V2_E") return ApproxVariant::G1V2_E;
    if (s == "E_only" || s == "E") return ApproxVariant::E_only;
    fail(ErrorCode::config, "unknown variant '" + s + "' (expected GV_E, G1V1_E, G1V2_E, E_only)");
}

cplx approximation_transform(const ModelParams& p, int n, ApproxVariant v, double t) {
    const ApproxTransforms x = approx_transforms(p, t, n);
    const double nn = static_cast<double>(n);
    switch (v) {
        case ApproxVariant::GV_E: return std::exp(nn * x.logG) * x.V + x.E;
        case ApproxVariant::G1V1_E: return std::exp(nn * x.logG1) * x.V1 + x.E;
        case ApproxVariant::G1V2_E: return std::exp(nn * x.logG1) * x.V2 + x.E;
        case ApproxVariant::E_only: return x.E;
    }
    return x.E;
}

std::int64_t next_pow2(std::int64_t x) {
    std::int64_t p = 1;
    while (p < x) p <<= 1;
    return p;
}

namespace {

bool is_pow2(std::int64_t x) { return x > 0 && (x & (x - 1)) == 0; }

// FFTW's planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// Forward DFT X[k] = sum_j x[j] e^{-2 pi i jk/N}.
std::vector<cplx> forward_dft(const std::vector<cplx>& in) {
    const auto N = static_cast<int>(in.size());
    std::vector<cplx> src = in, out(in.size());
    auto* s = reinterpret_cast<fftw_complex*>(src.data());
    auto* o = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(N, s, o, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

// e^{-i k t_j} = (-1)^k e^{-i pi k / N} e^{-2 pi i jk / N} on the midpoint grid.
cplx node_phase(std::int64_t k, std::int64_t N) {
    const std::int64_t r = ((k % (2 * N)) + 2 * N) % (2 * N);
    const double angle = -std::numbers::pi * static_cast<double>(r) / static_cast<double>(N);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return sign * cplx{std::cos(angle), std::sin(angle)};
}

}  // namespace

Inversion invert_grid(const CharFnGrid& grid, std::int64_t k_lo, std::int64_t k_hi) {
    const std::int64_t N = grid.n_points;
    require(is_pow2(N), ErrorCode::config, "grid size must be a power of two");
    require(static_cast<std::int64_t>(grid.values.size()) == N, ErrorCode::config, "grid size mismatch");
    require(k_hi >= k_lo, ErrorCode::config, "empty inversion window");
    require(N >= 2 * (k_hi - k_lo + 1), ErrorCode::config,
            "inversion window of " + std::to_string(k_hi - k_lo + 1) + " cells exceeds N/2 = " + std::to_string(N / 2));

    const std::vector<cplx> X = forward_dft(grid.values);
    Inversion out;
    out.measure.offset = k_lo;
    out.measure.weights.resize(static_cast<std::size_t>(k_hi - k_lo + 1));
    const double inv_n = 1.0 / static_cast<double>(N);
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
        const std::int64_t idx = ((k % N) + N) % N;
        const cplx v = node_phase(k, N) * X[static_cast<std::size_t>(idx)] * inv_n;
        out.measure.weights[static_cast<std::size_t>(k - k_lo)] = v.real();
        out.max_imag_residue = std::max(out.max_imag_residue, std::abs(v.imag()));
    }
    return out;
}

CharFnGrid transform_of(const LatticeMeasure& m, std::int64_t n_points) {
    return sample_grid(
        [&](double t) {
            cplx s{0.0, 0.0};
            for (std::size_t i = 0; i < m.weights.size(); ++i)
                if (m.weights[i] != 0.0) s += m.weights[i] * expi(m.offset + static_cast<std::int64_t>(i), t);
            return s;
        },
        n_points);
}

AliasingProbe adaptive_inversion(const std::function<cplx(double)>& transform, std::int64_t right_edge,
                                 std::int64_t initial_span, const InversionConfig& cfg) {
    std::int64_t N = std::max(next_pow2(4 * std::max<std::int64_t>(initial_span, 1)), next_pow2(cfg.min_points));
    AliasingProbe probe;
    LatticeMeasure previous;
    for (int step = 0;; ++step) {
        const CharFnGrid grid = sample_grid(transform, N);
        Inversion inv = invert_grid(grid, right_edge - N / 2 + 1, right_edge);
        probe.n_used = N;
        probe.doublings = step;
        probe.max_imag_residue = inv.max_imag_residue;
        if (step > 0) {
            const LatticeMeasure diff = inv.measure - previous;
            double tv = 0.0;
            for (double w : diff.weights) tv += std::abs(w);
            probe.tv_delta_last_doubling = tv;
            if (tv < cfg.tv_tolerance) {
                probe.converged = true;
                probe.measure = std::move(inv.measure);
                return probe;
            }
        }
        previous = std::move(inv.measure);
        if (step >= cfg.max_doublings) break;
        N *= 2;
    }
    probe.measure = std::move(previous);
    return probe;
}

AliasingProbe aliasing_probe(const ModelParams& p, int n, ApproxVariant v, const InversionConfig& cfg) {
    require(n >= 1, ErrorCode::config, "n must be >= 1");
    const std::int64_t nd = static_cast<std::int64_t>(n) * p.d();
    return adaptive_inversion([&](double t) { return approximation_transform(p, n, v, t); }, nd + cfg.guard,
                              nd + 2 * cfg.guard + 1, cfg);
}

AliasingProbe approximation_measure(const ModelParams& p, int n, ApproxVariant v, const InversionConfig& cfg) {
    AliasingProbe probe = aliasing_probe(p, n, v, cfg);
    if (!probe.converged) {
        std::ostringstream os;
        os << "inversion of " << to_string(v) << " at n=" << n << " did not stabilise after " << probe.doublings
           << " doublings (N=" << probe.n_used << ", last TV change " << probe.tv_delta_last_doubling << ")";
        fail(ErrorCode::numerical, os.str());
    }
    return probe;
}

}  // namespace mclaims
