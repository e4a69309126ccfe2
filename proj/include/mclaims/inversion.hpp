#ifndef MCLAIMS_INVERSION_HPP
#define MCLAIMS_INVERSION_HPP

#include <cstdint>
#include <functional>
#include <string>

#include "mclaims/charfn.hpp"
#include "mclaims/lattice_measure.hpp"
#include "mclaims/model.hpp"

namespace mclaims {

/// Which transforms make up the approximating signed measure.
enum class ApproxVariant {
    GV_E,    // G^n V + E
    G1V1_E,  // G1^n V1 + E
    G1V2_E,  // G1^n V2 + E
    E_only,  // E
};

std::string to_string(ApproxVariant v);
ApproxVariant parse_variant(const std::string& s);

/// Fourier transform of the approximation at t.
cplx approximation_transform(const ModelParams& p, int n, ApproxVariant v, double t);

struct Inversion {
    LatticeMeasure measure;
    double max_imag_residue = 0.0;  // largest |Im M{k}| before taking real parts
};

/// M{k} = (1/2pi) int e^{-ikt} Mhat(t) dt by the midpoint rule on the grid
/// nodes, for k in [k_lo, k_hi]. Exact (to rounding) for trigonometric
/// polynomials whose support spans fewer than N points.
/// Requires N a power of two and N >= 2 (k_hi - k_lo + 1).
Inversion invert_grid(const CharFnGrid& grid, std::int64_t k_lo, std::int64_t k_hi);

/// Sampled DFT of a lattice measure on the midpoint grid.
CharFnGrid transform_of(const LatticeMeasure& m, std::int64_t n_points);

struct InversionConfig {
    std::int64_t guard = 64;         // lattice cells kept beyond [0, n d] on the right
    std::int64_t min_points = 0;     // lower bound on the initial N (0 = automatic)
    int max_doublings = 8;
    double tv_tolerance = 1e-10;     // stop once successive refinements differ by less
};

struct AliasingProbe {
    LatticeMeasure measure;
    std::int64_t n_used = 0;
    int doublings = 0;
    double tv_delta_last_doubling = 0.0;
    double max_imag_residue = 0.0;
    bool converged = false;
};

/// Invert `transform` with an adaptive grid. The window is [hi - N/2 + 1, hi];
/// each doubling of N also doubles the reach to the left, where the
/// approximating measures keep their geometric tails.
AliasingProbe adaptive_inversion(const std::function<cplx(double)>& transform, std::int64_t right_edge,
                                 std::int64_t initial_span, const InversionConfig& cfg);

AliasingProbe aliasing_probe(const ModelParams& p, int n, ApproxVariant v, const InversionConfig& cfg = {});

/// aliasing_probe() that throws Error(numerical) when the grid never stabilises.
AliasingProbe approximation_measure(const ModelParams& p, int n, ApproxVariant v, const InversionConfig& cfg = {});

std::int64_t next_pow2(std::int64_t x);

}  // namespace mclaims

#endif
