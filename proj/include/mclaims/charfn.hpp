#ifndef MCLAIMS_CHARFN_HPP
#define MCLAIMS_CHARFN_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "mclaims/model.hpp"

namespace mclaims {

// Fourier transforms of the building-block measures. Every function below is
// a pure function of (params, t); nothing is cached.

struct BaseTransforms {
    cplx H;            // (1-b) e^{it} / (1 - b e^{it})
    cplx Psi;          // (1-a-b) e^{it} / (1 - b e^{it})
    cplx U;            // (1-a) e^{it} - 1
    cplx H_minus_1;    // (e^{it} - 1) / (1 - b e^{it})
    cplx Psi_minus_1;  // ((1-a) e^{it} - 1) / (1 - b e^{it})
};

BaseTransforms base_transforms(const ModelParams& p, double t);

struct CorrectionTransforms {
    cplx A1, A2, A3, A4, A5, A6;
    cplx Delta;   // 1 + A1 g
    cplx Delta1;  // Delta + (A2 + A4) g^2
    cplx A;       // Delta1 + (A3 + A5 + A6) g^3
};

CorrectionTransforms correction_transforms(const ModelParams& p, double t);

/// Branch band |sqrtD - (1 + g - b e^{it})| <= 5.81 g and the floor |sqrtD| >= 0.6.
inline constexpr double sqrt_d_band = 5.81;
inline constexpr double sqrt_d_floor = 0.6;

/// D(t) = (1 - g + b e^{it})^2 - 4 e^{it}(b - g(1-a)).
cplx discriminant(const ModelParams& p, double t);

/// Principal square root of D(t).
/// Throws Error(numerical) if the result leaves the band above; that would
/// mean the principal branch no longer tracks the + eigenvalue.
cplx sqrt_D(const ModelParams& p, double t);

/// Eigenvalues and Perron weights of the twisted transition matrix at one t:
///   Fhat_n(t) = l1^n w1 + l2^n w2 + l3^n w3.
struct SpectralParts {
    cplx lambda1, lambda2, lambda3;
    cplx w1, w2, w3;
    cplx sqrtD;
    bool degenerate = false;  // |lambda_{1,2} - e^{idt}| < 1e-14: w1/w2 unusable at this node

    cplx perron(int n) const;
};

SpectralParts eigen_weights(const ModelParams& p, double t);

/// Approximating transforms. G and G1 are returned with their exponents so
/// convolution powers can be formed as exp(n * logG).
struct ApproxTransforms {
    cplx V, V1, V2;
    cplx logG, logG1;
    cplx G, G1;
    cplx E;
};

ApproxTransforms approx_transforms(const ModelParams& p, double t, int n);

/// Midpoint-shifted nodes t_j = -pi + (2j+1) pi / N; t = 0 is never a node.
double midpoint_node(std::int64_t j, std::int64_t n_points);
std::vector<double> midpoint_grid(std::int64_t n_points);

/// Transform sampled on the midpoint grid.
struct CharFnGrid {
    std::int64_t n_points = 0;
    std::vector<cplx> values;

    double t(std::int64_t j) const { return midpoint_node(j, n_points); }
};

/// Sample f on the N-point midpoint grid (parallel over nodes).
CharFnGrid sample_grid(const std::function<cplx(double)>& f, std::int64_t n_points);

/// max_j |values[j] - conj(values[N-1-j])|; the node mirror of t_j is t_{N-1-j}.
double conjugate_asymmetry(const CharFnGrid& g);

/// Named scalar transforms ("H", "Psi", "A", "lambda1", "w2", "E", ...) for dumps.
cplx named_transform(const ModelParams& p, const std::string& name, double t, int n);
std::vector<std::string> transform_names();

/// "t,re,im" rows.
void write_grid_csv(std::ostream& os, const CharFnGrid& g);

}  // namespace mclaims

#endif
