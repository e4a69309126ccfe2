#include <doctest.h>

#include <random>

#include "mclaims/charfn.hpp"
#include "mclaims/error.hpp"
#include "mclaims/exact.hpp"
#include "support.hpp"

using namespace mclaims;

namespace {

const ModelParams ref = make_params(0.5, 0.1, 0.02, 3);

double dist(cplx a, cplx b) { return std::abs(a - b); }

}  // namespace

TEST_CASE("base transforms at 0 and pi") {
    const BaseTransforms z = base_transforms(ref, 0.0);
    CHECK(dist(z.H, 1.0) <= 1e-15);
    CHECK(dist(z.H_minus_1, 0.0) <= 1e-15);
    CHECK(dist(z.Psi_minus_1, -0.5 / 0.9) <= 1e-15);
    CHECK(dist(z.U, -0.5) <= 1e-15);
    CHECK(dist(base_transforms(ref, M_PI).H, -9.0 / 11.0) <= 1e-15);
}

TEST_CASE("property: base transforms against their definitions") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ut(-M_PI, M_PI);
    for (int trial = 0; trial < 500; ++trial) {
        const ModelParams p = testing::random_params(rng);
        const double t = ut(rng), a = p.alpha(), b = p.beta();
        const cplx z = std::polar(1.0, t);
        const BaseTransforms x = base_transforms(p, t);
        CHECK(dist(x.H, (1 - b) * z / (1.0 - b * z)) <= 1e-14);
        CHECK(dist(x.Psi, (1 - a - b) * z / (1.0 - b * z)) <= 1e-14);
        CHECK(dist(x.H_minus_1, x.H - 1.0) <= 1e-14);
        CHECK(dist(x.Psi_minus_1, x.Psi - 1.0) <= 1e-14);
    }
}

TEST_CASE("correction transforms at 0") {
    const CorrectionTransforms c = correction_transforms(ref, 0.0);
    CHECK(dist(c.A2, 0.0) <= 1e-15);
    CHECK(dist(c.A3, 0.0) <= 1e-15);
    CHECK(dist(c.A1, -0.5 / (1.0 + 0.02 - 0.1)) <= 1e-14);
}

TEST_CASE("property: Delta, Delta1 and A are the partial sums in gamma") {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> ut(-M_PI, M_PI);
    for (int trial = 0; trial < 500; ++trial) {
        const ModelParams p = testing::random_params(rng);
        const double g = p.gamma();
        const CorrectionTransforms c = correction_transforms(p, ut(rng));
        CHECK(dist(c.Delta, 1.0 + c.A1 * g) <= 1e-14);
        CHECK(dist(c.Delta1, c.Delta + (c.A2 + c.A4) * g * g) <= 1e-14);
        CHECK(dist(c.A, c.Delta1 + (c.A3 + c.A5 + c.A6) * g * g * g) <= 1e-14);
    }
}

TEST_CASE("eigenvalues at 0") {
    CHECK(dist(sqrt_D(ref, 0.0), std::sqrt(0.8064)) <= 1e-14);
    const SpectralParts s = eigen_weights(ref, 0.0);
    // Roots of x^2 - 1.08 x + 0.09 by the scalar quadratic formula.
    const double r = std::sqrt(1.08 * 1.08 - 4 * 0.09);
    CHECK(dist(s.lambda1, (1.08 + r) / 2) <= 1e-14);
    CHECK(dist(s.lambda2, (1.08 - r) / 2) <= 1e-14);
    CHECK(s.lambda1.real() == doctest::Approx(0.989).epsilon(1e-3));
    CHECK(s.lambda2.real() == doctest::Approx(0.091).epsilon(1e-2));
    CHECK(dist(s.w3, 1.0) <= 1e-14);
    CHECK(std::abs(s.w1) <= 1e-14);
    CHECK(std::abs(s.w2) <= 1e-14);
}

TEST_CASE("weights vanish linearly near 0") {
    const SpectralParts a = eigen_weights(ref, 1e-6), b = eigen_weights(ref, 1e-8);
    CHECK(std::abs(a.w1) < 1e-3);
    CHECK(std::abs(a.w2) < 1e-3);
    CHECK(std::abs(b.w1) == doctest::Approx(1e-2 * std::abs(a.w1)).epsilon(1e-3));
    CHECK(std::abs(b.w2) == doctest::Approx(1e-2 * std::abs(a.w2)).epsilon(1e-3));
}

TEST_CASE("property: Vieta identities and eigenvalue bounds") {
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> ut(-M_PI, M_PI);
    for (int trial = 0; trial < 2000; ++trial) {
        const ModelParams p = testing::random_params(rng);
        const double t = ut(rng), a = p.alpha(), b = p.beta(), g = p.gamma();
        const cplx z = std::polar(1.0, t);
        const SpectralParts s = eigen_weights(p, t);
        CHECK(dist(s.lambda1 + s.lambda2, 1.0 - g + b * z) <= 1e-14);
        CHECK(dist(s.lambda1 * s.lambda2, z * (b - g * (1 - a))) <= 1e-14);
        CHECK(dist(s.lambda3, std::polar(1.0, p.d() * t)) <= 1e-14);
        CHECK(std::abs(s.lambda2) <= b + 4 * g + 1e-14);
        CHECK(std::abs(s.lambda1) <= 1.0 + 1e-14);
    }
}

TEST_CASE("death component is the third spectral term") {
    std::mt19937_64 rng(34);
    std::uniform_real_distribution<double> ut(-M_PI, M_PI);
    for (int trial = 0; trial < 300; ++trial) {
        const ModelParams p = testing::random_params(rng);
        const double t = ut(rng);
        const int n = 1 + static_cast<int>(rng() % 100);
        const SpectralParts s = eigen_weights(p, t);
        if (s.degenerate) continue;
        const ApproxTransforms x = approx_transforms(p, t, n);
        CHECK(dist(x.E, std::pow(s.lambda3, n) * s.w3) <= 1e-12);
    }
    const ApproxTransforms x0 = approx_transforms(ref, 0.0, 10);
    CHECK(dist(x0.E, 1.0) <= 1e-14);
    CHECK(std::abs(x0.V) <= 1e-15);
    CHECK(std::abs(x0.V2) <= 1e-15);
}

TEST_CASE("property: G1 is a contraction and transforms are conjugate symmetric") {
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 20; ++trial) {
        const ModelParams p = testing::random_params(rng);
        const CharFnGrid g1 = sample_grid([&](double t) { return approx_transforms(p, t, 1).G1; }, 512);
        for (const cplx& v : g1.values) CHECK(std::abs(v) <= 1.0 + 1e-14);
        CHECK(conjugate_asymmetry(g1) <= 1e-14);
        const CharFnGrid fn = sample_grid([&](double t) { return exact_charfn(p, 9, t); }, 512);
        CHECK(conjugate_asymmetry(fn) <= 1e-13);
    }
}

TEST_CASE("property: spectral decomposition reproduces the exact charfn") {
    std::mt19937_64 rng(36);
    const std::vector<double> ts = midpoint_grid(64);
    for (int trial = 0; trial < 30; ++trial) {
        const ModelParams p = testing::random_params(rng);
        for (int n : {1, 4, 16, 64}) {
            for (double t : ts) {
                const SpectralParts s = eigen_weights(p, t);
                if (s.degenerate) continue;
                CHECK(std::abs(s.perron(n) - exact_charfn(p, n, t)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("midpoint grid avoids 0 and mirrors pairwise") {
    for (std::int64_t N : {2, 8, 1024}) {
        const std::vector<double> ts = midpoint_grid(N);
        REQUIRE(ts.size() == static_cast<std::size_t>(N));
        for (std::int64_t j = 0; j < N; ++j) {
            CHECK(ts[static_cast<std::size_t>(j)] != 0.0);
            CHECK(std::abs(ts[static_cast<std::size_t>(j)] + ts[static_cast<std::size_t>(N - 1 - j)]) <= 1e-15);
        }
        CHECK(ts.front() == doctest::Approx(-M_PI + M_PI / static_cast<double>(N)));
    }
}

TEST_CASE("named transforms") {
    for (const std::string& name : transform_names()) CHECK_NOTHROW(named_transform(ref, name, 0.7, 5));
    CHECK(dist(named_transform(ref, "H", M_PI, 1), -9.0 / 11.0) <= 1e-15);
    try {
        named_transform(ref, "nope", 0.1, 1);
        FAIL("expected an exception");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::config);
    }
}
