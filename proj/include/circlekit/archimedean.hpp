#pragma once

// Real place: the Fejer weight and its transform, the truncated singular
// integral J*, the companion integral J(w), the sublevel measure tau(a; b) and
// a semidecision for real zeros on the unit sphere.

#include <complex>
#include <cstdint>
#include <optional>

#include "circlekit/budget.hpp"
#include "circlekit/forms.hpp"
#include "circlekit/local.hpp"

namespace circlekit {

/// zeta (sin(pi zeta beta) / (pi zeta beta))^2, equal to zeta at beta = 0.
double fejer_weight(double beta, double zeta);
/// max(0, 1 - |xi| / zeta).
double fejer_hat(double xi, double zeta);

struct FejerParams {
    double zeta = 1;
    double w = 1;

    /// zeta = w^-5. Throws ArgumentError unless w > 0.
    static FejerParams from_w(double w);
    /// Throws ArgumentError unless zeta > 0.
    static FejerParams from_zeta(double zeta, double w = 0);
    /// zeta >= 1 never happens in the asymptotic regime.
    bool large_zeta() const noexcept { return zeta >= 1; }
};

inline constexpr int kDefaultQuadraturePoints = 64;
inline constexpr int kMaxTensorDimension = 4;
inline constexpr std::uint64_t kDefaultMonteCarloSamples = 1ULL << 20;

struct QuadratureSpec {
    int M = kDefaultQuadraturePoints; ///< midpoint nodes per axis, >= 4
    /// Above kMaxTensorDimension variables the box integral is sampled instead.
    std::uint64_t samples = kDefaultMonteCarloSamples;
    std::uint64_t seed = 0x5eed;
    Budget budget;

    void validate() const;
};

/// A quadrature value together with its refinement at twice the resolution.
struct IntegralEstimate {
    double value = 0;        ///< at M nodes per axis (or `samples` points)
    double refined = 0;      ///< at 2M nodes per axis (or 2 * samples points)
    double gap = 0;          ///< |value - refined|
    double extrapolated = 0; ///< refined + (refined - value) / 3, the h^2 Richardson step
    bool monte_carlo = false;
};

/// J*_a(A, X) = A^-1 X^{n-d} int_{[0,1]^n} zeta^-1 w^(A^-1 f_a(gamma)) d gamma.
IntegralEstimate singular_integral(const Form& form, double A, double X, const FejerParams& fejer,
                                   const QuadratureSpec& quad = {});

struct OscillatoryEstimate {
    std::complex<double> value;
    std::complex<double> refined;
    double gap = 0;
    int beta_nodes = 0;
};

/// J_a(w) = X^{n-d} A^-1 int_{|beta| <= w} int_{[0,1]^n} e(beta A^-1 f_a(gamma)) d gamma d beta,
/// by midpoint rules in beta and gamma. `reflect` walks the beta grid from +w down.
/// Throws NumericalInconsistency when |Im| > 1e-6 |value|.
OscillatoryEstimate singular_integral_w(const Form& form, double A, double X, double w,
                                        const QuadratureSpec& quad = {}, bool reflect = false);

struct TauEstimate {
    double value = 0;
    double refined = 0;
    double gap = 0;
    bool full = false; ///< the sublevel condition held at every node
    bool monte_carlo = false;
};

/// tau(a; b) = b mes{gamma in [0,1]^n : |f_a(gamma)| <= |gamma| |a| / b}.
TauEstimate tau(const Form& form, double b, const QuadratureSpec& quad = {});

inline constexpr int kDefaultSphereGrid = 16;
inline constexpr double kDefaultRealMargin = 1e-3;

/// Real zeros on the unit sphere, sampled at the radial projections of the
/// integer points on the boundary of [-grid, grid]^n.
/// Throws ArgumentError when grid < 8.
SolubilityCertificate real_soluble(const Form& form, int grid = kDefaultSphereGrid,
                                   double margin = kDefaultRealMargin);

} // namespace circlekit
