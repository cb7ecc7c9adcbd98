#pragma once

// Exponential-sum kernels: e(t), Gauss and Weyl sums, the mean square T(alpha),
// the oscillatory integral v(beta), complete normalized sums S_a(q), Weyl
// differencing, and the major-arc dissection.

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "circlekit/arith.hpp"
#include "circlekit/budget.hpp"
#include "circlekit/forms.hpp"

namespace circlekit {

using Complex = std::complex<double>;

/// e(t) = exp(2 pi i t); the phase is reduced mod 1 before evaluation.
Complex unit_exp(double t);
/// e(num / den) with the reduction done in exact integer arithmetic.
Complex unit_exp_ratio(i128 num, i128 den);

/// S(q, a) = sum_{x=1}^{q} e(a x^d / q).
Complex gauss_sum(std::uint64_t q, std::int64_t a, int d);

/// sum_{1 <= x <= X} e(alpha b x^d).
Complex weyl_sum(double alpha, std::int64_t b, std::int64_t X, int d);

/// T(alpha) = sum_{-A <= b <= A} |sum_{1 <= x <= X} e(alpha b x^d)|^2.
double t_alpha(double alpha, std::int64_t A, std::int64_t X, int d);

struct OscillatoryIntegral {
    Complex value;          ///< composite midpoint with `steps` nodes
    double error_estimate;  ///< |I(steps) - I(2 steps)|
    int steps;
};

inline constexpr int kDefaultIntegralSteps = 4096;

/// v(beta) = int_0^X e(beta gamma^d) d gamma. Throws ArgumentError for steps < 16.
OscillatoryIntegral v_integral(double beta, double X, int d, int steps = kDefaultIntegralSteps);

/// S_a(q) = q^{-n} sum_{(b,q)=1} sum_{r mod q} e(b f_a(r) / q).
/// The unit sum collapses to Ramanujan sums, so the value is always rational.
struct CompleteSum {
    Rational exact;
    Complex numeric; ///< the same sum assembled from class counts times roots of unity
};

CompleteSum complete_form_sum(const Form& form, std::uint64_t q, const Budget& budget = {});

using Evaluator = std::function<i128(std::span<const std::int64_t>)>;

/// Delta_j(P(x); h_1, ..., h_j) through Delta_j = Delta_1 o Delta_{j-1}.
i128 difference_op(const Evaluator& eval, std::span<const IntVector> shifts, std::span<const std::int64_t> x);
i128 difference_op(const Form& form, std::span<const IntVector> shifts, std::span<const std::int64_t> x);

/// k! sum p_{j_1...j_k} h1_{j_1} ... hk_{j_k} for the symmetric coefficient
/// tensor of a degree-k form; equals Delta_k(P; h_1, ..., h_k).
i128 symmetric_multilinear(const Form& form, std::span<const IntVector> vectors);
/// psi_j(x^(1), ..., x^(k-1); P) = k! sum p_{j_1...j_{k-1} j} x^(1)_{j_1} ... x^(k-1)_{j_{k-1}}.
i128 psi(const Form& form, std::span<const IntVector> vectors, std::size_t j);

struct ArcParams {
    double A = 1; ///< coefficient height
    double X = 1; ///< box side
    int d = 2;
    double B = 1; ///< arc parameter

    /// B A^{-1} X^{-d}; throws ArgumentError unless A, X, B > 0.
    double radius() const;
};

struct ArcPoint {
    double alpha = 0;
    std::int64_t q = 1;
    std::int64_t a = 0;
    double delta = 0; ///< alpha - a/q
};

/// Smallest q <= B (then smallest a) with gcd(q, a) = 1 and |alpha - a/q| <= radius.
std::optional<ArcPoint> major_arc_locate(double alpha, const ArcParams& params);

struct ArcApproximation {
    double error = 0;      ///< |weyl - approx|
    Complex weyl;
    Complex approx;        ///< q~^{-1} S(q~, a b~) v(beta)
    double beta = 0;
    std::int64_t q_reduced = 1;
    std::int64_t b_reduced = 0;
    double v_error_estimate = 0;
};

/// Difference between a Weyl sum near a/q and its major-arc model. steps = 0
/// picks about 64 quadrature nodes per oscillation of v(beta), at least 4096.
ArcApproximation major_arc_approximation(double alpha, std::int64_t b, std::int64_t q, std::int64_t a,
                                         std::int64_t X, int d, int steps = 0);
double major_arc_approx_error(double alpha, std::int64_t b, std::int64_t q, std::int64_t a, std::int64_t X, int d);

} // namespace circlekit
