#pragma once

// Non-archimedean side: the smooth modulus W, local densities sigma(a; Q),
// the truncated singular series, gradient valuations, Hensel-style p-adic
// solubility, the C_v^(e) classification, and small-modulus moment statistics.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "circlekit/arith.hpp"
#include "circlekit/budget.hpp"
#include "circlekit/constraint.hpp"
#include "circlekit/forms.hpp"

namespace circlekit {

struct PrimePower {
    std::uint64_t p = 2;
    unsigned r = 1;

    /// Throws ArgumentError unless p is prime and r >= 1.
    static PrimePower make(std::uint64_t p, unsigned r);
    /// Throws OverflowError when p^r exceeds 64 bits.
    std::uint64_t value() const;
};

/// W = prod_{p <= w} p^{floor(log w / log p)}.
struct SmoothModulus {
    double w = 0;
    i128 W = 1;
    std::vector<PrimePower> factors;
    bool degenerate = false; ///< w < 2, so no prime contributes and W = 1
};

/// w defaults to log X. Throws OverflowError when W exceeds 128 bits.
SmoothModulus build_W(double X, std::optional<double> w_override = std::nullopt);

/// sigma(a; Q) = Q^{-(n-1)} #{g mod Q : f(g) = 0 mod Q}.
Rational sigma(const Form& form, std::uint64_t Q, const Budget& budget = {});

struct LocalFactor {
    PrimePower pp;
    Rational sigma;
};

struct LocalProfile {
    std::vector<LocalFactor> factors;
    Rational product = 1; ///< the truncated singular series S*_a = sigma(a; W)
};

LocalProfile singular_series(const Form& form, const SmoothModulus& modulus, const Budget& budget = {});

/// v_{p^r}(grad f(x)): the largest s <= r with grad f(x) = 0 mod p^s.
unsigned grad_valuation(const Form& form, std::span<const std::int64_t> x, const PrimePower& pp);

enum class Verdict { Soluble, Insoluble, Undetermined };

std::string to_string(Verdict v);

enum class WitnessKind {
    None,
    Hensel,      ///< primitive x with f(x) = 0 mod p^m, v(grad f(x)) = e, m >= 2e + 1
    IntegerZero, ///< primitive integer vector with f(x) = 0 exactly
    SignChange,  ///< real place: a root located between samples of opposite sign
};

struct SolubilityCertificate {
    std::optional<std::uint64_t> prime; ///< empty for the real place
    Verdict verdict = Verdict::Undetermined;
    WitnessKind kind = WitnessKind::None;
    IntVector witness;               ///< residues mod p^level, or the integer zero
    std::vector<double> real_witness;
    unsigned level = 0; ///< Hensel level m, or the level at which the frontier emptied
    unsigned e = 0;     ///< gradient valuation of the witness
    std::string note;
};

inline constexpr unsigned kMaxHenselExponent = 6;
inline constexpr unsigned kDefaultHenselDepth = 2 * kMaxHenselExponent + 1;

/// Breadth-first lifting of primitive zeros mod p, p^2, ..., p^depth.
/// Residues are normalized so that their first unit coordinate is 1.
/// Throws BudgetExceeded when the frontier work exceeds the budget.
SolubilityCertificate padic_soluble(const Form& form, std::uint64_t p, unsigned depth = kDefaultHenselDepth,
                                    const Budget& budget = {});

/// Condition C_v^(e)(p^r): (i) p^v || a and P(a) = 0 mod p^r; (ii) some
/// primitive x mod p^{r-v} has f_{a/p^v}(x) = 0 mod p^{r-v} and
/// v_{p^{r-v}}(grad f_{a/p^v}(x)) = e.
bool condition_Cve(const Form& form, const ConstraintForm& P, const PrimePower& pp, unsigned v, unsigned e,
                   const Budget& budget = {});

struct BoundCheck {
    IntVector instance; ///< coefficient vector a (first inequality) or point g (second)
    unsigned e = 0;
    Rational lhs;
    Rational rhs;
    bool ok = true;
};

/// Exhaustive check of the two local counting inequalities at p^r:
///   p^{-(rn-r)} #{g primitive : f_a(g) = 0 mod p^r} >= p^{-(e+1)(n-1)}
///     for every primitive a having a primitive zero with gradient valuation e;
///   #{a primitive : (f_a(g), grad f_a(g)) = 0 mod p^e} <= p^{r(N-n)+(r-e)n}
///     for every primitive g and every e in 0..r.
struct LocalBoundsReport {
    PrimePower pp;
    int d = 0;
    int n = 0;
    std::vector<BoundCheck> lower_bound_checks;
    std::vector<BoundCheck> upper_bound_checks;
    std::size_t lower_bound_violations = 0;
    std::size_t upper_bound_violations = 0;
};

LocalBoundsReport verify_local_bounds(const PrimePower& pp, int d, int n, const Budget& budget = {});

/// N_1 = #{a mod p^r : P(a) = 0}, N_2 = sum sigma(a; p^r) and the variance
/// sum (sigma(a; p^r) - 1)^2 over the same a, by full enumeration.
struct MomentStats {
    PrimePower pp;
    BigInt N1;
    Rational N2;
    Rational variance;
    double n1_normalized = 0; ///< N_1 p^{r - rN}
    double n2_normalized = 0; ///< N_2 p^{-r(N-1)}
};

MomentStats local_moment_stats(const ConstraintForm& P, int d, int n, const PrimePower& pp, const Budget& budget = {});

} // namespace circlekit
