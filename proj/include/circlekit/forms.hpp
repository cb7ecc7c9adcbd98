#pragma once

// Monomial bases, the Veronese embedding and integer forms f_a(x) = <a, nu(x)>.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "circlekit/arith.hpp"

namespace circlekit {

using Exponent = std::vector<int>;
using IntVector = std::vector<std::int64_t>;

/// Degree-d monomials in n variables, listed in strictly decreasing
/// lexicographic order of their exponent tuples: x_1^d first, x_n^d last.
class MonomialBasis {
public:
    /// Throws ArgumentError for d or n below 1, OverflowError when
    /// binomial(n+d-1, d) does not fit in 64 bits.
    MonomialBasis(int degree, int variables);

    int degree() const noexcept { return degree_; }
    int variables() const noexcept { return variables_; }
    std::size_t size() const noexcept { return exponents_.size(); }

    const std::vector<Exponent>& exponents() const noexcept { return exponents_; }
    const Exponent& exponent(std::size_t i) const { return exponents_.at(i); }

    std::optional<std::size_t> index_of(std::span<const int> alpha) const;
    /// Slot of x_var^d.
    std::size_t pure_power_index(int var) const;
    bool is_pure_power(std::size_t i) const;

    friend bool operator==(const MonomialBasis& a, const MonomialBasis& b)
    {
        return a.degree_ == b.degree_ && a.variables_ == b.variables_;
    }

private:
    int degree_;
    int variables_;
    std::vector<Exponent> exponents_;
};

/// binomial(n+d-1, d) with overflow detection.
std::uint64_t basis_size(int degree, int variables);
/// Exact binomial(n+d-1, d) for parameter checks far beyond enumeration scale.
BigInt basis_size_big(int degree, int variables);

using BasisPtr = std::shared_ptr<const MonomialBasis>;

BasisPtr build_basis(int degree, int variables);

/// Integer coefficient vector over a basis; immutable.
class Form {
public:
    /// Throws LengthMismatch when coeffs.size() != basis->size().
    Form(BasisPtr basis, IntVector coeffs);
    static Form make(int degree, int variables, IntVector coeffs);

    const MonomialBasis& basis() const noexcept { return *basis_; }
    const BasisPtr& basis_ptr() const noexcept { return basis_; }
    const IntVector& coeffs() const noexcept { return coeffs_; }
    int degree() const noexcept { return basis_->degree(); }
    int variables() const noexcept { return basis_->variables(); }
    bool is_zero() const noexcept;
    /// Sum of |a_i|; throws OverflowError.
    i128 l1_norm() const;
    double euclidean_norm() const;

    friend bool operator==(const Form& a, const Form& b)
    {
        return *a.basis_ == *b.basis_ && a.coeffs_ == b.coeffs_;
    }

private:
    BasisPtr basis_;
    IntVector coeffs_;
};

struct DiagonalSplit {
    IntVector b; ///< coefficient of x_k^d, k = 1..n
    IntVector c; ///< remaining coefficients in basis order
};

std::vector<i128> veronese(const MonomialBasis& basis, std::span<const std::int64_t> x);
i128 evaluate(const Form& form, std::span<const std::int64_t> x);
std::vector<i128> gradient(const Form& form, std::span<const std::int64_t> x);
double evaluate_real(const Form& form, std::span<const double> x);

DiagonalSplit split_diagonal(const Form& form);
/// Inverse of split_diagonal.
IntVector recombine(const MonomialBasis& basis, const DiagonalSplit& split);
/// v_d(x) = (x_1^d, ..., x_n^d).
std::vector<i128> pure_powers(const MonomialBasis& basis, std::span<const std::int64_t> x);
/// w_d(x): the remaining monomials in basis order.
std::vector<i128> mixed_monomials(const MonomialBasis& basis, std::span<const std::int64_t> x);

/// True when every mixed coefficient vanishes.
bool is_diagonal(const Form& form);

} // namespace circlekit
