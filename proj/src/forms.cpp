#include "circlekit/forms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "circlekit/errors.hpp"

namespace circlekit {

namespace {

void append_exponents(int remaining, std::size_t slot, Exponent& current, std::vector<Exponent>& out)
{
    if (slot + 1 == current.size()) {
        current[slot] = remaining;
        out.push_back(current);
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        current[slot] = e;
        append_exponents(remaining - e, slot + 1, current, out);
    }
}

} // namespace

std::uint64_t basis_size(int degree, int variables)
{
    if (degree < 1 || variables < 1) throw ArgumentError("degree and variable count must be >= 1");
    // binomial(n+d-1, d) built incrementally; each partial product is itself a binomial.
    i128 value = 1;
    for (int i = 1; i <= degree; ++i) {
        value = checked_mul(value, variables - 1 + i) / i;
        if (value > static_cast<i128>(INT64_MAX)) throw OverflowError("basis size exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(value);
}

BigInt basis_size_big(int degree, int variables)
{
    if (degree < 1 || variables < 1) throw ArgumentError("degree and variable count must be >= 1");
    BigInt value = 1;
    for (int i = 1; i <= degree; ++i) value = value * (variables - 1 + i) / i;
    return value;
}

MonomialBasis::MonomialBasis(int degree, int variables) : degree_(degree), variables_(variables)
{
    std::uint64_t n = basis_size(degree, variables);
    if (n > 100'000'000ULL) throw ArgumentError("basis too large to materialize");
    exponents_.reserve(n);
    Exponent current(static_cast<std::size_t>(variables), 0);
    append_exponents(degree, 0, current, exponents_);
}

std::optional<std::size_t> MonomialBasis::index_of(std::span<const int> alpha) const
{
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
        if (std::equal(alpha.begin(), alpha.end(), exponents_[i].begin(), exponents_[i].end())) return i;
    }
    return std::nullopt;
}

std::size_t MonomialBasis::pure_power_index(int var) const
{
    Exponent alpha(static_cast<std::size_t>(variables_), 0);
    alpha.at(static_cast<std::size_t>(var)) = degree_;
    return *index_of(alpha);
}

bool MonomialBasis::is_pure_power(std::size_t i) const
{
    for (int e : exponents_[i])
        if (e == degree_) return true;
    return false;
}

BasisPtr build_basis(int degree, int variables)
{
    return std::make_shared<const MonomialBasis>(degree, variables);
}

Form::Form(BasisPtr basis, IntVector coeffs) : basis_(std::move(basis)), coeffs_(std::move(coeffs))
{
    if (!basis_) throw ArgumentError("form requires a basis");
    if (coeffs_.size() != basis_->size()) {
        throw LengthMismatch("coefficient vector has length " + std::to_string(coeffs_.size())
                             + ", expected " + std::to_string(basis_->size()));
    }
}

Form Form::make(int degree, int variables, IntVector coeffs)
{
    return Form(build_basis(degree, variables), std::move(coeffs));
}

bool Form::is_zero() const noexcept
{
    for (auto c : coeffs_)
        if (c != 0) return false;
    return true;
}

i128 Form::l1_norm() const
{
    i128 s = 0;
    for (auto c : coeffs_) s = checked_add(s, abs128(c));
    return s;
}

double Form::euclidean_norm() const
{
    double s = 0;
    for (auto c : coeffs_) s += static_cast<double>(c) * static_cast<double>(c);
    return std::sqrt(s);
}

std::vector<i128> veronese(const MonomialBasis& basis, std::span<const std::int64_t> x)
{
    if (x.size() != static_cast<std::size_t>(basis.variables()))
        throw ArgumentError("point has wrong dimension");
    std::vector<i128> out;
    out.reserve(basis.size());
    for (const auto& alpha : basis.exponents()) {
        i128 m = 1;
        for (std::size_t j = 0; j < alpha.size(); ++j) m = checked_mul(m, checked_pow(x[j], alpha[j]));
        out.push_back(m);
    }
    return out;
}

i128 evaluate(const Form& form, std::span<const std::int64_t> x)
{
    auto nu = veronese(form.basis(), x);
    i128 s = 0;
    for (std::size_t i = 0; i < nu.size(); ++i) s = checked_add(s, checked_mul(form.coeffs()[i], nu[i]));
    return s;
}

std::vector<i128> gradient(const Form& form, std::span<const std::int64_t> x)
{
    const auto& basis = form.basis();
    const auto n = static_cast<std::size_t>(basis.variables());
    if (x.size() != n) throw ArgumentError("point has wrong dimension");
    std::vector<i128> grad(n, 0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto& alpha = basis.exponent(i);
        const i128 a = form.coeffs()[i];
        if (a == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (alpha[j] == 0) continue;
            i128 term = checked_mul(a, alpha[j]);
            for (std::size_t k = 0; k < n; ++k) {
                int e = k == j ? alpha[k] - 1 : alpha[k];
                term = checked_mul(term, checked_pow(x[k], static_cast<unsigned>(e)));
            }
            grad[j] = checked_add(grad[j], term);
        }
    }
    return grad;
}

double evaluate_real(const Form& form, std::span<const double> x)
{
    const auto& basis = form.basis();
    double s = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        double m = static_cast<double>(form.coeffs()[i]);
        const auto& alpha = basis.exponent(i);
        for (std::size_t j = 0; j < alpha.size(); ++j)
            for (int e = 0; e < alpha[j]; ++e) m *= x[j];
        s += m;
    }
    return s;
}

DiagonalSplit split_diagonal(const Form& form)
{
    const auto& basis = form.basis();
    DiagonalSplit split;
    split.b.assign(static_cast<std::size_t>(basis.variables()), 0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto& alpha = basis.exponent(i);
        bool pure = false;
        for (std::size_t j = 0; j < alpha.size(); ++j) {
            if (alpha[j] == basis.degree()) {
                split.b[j] = form.coeffs()[i];
                pure = true;
            }
        }
        if (!pure) split.c.push_back(form.coeffs()[i]);
    }
    return split;
}

IntVector recombine(const MonomialBasis& basis, const DiagonalSplit& split)
{
    if (split.b.size() != static_cast<std::size_t>(basis.variables())
        || split.b.size() + split.c.size() != basis.size())
        throw LengthMismatch("split does not match basis");
    IntVector coeffs;
    coeffs.reserve(basis.size());
    std::size_t next_c = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto& alpha = basis.exponent(i);
        std::optional<std::size_t> pure_var;
        for (std::size_t j = 0; j < alpha.size(); ++j)
            if (alpha[j] == basis.degree()) pure_var = j;
        coeffs.push_back(pure_var ? split.b[*pure_var] : split.c[next_c++]);
    }
    return coeffs;
}

std::vector<i128> pure_powers(const MonomialBasis& basis, std::span<const std::int64_t> x)
{
    std::vector<i128> out;
    for (auto xi : x) out.push_back(checked_pow(xi, static_cast<unsigned>(basis.degree())));
    return out;
}

std::vector<i128> mixed_monomials(const MonomialBasis& basis, std::span<const std::int64_t> x)
{
    auto nu = veronese(basis, x);
    std::vector<i128> out;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (!basis.is_pure_power(i)) out.push_back(nu[i]);
    return out;
}

bool is_diagonal(const Form& form)
{
    for (auto c : split_diagonal(form).c)
        if (c != 0) return false;
    return true;
}

} // namespace circlekit
