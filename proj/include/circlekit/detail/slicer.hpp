#pragma once

// Restriction of a form to lines parallel to the last axis. For a fixed
// prefix (x_1, ..., x_{n-1}) the form is a univariate polynomial
// sum_e c_e t^e in t = x_n, so a box sweep costs O(d) per point once the
// slice coefficients are known.

#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

#include "circlekit/forms.hpp"

namespace circlekit::detail {

class AxisSlicer {
public:
    explicit AxisSlicer(const Form& form) : degree_(form.degree()), prefix_(form.variables() - 1)
    {
        const auto& basis = form.basis();
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (form.coeffs()[i] == 0) continue;
            const auto& alpha = basis.exponent(i);
            Term term;
            term.coeff = form.coeffs()[i];
            term.last = alpha.back();
            term.prefix_exps.assign(alpha.begin(), alpha.end() - 1);
            terms_.push_back(std::move(term));
        }
    }

    int degree() const noexcept { return degree_; }
    std::size_t prefix_size() const noexcept { return static_cast<std::size_t>(prefix_); }

    /// Exact slice coefficients; the caller guarantees T cannot overflow.
    template <class T>
    void coefficients(std::span<const T> prefix, std::vector<T>& out) const
    {
        build_powers(prefix, 0);
        out.assign(static_cast<std::size_t>(degree_) + 1, T(0));
        for (const auto& term : terms_) {
            T m = static_cast<T>(term.coeff);
            for (std::size_t j = 0; j < term.prefix_exps.size(); ++j) m *= power<T>(j, term.prefix_exps[j]);
            out[static_cast<std::size_t>(term.last)] += m;
        }
    }

    /// Slice coefficients reduced modulo q; prefix entries lie in [0, q), q < 2^32.
    void coefficients_mod(std::span<const std::uint64_t> prefix, std::uint64_t q, std::vector<std::uint64_t>& out) const
    {
        build_powers(prefix, q);
        out.assign(static_cast<std::size_t>(degree_) + 1, 0);
        for (const auto& term : terms_) {
            std::int64_t c = term.coeff % static_cast<std::int64_t>(q);
            std::uint64_t m = static_cast<std::uint64_t>(c < 0 ? c + static_cast<std::int64_t>(q) : c);
            for (std::size_t j = 0; j < term.prefix_exps.size(); ++j)
                m = m * power<std::uint64_t>(j, term.prefix_exps[j]) % q;
            auto& slot = out[static_cast<std::size_t>(term.last)];
            slot = (slot + m) % q;
        }
    }

private:
    struct Term {
        std::int64_t coeff;
        int last;
        std::vector<int> prefix_exps;
    };

    // Fills the per-thread table prefix[j]^e, reduced mod `modulus` when nonzero.
    template <class T>
    void build_powers(std::span<const T> prefix, std::uint64_t modulus) const
    {
        auto& table = powers<T>();
        const std::size_t stride = static_cast<std::size_t>(degree_) + 1;
        table.assign(prefix.size() * stride, T(1));
        for (std::size_t j = 0; j < prefix.size(); ++j) {
            for (std::size_t e = 1; e < stride; ++e) {
                T v = table[j * stride + e - 1] * prefix[j];
                if constexpr (std::is_same_v<T, std::uint64_t>) {
                    if (modulus != 0) v %= modulus;
                }
                table[j * stride + e] = v;
            }
        }
    }

    template <class T>
    T power(std::size_t var, int e) const
    {
        return powers<T>()[var * (static_cast<std::size_t>(degree_) + 1) + static_cast<std::size_t>(e)];
    }

    template <class T>
    std::vector<T>& powers() const
    {
        thread_local std::vector<T> table;
        return table;
    }

    int degree_;
    int prefix_;
    std::vector<Term> terms_;
};

template <class T>
inline T horner(const std::vector<T>& c, T t)
{
    T acc = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * t + c[i];
    return acc;
}

inline std::uint64_t horner_mod(const std::vector<std::uint64_t>& c, std::uint64_t t, std::uint64_t q)
{
    std::uint64_t acc = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) acc = (acc * t + c[i]) % q;
    return acc;
}

/// Advances v through [lo, hi]^k in lexicographic order, last entry fastest.
/// Returns false once every tuple has been visited.
template <class T>
inline bool next_tuple(std::span<T> v, T lo, T hi)
{
    for (std::size_t i = v.size(); i-- > 0;) {
        if (v[i] < hi) {
            ++v[i];
            return true;
        }
        v[i] = lo;
    }
    return false;
}

} // namespace circlekit::detail
