#pragma once

#include <cstdint>
#include <vector>

#include "circlekit/budget.hpp"
#include "circlekit/forms.hpp"

namespace circlekit {

/// #{x in [1, X]^n : f(x) = 0}.
struct BoxCount {
    std::int64_t X = 0;
    std::uint64_t count = 0;
};

enum class CountMethod {
    Automatic,      ///< meet-in-the-middle for diagonal forms with n >= 2, else brute force
    BruteForce,
    MeetInTheMiddle ///< diagonal forms only
};

/// Exact number of integer zeros of `form` in the box [1, X]^n.
BoxCount count_solutions(const Form& form, std::int64_t X, const Budget& budget = {},
                         CountMethod method = CountMethod::Automatic);

/// #{g in [1, Q]^n : f(g) = 0 mod Q}.
std::uint64_t count_mod(const Form& form, std::uint64_t Q, const Budget& budget = {});

/// Histogram of f(g) mod q over g in [0, q)^n; entry c counts the class c.
std::vector<std::uint64_t> residue_histogram(const Form& form, std::uint64_t q, const Budget& budget = {});

/// The same count as count_mod, obtained from the full additive character sum
/// Q^{-1} sum_l sum_g e(l f(g) / Q) in floating point. Throws
/// NumericalInconsistency when the real result is farther than 1e-6 from an integer.
std::uint64_t count_mod_via_char_sums(const Form& form, std::uint64_t Q, const Budget& budget = {});

} // namespace circlekit
