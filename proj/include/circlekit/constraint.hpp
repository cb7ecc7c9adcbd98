#pragma once

#include "circlekit/forms.hpp"

namespace circlekit {

/// The constraint P(a) = 0 on coefficient vectors: a degree-k form (k >= 2)
/// in N variables, where N is the size of the target form space.
class ConstraintForm {
public:
    /// Throws ArgumentError when the degree is below 2.
    explicit ConstraintForm(Form form);

    const Form& form() const noexcept { return form_; }
    int degree() const noexcept { return form_.degree(); }
    int variables() const noexcept { return form_.variables(); }

    i128 operator()(std::span<const std::int64_t> a) const { return evaluate(form_, a); }

private:
    Form form_;
};

/// Throws ArgumentError unless P has exactly basis_size(d, n) variables.
void require_matches_form_space(const ConstraintForm& P, int d, int n);

} // namespace circlekit
