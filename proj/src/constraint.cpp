#include "circlekit/constraint.hpp"

#include <string>

#include "circlekit/errors.hpp"

namespace circlekit {

ConstraintForm::ConstraintForm(Form form) : form_(std::move(form))
{
    if (form_.degree() < 2) throw ArgumentError("constraint form must have degree k >= 2");
}

void require_matches_form_space(const ConstraintForm& P, int d, int n)
{
    const auto N = basis_size(d, n);
    if (static_cast<std::uint64_t>(P.variables()) != N) {
        throw ArgumentError("constraint has " + std::to_string(P.variables()) + " variables but the form space (d="
                            + std::to_string(d) + ", n=" + std::to_string(n) + ") has N=" + std::to_string(N));
    }
}

} // namespace circlekit
