#pragma once

// Serialization: locale-independent number formatting, the JSON form schema
// {"d":…, "n":…, "coeffs":[…]} and experiment configuration files.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "circlekit/arith.hpp"
#include "circlekit/constraint.hpp"
#include "circlekit/experiment.hpp"
#include "circlekit/forms.hpp"
#include "circlekit/local.hpp"

namespace circlekit {

using Json = nlohmann::ordered_json;

/// Shortest round-trip form is not used; always 17 significant digits.
std::string format_double(double v);

/// Integer as a JSON number when it fits in 64 bits, otherwise a decimal string.
Json integer_json(const BigInt& v);
Json integer_json(i128 v);
/// {"num": …, "den": …} in lowest terms.
Json rational_json(const Rational& q);
Json vector_json(const IntVector& v);

/// Throws SchemaError naming the offending field, LengthMismatch on a bad
/// coefficient count.
Form form_from_json(const Json& j);
Json form_to_json(const Form& form);

Json read_json_file(const std::filesystem::path& path);
Form parse_form_file(const std::filesystem::path& path);
ConstraintForm parse_constraint_file(const std::filesystem::path& path);

/// Rejects unknown keys with SchemaError.
ExperimentConfig config_from_json(const Json& j);

Json certificate_json(const SolubilityCertificate& cert);
Json summary_json(const Summary& s);

} // namespace circlekit
