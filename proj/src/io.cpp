#include "circlekit/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "circlekit/errors.hpp"

namespace circlekit {

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

Json integer_json(const BigInt& v)
{
    if (v >= INT64_MIN && v <= INT64_MAX) return static_cast<std::int64_t>(v);
    return v.str();
}

Json integer_json(i128 v) { return integer_json(to_bigint(v)); }

Json rational_json(const Rational& q)
{
    return Json{{"num", integer_json(BigInt(numerator(q)))}, {"den", integer_json(BigInt(denominator(q)))}};
}

Json vector_json(const IntVector& v)
{
    Json arr = Json::array();
    for (auto x : v) arr.push_back(x);
    return arr;
}

namespace {

void require_keys(const Json& j, std::string_view where, const std::set<std::string>& allowed)
{
    if (!j.is_object()) throw SchemaError(std::string(where) + ": expected a JSON object");
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key)) throw SchemaError(std::string(where) + ": unknown field \"" + key + "\"");
}

const Json& field(const Json& j, const std::string& key, std::string_view where)
{
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(std::string(where) + ": missing field \"" + key + "\"");
    return *it;
}

std::int64_t int_field(const Json& j, const std::string& key, std::string_view where)
{
    const auto& v = field(j, key, where);
    if (!v.is_number_integer()) throw SchemaError(std::string(where) + ": field \"" + key + "\" must be an integer");
    return v.get<std::int64_t>();
}

double real_field(const Json& j, const std::string& key, std::string_view where)
{
    const auto& v = field(j, key, where);
    if (!v.is_number()) throw SchemaError(std::string(where) + ": field \"" + key + "\" must be a number");
    return v.get<double>();
}

int small_positive(std::int64_t v, const std::string& key, std::string_view where)
{
    if (v < 1 || v > 1'000'000) throw SchemaError(std::string(where) + ": field \"" + key + "\" must be a positive integer");
    return static_cast<int>(v);
}

} // namespace

Form form_from_json(const Json& j)
{
    constexpr std::string_view where = "form";
    require_keys(j, where, {"d", "n", "coeffs"});
    const int d = small_positive(int_field(j, "d", where), "d", where);
    const int n = small_positive(int_field(j, "n", where), "n", where);
    const auto& coeffs = field(j, "coeffs", where);
    if (!coeffs.is_array()) throw SchemaError("form: field \"coeffs\" must be an array");
    IntVector a;
    a.reserve(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (!coeffs[i].is_number_integer())
            throw SchemaError("form: coeffs[" + std::to_string(i) + "] must be an integer");
        a.push_back(coeffs[i].get<std::int64_t>());
    }
    const auto expected = basis_size(d, n);
    if (a.size() != expected) {
        throw LengthMismatch("form: expected " + std::to_string(expected) + " coefficients for d=" + std::to_string(d)
                             + ", n=" + std::to_string(n) + ", got " + std::to_string(a.size()));
    }
    return Form::make(d, n, std::move(a));
}

Json form_to_json(const Form& form)
{
    return Json{{"d", form.degree()}, {"n", form.variables()}, {"coeffs", vector_json(form.coeffs())}};
}

Json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw SchemaError(path.string() + ": invalid JSON: " + e.what());
    }
}

Form parse_form_file(const std::filesystem::path& path) { return form_from_json(read_json_file(path)); }

ConstraintForm parse_constraint_file(const std::filesystem::path& path)
{
    return ConstraintForm(parse_form_file(path));
}

ExperimentConfig config_from_json(const Json& j)
{
    constexpr std::string_view where = "config";
    require_keys(j, where,
                 {"form_space", "P", "A", "X", "w", "zeta", "eta", "grid", "depth", "seed", "limit", "sample",
                  "proportion_base"});
    ExperimentConfig c;
    const auto& space = field(j, "form_space", where);
    require_keys(space, "config.form_space", {"d", "n"});
    c.d = small_positive(int_field(space, "d", "config.form_space"), "d", "config.form_space");
    c.n = small_positive(int_field(space, "n", "config.form_space"), "n", "config.form_space");
    c.P_form = form_from_json(field(j, "P", where));
    if (c.P_form.degree() < 2) throw SchemaError("config: P must have degree k >= 2");
    if (static_cast<std::uint64_t>(c.P_form.variables()) != basis_size(c.d, c.n))
        throw SchemaError("config: P must have N = " + std::to_string(basis_size(c.d, c.n)) + " variables");
    c.A = int_field(j, "A", where);
    c.X = int_field(j, "X", where);
    if (c.A < 1) throw SchemaError("config: field \"A\" must be >= 1");
    if (c.X < 1) throw SchemaError("config: field \"X\" must be >= 1");
    if (j.contains("w")) c.w = real_field(j, "w", where);
    if (j.contains("zeta")) c.zeta = real_field(j, "zeta", where);
    if (j.contains("eta")) c.eta = real_field(j, "eta", where);
    if (j.contains("grid")) c.grid = small_positive(int_field(j, "grid", where), "grid", where);
    if (j.contains("depth")) c.depth = static_cast<unsigned>(small_positive(int_field(j, "depth", where), "depth", where));
    if (j.contains("seed")) {
        const auto& v = j["seed"];
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
            throw SchemaError("config: field \"seed\" must be a non-negative integer");
        c.seed = v.get<std::uint64_t>();
    }
    if (j.contains("limit")) c.limit = static_cast<std::size_t>(small_positive(int_field(j, "limit", where), "limit", where));
    if (j.contains("sample"))
        c.sample = static_cast<std::size_t>(small_positive(int_field(j, "sample", where), "sample", where));
    if (j.contains("proportion_base")) {
        const auto& v = j["proportion_base"];
        if (v == "local") c.proportion_base = ProportionBase::LocallySoluble;
        else if (v == "thin_set") c.proportion_base = ProportionBase::ThinSet;
        else throw SchemaError("config: field \"proportion_base\" must be \"local\" or \"thin_set\"");
    }
    if (c.w && !(*c.w > 0)) throw SchemaError("config: field \"w\" must be positive");
    if (c.zeta && !(*c.zeta > 0)) throw SchemaError("config: field \"zeta\" must be positive");
    if (c.grid < 4) throw SchemaError("config: field \"grid\" must be >= 4");
    return c;
}

namespace {

std::string kind_name(WitnessKind k)
{
    switch (k) {
    case WitnessKind::None: return "none";
    case WitnessKind::Hensel: return "hensel";
    case WitnessKind::IntegerZero: return "integer_zero";
    case WitnessKind::SignChange: return "sign_change";
    }
    return "none";
}

Json optional_real(const std::optional<double>& v) { return v ? Json(format_double(*v)) : Json(nullptr); }

} // namespace

Json certificate_json(const SolubilityCertificate& cert)
{
    Json j;
    j["place"] = cert.prime ? Json(*cert.prime) : Json("real");
    j["verdict"] = to_string(cert.verdict);
    j["kind"] = kind_name(cert.kind);
    if (!cert.witness.empty()) j["witness"] = vector_json(cert.witness);
    if (!cert.real_witness.empty()) {
        Json arr = Json::array();
        for (double v : cert.real_witness) arr.push_back(format_double(v));
        j["real_witness"] = arr;
    }
    j["level"] = cert.level;
    if (cert.kind == WitnessKind::Hensel) j["e"] = cert.e;
    if (!cert.note.empty()) j["note"] = cert.note;
    return j;
}

Json summary_json(const Summary& s)
{
    Json gate{{"d", s.gate.d},         {"n", s.gate.n},         {"k", s.gate.k},
              {"N", integer_json(s.gate.N)}, {"n1", s.gate.n1},   {"variance_regime", s.gate.variance_regime},
              {"product_regime", s.gate.product_regime}, {"degree_regime", s.gate.degree_regime}};
    Json j;
    j["records"] = s.records;
    j["thin_set_size"] = s.thin_set_size;
    j["truncated"] = s.truncated;
    j["sampled"] = s.sampled;
    j["seed"] = s.seed;
    j["empty"] = s.empty;
    j["exploratory"] = s.exploratory;
    j["gate"] = gate;
    j["locally_soluble"] = s.soluble;
    j["locally_insoluble"] = s.insoluble;
    j["undetermined"] = s.undetermined;
    j["sum_abs_diff_sq"] = format_double(s.sum_abs_diff_sq);
    j["reference_scale"] = format_double(s.reference_scale);
    j["product_threshold"] = format_double(s.product_threshold);
    j["small_product_fraction"] = optional_real(s.small_product_fraction);
    j["count_threshold"] = format_double(s.count_threshold);
    j["proportion_base"] = s.proportion_base == ProportionBase::LocallySoluble ? "local" : "thin_set";
    j["small_count_fraction"] = optional_real(s.small_count_fraction);
    j["small_count_fraction_local"] = optional_real(s.small_count_fraction_local);
    j["small_count_fraction_thin"] = optional_real(s.small_count_fraction_thin);
    j["thin_set_scale"] = format_double(s.thin_set_scale);
    j["thin_set_ratio"] = format_double(s.thin_set_ratio);
    j["median_product"] = optional_real(s.median_product);
    j["above_median"] = s.above_median;
    j["above_median_with_zero"] = s.above_median_with_zero;
    j["above_median_fraction"] = optional_real(s.above_median_fraction);
    return j;
}

} // namespace circlekit
