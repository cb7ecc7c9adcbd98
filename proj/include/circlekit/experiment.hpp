#pragma once

// Desk-scale experiment harness: hypothesis gates, per-coefficient records
// comparing I_a(X) with S*_a J*_a, and the summary statistics of a run.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "circlekit/archimedean.hpp"
#include "circlekit/budget.hpp"
#include "circlekit/constraint.hpp"
#include "circlekit/local.hpp"

namespace circlekit {

struct ParameterGate {
    int d = 0;
    int n = 0;
    int k = 0;
    BigInt N = 0;
    double A = 0;
    double X = 0;
    int n1 = 0; ///< greatest integer <= floor((n-1)/2) / 8
    bool variance_regime = false; ///< n1 > 2d, 2 X^d <= A <= X^{n1-d}, N >= 200 k (k-1) 2^{k-1}, d >= 4
    bool product_regime = false;  ///< n > d + 1, d >= 2, X^3 <= A, N >= 1000 n^2 8^k
    bool degree_regime = false;   ///< d >= 14, k <= d, n >= 32 d + 17

    bool exploratory() const noexcept { return !(variance_regime && product_regime); }
};

ParameterGate check_hypotheses(int d, int n, int k, double A, double X);

enum class ProportionBase { LocallySoluble, ThinSet };

struct ExperimentConfig {
    int d = 2;
    int n = 2;
    Form P_form = Form::make(2, 1, {1});
    std::int64_t A = 1;
    std::int64_t X = 1;
    std::optional<double> w;    ///< defaults to log X
    std::optional<double> zeta; ///< defaults to w^-5
    double eta = 1;
    int grid = kDefaultQuadraturePoints;
    unsigned depth = kDefaultHenselDepth;
    std::uint64_t seed = 0;
    std::optional<std::size_t> limit;  ///< keep the first members of the thin set
    std::optional<std::size_t> sample; ///< seeded subsample of the thin set
    ProportionBase proportion_base = ProportionBase::LocallySoluble;
    Budget budget;

    ConstraintForm constraint() const { return ConstraintForm(P_form); }
    /// Throws ArgumentError for inconsistent parameters.
    void validate() const;
};

/// Work allowed to p-adic lifting per prime and record before it gives up.
inline constexpr std::uint64_t kRecordLiftBudget = 200'000;

enum class LocalStatus { Soluble, Insoluble, Undetermined };

std::string to_string(LocalStatus s);

struct ExperimentRecord {
    std::size_t idx = 0;
    IntVector a;
    i128 P_value = 0; ///< exact recheck of P(a)
    bool degenerate = false;
    Verdict real_verdict = Verdict::Undetermined;
    std::vector<std::pair<std::uint64_t, Verdict>> padic_verdicts;
    LocalStatus locally_soluble = LocalStatus::Undetermined;
    std::uint64_t I = 0;
    Rational Sstar = 0;
    double Jstar = 0;
    double Jstar_gap = 0;
    double product = 0;
    double abs_diff = 0;
    std::optional<double> ratio; ///< I / (S* J*) when the product is positive
};

/// The per-run quantities shared by all records.
struct ExperimentContext {
    SmoothModulus modulus;
    FejerParams fejer;
    QuadratureSpec quad;
};

ExperimentContext make_context(const ExperimentConfig& config);

ExperimentRecord evaluate_record(const IntVector& a, const ExperimentConfig& config, const ExperimentContext& context,
                                 std::size_t idx = 0);

struct Summary {
    std::size_t records = 0;
    std::size_t thin_set_size = 0; ///< including the origin
    bool truncated = false;
    bool sampled = false;
    std::uint64_t seed = 0;
    bool empty = true;

    std::size_t soluble = 0;
    std::size_t insoluble = 0;
    std::size_t undetermined = 0;

    double sum_abs_diff_sq = 0;
    double reference_scale = 0; ///< A^{N-k-2} X^{2n-2d}

    double product_threshold = 0; ///< X^{n-d} A^-1 (log A)^-eta
    std::optional<double> small_product_fraction; ///< among locally soluble records

    double count_threshold = 0; ///< A^-1 X^{n-d} (log A)^{-1/5}
    std::optional<double> small_count_fraction_local; ///< denominator: locally soluble records
    std::optional<double> small_count_fraction_thin;  ///< denominator: records with a decided status
    ProportionBase proportion_base = ProportionBase::LocallySoluble;
    std::optional<double> small_count_fraction;       ///< the one selected by proportion_base

    double thin_set_scale = 0; ///< A^{N-k}
    double thin_set_ratio = 0; ///< thin_set_size / A^{N-k}

    std::optional<double> median_product; ///< over locally soluble records
    std::size_t above_median = 0;
    std::size_t above_median_with_zero = 0; ///< of those, records with I >= 1
    std::optional<double> above_median_fraction;

    ParameterGate gate;
    bool exploratory = true;
};

Summary summarize_reports(const std::vector<ExperimentRecord>& records, const ExperimentConfig& config);

struct ExperimentResult {
    std::vector<ExperimentRecord> records;
    Summary summary;
};

/// Enumerates the thin set (origin excluded), evaluates every record and
/// summarizes. Throws BudgetExceeded.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Header plus one line per record, columns fixed.
void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);

} // namespace circlekit
