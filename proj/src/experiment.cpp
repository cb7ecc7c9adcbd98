#include "circlekit/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "circlekit/counting.hpp"
#include "circlekit/errors.hpp"
#include "circlekit/io.hpp"
#include "circlekit/parallel.hpp"
#include "circlekit/thinset.hpp"

namespace circlekit {

ParameterGate check_hypotheses(int d, int n, int k, double A, double X)
{
    if (d < 1 || n < 1 || k < 1) throw ArgumentError("d, n and k must be positive");
    ParameterGate gate;
    gate.d = d;
    gate.n = n;
    gate.k = k;
    gate.A = A;
    gate.X = X;
    gate.N = basis_size_big(d, n);
    gate.n1 = ((n - 1) / 2) / 8;

    const long double Xl = X;
    const long double Al = A;
    const BigInt variance_regime_size = BigInt(200) * k * (k - 1) * (BigInt(1) << (k - 1));
    gate.variance_regime = d >= 4 && gate.n1 > 2 * d && 2 * std::pow(Xl, d) <= Al && Al <= std::pow(Xl, gate.n1 - d)
                 && gate.N >= variance_regime_size;
    const BigInt product_regime_size = BigInt(1000) * n * n * boost::multiprecision::pow(BigInt(8), static_cast<unsigned>(k));
    gate.product_regime = n > d + 1 && d >= 2 && std::pow(Xl, 3) <= Al && gate.N >= product_regime_size;
    gate.degree_regime = d >= 14 && k <= d && n >= 32 * d + 17;
    return gate;
}

void ExperimentConfig::validate() const
{
    require_matches_form_space(constraint(), d, n);
    if (A < 1) throw ArgumentError("A must be >= 1");
    if (X < 1) throw ArgumentError("X must be >= 1");
    if (grid < 4) throw ArgumentError("grid must be >= 4");
    if (depth < 1) throw ArgumentError("depth must be >= 1");
    if (!w && X < 2) throw ArgumentError("w = log X needs X >= 2; set w explicitly");
    if (w && !(*w > 0)) throw ArgumentError("w must be positive");
    if (zeta && !(*zeta > 0)) throw ArgumentError("zeta must be positive");
}

std::string to_string(LocalStatus s)
{
    switch (s) {
    case LocalStatus::Soluble: return "true";
    case LocalStatus::Insoluble: return "false";
    case LocalStatus::Undetermined: return "undetermined";
    }
    return "undetermined";
}

ExperimentContext make_context(const ExperimentConfig& config)
{
    ExperimentContext ctx;
    ctx.modulus = build_W(static_cast<double>(config.X), config.w);
    ctx.fejer = config.zeta ? FejerParams::from_zeta(*config.zeta, ctx.modulus.w) : FejerParams::from_w(ctx.modulus.w);
    ctx.quad.M = config.grid;
    ctx.quad.seed = config.seed;
    ctx.quad.budget = config.budget;
    return ctx;
}

ExperimentRecord evaluate_record(const IntVector& a, const ExperimentConfig& config, const ExperimentContext& ctx,
                                 std::size_t idx)
{
    ExperimentRecord rec;
    rec.idx = idx;
    rec.a = a;
    rec.P_value = evaluate(config.P_form, a);
    if (rec.P_value != 0) throw ArgumentError("coefficient vector is not on the constraint P(a) = 0");
    const Form form = Form::make(config.d, config.n, a);
    rec.degenerate = form.is_zero();

    rec.real_verdict = real_soluble(form).verdict;
    bool any_insoluble = rec.real_verdict == Verdict::Insoluble;
    bool all_soluble = rec.real_verdict == Verdict::Soluble;
    for (const auto& pp : ctx.modulus.factors) {
        Verdict v = Verdict::Undetermined;
        try {
            v = padic_soluble(form, pp.p, config.depth, Budget{kRecordLiftBudget}).verdict;
        } catch (const BudgetExceeded&) {
        }
        rec.padic_verdicts.emplace_back(pp.p, v);
        any_insoluble = any_insoluble || v == Verdict::Insoluble;
        all_soluble = all_soluble && v == Verdict::Soluble;
    }
    rec.locally_soluble = any_insoluble ? LocalStatus::Insoluble
                          : all_soluble ? LocalStatus::Soluble
                                        : LocalStatus::Undetermined;

    rec.I = count_solutions(form, config.X, config.budget).count;
    rec.Sstar = singular_series(form, ctx.modulus, config.budget).product;
    const auto J = singular_integral(form, static_cast<double>(config.A), static_cast<double>(config.X), ctx.fejer,
                                     ctx.quad);
    rec.Jstar = J.value;
    rec.Jstar_gap = J.gap;
    rec.product = static_cast<double>(rec.Sstar) * rec.Jstar;
    rec.abs_diff = std::fabs(static_cast<double>(rec.I) - rec.product);
    if (rec.product > 0) rec.ratio = static_cast<double>(rec.I) / rec.product;
    return rec;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::optional<double> fraction(std::size_t num, std::size_t den)
{
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
}

} // namespace

Summary summarize_reports(const std::vector<ExperimentRecord>& records, const ExperimentConfig& config)
{
    Summary s;
    s.records = records.size();
    s.empty = records.empty();
    s.seed = config.seed;
    s.proportion_base = config.proportion_base;
    const int N = static_cast<int>(basis_size(config.d, config.n));
    const int k = config.P_form.degree();
    s.gate = check_hypotheses(config.d, config.n, k, static_cast<double>(config.A), static_cast<double>(config.X));
    s.exploratory = s.gate.exploratory();

    const double A = static_cast<double>(config.A);
    const double X = static_cast<double>(config.X);
    const double logA = std::log(A);
    s.reference_scale = std::pow(A, N - k - 2) * std::pow(X, 2 * config.n - 2 * config.d);
    s.product_threshold = std::pow(X, config.n - config.d) / A * std::pow(logA, -config.eta);
    s.count_threshold = std::pow(X, config.n - config.d) / A * std::pow(logA, -0.2);
    s.thin_set_scale = std::pow(A, N - k);

    std::size_t small_product = 0;
    std::size_t small_count = 0;
    std::vector<double> soluble_products;
    for (const auto& r : records) {
        s.sum_abs_diff_sq += r.abs_diff * r.abs_diff;
        switch (r.locally_soluble) {
        case LocalStatus::Soluble:
            ++s.soluble;
            soluble_products.push_back(r.product);
            if (r.product <= s.product_threshold) ++small_product;
            if (static_cast<double>(r.I) < s.count_threshold) ++small_count;
            break;
        case LocalStatus::Insoluble: ++s.insoluble; break;
        case LocalStatus::Undetermined: ++s.undetermined; break;
        }
    }
    s.small_product_fraction = fraction(small_product, s.soluble);
    s.small_count_fraction_local = fraction(small_count, s.soluble);
    s.small_count_fraction_thin = fraction(small_count, s.soluble + s.insoluble);
    s.small_count_fraction = s.proportion_base == ProportionBase::LocallySoluble ? s.small_count_fraction_local
                                                                                : s.small_count_fraction_thin;

    if (!soluble_products.empty()) {
        auto sorted = soluble_products;
        std::sort(sorted.begin(), sorted.end());
        const std::size_t m = sorted.size();
        const double median = m % 2 == 1 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
        s.median_product = median;
        for (const auto& r : records) {
            if (r.locally_soluble != LocalStatus::Soluble || !(r.product > median)) continue;
            ++s.above_median;
            if (r.I >= 1) ++s.above_median_with_zero;
        }
        s.above_median_fraction = fraction(s.above_median_with_zero, s.above_median);
    }
    return s;
}

ExperimentResult run_experiment(const ExperimentConfig& config)
{
    config.validate();
    const auto ctx = make_context(config);
    const auto set = enumerate_thin_set(config.constraint(), config.A, config.limit, config.budget);

    std::vector<IntVector> members;
    for (const auto& a : set.members)
        if (std::any_of(a.begin(), a.end(), [](std::int64_t v) { return v != 0; })) members.push_back(a);

    std::vector<std::size_t> chosen(members.size());
    for (std::size_t i = 0; i < chosen.size(); ++i) chosen[i] = i;
    const bool sampled = config.sample && *config.sample < members.size();
    if (sampled) {
        std::vector<std::pair<std::uint64_t, std::size_t>> keys;
        keys.reserve(members.size());
        for (std::size_t i = 0; i < members.size(); ++i) keys.emplace_back(splitmix64(config.seed ^ splitmix64(i)), i);
        std::partial_sort(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(*config.sample), keys.end());
        chosen.clear();
        for (std::size_t i = 0; i < *config.sample; ++i) chosen.push_back(keys[i].second);
        std::sort(chosen.begin(), chosen.end());
    }

    ExperimentResult result;
    result.records = parallel_map<ExperimentRecord>(chosen.size(), [&](std::size_t i) {
        return evaluate_record(members[chosen[i]], config, ctx, chosen[i]);
    });
    result.summary = summarize_reports(result.records, config);
    result.summary.thin_set_size = set.members.size();
    result.summary.truncated = set.truncated;
    result.summary.sampled = sampled;
    result.summary.thin_set_ratio = static_cast<double>(set.members.size()) / result.summary.thin_set_scale;
    return result;
}

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records)
{
    out << "idx,a,real_verdict,padic_verdicts,loc_soluble,I,Sstar_num,Sstar_den,Jstar,Jstar_gap,product,abs_diff,ratio\n";
    for (const auto& r : records) {
        out << r.idx << ',';
        for (std::size_t i = 0; i < r.a.size(); ++i) out << (i ? ";" : "") << r.a[i];
        out << ',' << to_string(r.real_verdict) << ',';
        for (std::size_t i = 0; i < r.padic_verdicts.size(); ++i)
            out << (i ? ";" : "") << r.padic_verdicts[i].first << ':' << to_string(r.padic_verdicts[i].second);
        out << ',' << to_string(r.locally_soluble) << ',' << r.I << ',' << numerator(r.Sstar) << ','
            << denominator(r.Sstar) << ',' << format_double(r.Jstar) << ',' << format_double(r.Jstar_gap) << ','
            << format_double(r.product) << ',' << format_double(r.abs_diff) << ',';
        if (r.ratio) out << format_double(*r.ratio);
        out << '\n';
    }
}

} // namespace circlekit
