#include "circlekit/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>

#include "circlekit/archimedean.hpp"
#include "circlekit/counting.hpp"
#include "circlekit/errors.hpp"
#include "circlekit/experiment.hpp"
#include "circlekit/expsums.hpp"
#include "circlekit/local.hpp"
#include "circlekit/thinset.hpp"

namespace circlekit {

namespace {

using Rng = std::mt19937_64;

struct Outcome {
    bool passed = false;
    std::string detail;
    std::vector<std::string> notes;
};

Form random_form(Rng& rng, int d, int n, int height)
{
    std::uniform_int_distribution<std::int64_t> coeff(-height, height);
    IntVector a(basis_size(d, n));
    do {
        for (auto& c : a) c = coeff(rng);
    } while (std::all_of(a.begin(), a.end(), [](auto c) { return c == 0; }));
    return Form::make(d, n, a);
}

std::pair<int, int> random_shape(Rng& rng)
{
    static const std::pair<int, int> shapes[] = {{2, 2}, {3, 2}, {2, 3}};
    return shapes[std::uniform_int_distribution<int>(0, 2)(rng)];
}

Form diagonal_constraint(std::initializer_list<std::int64_t> b)
{
    const int N = static_cast<int>(b.size());
    const auto basis = build_basis(2, N);
    IntVector a(basis->size(), 0);
    int i = 0;
    for (auto v : b) a[basis->pure_power_index(i++)] = v;
    return Form(basis, a);
}

Outcome crt_suite()
{
    Rng rng(0xC127);
    std::uniform_int_distribution<std::uint64_t> mod(2, 32);
    int mismatches = 0;
    for (int t = 0; t < 100; ++t) {
        const auto [d, n] = random_shape(rng);
        const Form f = random_form(rng, d, n, 6);
        std::uint64_t q1 = 0;
        std::uint64_t q2 = 0;
        do {
            q1 = mod(rng);
            q2 = mod(rng);
        } while (std::gcd(q1, q2) != 1 || (n == 3 && q1 * q2 > 200));
        if (sigma(f, q1 * q2) != sigma(f, q1) * sigma(f, q2)) ++mismatches;
    }
    return {mismatches == 0, std::to_string(mismatches) + " mismatches in 100 cases", {}};
}

Outcome orthogonality_suite()
{
    Rng rng(0x0127);
    int mismatches = 0;
    for (int t = 0; t < 50; ++t) {
        const auto [d, n] = random_shape(rng);
        const Form f = random_form(rng, d, n, 9);
        const std::uint64_t Q = std::uniform_int_distribution<std::uint64_t>(1, n == 3 ? 24 : 64)(rng);
        if (count_mod(f, Q) != count_mod_via_char_sums(f, Q)) ++mismatches;
    }
    return {mismatches == 0, std::to_string(mismatches) + " mismatches in 50 cases", {}};
}

Outcome series_suite()
{
    Rng rng(0x5E41);
    const std::pair<std::uint64_t, unsigned> powers[] = {{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}, {5, 2}};
    int mismatches = 0;
    int cases = 0;
    for (const auto& [p, r] : powers) {
        for (int t = 0; t < 20; ++t, ++cases) {
            const auto [d, n] = random_shape(rng);
            const Form f = random_form(rng, d, n, 7);
            Rational total = 0;
            std::uint64_t ph = 1;
            for (unsigned h = 0; h <= r; ++h, ph *= p) total += complete_form_sum(f, ph).exact;
            if (total != sigma(f, ph / p)) ++mismatches;
        }
    }
    return {mismatches == 0, std::to_string(mismatches) + " mismatches in " + std::to_string(cases) + " cases", {}};
}

Outcome local_bounds_suite(bool lower)
{
    std::size_t violations = 0;
    std::size_t checks = 0;
    for (std::uint64_t p : {2, 3})
        for (unsigned r : {1u, 2u})
            for (auto [d, n] : {std::pair{2, 2}, std::pair{3, 2}}) {
                const auto report = verify_local_bounds(PrimePower::make(p, r), d, n);
                violations += lower ? report.lower_bound_violations : report.upper_bound_violations;
                checks += lower ? report.lower_bound_checks.size() : report.upper_bound_checks.size();
            }
    return {violations == 0, std::to_string(violations) + " violations in " + std::to_string(checks) + " checks", {}};
}

// Primitive zeros mod p^m: all zeros minus those with p | x, using f(p y) = p^d f(y).
BigInt primitive_zero_count(const Form& f, std::uint64_t p, unsigned m)
{
    const auto n = static_cast<unsigned>(f.variables());
    const auto d = static_cast<unsigned>(f.degree());
    const BigInt all = count_mod(f, static_cast<std::uint64_t>(checked_pow(p, m)));
    BigInt imprimitive;
    if (m <= d) {
        imprimitive = boost::multiprecision::pow(BigInt(p), n * (m - 1));
    } else {
        const auto low = static_cast<std::uint64_t>(checked_pow(p, m - d));
        imprimitive = boost::multiprecision::pow(BigInt(p), n * (d - 1)) * count_mod(f, low);
    }
    return all - imprimitive;
}

Outcome hensel_suite()
{
    Rng rng(0x4E45);
    const std::uint64_t primes[] = {2, 3, 5, 7};
    int inconsistent = 0;
    int soluble = 0;
    int insoluble = 0;
    int undetermined = 0;
    std::vector<std::string> notes;
    for (int t = 0; t < 200; ++t) {
        const auto [d, n] = random_shape(rng);
        const Form f = random_form(rng, d, n, 4);
        const std::uint64_t p = primes[std::uniform_int_distribution<int>(0, 3)(rng)];
        SolubilityCertificate cert;
        try {
            cert = padic_soluble(f, p, kDefaultHenselDepth, Budget{2'000'000});
        } catch (const BudgetExceeded&) {
            ++undetermined;
            continue;
        }
        bool ok = true;
        auto enumerable = [&](unsigned m) { return std::pow(static_cast<double>(p), m * n) <= 2e7; };
        if (cert.verdict == Verdict::Soluble) {
            ++soluble;
            if (cert.kind == WitnessKind::Hensel) {
                const auto Q = static_cast<i128>(checked_pow(p, cert.level));
                ok = ok && mod_floor(evaluate(f, cert.witness), Q) == 0 && cert.level >= 2 * cert.e + 1
                     && grad_valuation(f, cert.witness, PrimePower::make(p, cert.level)) == cert.e;
                ok = ok && std::any_of(cert.witness.begin(), cert.witness.end(),
                                       [p](std::int64_t v) { return v % static_cast<std::int64_t>(p) != 0; });
            } else {
                ok = ok && evaluate(f, cert.witness) == 0;
            }
            for (unsigned m = 1; m <= 5 && enumerable(m); ++m) ok = ok && primitive_zero_count(f, p, m) > 0;
        } else if (cert.verdict == Verdict::Insoluble) {
            ++insoluble;
            if (enumerable(cert.level)) ok = ok && primitive_zero_count(f, p, cert.level) == 0;
            else notes.push_back("refutation level too large to re-enumerate");
        } else {
            ++undetermined;
        }
        if (!ok) ++inconsistent;
    }
    std::ostringstream detail;
    detail << inconsistent << " inconsistent; " << soluble << " soluble, " << insoluble << " insoluble, "
           << undetermined << " undetermined";
    return {inconsistent == 0, detail.str(), notes};
}

Outcome moment_suite()
{
    const ConstraintForm P(diagonal_constraint({1, 1, -2}));
    const auto stats = local_moment_stats(P, 2, 2, PrimePower::make(3, 1));
    Outcome out;
    out.passed = stats.N1 == 9;
    out.detail = "N_1(3) = " + stats.N1.str() + " (expected 9)";
    for (std::uint64_t p : {3, 5, 7}) {
        const auto s = local_moment_stats(P, 2, 2, PrimePower::make(p, 1));
        std::ostringstream line;
        line << "p=" << p << "  N_1=" << s.N1 << "  |N_1 p^(1-N) - 1| = " << std::fabs(s.n1_normalized - 1.0);
        out.notes.push_back(line.str());
    }
    return out;
}

Outcome gauss_bound_suite()
{
    int violations = 0;
    int checks = 0;
    for (auto p : primes_up_to(100))
        for (int d : {2, 3})
            for (std::uint64_t a = 1; a < p; ++a, ++checks)
                if (std::abs(gauss_sum(p, static_cast<std::int64_t>(a), d))
                    > d * std::pow(static_cast<double>(p), 1.0 - 1.0 / d) + 1e-9)
                    ++violations;
    return {violations == 0, std::to_string(violations) + " violations in " + std::to_string(checks) + " sums", {}};
}

Outcome quadrature_suite()
{
    // a / A = zeta with n = 1, d = 2: the integrand is 1 - gamma^2 on [0, 1].
    const double A = 200;
    const double X = 10;
    const double zeta = 3.0 / 200.0;
    const Form f = Form::make(2, 1, {3});
    QuadratureSpec quad;
    quad.M = 128;
    const auto J = singular_integral(f, A, X, FejerParams::from_zeta(zeta), quad);
    const double exact = (2.0 / 3.0) / (A * X * zeta);
    const double err = std::fabs(J.value - exact);
    std::ostringstream detail;
    detail << std::setprecision(3) << "|J* - closed form| = " << err << ", gap(M=128) = " << J.gap;
    return {err < 1e-6 && J.gap < 1e-6, detail.str(), {}};
}

Outcome pairs_suite()
{
    const ConstraintForm P(diagonal_constraint({1, 1, -2}));
    const auto pc = congruent_pair_count(P, 2, 2);
    return {pc.count == 145, "N(A) = " + pc.count.str() + " (expected 145)", {}};
}

ExperimentConfig end_to_end_config()
{
    ExperimentConfig c;
    c.d = 2;
    c.n = 3;
    c.P_form = diagonal_constraint({1, 1, 1, -1, -1, -1});
    c.A = 3;
    c.X = 8;
    c.w = 3;
    return c;
}

Outcome end_to_end_suite()
{
    const auto config = end_to_end_config();
    const auto first = run_experiment(config);
    const auto second = run_experiment(config);
    std::ostringstream csv1;
    std::ostringstream csv2;
    write_csv(csv1, first.records);
    write_csv(csv2, second.records);

    const auto& s = first.summary;
    auto in_unit = [](const std::optional<double>& v) { return !v || (*v >= 0 && *v <= 1); };
    const bool rows = first.records.size() + 1 == s.thin_set_size && !s.truncated;
    const bool proportions = in_unit(s.small_product_fraction) && in_unit(s.small_count_fraction_local)
                             && in_unit(s.small_count_fraction_thin) && in_unit(s.above_median_fraction);
    const bool deterministic = csv1.str() == csv2.str();
    const bool median = s.above_median_fraction && *s.above_median_fraction >= 0.5;

    std::ostringstream detail;
    detail << s.records << " records of " << s.thin_set_size << " members; rows " << (rows ? "ok" : "BAD")
           << ", proportions " << (proportions ? "ok" : "BAD") << ", determinism " << (deterministic ? "ok" : "BAD")
           << ", above-median with I>=1: " << s.above_median_with_zero << "/" << s.above_median;
    Outcome out{rows && proportions && deterministic && median, detail.str(), {}};
    std::ostringstream note;
    note << "locally soluble " << s.soluble << ", insoluble " << s.insoluble << ", undetermined " << s.undetermined
         << "; gate variance_regime=" << s.gate.variance_regime
         << " product_regime=" << s.gate.product_regime << " (exploratory)";
    out.notes.push_back(note.str());
    return out;
}

Outcome arc_error_suite()
{
    const double alpha = 1.0 / 3.0 + 1e-4;
    const double e100 = major_arc_approx_error(alpha, 1, 3, 1, 100, 2);
    const double e1000 = major_arc_approx_error(alpha, 1, 3, 1, 1000, 2);
    std::ostringstream detail;
    detail << std::setprecision(4) << "error(X=100) = " << e100 << ", error(X=1000) = " << e1000
           << ", ratio = " << e1000 / e100;
    return {e1000 <= 3 * e100, detail.str(), {}};
}

struct SuiteEntry {
    int number;
    std::string name;
    std::string title;
    double limit_seconds;
    std::function<Outcome()> run;
};

const std::vector<SuiteEntry>& suites()
{
    static const std::vector<SuiteEntry> all = {
        {1, "crt", "sigma is multiplicative over coprime moduli", 30, crt_suite},
        {2, "orthogonality", "count_mod agrees with the character-sum count", 30, orthogonality_suite},
        {3, "series", "sigma(a; p^r) equals the sum of S_a(p^h), h <= r", 60, series_suite},
        {4, "lower-bound", "local lower bound on primitive zero counts", 300, [] { return local_bounds_suite(true); }},
        {5, "upper-bound", "local upper bound on coefficient counts", 300, [] { return local_bounds_suite(false); }},
        {6, "hensel", "p-adic certificates agree with brute force", 120, hensel_suite},
        {7, "moments", "N_1(3) = 9 for a1^2 + a2^2 - 2 a3^2", 1, moment_suite},
        {8, "gauss-bound", "|S(p, a)| <= d p^(1 - 1/d)", 10, gauss_bound_suite},
        {9, "quadrature", "J* matches the closed form for n = 1, d = 2", 5, quadrature_suite},
        {10, "pairs", "congruent pair count N(2) = 145 at W = 2", 1, pairs_suite},
        {11, "end-to-end", "exploratory run on a six-variable quadric", 600, end_to_end_suite},
        {12, "arc-error", "major-arc error stays bounded from X = 100 to 1000", 10, arc_error_suite},
    };
    return all;
}

CheckResult run_one(const SuiteEntry& entry)
{
    CheckResult r;
    r.number = entry.number;
    r.suite = entry.name;
    r.title = entry.title;
    r.limit_seconds = entry.limit_seconds;
    const auto start = std::chrono::steady_clock::now();
    try {
        auto outcome = entry.run();
        r.passed = outcome.passed;
        r.detail = std::move(outcome.detail);
        r.notes = std::move(outcome.notes);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.seconds > r.limit_seconds) {
        r.passed = false;
        r.detail += "; exceeded the time limit";
    }
    return r;
}

} // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& s : suites()) out.push_back(s.name);
        return out;
    }();
    return names;
}

std::vector<CheckResult> run_suite(const std::string& name)
{
    std::vector<CheckResult> out;
    for (const auto& entry : suites())
        if (name == "all" || name == entry.name) out.push_back(run_one(entry));
    if (out.empty()) throw ArgumentError("unknown suite \"" + name + "\"");
    return out;
}

std::string format_result(const CheckResult& r)
{
    std::ostringstream line;
    line << (r.passed ? "PASS " : "FAIL ") << std::setw(2) << r.number << ' ' << r.suite << ": " << r.title << " -- "
         << r.detail << std::fixed << std::setprecision(2) << " (" << r.seconds << " s, limit " << r.limit_seconds
         << " s)";
    for (const auto& note : r.notes) line << "\n        " << note;
    return line.str();
}

} // namespace circlekit
