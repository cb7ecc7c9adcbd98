#include "circlekit/local.hpp"

#include <algorithm>
#include <cmath>

#include "circlekit/counting.hpp"
#include "circlekit/detail/hash.hpp"
#include "circlekit/detail/slicer.hpp"
#include "circlekit/errors.hpp"
#include "circlekit/parallel.hpp"

namespace circlekit {

namespace {

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 q) { return static_cast<u64>(u128(a) * b % q); }

u64 reduce(std::int64_t v, u64 q) { return static_cast<u64>(mod_floor(v, static_cast<i128>(q))); }

// f(x) and grad f(x) modulo q for 0 <= x_i < q, q < 2^64.
struct ModEvaluator {
    const MonomialBasis& basis;
    std::vector<u64> coeffs;
    u64 q;
    mutable std::vector<u64> pw;

    ModEvaluator(const Form& form, u64 modulus) : basis(form.basis()), q(modulus)
    {
        coeffs.reserve(form.coeffs().size());
        for (auto c : form.coeffs()) coeffs.push_back(reduce(c, q));
    }

    void load(std::span<const std::int64_t> x) const
    {
        const auto n = static_cast<std::size_t>(basis.variables());
        const auto stride = static_cast<std::size_t>(basis.degree()) + 1;
        pw.assign(n * stride, 1 % q);
        for (std::size_t j = 0; j < n; ++j) {
            const u64 xj = reduce(x[j], q);
            for (std::size_t e = 1; e < stride; ++e) pw[j * stride + e] = mulmod(pw[j * stride + e - 1], xj, q);
        }
    }

    u64 power(std::size_t j, int e) const
    {
        return pw[j * (static_cast<std::size_t>(basis.degree()) + 1) + static_cast<std::size_t>(e)];
    }

    u64 value(std::span<const std::int64_t> x) const
    {
        load(x);
        u64 total = 0;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (coeffs[i] == 0) continue;
            u64 m = coeffs[i];
            const auto& alpha = basis.exponent(i);
            for (std::size_t j = 0; j < alpha.size(); ++j) m = mulmod(m, power(j, alpha[j]), q);
            total = (total + m) % q;
        }
        return total;
    }

    /// Value followed by the n partial derivatives.
    std::vector<u64> value_and_gradient(std::span<const std::int64_t> x) const
    {
        const auto n = static_cast<std::size_t>(basis.variables());
        load(x);
        std::vector<u64> out(n + 1, 0);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (coeffs[i] == 0) continue;
            const auto& alpha = basis.exponent(i);
            u64 m = coeffs[i];
            for (std::size_t j = 0; j < n; ++j) m = mulmod(m, power(j, alpha[j]), q);
            out[0] = (out[0] + m) % q;
            for (std::size_t j = 0; j < n; ++j) {
                if (alpha[j] == 0) continue;
                u64 g = mulmod(coeffs[i], static_cast<u64>(alpha[j]) % q, q);
                for (std::size_t l = 0; l < n; ++l) g = mulmod(g, power(l, l == j ? alpha[l] - 1 : alpha[l]), q);
                out[j + 1] = (out[j + 1] + g) % q;
            }
        }
        return out;
    }
};

unsigned valuation_mod(u64 v, u64 p, unsigned cap) { return valuation(static_cast<i128>(v), p, cap); }

unsigned min_valuation(std::span<const u64> values, u64 p, unsigned cap)
{
    unsigned e = cap;
    for (auto v : values) e = std::min(e, valuation_mod(v, p, cap));
    return e;
}

bool is_primitive(std::span<const std::int64_t> x, u64 p)
{
    return std::any_of(x.begin(), x.end(), [p](std::int64_t v) { return reduce(v, p) != 0; });
}

u64 checked_prime_power(u64 p, unsigned r)
{
    const i128 v = checked_pow(static_cast<i128>(p), r);
    if (v > static_cast<i128>(UINT64_MAX)) throw OverflowError("prime power exceeds 64 bits");
    return static_cast<u64>(v);
}

// Primitive zero of small height, used when lifting is inconclusive.
std::optional<IntVector> small_integer_zero(const Form& form)
{
    const auto n = static_cast<std::size_t>(form.variables());
    const std::int64_t h = n <= 4 ? 3 : n <= 6 ? 2 : 1;
    if (std::pow(2.0 * static_cast<double>(h) + 1.0, static_cast<double>(n)) > 2e6) return std::nullopt;
    IntVector x(n, -h);
    do {
        i128 g = 0;
        for (auto v : x) g = gcd(g, v);
        if (g != 1) continue;
        if (evaluate(form, x) == 0) return x;
    } while (detail::next_tuple<std::int64_t>(x, -h, h));
    return std::nullopt;
}

} // namespace

PrimePower PrimePower::make(std::uint64_t p, unsigned r)
{
    if (!is_prime(p)) throw ArgumentError(std::to_string(p) + " is not prime");
    if (r < 1) throw ArgumentError("prime power exponent must be >= 1");
    PrimePower pp;
    pp.p = p;
    pp.r = r;
    return pp;
}

std::uint64_t PrimePower::value() const { return checked_prime_power(p, r); }

SmoothModulus build_W(double X, std::optional<double> w_override)
{
    SmoothModulus out;
    if (w_override) {
        out.w = *w_override;
    } else {
        if (!(X > 0)) throw ArgumentError("X must be positive");
        out.w = std::log(X);
    }
    if (!(out.w >= 2)) {
        out.degenerate = true;
        return out;
    }
    for (auto p : primes_up_to(static_cast<std::uint64_t>(std::floor(out.w)))) {
        const unsigned r = max_exponent_below(p, out.w);
        if (r == 0) continue;
        PrimePower pp = PrimePower::make(p, r);
        out.W = checked_mul(out.W, checked_pow(static_cast<i128>(p), r));
        out.factors.push_back(pp);
    }
    return out;
}

Rational sigma(const Form& form, std::uint64_t Q, const Budget& budget)
{
    const auto count = count_mod(form, Q, budget);
    const BigInt scale = boost::multiprecision::pow(BigInt(Q), static_cast<unsigned>(form.variables() - 1));
    return Rational(BigInt(count), scale);
}

LocalProfile singular_series(const Form& form, const SmoothModulus& modulus, const Budget& budget)
{
    LocalProfile profile;
    for (const auto& pp : modulus.factors) {
        LocalFactor factor{pp, sigma(form, pp.value(), budget)};
        profile.product *= factor.sigma;
        profile.factors.push_back(std::move(factor));
    }
    return profile;
}

unsigned grad_valuation(const Form& form, std::span<const std::int64_t> x, const PrimePower& pp)
{
    if (x.size() != static_cast<std::size_t>(form.variables())) throw ArgumentError("point length differs from n");
    unsigned e = pp.r;
    for (auto g : gradient(form, x)) e = std::min(e, valuation(g, pp.p, pp.r));
    return e;
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Soluble: return "Soluble";
    case Verdict::Insoluble: return "Insoluble";
    case Verdict::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

SolubilityCertificate padic_soluble(const Form& form, std::uint64_t p, unsigned depth, const Budget& budget)
{
    if (!is_prime(p)) throw ArgumentError(std::to_string(p) + " is not prime");
    if (depth < 1) throw ArgumentError("depth must be >= 1");
    const auto n = static_cast<std::size_t>(form.variables());

    SolubilityCertificate cert;
    cert.prime = p;
    if (form.is_zero()) {
        cert.verdict = Verdict::Soluble;
        cert.kind = WitnessKind::IntegerZero;
        cert.witness.assign(n, 0);
        cert.witness[0] = 1;
        cert.note = "zero form";
        return cert;
    }

    auto integer_fallback = [&](const std::string& reason) {
        if (auto z = small_integer_zero(form)) {
            cert.verdict = Verdict::Soluble;
            cert.kind = WitnessKind::IntegerZero;
            cert.witness = *z;
            cert.note = reason + "; certified by an integer zero";
            return true;
        }
        return false;
    };

    struct Node {
        IntVector x;
        std::size_t lead;
    };

    // Level 1: primitive residues mod p whose first unit coordinate is 1.
    std::vector<Node> frontier;
    for (std::size_t lead = 0; lead < n; ++lead) {
        IntVector x(n, 0);
        x[lead] = 1;
        auto tail = std::span<std::int64_t>(x).subspan(lead + 1);
        do {
            frontier.push_back({x, lead});
        } while (detail::next_tuple<std::int64_t>(tail, 0, static_cast<std::int64_t>(p) - 1));
    }

    long double work = 0;
    u64 pm = 1;
    try {
        for (unsigned m = 1; m <= depth; ++m) {
            if (m > 1) {
                // Lift each survivor x mod p^{m-1} to x + p^{m-1} t, t_lead = 0.
                std::vector<Node> next;
                work += static_cast<long double>(frontier.size()) * std::pow(static_cast<long double>(p), n - 1);
                budget.require(work, "padic_soluble");
                for (const auto& node : frontier) {
                    IntVector t(n - 1, 0);
                    do {
                        Node lifted = node;
                        for (std::size_t j = 0, k = 0; j < n; ++j) {
                            if (j == node.lead) continue;
                            lifted.x[j] += static_cast<std::int64_t>(pm) * t[k++];
                        }
                        next.push_back(std::move(lifted));
                    } while (detail::next_tuple<std::int64_t>(t, 0, static_cast<std::int64_t>(p) - 1));
                }
                frontier = std::move(next);
            } else {
                work += static_cast<long double>(frontier.size());
                budget.require(work, "padic_soluble");
            }
            pm = checked_prime_power(p, m);
            const ModEvaluator eval(form, pm);

            std::vector<Node> survivors;
            for (auto& node : frontier) {
                const auto vg = eval.value_and_gradient(node.x);
                if (vg[0] != 0) continue;
                const unsigned e = min_valuation(std::span<const u64>(vg).subspan(1), p, m);
                if (m >= 2 * e + 1) {
                    cert.verdict = Verdict::Soluble;
                    cert.kind = WitnessKind::Hensel;
                    cert.witness = node.x;
                    cert.level = m;
                    cert.e = e;
                    return cert;
                }
                survivors.push_back(std::move(node));
            }
            if (survivors.empty()) {
                cert.verdict = Verdict::Insoluble;
                cert.level = m;
                cert.note = "no primitive zero mod p^" + std::to_string(m);
                return cert;
            }
            frontier = std::move(survivors);
        }
    } catch (const BudgetExceeded&) {
        if (integer_fallback("lifting budget exhausted")) return cert;
        throw;
    }
    cert.verdict = Verdict::Undetermined;
    cert.level = depth;
    cert.note = "depth exhausted with " + std::to_string(frontier.size()) + " singular survivors";
    integer_fallback("depth exhausted");
    return cert;
}

bool condition_Cve(const Form& form, const ConstraintForm& P, const PrimePower& pp, unsigned v, unsigned e,
                   const Budget& budget)
{
    const auto& a = form.coeffs();
    if (static_cast<std::size_t>(P.variables()) != a.size())
        throw ArgumentError("constraint variable count differs from the coefficient vector length");
    if (v > pp.r || e > pp.r - v) throw ArgumentError("condition requires 0 <= e <= r - v");

    // (i) p^v exactly divides a, and P(a) = 0 mod p^r.
    if (form.is_zero()) return false;
    unsigned va = UINT32_MAX;
    for (auto c : a)
        if (c != 0) va = std::min(va, valuation(c, pp.p, 64));
    if (va != v) return false;
    const ModEvaluator constraint(P.form(), pp.value());
    if (constraint.value(a) != 0) return false;

    // (ii) a primitive zero of the reduced form mod p^{r-v} with gradient valuation e.
    const unsigned s = pp.r - v;
    if (s == 0) return e == 0;
    const u64 Q = checked_prime_power(pp.p, s);
    const auto n = static_cast<unsigned>(form.variables());
    budget.require_power(Q, n, "condition_Cve");

    const i128 scale = checked_pow(static_cast<i128>(pp.p), v);
    IntVector reduced(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) reduced[i] = static_cast<std::int64_t>(a[i] / scale);
    const ModEvaluator eval(Form(form.basis_ptr(), reduced), Q);

    IntVector x(n, 0);
    do {
        if (!is_primitive(x, pp.p)) continue;
        const auto vg = eval.value_and_gradient(x);
        if (vg[0] != 0) continue;
        if (min_valuation(std::span<const u64>(vg).subspan(1), pp.p, s) == e) return true;
    } while (detail::next_tuple<std::int64_t>(x, 0, static_cast<std::int64_t>(Q) - 1));
    return false;
}

LocalBoundsReport verify_local_bounds(const PrimePower& pp, int d, int n, const Budget& budget)
{
    const auto basis = build_basis(d, n);
    const auto N = static_cast<unsigned>(basis->size());
    const u64 Q = pp.value();
    const u64 p = pp.p;
    const unsigned r = pp.r;
    budget.require_power(Q, N, "verify_local_bounds");
    budget.require(std::pow(static_cast<long double>(Q), N + n) * (n + 1), "verify_local_bounds");

    LocalBoundsReport report;
    report.pp = pp;
    report.d = d;
    report.n = n;

    // Rows: nu(g) then d nu / d x_j, reduced mod Q, for every primitive g.
    std::vector<IntVector> points;
    std::vector<std::vector<std::vector<u64>>> rows;
    {
        IntVector g(static_cast<std::size_t>(n), 0);
        do {
            if (!is_primitive(g, p)) continue;
            std::vector<std::vector<u64>> table(static_cast<std::size_t>(n) + 1, std::vector<u64>(N));
            for (unsigned i = 0; i < N; ++i) {
                IntVector unit(N, 0);
                unit[i] = 1;
                const ModEvaluator eval(Form(basis, unit), Q);
                const auto vg = eval.value_and_gradient(g);
                for (std::size_t k = 0; k < vg.size(); ++k) table[k][i] = vg[k];
            }
            points.push_back(g);
            rows.push_back(std::move(table));
        } while (detail::next_tuple<std::int64_t>(g, 0, static_cast<std::int64_t>(Q) - 1));
    }

    // upper[g][e] = #{a mod Q : (f_a(g), grad f_a(g)) = 0 mod p^e}
    std::vector<std::vector<std::uint64_t>> upper(points.size(), std::vector<std::uint64_t>(r + 1, 0));
    const Rational lower_scale(1, boost::multiprecision::pow(BigInt(p), r * static_cast<unsigned>(n) - r));

    IntVector a(N, 0);
    std::vector<u64> vals(static_cast<std::size_t>(n) + 1);
    do {
        const bool primitive = is_primitive(a, p);
        std::uint64_t zeros = 0;
        std::vector<bool> classes(r + 1, false);
        for (std::size_t gi = 0; gi < points.size(); ++gi) {
            for (std::size_t k = 0; k < vals.size(); ++k) {
                u64 acc = 0;
                for (unsigned i = 0; i < N; ++i) acc = (acc + static_cast<u64>(a[i]) * rows[gi][k][i]) % Q;
                vals[k] = acc;
            }
            const unsigned vf = valuation_mod(vals[0], p, r);
            const unsigned vgrad = min_valuation(std::span<const u64>(vals).subspan(1), p, r);
            for (unsigned e = 0; e <= std::min(vf, vgrad); ++e) ++upper[gi][e];
            if (vals[0] == 0) {
                ++zeros;
                classes[vgrad] = true;
            }
        }
        if (!primitive) continue;
        for (unsigned e = 0; e <= r; ++e) {
            if (!classes[e]) continue;
            BoundCheck check;
            check.instance = a;
            check.e = e;
            check.lhs = Rational(BigInt(zeros)) * lower_scale;
            check.rhs = Rational(1, boost::multiprecision::pow(BigInt(p), (e + 1) * static_cast<unsigned>(n - 1)));
            check.ok = check.lhs >= check.rhs;
            if (!check.ok) ++report.lower_bound_violations;
            report.lower_bound_checks.push_back(std::move(check));
        }
    } while (detail::next_tuple<std::int64_t>(a, 0, static_cast<std::int64_t>(Q) - 1));

    for (std::size_t gi = 0; gi < points.size(); ++gi) {
        for (unsigned e = 0; e <= r; ++e) {
            BoundCheck check;
            check.instance = points[gi];
            check.e = e;
            check.lhs = Rational(BigInt(upper[gi][e]));
            check.rhs = Rational(boost::multiprecision::pow(BigInt(p), r * (N - n) + (r - e) * n));
            check.ok = check.lhs <= check.rhs;
            if (!check.ok) ++report.upper_bound_violations;
            report.upper_bound_checks.push_back(std::move(check));
        }
    }
    return report;
}

MomentStats local_moment_stats(const ConstraintForm& P, int d, int n, const PrimePower& pp, const Budget& budget)
{
    require_matches_form_space(P, d, n);
    const auto basis = build_basis(d, n);
    const auto N = static_cast<unsigned>(basis->size());
    const u64 Q = pp.value();
    budget.require_power(Q, N, "local_moment_stats");
    budget.require(std::pow(static_cast<long double>(Q), N + n - 1) * N, "local_moment_stats");

    // nu(g) mod Q for every g in [0, Q)^n.
    std::vector<std::vector<u64>> nus;
    {
        IntVector g(static_cast<std::size_t>(n), 0);
        do {
            const auto nu = veronese(*basis, g);
            std::vector<u64> row(N);
            for (unsigned i = 0; i < N; ++i) row[i] = static_cast<u64>(mod_floor(nu[i], static_cast<i128>(Q)));
            nus.push_back(std::move(row));
        } while (detail::next_tuple<std::int64_t>(g, 0, static_cast<std::int64_t>(Q) - 1));
    }

    struct Partial {
        std::uint64_t n1 = 0;
        BigInt count_sum = 0;
        BigInt square_sum = 0; ///< sum (count - Q^{n-1})^2
    };
    const BigInt Qn1 = boost::multiprecision::pow(BigInt(Q), static_cast<unsigned>(n - 1));
    const std::uint64_t blocks = detail::block_count(Q);
    const ModEvaluator constraint(P.form(), Q);

    auto partial = parallel_map<Partial>(blocks, [&](std::size_t b) {
        Partial acc;
        const auto range = detail::block_range(Q, blocks, b);
        const ModEvaluator local_constraint = constraint;
        IntVector a(N, 0);
        for (u64 lead = range.begin; lead < range.end; ++lead) {
            a[0] = static_cast<std::int64_t>(lead);
            auto tail = std::span<std::int64_t>(a).subspan(1);
            std::fill(tail.begin(), tail.end(), 0);
            do {
                if (local_constraint.value(a) != 0) continue;
                ++acc.n1;
                std::uint64_t count = 0;
                for (const auto& nu : nus) {
                    u64 s = 0;
                    for (unsigned i = 0; i < N; ++i) s = (s + static_cast<u64>(a[i]) * nu[i]) % Q;
                    if (s == 0) ++count;
                }
                acc.count_sum += count;
                const BigInt dev = BigInt(count) - Qn1;
                acc.square_sum += dev * dev;
            } while (detail::next_tuple<std::int64_t>(tail, 0, static_cast<std::int64_t>(Q) - 1));
        }
        return acc;
    });

    Partial total;
    for (const auto& part : partial) {
        total.n1 += part.n1;
        total.count_sum += part.count_sum;
        total.square_sum += part.square_sum;
    }

    MomentStats stats;
    stats.pp = pp;
    stats.N1 = total.n1;
    stats.N2 = Rational(total.count_sum, Qn1);
    stats.variance = Rational(total.square_sum, Qn1 * Qn1);
    const double q = static_cast<double>(Q);
    stats.n1_normalized = static_cast<double>(total.n1) * std::pow(q, 1.0 - static_cast<double>(N));
    stats.n2_normalized = static_cast<double>(stats.N2) * std::pow(q, 1.0 - static_cast<double>(N));
    return stats;
}

} // namespace circlekit
