#include "circlekit/expsums.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>

#include "circlekit/counting.hpp"
#include "circlekit/detail/slicer.hpp"
#include "circlekit/errors.hpp"

namespace circlekit {

namespace {

Complex exp_of_fraction(long double frac)
{
    const long double angle = 2.0L * std::numbers::pi_v<long double> * frac;
    return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

std::uint64_t pow_mod(std::uint64_t base, unsigned e, std::uint64_t q)
{
    u128 r = 1 % q;
    u128 b = base % q;
    for (unsigned i = 0; i < e; ++i) r = r * b % q;
    return static_cast<std::uint64_t>(r);
}

} // namespace

Complex unit_exp(double t)
{
    long double x = t;
    return exp_of_fraction(x - std::floor(x));
}

Complex unit_exp_ratio(i128 num, i128 den)
{
    if (den <= 0) throw ArgumentError("denominator must be positive");
    const i128 r = mod_floor(num, den);
    return exp_of_fraction(static_cast<long double>(r) / static_cast<long double>(den));
}

Complex gauss_sum(std::uint64_t q, std::int64_t a, int d)
{
    if (q == 0) throw ArgumentError("gauss_sum requires q >= 1");
    const auto a_mod = static_cast<std::uint64_t>(mod_floor(a, static_cast<i128>(q)));
    Complex total = 0;
    for (std::uint64_t x = 1; x <= q; ++x) {
        const u128 k = u128(a_mod) * pow_mod(x, static_cast<unsigned>(d), q) % q;
        total += unit_exp_ratio(static_cast<i128>(k), static_cast<i128>(q));
    }
    return total;
}

Complex weyl_sum(double alpha, std::int64_t b, std::int64_t X, int d)
{
    if (X < 1) throw ArgumentError("weyl_sum requires X >= 1");
    Complex total = 0;
    const long double a = alpha;
    for (std::int64_t x = 1; x <= X; ++x) {
        const i128 m = checked_mul(b, checked_pow(x, static_cast<unsigned>(d)));
        const long double phase = a * static_cast<long double>(m);
        total += exp_of_fraction(phase - std::floor(phase));
    }
    return total;
}

double t_alpha(double alpha, std::int64_t A, std::int64_t X, int d)
{
    if (A < 1 || X < 1) throw ArgumentError("t_alpha requires A, X >= 1");
    double total = 0;
    for (std::int64_t b = -A; b <= A; ++b) total += std::norm(weyl_sum(alpha, b, X, d));
    return total;
}

namespace {

Complex midpoint_v(double beta, double X, int d, int steps)
{
    const long double h = static_cast<long double>(X) / steps;
    std::complex<long double> total = 0;
    for (int i = 0; i < steps; ++i) {
        const long double g = h * (i + 0.5L);
        const long double phase = static_cast<long double>(beta) * std::pow(g, d);
        const auto z = exp_of_fraction(phase - std::floor(phase));
        total += std::complex<long double>(z.real(), z.imag());
    }
    total *= h;
    return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

} // namespace

OscillatoryIntegral v_integral(double beta, double X, int d, int steps)
{
    if (steps < 16) throw ArgumentError("v_integral requires at least 16 steps");
    if (beta == 0.0) return {Complex(X, 0.0), 0.0, steps};
    const Complex coarse = midpoint_v(beta, X, d, steps);
    const Complex fine = midpoint_v(beta, X, d, 2 * steps);
    return {coarse, std::abs(coarse - fine), steps};
}

CompleteSum complete_form_sum(const Form& form, std::uint64_t q, const Budget& budget)
{
    const auto hist = residue_histogram(form, q, budget);
    BigInt numerator = 0;
    Complex numeric = 0;
    for (std::uint64_t c = 0; c < q; ++c) {
        if (hist[c] == 0) continue;
        numerator += BigInt(hist[c]) * ramanujan_sum(q, c);
        Complex unit_sum = 0;
        for (std::uint64_t b = 1; b <= q; ++b) {
            if (std::gcd(b, q) != 1) continue;
            unit_sum += unit_exp_ratio(static_cast<i128>(u128(b) * c % q), static_cast<i128>(q));
        }
        numeric += static_cast<double>(hist[c]) * unit_sum;
    }
    const BigInt denominator = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(form.variables()));
    return {Rational(numerator, denominator), numeric / denominator.convert_to<double>()};
}

i128 difference_op(const Evaluator& eval, std::span<const IntVector> shifts, std::span<const std::int64_t> x)
{
    if (shifts.empty()) return eval(x);
    const auto& last = shifts.back();
    if (last.size() != x.size()) throw ArgumentError("shift length differs from point length");
    IntVector moved(x.begin(), x.end());
    for (std::size_t i = 0; i < moved.size(); ++i) {
        i128 v = checked_add(moved[i], last[i]);
        if (v > INT64_MAX || v < INT64_MIN) throw OverflowError("shifted point exceeds 64 bits");
        moved[i] = static_cast<std::int64_t>(v);
    }
    const auto inner = shifts.first(shifts.size() - 1);
    return checked_sub(difference_op(eval, inner, moved), difference_op(eval, inner, x));
}

i128 difference_op(const Form& form, std::span<const IntVector> shifts, std::span<const std::int64_t> x)
{
    return difference_op([&form](std::span<const std::int64_t> p) { return evaluate(form, p); }, shifts, x);
}

i128 symmetric_multilinear(const Form& form, std::span<const IntVector> vectors)
{
    const auto k = static_cast<std::size_t>(form.degree());
    const auto N = static_cast<std::size_t>(form.variables());
    if (vectors.size() != k) throw ArgumentError("symmetric_multilinear needs exactly k vectors");
    for (const auto& v : vectors)
        if (v.size() != N) throw ArgumentError("vector length differs from variable count");

    // weight(alpha) = coefficient * prod alpha_i!, i.e. k! times the symmetric tensor entry.
    std::vector<i128> weight(form.basis().size());
    for (std::size_t i = 0; i < weight.size(); ++i) {
        i128 w = form.coeffs()[i];
        for (int e : form.basis().exponent(i))
            for (int f = 2; f <= e; ++f) w = checked_mul(w, f);
        weight[i] = w;
    }

    i128 total = 0;
    std::vector<std::size_t> tuple(k, 0);
    Exponent alpha(N, 0);
    do {
        std::fill(alpha.begin(), alpha.end(), 0);
        i128 product = 1;
        for (std::size_t i = 0; i < k; ++i) {
            ++alpha[tuple[i]];
            product = checked_mul(product, vectors[i][tuple[i]]);
        }
        if (product != 0) {
            const auto slot = *form.basis().index_of(alpha);
            total = checked_add(total, checked_mul(weight[slot], product));
        }
    } while (detail::next_tuple<std::size_t>(tuple, 0, N - 1));
    return total;
}

i128 psi(const Form& form, std::span<const IntVector> vectors, std::size_t j)
{
    const auto N = static_cast<std::size_t>(form.variables());
    if (j >= N) throw ArgumentError("psi index out of range");
    std::vector<IntVector> full(vectors.begin(), vectors.end());
    IntVector unit(N, 0);
    unit[j] = 1;
    full.push_back(std::move(unit));
    return symmetric_multilinear(form, full);
}

double ArcParams::radius() const
{
    if (!(A > 0 && X > 0 && B > 0)) throw ArgumentError("arc parameters A, X, B must be positive");
    return B / (A * std::pow(X, d));
}

std::optional<ArcPoint> major_arc_locate(double alpha, const ArcParams& params)
{
    const double r = params.radius();
    const auto q_max = static_cast<std::int64_t>(std::floor(params.B));
    for (std::int64_t q = 1; q <= q_max; ++q) {
        const auto lo = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil((alpha - r) * q)) - 1);
        const auto hi = std::min<std::int64_t>(q, static_cast<std::int64_t>(std::floor((alpha + r) * q)) + 1);
        for (std::int64_t a = lo; a <= hi; ++a) {
            if (std::gcd(q, a) != 1) continue;
            const double delta = alpha - static_cast<double>(a) / static_cast<double>(q);
            if (std::fabs(delta) <= r) return ArcPoint{alpha, q, a, delta};
        }
    }
    return std::nullopt;
}

ArcApproximation major_arc_approximation(double alpha, std::int64_t b, std::int64_t q, std::int64_t a,
                                         std::int64_t X, int d, int steps)
{
    if (q < 1) throw ArgumentError("q must be >= 1");
    if (std::gcd(q, a) != 1) throw ArgumentError("q and a must be coprime");
    ArcApproximation out;
    const std::int64_t l = std::gcd(q, b);
    out.q_reduced = q / l;
    out.b_reduced = b / l;
    const long double beta = static_cast<long double>(b) * alpha
                             - static_cast<long double>(a) * out.b_reduced / static_cast<long double>(out.q_reduced);
    out.beta = static_cast<double>(beta);
    if (steps == 0) {
        const double cycles = std::fabs(out.beta) * std::pow(static_cast<double>(X), d);
        steps = static_cast<int>(std::min(1e8, std::max<double>(kDefaultIntegralSteps, 64.0 * std::ceil(cycles))));
    }
    out.weyl = weyl_sum(alpha, b, X, d);
    const Complex s = gauss_sum(static_cast<std::uint64_t>(out.q_reduced), a * out.b_reduced, d);
    const auto v = v_integral(out.beta, static_cast<double>(X), d, steps);
    out.approx = s / static_cast<double>(out.q_reduced) * v.value;
    out.v_error_estimate = v.error_estimate;
    out.error = std::abs(out.weyl - out.approx);
    return out;
}

double major_arc_approx_error(double alpha, std::int64_t b, std::int64_t q, std::int64_t a, std::int64_t X, int d)
{
    return major_arc_approximation(alpha, b, q, a, X, d).error;
}

} // namespace circlekit
