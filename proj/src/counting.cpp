#include "circlekit/counting.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <unordered_map>

#include "circlekit/detail/hash.hpp"
#include "circlekit/detail/slicer.hpp"
#include "circlekit/errors.hpp"
#include "circlekit/parallel.hpp"

namespace circlekit {

namespace {

using detail::AxisSlicer;

// Zeros of the form on [lo, hi]^n, swept as lines along the last axis.
// T must hold every value sum |a_i| * max(|lo|,|hi|)^d.
template <class T>
std::uint64_t count_box_zeros(const Form& form, std::int64_t lo, std::int64_t hi)
{
    const AxisSlicer slicer(form);
    const std::size_t prefix_len = slicer.prefix_size();
    const auto width = static_cast<std::uint64_t>(hi - lo + 1);

    auto sweep_lines = [&](std::vector<T>& prefix, std::size_t free_from) {
        std::uint64_t zeros = 0;
        std::vector<T> coeffs;
        auto tail = std::span<T>(prefix).subspan(free_from);
        for (auto& v : tail) v = static_cast<T>(lo);
        do {
            slicer.coefficients<T>(prefix, coeffs);
            for (std::int64_t t = lo; t <= hi; ++t)
                if (detail::horner<T>(coeffs, static_cast<T>(t)) == 0) ++zeros;
        } while (detail::next_tuple<T>(tail, static_cast<T>(lo), static_cast<T>(hi)));
        return zeros;
    };

    if (prefix_len == 0) {
        std::vector<T> prefix;
        return sweep_lines(prefix, 0);
    }
    const std::uint64_t blocks = detail::block_count(width);
    auto partial = parallel_map<std::uint64_t>(blocks, [&](std::size_t b) {
        auto range = detail::block_range(width, blocks, b);
        std::uint64_t zeros = 0;
        std::vector<T> prefix(prefix_len);
        for (std::uint64_t i = range.begin; i < range.end; ++i) {
            prefix[0] = static_cast<T>(lo + static_cast<std::int64_t>(i));
            zeros += sweep_lines(prefix, 1);
        }
        return zeros;
    });
    std::uint64_t total = 0;
    for (auto z : partial) total += z;
    return total;
}

std::uint64_t count_diagonal_mitm(const Form& form, std::int64_t X)
{
    const auto split = split_diagonal(form);
    const std::size_t n = split.b.size();
    const std::size_t left_len = n / 2;
    const auto d = static_cast<unsigned>(form.degree());

    std::vector<i128> powers(static_cast<std::size_t>(X) + 1);
    for (std::int64_t x = 1; x <= X; ++x) powers[static_cast<std::size_t>(x)] = checked_pow(x, d);

    auto half_sums = [&](std::size_t from, std::size_t to, auto&& emit) {
        std::vector<std::int64_t> x(to - from, 1);
        do {
            i128 s = 0;
            for (std::size_t j = 0; j < x.size(); ++j) s += split.b[from + j] * powers[static_cast<std::size_t>(x[j])];
            emit(s);
        } while (detail::next_tuple<std::int64_t>(x, 1, X));
    };

    std::unordered_map<i128, std::uint64_t, detail::I128Hash> left;
    half_sums(0, left_len, [&](i128 s) { ++left[s]; });
    std::uint64_t total = 0;
    half_sums(left_len, n, [&](i128 s) {
        auto it = left.find(-s);
        if (it != left.end()) total += it->second;
    });
    return total;
}

// Per-block accumulation of f(g) mod q over g in [0, q)^n.
template <class Acc, class MakeAcc, class Visit>
std::vector<Acc> sweep_residues(const Form& form, std::uint64_t q, MakeAcc make_acc, Visit visit)
{
    const AxisSlicer slicer(form);
    const std::size_t prefix_len = slicer.prefix_size();

    auto sweep_lines = [&](Acc& acc, std::vector<std::uint64_t>& prefix, std::size_t free_from) {
        std::vector<std::uint64_t> coeffs;
        auto tail = std::span<std::uint64_t>(prefix).subspan(free_from);
        for (auto& v : tail) v = 0;
        do {
            slicer.coefficients_mod(prefix, q, coeffs);
            for (std::uint64_t t = 0; t < q; ++t) visit(acc, detail::horner_mod(coeffs, t, q));
        } while (detail::next_tuple<std::uint64_t>(tail, 0, q - 1));
    };

    if (prefix_len == 0) {
        std::vector<Acc> out(1, make_acc());
        std::vector<std::uint64_t> prefix;
        sweep_lines(out[0], prefix, 0);
        return out;
    }
    const std::uint64_t blocks = detail::block_count(q);
    return parallel_map<Acc>(blocks, [&](std::size_t b) {
        auto range = detail::block_range(q, blocks, b);
        Acc acc = make_acc();
        std::vector<std::uint64_t> prefix(prefix_len);
        for (std::uint64_t g = range.begin; g < range.end; ++g) {
            prefix[0] = g;
            sweep_lines(acc, prefix, 1);
        }
        return acc;
    });
}

void require_modulus(std::uint64_t q)
{
    if (q == 0) throw ArgumentError("modulus must be positive");
    if (q >= (1ULL << 32)) throw ArgumentError("modulus must be below 2^32");
}

} // namespace

BoxCount count_solutions(const Form& form, std::int64_t X, const Budget& budget, CountMethod method)
{
    if (X < 1) throw ArgumentError("box side X must be >= 1");
    const auto n = static_cast<unsigned>(form.variables());
    const bool diagonal = is_diagonal(form);
    if (method == CountMethod::MeetInTheMiddle && !diagonal)
        throw ArgumentError("meet-in-the-middle counting requires a diagonal form");
    if (method == CountMethod::Automatic) method = diagonal && n >= 2 ? CountMethod::MeetInTheMiddle : CountMethod::BruteForce;

    const i128 bound = checked_mul(form.l1_norm(), checked_pow(X, static_cast<unsigned>(form.degree())));
    if (bound > (i128(1) << 120)) throw OverflowError("form values on the box exceed the 120-bit working range");

    BoxCount result;
    result.X = X;
    if (method == CountMethod::MeetInTheMiddle) {
        budget.require_power(static_cast<std::uint64_t>(X), n - n / 2, "count_solutions (meet-in-the-middle)");
        result.count = count_diagonal_mitm(form, X);
    } else {
        budget.require_power(static_cast<std::uint64_t>(X), n, "count_solutions");
        result.count = bound < (i128(1) << 62) ? count_box_zeros<std::int64_t>(form, 1, X)
                                               : count_box_zeros<i128>(form, 1, X);
    }
    return result;
}

std::uint64_t count_mod(const Form& form, std::uint64_t Q, const Budget& budget)
{
    require_modulus(Q);
    budget.require_power(Q, static_cast<unsigned>(form.variables()), "count_mod");
    auto partial = sweep_residues<std::uint64_t>(
        form, Q, [] { return std::uint64_t{0}; },
        [](std::uint64_t& acc, std::uint64_t v) { acc += v == 0 ? 1 : 0; });
    std::uint64_t total = 0;
    for (auto c : partial) total += c;
    return total;
}

std::vector<std::uint64_t> residue_histogram(const Form& form, std::uint64_t q, const Budget& budget)
{
    require_modulus(q);
    budget.require_power(q, static_cast<unsigned>(form.variables()), "residue_histogram");
    using Hist = std::vector<std::uint64_t>;
    auto partial = sweep_residues<Hist>(
        form, q, [q] { return Hist(q, 0); }, [](Hist& acc, std::uint64_t v) { ++acc[v]; });
    Hist total(q, 0);
    for (const auto& h : partial)
        for (std::uint64_t c = 0; c < q; ++c) total[c] += h[c];
    return total;
}

std::uint64_t count_mod_via_char_sums(const Form& form, std::uint64_t Q, const Budget& budget)
{
    require_modulus(Q);
    const auto n = static_cast<unsigned>(form.variables());
    budget.require_power(Q, n + 1, "count_mod_via_char_sums");

    std::vector<std::complex<long double>> roots(Q);
    for (std::uint64_t k = 0; k < Q; ++k) {
        long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(k) / static_cast<long double>(Q);
        roots[k] = {std::cos(angle), std::sin(angle)};
    }

    std::complex<long double> total = 0;
    std::vector<std::int64_t> g(n, 0);
    do {
        const auto value = static_cast<std::uint64_t>(mod_floor(evaluate(form, g), static_cast<i128>(Q)));
        std::complex<long double> inner = 0;
        for (std::uint64_t l = 0; l < Q; ++l) inner += roots[static_cast<std::uint64_t>((u128(value) * l) % Q)];
        total += inner;
    } while (detail::next_tuple<std::int64_t>(g, 0, static_cast<std::int64_t>(Q) - 1));

    const long double real = total.real() / static_cast<long double>(Q);
    const long double rounded = std::round(real);
    if (std::fabs(real - rounded) > 1e-6L || rounded < 0)
        throw NumericalInconsistency("character-sum count is not within 1e-6 of an integer");
    return static_cast<std::uint64_t>(rounded);
}

} // namespace circlekit
