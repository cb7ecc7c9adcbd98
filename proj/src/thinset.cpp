#include "circlekit/thinset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "circlekit/detail/hash.hpp"
#include "circlekit/detail/slicer.hpp"
#include "circlekit/errors.hpp"
#include "circlekit/parallel.hpp"

namespace circlekit {

namespace {

template <class T>
std::vector<IntVector> brute_force_members(const ConstraintForm& P, std::int64_t A)
{
    const detail::AxisSlicer slicer(P.form());
    const std::size_t prefix_len = slicer.prefix_size();
    const auto N = static_cast<std::size_t>(P.variables());
    const auto width = static_cast<std::uint64_t>(2 * A + 1);

    auto sweep_lines = [&](std::vector<IntVector>& out, std::vector<T>& prefix, std::size_t free_from) {
        std::vector<T> coeffs;
        auto tail = std::span<T>(prefix).subspan(free_from);
        for (auto& v : tail) v = static_cast<T>(-A);
        do {
            slicer.coefficients<T>(prefix, coeffs);
            for (std::int64_t t = -A; t <= A; ++t) {
                if (detail::horner<T>(coeffs, static_cast<T>(t)) != 0) continue;
                IntVector a(N);
                for (std::size_t j = 0; j < prefix_len; ++j) a[j] = static_cast<std::int64_t>(prefix[j]);
                a[N - 1] = t;
                out.push_back(std::move(a));
            }
        } while (detail::next_tuple<T>(tail, static_cast<T>(-A), static_cast<T>(A)));
    };

    if (prefix_len == 0) {
        std::vector<IntVector> out;
        std::vector<T> prefix;
        sweep_lines(out, prefix, 0);
        return out;
    }
    const std::uint64_t blocks = detail::block_count(width);
    auto partial = parallel_map<std::vector<IntVector>>(blocks, [&](std::size_t b) {
        const auto range = detail::block_range(width, blocks, b);
        std::vector<IntVector> out;
        std::vector<T> prefix(prefix_len);
        for (std::uint64_t i = range.begin; i < range.end; ++i) {
            prefix[0] = static_cast<T>(-A + static_cast<std::int64_t>(i));
            sweep_lines(out, prefix, 1);
        }
        return out;
    });
    std::vector<IntVector> members;
    for (auto& part : partial)
        for (auto& a : part) members.push_back(std::move(a));
    return members;
}

// Diagonal P: match left half sums against right half sums, emitting in lex order.
std::vector<IntVector> split_members(const ConstraintForm& P, std::int64_t A)
{
    const auto split = split_diagonal(P.form());
    const std::size_t N = split.b.size();
    const std::size_t left_len = N / 2;
    const auto k = static_cast<unsigned>(P.degree());

    std::vector<i128> powers(static_cast<std::size_t>(2 * A + 1));
    for (std::int64_t x = -A; x <= A; ++x) powers[static_cast<std::size_t>(x + A)] = checked_pow(x, k);
    auto half_sum = [&](std::span<const std::int64_t> x, std::size_t from) {
        i128 s = 0;
        for (std::size_t j = 0; j < x.size(); ++j) s += split.b[from + j] * powers[static_cast<std::size_t>(x[j] + A)];
        return s;
    };

    std::unordered_map<i128, std::vector<IntVector>, detail::I128Hash> right;
    {
        IntVector y(N - left_len, -A);
        do {
            right[half_sum(y, left_len)].push_back(y);
        } while (detail::next_tuple<std::int64_t>(y, -A, A));
    }

    std::vector<IntVector> members;
    IntVector x(left_len, -A);
    do {
        auto it = right.find(-half_sum(x, 0));
        if (it == right.end()) continue;
        for (const auto& y : it->second) {
            IntVector a(x);
            a.insert(a.end(), y.begin(), y.end());
            if (evaluate(P.form(), a) != 0) throw NumericalInconsistency("split enumeration produced a non-member");
            members.push_back(std::move(a));
        }
    } while (detail::next_tuple<std::int64_t>(x, -A, A));
    return members;
}

} // namespace

bool ThinSet::trivial() const
{
    return std::all_of(members.begin(), members.end(),
                       [](const IntVector& a) { return std::all_of(a.begin(), a.end(), [](auto v) { return v == 0; }); });
}

ThinSet enumerate_thin_set(const ConstraintForm& P, std::int64_t A, std::optional<std::size_t> limit,
                           const Budget& budget, ThinSetMethod method)
{
    if (A < 1) throw ArgumentError("height A must be >= 1");
    const auto N = static_cast<unsigned>(P.variables());
    const bool diagonal = is_diagonal(P.form());
    if (method == ThinSetMethod::MeetInTheMiddle && !diagonal)
        throw ArgumentError("split enumeration requires a diagonal constraint");
    if (method == ThinSetMethod::Automatic)
        method = diagonal && N >= 2 ? ThinSetMethod::MeetInTheMiddle : ThinSetMethod::BruteForce;

    const auto side = static_cast<std::uint64_t>(2 * A + 1);
    const i128 bound = checked_mul(P.form().l1_norm(), checked_pow(A, static_cast<unsigned>(P.degree())));
    if (bound > (i128(1) << 120)) throw OverflowError("constraint values exceed the 120-bit working range");

    ThinSet set;
    set.A = A;
    if (method == ThinSetMethod::MeetInTheMiddle) {
        budget.require_power(side, N - N / 2, "enumerate_thin_set (split)");
        set.members = split_members(P, A);
    } else {
        budget.require_power(side, N, "enumerate_thin_set");
        set.members = bound < (i128(1) << 62) ? brute_force_members<std::int64_t>(P, A) : brute_force_members<i128>(P, A);
    }
    if (limit && set.members.size() > *limit) {
        set.members.resize(*limit);
        set.truncated = true;
    }
    return set;
}

PairCount congruent_pair_count(const ConstraintForm& P, std::int64_t A, std::int64_t W, const Budget& budget)
{
    if (W < 1) throw ArgumentError("modulus W must be >= 1");
    const auto set = enumerate_thin_set(P, A, std::nullopt, budget);
    std::map<IntVector, std::uint64_t> classes;
    for (const auto& a : set.members) {
        IntVector residue(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) residue[i] = static_cast<std::int64_t>(mod_floor(a[i], W));
        ++classes[residue];
    }
    PairCount out;
    out.members = set.members.size();
    out.classes = classes.size();
    for (const auto& [residue, size] : classes) out.count += BigInt(size) * size;
    const double N = P.variables();
    const double k = P.degree();
    out.reference_scale = std::pow(static_cast<double>(A), 2 * N - 2 * k) * std::pow(static_cast<double>(W), 1 - N);
    return out;
}

NonsingularReport nonsingular_heuristic(const ConstraintForm& P, const std::vector<std::uint64_t>& primes,
                                        const Budget& budget)
{
    const auto N = static_cast<std::size_t>(P.variables());
    NonsingularReport report;
    bool all_singular = !primes.empty();
    for (auto p : primes) {
        if (!is_prime(p)) throw ArgumentError(std::to_string(p) + " is not prime");
        budget.require_power(p, static_cast<unsigned>(N), "nonsingular_heuristic");
        SingularScan scan;
        scan.p = p;
        // First coordinate varies fastest; the zero vector is skipped.
        IntVector x(N, 0);
        auto advance = [&] {
            for (std::size_t i = 0; i < N; ++i) {
                if (x[i] + 1 < static_cast<std::int64_t>(p)) {
                    ++x[i];
                    return true;
                }
                x[i] = 0;
            }
            return false;
        };
        while (advance()) {
            const auto grad = gradient(P.form(), x);
            if (std::all_of(grad.begin(), grad.end(), [p](i128 g) { return mod_floor(g, static_cast<i128>(p)) == 0; })) {
                scan.witness = x;
                break;
            }
        }
        if (!scan.witness) all_singular = false;
        report.scans.push_back(std::move(scan));
    }
    report.nonsingular = !all_singular;
    return report;
}

} // namespace circlekit
