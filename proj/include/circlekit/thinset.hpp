#pragma once

// Integer points of height at most A on the constraint P(a) = 0, pair counts
// of congruent members, and a singular-point scan for P.

#include <cstdint>
#include <optional>
#include <vector>

#include "circlekit/budget.hpp"
#include "circlekit/constraint.hpp"

namespace circlekit {

struct ThinSet {
    std::int64_t A = 0;
    std::vector<IntVector> members; ///< lexicographic order
    bool truncated = false;

    /// True when the only member is the zero vector.
    bool trivial() const;
};

enum class ThinSetMethod { Automatic, BruteForce, MeetInTheMiddle };

/// {a in Z^N : |a|_inf <= A, P(a) = 0}. Diagonal P is split into half sums
/// under ThinSetMethod::Automatic. `limit` keeps the first members only.
ThinSet enumerate_thin_set(const ConstraintForm& P, std::int64_t A, std::optional<std::size_t> limit = std::nullopt,
                           const Budget& budget = {}, ThinSetMethod method = ThinSetMethod::Automatic);

struct PairCount {
    BigInt count = 0;          ///< sum over residue classes mod W of (class size)^2
    std::size_t members = 0;
    std::size_t classes = 0;
    double reference_scale = 0; ///< A^{2N-2k} W^{1-N}
};

/// #{x, y in the thin set : x = y mod W}.
PairCount congruent_pair_count(const ConstraintForm& P, std::int64_t A, std::int64_t W, const Budget& budget = {});

struct SingularScan {
    std::uint64_t p = 0;
    std::optional<IntVector> witness; ///< x != 0 mod p with grad P(x) = 0 mod p
};

struct NonsingularReport {
    bool nonsingular = true; ///< false only when every prime produced a witness
    std::vector<SingularScan> scans;
};

NonsingularReport nonsingular_heuristic(const ConstraintForm& P, const std::vector<std::uint64_t>& primes,
                                        const Budget& budget = {});

} // namespace circlekit
