#pragma once

#include <cstdint>
#include <string_view>

namespace circlekit {

/// Ceiling on the number of points an enumeration may visit.
struct Budget {
    static constexpr std::uint64_t kDefaultPoints = 1'000'000'000ULL;

    std::uint64_t max_points = kDefaultPoints;

    /// Throws BudgetExceeded when base^exponent > max_points.
    void require_power(std::uint64_t base, unsigned exponent, std::string_view what) const;
    void require(long double points, std::string_view what) const;
};

} // namespace circlekit
