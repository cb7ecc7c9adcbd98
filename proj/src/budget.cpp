#include "circlekit/budget.hpp"

#include <string>

#include "circlekit/errors.hpp"
#include "circlekit/parallel.hpp"

namespace circlekit {

void Budget::require(long double points, std::string_view what) const
{
    if (points > static_cast<long double>(max_points)) {
        throw BudgetExceeded(std::string(what) + ": " + std::to_string(static_cast<double>(points))
                             + " points exceed budget " + std::to_string(max_points));
    }
}

void Budget::require_power(std::uint64_t base, unsigned exponent, std::string_view what) const
{
    long double points = 1;
    for (unsigned i = 0; i < exponent; ++i) {
        points *= static_cast<long double>(base);
        if (points > static_cast<long double>(max_points)) break;
    }
    require(points, what);
}

namespace {
unsigned g_threads = 1;
}

void set_thread_count(unsigned threads) { g_threads = threads == 0 ? 1 : threads; }

unsigned thread_count() { return g_threads; }

} // namespace circlekit
