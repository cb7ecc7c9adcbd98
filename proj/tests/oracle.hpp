#pragma once
// Slow reference implementations used as oracles. They only share the
// coefficient layout with the library, never its code paths.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "circlekit/arith.hpp"
#include "circlekit/forms.hpp"

namespace oracle {

using circlekit::BigInt;
using circlekit::IntVector;

/// All exponent tuples of total degree d, sorted descending.
inline std::vector<std::vector<int>> monomials(int d, int n)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur(n, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == n - 1) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            cur[pos] = k;
            rec(pos + 1, left - k);
        }
    };
    rec(0, d);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

inline BigInt value(int d, int n, const IntVector& a, const IntVector& x)
{
    const auto mons = monomials(d, n);
    BigInt s = 0;
    for (std::size_t i = 0; i < mons.size(); ++i) {
        BigInt t = a[i];
        for (int j = 0; j < n; ++j)
            for (int e = 0; e < mons[i][j]; ++e) t *= x[j];
        s += t;
    }
    return s;
}

/// Visits every x in [lo, hi]^n.
inline void for_box(int n, std::int64_t lo, std::int64_t hi, const std::function<void(const IntVector&)>& fn)
{
    IntVector x(n, lo);
    while (true) {
        fn(x);
        int j = n - 1;
        while (j >= 0 && x[j] == hi) x[j--] = lo;
        if (j < 0) return;
        ++x[j];
    }
}

inline std::uint64_t count_box(int d, int n, const IntVector& a, std::int64_t X)
{
    std::uint64_t c = 0;
    for_box(n, 1, X, [&](const IntVector& x) { c += value(d, n, a, x) == 0; });
    return c;
}

inline std::uint64_t count_mod(int d, int n, const IntVector& a, std::int64_t Q)
{
    std::uint64_t c = 0;
    for_box(n, 0, Q - 1, [&](const IntVector& x) { c += value(d, n, a, x) % Q == 0; });
    return c;
}

inline IntVector random_coeffs(std::mt19937_64& rng, std::size_t N, std::int64_t height)
{
    std::uniform_int_distribution<std::int64_t> dist(-height, height);
    IntVector a(N);
    for (auto& v : a) v = dist(rng);
    return a;
}

} // namespace oracle
