#pragma once

// Integer helpers shared by every module: checked 128-bit arithmetic,
// exact rationals, and small multiplicative number theory.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace circlekit {

using i128 = __int128;
using u128 = unsigned __int128;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

i128 checked_add(i128 a, i128 b);
i128 checked_sub(i128 a, i128 b);
i128 checked_mul(i128 a, i128 b);
i128 checked_pow(i128 base, unsigned exponent);

/// Least non-negative residue of a modulo m (m > 0).
inline i128 mod_floor(i128 a, i128 m)
{
    i128 r = a % m;
    return r < 0 ? r + m : r;
}

i128 gcd(i128 a, i128 b);
i128 abs128(i128 a);

std::string to_string(i128 v);
BigInt to_bigint(i128 v);
/// Throws OverflowError when v does not fit.
std::int64_t narrow_to_int64(const BigInt& v, std::string_view what);

Rational make_rational(i128 num, i128 den);

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);
/// Largest power p^r with p^r <= bound, returned as r (0 if p > bound).
unsigned max_exponent_below(std::uint64_t p, double bound);

int mobius(std::uint64_t n);
/// Ramanujan sum c_q(m) = sum over units b mod q of e(bm/q); always an integer.
std::int64_t ramanujan_sum(std::uint64_t q, std::uint64_t m);
std::uint64_t euler_phi(std::uint64_t n);

/// p-adic valuation of v, capped at cap; v = 0 returns cap.
unsigned valuation(i128 v, std::uint64_t p, unsigned cap);

} // namespace circlekit
