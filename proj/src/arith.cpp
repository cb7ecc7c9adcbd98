#include "circlekit/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "circlekit/errors.hpp"

namespace circlekit {

i128 checked_add(i128 a, i128 b)
{
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit addition overflow");
    return r;
}

i128 checked_sub(i128 a, i128 b)
{
    i128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("128-bit subtraction overflow");
    return r;
}

i128 checked_mul(i128 a, i128 b)
{
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit multiplication overflow");
    return r;
}

i128 checked_pow(i128 base, unsigned exponent)
{
    i128 result = 1;
    for (unsigned i = 0; i < exponent; ++i) result = checked_mul(result, base);
    return result;
}

i128 abs128(i128 a)
{
    if (a < 0) return checked_sub(0, a);
    return a;
}

i128 gcd(i128 a, i128 b)
{
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::string to_string(i128 v)
{
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 u = neg ? u128(0) - u128(v) : u128(v);
    std::string s;
    while (u != 0) {
        s.push_back(char('0' + int(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

BigInt to_bigint(i128 v)
{
    bool neg = v < 0;
    u128 u = neg ? u128(0) - u128(v) : u128(v);
    BigInt r = BigInt(std::uint64_t(u >> 64));
    r <<= 64;
    r += BigInt(std::uint64_t(u));
    return neg ? BigInt(-r) : r;
}

std::int64_t narrow_to_int64(const BigInt& v, std::string_view what)
{
    if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN))
        throw OverflowError(std::string(what) + " does not fit in 64 bits");
    return v.convert_to<std::int64_t>();
}

Rational make_rational(i128 num, i128 den)
{
    return Rational(to_bigint(num), to_bigint(den));
}

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d <= n / d; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound)
{
    std::vector<std::uint64_t> out;
    if (bound < 2) return out;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
    return out;
}

unsigned max_exponent_below(std::uint64_t p, double bound)
{
    unsigned r = 0;
    long double power = p;
    while (power <= static_cast<long double>(bound)) {
        ++r;
        power *= p;
    }
    return r;
}

int mobius(std::uint64_t n)
{
    int sign = 1;
    for (std::uint64_t d = 2; d <= n / d; ++d) {
        if (n % d != 0) continue;
        n /= d;
        if (n % d == 0) return 0;
        sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
}

std::uint64_t euler_phi(std::uint64_t n)
{
    std::uint64_t result = n;
    for (std::uint64_t d = 2; d <= n / d; ++d) {
        if (n % d != 0) continue;
        while (n % d == 0) n /= d;
        result -= result / d;
    }
    if (n > 1) result -= result / n;
    return result;
}

std::int64_t ramanujan_sum(std::uint64_t q, std::uint64_t m)
{
    std::uint64_t g = std::gcd(q, m % q == 0 ? q : m % q);
    std::int64_t total = 0;
    for (std::uint64_t d = 1; d <= g; ++d) {
        if (g % d != 0) continue;
        total += mobius(q / d) * static_cast<std::int64_t>(d);
    }
    return total;
}

unsigned valuation(i128 v, std::uint64_t p, unsigned cap)
{
    unsigned s = 0;
    while (s < cap && v % static_cast<i128>(p) == 0) {
        v /= static_cast<i128>(p);
        ++s;
    }
    return s;
}

} // namespace circlekit
