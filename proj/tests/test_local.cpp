#include <doctest.h>

#include <cmath>
#include <random>

#include "circlekit/errors.hpp"
#include "circlekit/local.hpp"
#include "oracle.hpp"

using namespace circlekit;

namespace {

const ConstraintForm kP{Form::make(2, 3, {1, 0, 0, 1, 0, -2})}; // a1^2 + a2^2 - 2 a3^2

bool primitive_mod(const IntVector& x, std::uint64_t p)
{
    for (auto v : x)
        if (v % static_cast<std::int64_t>(p) != 0) return true;
    return false;
}

/// Does some primitive x mod p^m satisfy f(x) = 0 mod p^m?
bool has_primitive_zero(const Form& f, std::uint64_t p, unsigned m)
{
    std::int64_t Q = 1;
    for (unsigned i = 0; i < m; ++i) Q *= static_cast<std::int64_t>(p);
    bool found = false;
    oracle::for_box(f.variables(), 0, Q - 1, [&](const IntVector& x) {
        if (!found && primitive_mod(x, p) && oracle::value(f.degree(), f.variables(), f.coeffs(), x) % Q == 0)
            found = true;
    });
    return found;
}

} // namespace

TEST_SUITE("local")
{
    TEST_CASE("smooth modulus")
    {
        CHECK(build_W(100, 3.0).W == 6);
        CHECK(build_W(100, 5.0).W == 60);
        const auto deg = build_W(100, 1.5);
        CHECK(deg.W == 1);
        CHECK(deg.degenerate);
        CHECK(deg.factors.empty());
        for (double X : {3.0, 10.0, 50.0, 1e3, 1e6, 1e12}) {
            const auto m = build_W(X);
            CHECK(m.w == doctest::Approx(std::log(X)));
            CHECK(static_cast<double>(m.W) <= X * X);
            i128 prod = 1;
            for (const auto& pp : m.factors) prod *= static_cast<i128>(pp.value());
            CHECK(prod == m.W);
        }
        CHECK_THROWS_AS(PrimePower::make(4, 1), ArgumentError);
        CHECK_THROWS_AS(PrimePower::make(3, 0), ArgumentError);
    }

    TEST_CASE("sigma examples")
    {
        CHECK(sigma(Form::make(3, 3, std::vector<std::int64_t>(10, 7)), 1) == 1);
        CHECK(sigma(Form::make(2, 2, {1, 0, -1}), 3) == Rational(5, 3));
        CHECK(sigma(Form::make(2, 2, {1, 0, 1}), 3) == Rational(1, 3));
    }

    TEST_CASE("sigma is multiplicative and matches the count")
    {
        std::mt19937_64 rng(4);
        for (int trial = 0; trial < 20; ++trial) {
            const auto a = oracle::random_coeffs(rng, 6, 7);
            const auto f = Form::make(2, 3, a);
            CHECK(sigma(f, 12) == sigma(f, 4) * sigma(f, 3));
            CHECK(sigma(f, 10) == Rational(oracle::count_mod(2, 3, a, 10), 100));
        }
    }

    TEST_CASE("singular series is the product of its factors")
    {
        const auto f = Form::make(2, 3, {1, 2, 0, -3, 1, 5});
        const auto m = build_W(100, 5.0);
        const auto prof = singular_series(f, m);
        REQUIRE(prof.factors.size() == 3);
        Rational prod = 1;
        for (const auto& lf : prof.factors) {
            prod *= lf.sigma;
            CHECK(lf.sigma >= 0);
            CHECK(BigInt(lf.pp.value()) * BigInt(lf.pp.value()) % BigInt(denominator(lf.sigma)) == 0);
        }
        CHECK(prod == prof.product);
        CHECK(prof.product == sigma(f, 60));
    }

    TEST_CASE("gradient valuation")
    {
        const auto diff = Form::make(2, 2, {1, 0, -1});
        const auto sq = Form::make(2, 2, {1, -2, 1});
        CHECK(grad_valuation(diff, IntVector{1, 1}, PrimePower::make(3, 2)) == 0);
        CHECK(grad_valuation(sq, IntVector{1, 1}, PrimePower::make(3, 2)) == 2);
        CHECK(grad_valuation(diff, IntVector{1, 1}, PrimePower::make(2, 2)) == 1);
    }

    TEST_CASE("p-adic solubility examples")
    {
        const auto diff = Form::make(2, 2, {1, 0, -1});
        for (std::uint64_t p : {3, 5, 7}) {
            const auto c = padic_soluble(diff, p);
            CHECK(c.verdict == Verdict::Soluble);
            CHECK(c.e == 0);
            CHECK(c.level == 1);
            CHECK(c.witness == IntVector{1, 1});
        }
        const auto sum = padic_soluble(Form::make(2, 2, {1, 0, 1}), 3);
        CHECK(sum.verdict == Verdict::Insoluble);
        CHECK(sum.level == 1);
        CHECK(padic_soluble(Form::make(2, 2, {1, 1, -1}), 2).verdict == Verdict::Insoluble);
        CHECK(padic_soluble(Form::make(2, 2, {0, 0, 0}), 5).verdict == Verdict::Soluble);
    }

    TEST_CASE("p-adic certificates check out against brute force")
    {
        std::mt19937_64 rng(8);
        for (int trial = 0; trial < 60; ++trial) {
            const int d = 2 + static_cast<int>(rng() % 2);
            const auto f = Form::make(d, 2, oracle::random_coeffs(rng, basis_size(d, 2), 9));
            if (f.is_zero()) continue;
            for (std::uint64_t p : {2, 3, 5}) {
                const auto c = padic_soluble(f, p, 7);
                if (c.verdict == Verdict::Soluble && c.kind == WitnessKind::Hensel) {
                    CHECK(c.level >= 2 * c.e + 1);
                    CHECK(primitive_mod(c.witness, p));
                    std::int64_t Q = 1;
                    for (unsigned i = 0; i < c.level; ++i) Q *= static_cast<std::int64_t>(p);
                    CHECK(oracle::value(d, 2, f.coeffs(), c.witness) % Q == 0);
                    const auto g = gradient(f, c.witness);
                    unsigned v = 99;
                    for (auto gi : g) v = std::min(v, valuation(gi, p, 99));
                    CHECK(v == c.e);
                } else if (c.verdict == Verdict::Soluble) {
                    CHECK(evaluate(f, c.witness) == 0);
                } else if (c.verdict == Verdict::Insoluble) {
                    CHECK_FALSE(has_primitive_zero(f, p, c.level));
                }
            }
        }
    }

    TEST_CASE("lifting respects its budget")
    {
        const auto f = Form::make(2, 6, {1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 7});
        CHECK_THROWS_AS(padic_soluble(f, 7, 13, Budget{10}), BudgetExceeded);
    }

    TEST_CASE("condition C_v^(e) examples")
    {
        CHECK(condition_Cve(Form::make(2, 2, {3, 0, -3}), kP, PrimePower::make(3, 2), 1, 0));
        CHECK_FALSE(condition_Cve(Form::make(2, 2, {1, 0, -1}), kP, PrimePower::make(3, 1), 1, 0));
        CHECK_FALSE(condition_Cve(Form::make(2, 2, {1, 0, -1}), kP, PrimePower::make(3, 1), 0, 0));
        CHECK_THROWS_AS(condition_Cve(Form::make(2, 2, {1, 0, -1}), kP, PrimePower::make(3, 1), 2, 0), ArgumentError);
    }

    TEST_CASE("local counting inequalities hold on small grids")
    {
        for (std::uint64_t p : {2, 3})
            for (unsigned r : {1u, 2u}) {
                const auto rep = verify_local_bounds(PrimePower::make(p, r), 2, 2);
                CHECK(rep.lower_bound_violations == 0);
                CHECK(rep.upper_bound_violations == 0);
                CHECK_FALSE(rep.lower_bound_checks.empty());
                CHECK_FALSE(rep.upper_bound_checks.empty());
            }
    }

    TEST_CASE("moment statistics against direct enumeration")
    {
        const auto pp = PrimePower::make(3, 1);
        const auto stats = local_moment_stats(kP, 2, 2, pp);
        std::uint64_t n1 = 0;
        Rational n2 = 0;
        Rational var = 0;
        oracle::for_box(3, 0, 2, [&](const IntVector& a) {
            if (oracle::value(2, 3, kP.form().coeffs(), a) % 3 != 0) return;
            ++n1;
            const Rational s(oracle::count_mod(2, 2, a, 3), 3);
            n2 += s;
            var += (s - 1) * (s - 1);
        });
        CHECK(stats.N1 == n1);
        CHECK(stats.N2 == n2);
        CHECK(stats.variance == var);
        CHECK(stats.n1_normalized == doctest::Approx(double(n1) * 3 / 27));
    }

    TEST_CASE("verdict names")
    {
        CHECK(to_string(Verdict::Soluble) == "Soluble");
        CHECK(to_string(Verdict::Insoluble) == "Insoluble");
        CHECK(to_string(Verdict::Undetermined) == "Undetermined");
    }
}
