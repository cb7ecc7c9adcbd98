#include <doctest.h>

#include <random>
#include <set>

#include "circlekit/errors.hpp"
#include "circlekit/forms.hpp"
#include "oracle.hpp"

using namespace circlekit;

namespace {

std::vector<Exponent> tuples(std::initializer_list<Exponent> xs) { return std::vector<Exponent>(xs); }

IntVector random_point(std::mt19937_64& rng, int n, std::int64_t h)
{
    return oracle::random_coeffs(rng, static_cast<std::size_t>(n), h);
}

} // namespace

TEST_SUITE("forms")
{
    TEST_CASE("small bases list monomials in descending lex order")
    {
        CHECK(build_basis(2, 2)->exponents() == tuples({{2, 0}, {1, 1}, {0, 2}}));
        CHECK(build_basis(3, 2)->exponents() == tuples({{3, 0}, {2, 1}, {1, 2}, {0, 3}}));
        const auto b = build_basis(2, 3);
        CHECK(b->size() == 6);
        CHECK(b->exponents().front() == Exponent{2, 0, 0});
        CHECK(b->exponents().back() == Exponent{0, 0, 2});
    }

    TEST_CASE("basis matches an independent enumeration")
    {
        for (int d = 1; d <= 6; ++d)
            for (int n = 1; n <= 5; ++n) {
                const auto b = build_basis(d, n);
                CHECK(b->exponents() == oracle::monomials(d, n));
                CHECK(b->size() == basis_size(d, n));
                std::set<Exponent> uniq(b->exponents().begin(), b->exponents().end());
                CHECK(uniq.size() == b->size());
                for (std::size_t i = 1; i < b->size(); ++i) CHECK(b->exponent(i - 1) > b->exponent(i));
            }
    }

    TEST_CASE("basis size limits")
    {
        CHECK_THROWS_AS(build_basis(0, 2), ArgumentError);
        CHECK_THROWS_AS(build_basis(2, 0), ArgumentError);
        CHECK(basis_size(2, 3) == 6);
    }

    TEST_CASE("basis size overflow")
    {
        CHECK_THROWS_AS(basis_size(14, 465), OverflowError);
        CHECK(basis_size_big(14, 465) == BigInt("307689855593925296714683275"));
        CHECK(basis_size_big(3, 18) == 1140);
    }

    TEST_CASE("index lookups")
    {
        const auto b = build_basis(2, 3);
        const std::vector<int> x1x2{1, 1, 0};
        CHECK(b->index_of(x1x2) == 1u);
        CHECK(b->pure_power_index(0) == 0u);
        CHECK(b->pure_power_index(2) == 5u);
        CHECK(b->is_pure_power(3));
        CHECK_FALSE(b->is_pure_power(4));
    }

    TEST_CASE("veronese examples")
    {
        const auto b22 = build_basis(2, 2);
        CHECK(veronese(*b22, IntVector{1, 1}) == std::vector<i128>{1, 1, 1});
        CHECK(veronese(*b22, IntVector{2, 3}) == std::vector<i128>{4, 6, 9});
        CHECK(veronese(*build_basis(3, 2), IntVector{2, 1}) == std::vector<i128>{8, 4, 2, 1});
        CHECK_THROWS_AS(veronese(*b22, IntVector{1}), ArgumentError);
    }

    TEST_CASE("evaluate examples")
    {
        CHECK(evaluate(Form::make(2, 2, {1, 0, 0}), IntVector{5, 7}) == 25);
        CHECK(evaluate(Form::make(2, 2, {1, 0, -1}), IntVector{4, 4}) == 0);
        CHECK(evaluate(Form::make(3, 2, {1, 0, 0, -1}), IntVector{3, 2}) == 19);
        CHECK_THROWS_AS(Form::make(2, 2, {1, 0}), LengthMismatch);
    }

    TEST_CASE("evaluate overflow is reported")
    {
        const auto f = Form::make(5, 1, {1});
        CHECK_THROWS_AS(evaluate(f, IntVector{std::int64_t(1) << 30}), OverflowError);
    }

    TEST_CASE("gradient examples")
    {
        CHECK(gradient(Form::make(2, 2, {1, 0, -1}), IntVector{1, 1}) == std::vector<i128>{2, -2});
        CHECK(gradient(Form::make(2, 2, {1, -2, 1}), IntVector{1, 1}) == std::vector<i128>{0, 0});
        CHECK(gradient(Form::make(3, 2, {1, 0, 0, -1}), IntVector{1, 2}) == std::vector<i128>{3, -12});
    }

    TEST_CASE("split_diagonal examples")
    {
        const auto s = split_diagonal(Form::make(3, 2, {11, 12, 13, 14}));
        CHECK(s.b == IntVector{11, 14});
        CHECK(s.c == IntVector{12, 13});
        const auto s2 = split_diagonal(Form::make(2, 2, {1, 0, 0}));
        CHECK(s2.b == IntVector{1, 0});
        CHECK(s2.c == IntVector{0});
        const auto s3 = split_diagonal(Form::make(2, 3, {0, 5, 0, 0, 0, 0}));
        CHECK(s3.b == IntVector{0, 0, 0});
        CHECK(s3.c == IntVector{5, 0, 0});
        CHECK(is_diagonal(Form::make(2, 3, {1, 0, 0, 2, 0, 3})));
        CHECK_FALSE(is_diagonal(Form::make(2, 3, {0, 5, 0, 0, 0, 0})));
    }

    TEST_CASE("evaluation agrees with the naive oracle")
    {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 200; ++trial) {
            const int d = 1 + static_cast<int>(rng() % 5);
            const int n = 1 + static_cast<int>(rng() % 4);
            const auto a = oracle::random_coeffs(rng, basis_size(d, n), 50);
            const auto x = random_point(rng, n, 20);
            CHECK(to_bigint(evaluate(Form::make(d, n, a), x)) == oracle::value(d, n, a, x));
        }
    }

    TEST_CASE("homogeneity, Euler identity and split consistency")
    {
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 100; ++trial) {
            const int d = 1 + static_cast<int>(rng() % 4);
            const int n = 1 + static_cast<int>(rng() % 4);
            const auto f = Form::make(d, n, oracle::random_coeffs(rng, basis_size(d, n), 30));
            const auto x = random_point(rng, n, 15);
            const std::int64_t lambda = static_cast<std::int64_t>(rng() % 9) - 4;
            IntVector lx = x;
            for (auto& v : lx) v *= lambda;
            CHECK(evaluate(f, lx) == checked_pow(lambda, static_cast<unsigned>(d)) * evaluate(f, x));

            const auto g = gradient(f, x);
            i128 dot = 0;
            for (int j = 0; j < n; ++j) dot += x[j] * g[j];
            CHECK(dot == d * evaluate(f, x));

            const auto s = split_diagonal(f);
            CHECK(recombine(f.basis(), s) == f.coeffs());
            const auto v = pure_powers(f.basis(), x);
            const auto w = mixed_monomials(f.basis(), x);
            i128 total = 0;
            for (std::size_t i = 0; i < v.size(); ++i) total += s.b[i] * v[i];
            for (std::size_t i = 0; i < w.size(); ++i) total += s.c[i] * w[i];
            CHECK(total == evaluate(f, x));
        }
    }

    TEST_CASE("real evaluation tracks the exact value")
    {
        const auto f = Form::make(3, 2, {1, 0, 0, -1});
        const std::vector<double> x{3.0, 2.0};
        CHECK(evaluate_real(f, x) == doctest::Approx(19.0));
    }

    TEST_CASE("norms")
    {
        const auto f = Form::make(2, 2, {3, -4, 0});
        CHECK(f.l1_norm() == 7);
        CHECK(f.euclidean_norm() == doctest::Approx(5.0));
        CHECK(Form::make(2, 2, {0, 0, 0}).is_zero());
    }
}
