#include <doctest.h>

#include <cmath>
#include <random>

#include "circlekit/errors.hpp"
#include "circlekit/expsums.hpp"
#include "circlekit/local.hpp"
#include "oracle.hpp"

using namespace circlekit;

namespace {

const double kPi = std::acos(-1.0);

Complex direct_weyl(double alpha, std::int64_t b, std::int64_t X, int d)
{
    Complex s = 0;
    for (std::int64_t x = 1; x <= X; ++x) {
        const double phase = alpha * double(b) * std::pow(double(x), d);
        s += Complex(std::cos(2 * kPi * phase), std::sin(2 * kPi * phase));
    }
    return s;
}

bool close(Complex a, Complex b, double tol = 1e-9) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

} // namespace

TEST_SUITE("expsums")
{
    TEST_CASE("unit exponential")
    {
        CHECK(close(unit_exp(0), {1, 0}));
        CHECK(close(unit_exp(0.5), {-1, 0}));
        CHECK(close(unit_exp(0.25), {0, 1}));
        for (double t : {-3.7, 0.1, 12345.678}) CHECK(std::abs(std::abs(unit_exp(t)) - 1) < 1e-12);
        CHECK(close(unit_exp_ratio(7, 4), {0, -1}));
        CHECK(close(unit_exp_ratio(-1, 3), unit_exp(2.0 / 3)));
    }

    TEST_CASE("gauss sum examples")
    {
        CHECK(close(gauss_sum(1, 5, 3), {1, 0}));
        CHECK(close(gauss_sum(2, 1, 2), {0, 0}));
        CHECK(close(gauss_sum(3, 1, 2), {0, std::sqrt(3.0)}));
        CHECK(close(gauss_sum(11, 0, 2), {11, 0}));
    }

    TEST_CASE("gauss sums stay below d q^(1-1/d) at primes")
    {
        for (std::uint64_t q : primes_up_to(100)) {
            if (q < 2) continue;
            for (int d : {2, 3})
                for (std::int64_t a = 1; a < static_cast<std::int64_t>(q); ++a)
                    CHECK(std::abs(gauss_sum(q, a, d)) <= d * std::pow(double(q), 1.0 - 1.0 / d) + 1e-9);
        }
    }

    TEST_CASE("weyl sums")
    {
        CHECK(close(weyl_sum(0, 3, 17, 2), {17, 0}));
        CHECK(close(weyl_sum(0.3, 0, 17, 2), {17, 0}));
        CHECK(close(weyl_sum(0.5, 1, 2, 2), {0, 0}));
        CHECK(close(weyl_sum(0.1234, 3, 40, 3), direct_weyl(0.1234, 3, 40, 3), 1e-8));
    }

    TEST_CASE("T(alpha) from direct summation")
    {
        CHECK(t_alpha(0, 4, 6, 2) == doctest::Approx(9.0 * 36));
        // b = -1, 0, 1 give partial sums 0, 2, 0
        CHECK(t_alpha(0.5, 1, 2, 2) == doctest::Approx(4.0));
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> u(0, 1);
        for (int i = 0; i < 20; ++i) {
            const double alpha = u(rng);
            double direct = 0;
            for (std::int64_t b = -3; b <= 3; ++b) direct += std::norm(direct_weyl(alpha, b, 15, 2));
            const double t = t_alpha(alpha, 3, 15, 2);
            CHECK(t >= 0);
            CHECK(t == doctest::Approx(direct).epsilon(1e-9));
            CHECK(t == doctest::Approx(t_alpha(1 - alpha, 3, 15, 2)).epsilon(1e-9));
            CHECK(t == doctest::Approx(t_alpha(alpha + 1, 3, 15, 2)).epsilon(1e-9));
            CHECK(t == doctest::Approx(t_alpha(-alpha, 3, 15, 2)).epsilon(1e-9));
        }
    }

    TEST_CASE("v integral")
    {
        const auto zero = v_integral(0, 3.5, 2, 64);
        CHECK(zero.value == Complex(3.5, 0));
        CHECK_THROWS_AS(v_integral(1, 1, 2, 8), ArgumentError);
        for (double beta : {0.01, 0.3, 1.7}) {
            const double X = 2.5;
            const Complex closed = (unit_exp(beta * X) - 1.0) / Complex(0, 2 * kPi * beta);
            CHECK(std::abs(v_integral(beta, X, 1, 1 << 16).value - closed) < 1e-8);
        }
        for (double beta : {0.0, 0.5, 5.0, 50.0}) CHECK(std::abs(v_integral(beta, 4, 2).value) <= 4 + 1e-12);
        CHECK(std::abs(v_integral(50, 4, 2).value) < std::abs(v_integral(0.05, 4, 2).value));
    }

    TEST_CASE("complete form sums")
    {
        const auto diff = Form::make(2, 2, {1, 0, -1});
        CHECK(complete_form_sum(diff, 1).exact == 1);
        CHECK(complete_form_sum(diff, 3).exact == Rational(2, 3));
        CHECK(complete_form_sum(diff, 2).exact == 0);
        const auto s = complete_form_sum(Form::make(3, 2, {1, 2, 0, -5}), 7);
        CHECK(std::abs(s.numeric - Complex(static_cast<double>(s.exact), 0)) < 1e-9);
    }

    TEST_CASE("local density is the sum of complete sums over p^h")
    {
        std::mt19937_64 rng(21);
        for (int trial = 0; trial < 30; ++trial) {
            const int d = 2 + static_cast<int>(rng() % 2);
            const int n = 2 + static_cast<int>(rng() % 2);
            const auto f = Form::make(d, n, oracle::random_coeffs(rng, basis_size(d, n), 6));
            for (std::uint64_t p : {2, 3, 5}) {
                std::uint64_t pr = 1;
                Rational acc = 0;
                for (unsigned r = 0; r <= 2; ++r) {
                    acc += complete_form_sum(f, pr).exact;
                    CHECK(acc == sigma(f, pr));
                    pr *= p;
                }
            }
        }
    }

    TEST_CASE("difference operator examples")
    {
        const auto sq = Form::make(2, 1, {1});
        const auto cube = Form::make(3, 1, {1});
        const std::vector<IntVector> one{{1}};
        const std::vector<IntVector> two{{1}, {1}};
        CHECK(difference_op(sq, one, IntVector{3}) == 7);
        for (std::int64_t x : {-5, 0, 9}) CHECK(difference_op(sq, two, IntVector{x}) == 2);
        CHECK(difference_op(cube, two, IntVector{0}) == 6);
    }

    TEST_CASE("k-th difference is the multilinear form and ignores the base point")
    {
        std::mt19937_64 rng(33);
        for (int trial = 0; trial < 20; ++trial) {
            const int k = 2 + static_cast<int>(rng() % 2);
            const int N = 2 + static_cast<int>(rng() % 3);
            const auto P = Form::make(k, N, oracle::random_coeffs(rng, basis_size(k, N), 5));
            std::vector<IntVector> hs;
            for (int i = 0; i < k; ++i) hs.push_back(oracle::random_coeffs(rng, N, 4));
            const i128 psi_value = symmetric_multilinear(P, hs);
            for (int base = 0; base < 5; ++base)
                CHECK(difference_op(P, hs, oracle::random_coeffs(rng, N, 10)) == psi_value);
            auto swapped = hs;
            std::swap(swapped.front(), swapped.back());
            CHECK(difference_op(P, swapped, IntVector(N, 0)) == psi_value);

            std::vector<IntVector> head(hs.begin(), hs.end() - 1);
            i128 dot = 0;
            for (int j = 0; j < N; ++j) dot += psi(P, head, static_cast<std::size_t>(j)) * hs.back()[j];
            CHECK(dot == psi_value);
        }
    }

    TEST_CASE("major arc location")
    {
        ArcParams params{10, 10, 2, 3};
        CHECK(params.radius() == doctest::Approx(3e-3));
        const auto at0 = major_arc_locate(0, params);
        REQUIRE(at0);
        CHECK(at0->q == 1);
        CHECK(at0->a == 0);
        const auto half = major_arc_locate(0.5, params);
        REQUIRE(half);
        CHECK(half->q == 2);
        CHECK(half->a == 1);
        CHECK_FALSE(major_arc_locate(std::sqrt(2.0) - 1, params));
        CHECK_THROWS_AS((ArcParams{0, 1, 2, 1}.radius()), ArgumentError);

        const auto near = major_arc_locate(1.0 / 3 + 1e-4, ArcParams{10, 10, 2, 3});
        REQUIRE(near);
        CHECK(near->q == 3);
        CHECK(near->a == 1);
        CHECK(std::abs(near->delta) <= 3e-3);
    }

    TEST_CASE("major arc approximation")
    {
        CHECK(major_arc_approx_error(0, 1, 1, 0, 50, 2) < 1e-9);
        CHECK(major_arc_approx_error(0, 3, 1, 0, 50, 2) < 1e-9);
        CHECK(major_arc_approx_error(2.0 / 5, 5, 5, 2, 50, 2) < 1e-6);
        const auto r = major_arc_approximation(1.0 / 3 + 1e-4, 1, 3, 1, 200, 2);
        CHECK(std::isfinite(r.error));
        CHECK(r.error >= 0);
        CHECK(r.q_reduced == 3);
        CHECK(std::abs(r.weyl - direct_weyl(1.0 / 3 + 1e-4, 1, 200, 2)) < 1e-6);
        CHECK_THROWS_AS(major_arc_approx_error(0.5, 1, 4, 2, 10, 2), ArgumentError);
    }
}
