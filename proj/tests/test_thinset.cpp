#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "circlekit/errors.hpp"
#include "circlekit/thinset.hpp"
#include "oracle.hpp"

using namespace circlekit;

namespace {

const ConstraintForm kP{Form::make(2, 3, {1, 0, 0, 1, 0, -2})};

std::vector<IntVector> brute_members(const Form& P, std::int64_t A)
{
    std::vector<IntVector> out;
    oracle::for_box(P.variables(), -A, A, [&](const IntVector& a) {
        if (oracle::value(P.degree(), P.variables(), P.coeffs(), a) == 0) out.push_back(a);
    });
    return out;
}

} // namespace

TEST_SUITE("thinset")
{
    TEST_CASE("seventeen members at height two")
    {
        const auto set = enumerate_thin_set(kP, 2);
        CHECK(set.members.size() == 17);
        CHECK_FALSE(set.truncated);
        CHECK_FALSE(set.trivial());
        std::set<IntVector> s(set.members.begin(), set.members.end());
        CHECK(s.count(IntVector{0, 0, 0}));
        for (std::int64_t x : {-1, 1})
            for (std::int64_t y : {-1, 1})
                for (std::int64_t z : {-1, 1}) CHECK(s.count(IntVector{x, y, z}));
        CHECK(std::is_sorted(set.members.begin(), set.members.end()));
        CHECK(set.members == brute_members(kP.form(), 2));
    }

    TEST_CASE("positive definite constraint is trivial")
    {
        const ConstraintForm P{Form::make(2, 3, {1, 0, 0, 1, 0, 1})};
        const auto set = enumerate_thin_set(P, 5);
        CHECK(set.trivial());
        CHECK(set.members == std::vector<IntVector>{{0, 0, 0}});
    }

    TEST_CASE("split and brute force enumerations agree")
    {
        for (std::int64_t A : {1, 2, 3}) {
            const auto mitm = enumerate_thin_set(kP, A, std::nullopt, {}, ThinSetMethod::MeetInTheMiddle);
            const auto brute = enumerate_thin_set(kP, A, std::nullopt, {}, ThinSetMethod::BruteForce);
            CHECK(mitm.members == brute.members);
        }
        const ConstraintForm quartic{Form::make(3, 4, [] {
            IntVector a(basis_size(3, 4), 0);
            const auto b = build_basis(3, 4);
            a[b->pure_power_index(0)] = 1;
            a[b->pure_power_index(1)] = 2;
            a[b->pure_power_index(2)] = -1;
            a[b->pure_power_index(3)] = -2;
            return a;
        }())};
        CHECK(enumerate_thin_set(quartic, 4, std::nullopt, {}, ThinSetMethod::MeetInTheMiddle).members
              == brute_members(quartic.form(), 4));
        const ConstraintForm mixed{Form::make(2, 3, {1, 1, 0, -1, 0, 0})};
        CHECK_THROWS_AS(enumerate_thin_set(mixed, 2, std::nullopt, {}, ThinSetMethod::MeetInTheMiddle),
                        ArgumentError);
        CHECK(enumerate_thin_set(mixed, 3).members == brute_members(mixed.form(), 3));
    }

    TEST_CASE("members satisfy the constraint and come in sign pairs")
    {
        const ConstraintForm P{Form::make(2, 4, {1, 2, 0, 0, -3, 0, 1, 1, 0, -1})};
        const auto set = enumerate_thin_set(P, 3);
        std::set<IntVector> s(set.members.begin(), set.members.end());
        for (const auto& a : set.members) {
            CHECK(evaluate(P.form(), a) == 0);
            CHECK(*std::max_element(a.begin(), a.end()) <= 3);
            CHECK(*std::min_element(a.begin(), a.end()) >= -3);
            IntVector neg = a;
            for (auto& v : neg) v = -v;
            CHECK(s.count(neg));
        }
    }

    TEST_CASE("limit truncates in order")
    {
        const auto all = enumerate_thin_set(kP, 2);
        const auto first = enumerate_thin_set(kP, 2, 5);
        CHECK(first.truncated);
        REQUIRE(first.members.size() == 5);
        CHECK(std::equal(first.members.begin(), first.members.end(), all.members.begin()));
        CHECK_THROWS_AS(enumerate_thin_set(kP, 50, std::nullopt, Budget{1000}, ThinSetMethod::BruteForce),
                        BudgetExceeded);
    }

    TEST_CASE("congruent pair counts")
    {
        const auto two = congruent_pair_count(kP, 2, 2);
        CHECK(two.count == 145);
        CHECK(two.classes == 2);
        CHECK(two.members == 17);
        CHECK(congruent_pair_count(kP, 2, 1).count == 17 * 17);
        CHECK(congruent_pair_count(kP, 2, 6).count == 17);

        for (std::int64_t W : {2, 3, 4, 5, 6}) {
            const auto set = enumerate_thin_set(kP, 3);
            std::map<IntVector, std::uint64_t> classes;
            for (const auto& a : set.members) {
                IntVector r = a;
                for (auto& v : r) v = ((v % W) + W) % W;
                ++classes[r];
            }
            BigInt sq = 0;
            std::uint64_t total = 0;
            for (const auto& [k, c] : classes) {
                sq += c * c;
                total += c;
            }
            const auto pc = congruent_pair_count(kP, 3, W);
            CHECK(pc.count == sq);
            CHECK(total == set.members.size());
            CHECK(pc.classes == classes.size());
        }
    }

    TEST_CASE("singular point scan")
    {
        const auto good = nonsingular_heuristic(kP, {5});
        CHECK(good.nonsingular);
        REQUIRE(good.scans.size() == 1);
        CHECK_FALSE(good.scans[0].witness);

        const ConstraintForm square{Form::make(2, 3, {1, 0, 0, 0, 0, 0})};
        const auto bad = nonsingular_heuristic(square, {3});
        CHECK_FALSE(bad.nonsingular);
        REQUIRE(bad.scans[0].witness);
        CHECK(*bad.scans[0].witness == IntVector{0, 1, 0});

        const ConstraintForm product{Form::make(2, 2, {0, 1, 0})};
        CHECK(nonsingular_heuristic(product, {3}).nonsingular);
        CHECK_THROWS_AS(nonsingular_heuristic(kP, {4}), ArgumentError);
    }
}
