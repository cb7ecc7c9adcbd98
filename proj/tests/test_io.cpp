#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "circlekit/errors.hpp"
#include "circlekit/io.hpp"

using namespace circlekit;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& body)
{
    const auto dir = std::filesystem::temp_directory_path() / "circlekit_io_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    std::ofstream(path) << body;
    return path;
}

} // namespace

TEST_SUITE("io")
{
    TEST_CASE("form documents")
    {
        const auto f = parse_form_file(write_temp("diff.json", R"({"d":2,"n":2,"coeffs":[1,0,-1]})"));
        CHECK(evaluate(f, IntVector{3, 3}) == 0);
        CHECK(evaluate(f, IntVector{3, 1}) == 8);

        const auto cube = parse_form_file(write_temp("cube.json", R"({"d":3,"n":2,"coeffs":[1,0,0,-1]})"));
        CHECK(evaluate(cube, IntVector{3, 2}) == 19);
        CHECK(split_diagonal(cube).b == IntVector{1, -1});

        try {
            parse_form_file(write_temp("short.json", R"({"d":2,"n":2,"coeffs":[1,0]})"));
            FAIL("expected a length mismatch");
        } catch (const LengthMismatch& e) {
            CHECK(std::string(e.what()).find("expected 3") != std::string::npos);
        }
    }

    TEST_CASE("schema violations")
    {
        CHECK_THROWS_AS(form_from_json(Json::parse(R"({"d":2,"n":2,"coeffs":[1,0,-1],"x":1})")), SchemaError);
        CHECK_THROWS_AS(form_from_json(Json::parse(R"({"d":2,"coeffs":[1,0,-1]})")), SchemaError);
        CHECK_THROWS_AS(form_from_json(Json::parse(R"({"d":2,"n":2,"coeffs":[1,0.5,-1]})")), SchemaError);
        CHECK_THROWS_AS(form_from_json(Json::parse(R"([1,2])")), SchemaError);
        CHECK_THROWS_AS(parse_form_file(write_temp("bad.json", "{not json")), SchemaError);
        CHECK_THROWS_AS(parse_form_file("/nonexistent/form.json"), SchemaError);
        CHECK_THROWS_AS(parse_constraint_file(write_temp("linear.json", R"({"d":1,"n":2,"coeffs":[1,1]})")),
                        ArgumentError);
    }

    TEST_CASE("round trip")
    {
        const auto f = Form::make(3, 3, {1, -2, 3, 0, 0, 4, 5, 0, 0, -9});
        CHECK(form_from_json(form_to_json(f)) == f);
        CHECK(form_to_json(f).dump() == R"({"d":3,"n":3,"coeffs":[1,-2,3,0,0,4,5,0,0,-9]})");
    }

    TEST_CASE("experiment configs")
    {
        const auto j = Json::parse(R"({
            "form_space": {"d": 2, "n": 2},
            "P": {"d": 2, "n": 3, "coeffs": [1, 0, 0, 1, 0, -2]},
            "A": 2, "X": 20, "w": 3, "seed": 7, "proportion_base": "thin_set"
        })");
        const auto c = config_from_json(j);
        CHECK(c.d == 2);
        CHECK(c.A == 2);
        CHECK(c.X == 20);
        CHECK(c.w == 3.0);
        CHECK(c.seed == 7);
        CHECK(c.proportion_base == ProportionBase::ThinSet);
        CHECK_FALSE(c.zeta);

        auto bad = j;
        bad["extra"] = 1;
        CHECK_THROWS_AS(config_from_json(bad), SchemaError);
        bad = j;
        bad["form_space"]["n"] = 3;
        CHECK_THROWS_AS(config_from_json(bad), SchemaError);
        bad = j;
        bad["A"] = 0;
        CHECK_THROWS_AS(config_from_json(bad), SchemaError);
        bad = j;
        bad["proportion_base"] = "all";
        CHECK_THROWS_AS(config_from_json(bad), SchemaError);
    }

    TEST_CASE("number formatting")
    {
        CHECK(format_double(0.5) == "0.5");
        CHECK(std::stod(format_double(0.1)) == 0.1);
        CHECK(integer_json(BigInt(1) << 80) == Json("1208925819614629174706176"));
        CHECK(integer_json(i128(-12)) == Json(-12));
        CHECK(rational_json(Rational(5, 3)).dump() == R"({"num":5,"den":3})");
    }
}
