#include <string>

#include <doctest.h>

#include "hetmix/config.hpp"
#include "test_support.hpp"

using namespace hetmix;
using test::thrown_code;

namespace {

std::string error_text(const char* text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("an empty document yields the calibration defaults") {
  const auto config = parse_config("");
  CHECK(config.params.gamma == doctest::Approx(1.0 / 7.0));
  CHECK(config.params.pi == 0.01);
  CHECK(config.params.r0[0] == 2.5);
  CHECK(config.params.r0[1] == 2.5);
  CHECK(config.params.alpha[0] == 0.45);
  CHECK(config.params.alpha[1] == 0.27);
  CHECK(config.params.h == 0.0);
  CHECK(config.params.n[0] == 0.5);
  CHECK(config.params.seed_fraction == 1e-4);
  CHECK(config.integration.dt == 0.05);
  CHECK(config.integration.horizon == 500.0);
  CHECK(config.integration.record_every == 1.0);
  CHECK(config.integration.extinction_threshold == 1e-9);
  CHECK(!config.axis1);
  CHECK(!config.out);
}

TEST_CASE("keys, comments and whitespace") {
  const auto config = parse_config(
      "# a comment line\n"
      "r02 = 3.5   # trailing comment\n"
      "\n"
      "  h = 0.25\n"
      "n2 = 0.3\n"
      "dt = 0.1\n"
      "out = results.csv\n");
  CHECK(config.params.r0[1] == 3.5);
  CHECK(config.params.h == 0.25);
  CHECK(config.params.n[0] == doctest::Approx(0.7));
  CHECK(config.params.n[1] == 0.3);
  CHECK(config.integration.dt == 0.1);
  CHECK(config.out == "results.csv");
}

TEST_CASE("validation failures carry the key name") {
  CHECK(error_text("h = 1.5").find("h") != std::string::npos);
  CHECK(thrown_code([] { parse_config("h = 1.5"); }) == errc::h_out_of_range);
  CHECK(thrown_code([] { parse_config("alpha2 = 0.005"); }) ==
        errc::alpha_below_pi);
  CHECK(thrown_code([] { parse_config("dt = -1"); }) ==
        errc::bad_integration_config);
}

TEST_CASE("parse failures carry the line number") {
  CHECK(error_text("r01 = 2.5\nbogus line\n").find("line 2") !=
        std::string::npos);
  CHECK(error_text("gamma = fast\n").find("line 1") != std::string::npos);
  CHECK(error_text("unknown_key = 1\n").find("unknown key") !=
        std::string::npos);
  CHECK(error_text("h = 0.2\nh = 0.3\n").find("duplicate key") !=
        std::string::npos);
  CHECK(error_text("h =\n").find("missing value") != std::string::npos);
}

TEST_CASE("sweep axes") {
  SUBCASE("linspace form") {
    const auto config = parse_config(
        "axis1 = n2\n"
        "axis1_min = 0.1\n"
        "axis1_max = 0.9\n"
        "axis1_points = 5\n");
    REQUIRE(config.axis1);
    CHECK(config.axis1->name == "n2");
    CHECK(config.axis1->values == linspace(0.1, 0.9, 5));
  }
  SUBCASE("explicit values plus a second axis") {
    const auto config = parse_config(
        "axis1 = r0\n"
        "axis1_values = 1.5, 2.0, 2.5\n"
        "axis2 = n2\n"
        "axis2_min = 0.2\n"
        "axis2_max = 0.8\n"
        "axis2_points = 4\n");
    REQUIRE(config.axis1);
    REQUIRE(config.axis2);
    CHECK(config.axis1->values == std::vector<double>{1.5, 2.0, 2.5});
    CHECK(config.axis2->values.size() == 4);
  }
  SUBCASE("inconsistent axis definitions") {
    CHECK(error_text("axis1 = n2\naxis1_points = 5\n").find("min") !=
          std::string::npos);
    CHECK(error_text("axis1_min = 0.1\naxis1_max = 0.9\naxis1_points = 5\n")
              .find("parameter name") != std::string::npos);
    CHECK(thrown_code([] {
      parse_config("axis1 = n2\naxis1_values = 0.9, 0.1\n");
    }) == errc::bad_input);
    CHECK(thrown_code([] { parse_config("axis1 = dt\naxis1_values = 0.1\n"); }) ==
          errc::bad_input);
    CHECK(thrown_code([] {
      parse_config("axis2 = n2\naxis2_values = 0.1, 0.9\n");
    }) == errc::bad_input);
  }
}
