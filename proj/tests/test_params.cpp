#include <doctest.h>

#include "hetmix/params.hpp"
#include "test_support.hpp"

using namespace hetmix;
using test::thrown_code;

TEST_CASE("calibration defaults pass validation") {
  ModelParams p;
  CHECK_NOTHROW(validate_params(p));
  CHECK(p.gamma == doctest::Approx(1.0 / 7.0));
  CHECK(p.alpha[0] == 0.45);
  CHECK(p.alpha[1] == 0.27);
}

TEST_CASE("each invariant has its own error code") {
  ModelParams p;

  SUBCASE("alpha below pi") {
    p.alpha = {0.45, 0.005};  // pi = 0.01
    CHECK(thrown_code([&] { validate_params(p); }) == errc::alpha_below_pi);
  }
  SUBCASE("sizes not normalized") {
    p.n = {0.6, 0.6};
    CHECK(thrown_code([&] { validate_params(p); }) == errc::sizes_not_normalized);
  }
  SUBCASE("nonpositive group size") {
    p.n = {1.0, 0.0};
    CHECK(thrown_code([&] { validate_params(p); }) == errc::sizes_not_normalized);
  }
  SUBCASE("h out of range") {
    p.h = 1.5;
    CHECK(thrown_code([&] { validate_params(p); }) == errc::h_out_of_range);
    p.h = -0.1;
    CHECK(thrown_code([&] { validate_params(p); }) == errc::h_out_of_range);
  }
  SUBCASE("nonpositive gamma") {
    p.gamma = 0.0;
    CHECK(thrown_code([&] { validate_params(p); }) == errc::nonpositive_gamma);
  }
  SUBCASE("seed out of range") {
    p.seed_fraction = 0.0;
    CHECK(thrown_code([&] { validate_params(p); }) == errc::seed_out_of_range);
    p.seed_fraction = 0.5;  // not below min(n) = 0.5
    CHECK(thrown_code([&] { validate_params(p); }) == errc::seed_out_of_range);
  }
  SUBCASE("pi out of range") {
    p.pi = 1.0001;
    CHECK(thrown_code([&] { validate_params(p); }) == errc::pi_out_of_range);
    p.pi = -0.1;
    CHECK(thrown_code([&] { validate_params(p); }) == errc::pi_out_of_range);
  }
  SUBCASE("negative r0") {
    p.r0[1] = -0.5;
    CHECK(thrown_code([&] { validate_params(p); }) == errc::negative_r0);
  }
  SUBCASE("alpha above one") {
    p.alpha[0] = 1.2;
    CHECK(thrown_code([&] { validate_params(p); }) == errc::alpha_out_of_range);
  }
}

TEST_CASE("boundary values are accepted") {
  ModelParams p;
  p.alpha = {0.01, 0.01};  // exactly pi
  CHECK_NOTHROW(validate_params(p));
  p.h = 1.0;
  CHECK_NOTHROW(validate_params(p));
  p.h = 0.0;
  p.r0 = {0.0, 0.0};
  CHECK_NOTHROW(validate_params(p));
  p = ModelParams{};
  p.n = {0.999, 0.001};
  p.seed_fraction = 5e-4;
  CHECK_NOTHROW(validate_params(p));
}

TEST_CASE("error messages name the offending field") {
  ModelParams p;
  p.h = 2.0;
  try {
    validate_params(p);
    FAIL("expected a validation error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("h") != std::string::npos);
  }
}
