#pragma once

#include <stdexcept>
#include <string>

namespace hetmix {

// Every failure mode gets its own code so callers (and tests) can tell
// them apart without parsing messages.
enum class errc {
  nonpositive_gamma,
  pi_out_of_range,
  negative_r0,
  alpha_out_of_range,
  alpha_below_pi,
  h_out_of_range,
  sizes_not_normalized,
  seed_out_of_range,
  degenerate_mixing,
  bad_integration_config,
  numerical_blowup,
  no_convergence,
  too_few_points,
  missing_group_mean,
  incomplete_table,
  sweep_failure,
  bad_input,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  errc code() const { return code_; }
  // Message without the error-code prefix.
  const std::string& detail() const { return detail_; }

 private:
  errc code_;
  std::string detail_;
};

}  // namespace hetmix
