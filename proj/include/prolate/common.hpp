#pragma once
#include <stdexcept>
#include <string>

namespace prolate {

// error taxonomy shared by all modules:
//   argument_error  - caller broke a precondition (sizes, ranges, combos)
//   domain_error    - evaluation point outside the defined domain, NaN input
//   accuracy_error  - an internal self-check found the result untrustworthy
//   numerical_error - iteration failed to converge / factorization broke down
//   config_error    - inconsistent run configuration (CLI or solver options)
struct argument_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};
struct accuracy_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct config_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace prolate
