#pragma once

#include <stdexcept>

namespace logres {

// Malformed or unsupported input data.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Two constructions that must agree exactly did not.
struct RouteDisagreement : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed.
struct InvariantFailure : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace logres
