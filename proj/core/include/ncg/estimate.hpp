#pragma once

#include <cstdint>

namespace ncg {

/// An expectation, either exact (enumerated) or a Monte-Carlo mean.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;    // zero when exact
  std::uint64_t members = 0; // ensemble members or samples averaged
  bool exact = true;

  double upper(double sigmas) const { return value + sigmas * std_error; }
  double lower(double sigmas) const { return value - sigmas * std_error; }
};

}  // namespace ncg
