#pragma once

#include <stdexcept>

namespace adm {

/// Integration or eigensolver breakdown (non-finite amplitudes, degenerate start state).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace adm
