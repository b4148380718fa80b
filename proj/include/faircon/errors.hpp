#pragma once

#include <stdexcept>
#include <string>

namespace faircon {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidInstance : Error {
  using Error::Error;
};

struct InvalidArgument : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct IndexOutOfRange : Error {
  using Error::Error;
};

struct BudgetExceeded : Error {
  using Error::Error;
};

}  // namespace faircon
