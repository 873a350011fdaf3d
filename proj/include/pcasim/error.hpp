#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pcasim {

enum class ErrorCode {
  // input problems (CLI exit code 2)
  FileNotFound,
  ParseError,
  CategoricalRejected,
  TooFewRows,
  IndexOutOfRange,
  InvalidArgument,
  InvalidP,
  DimensionMismatch,
  LengthMismatch,
  NotDescending,
  NotUnitVector,
  NotOrthogonal,
  NotCentered,
  SchemaMismatch,
  EmptyComplement,
  InvalidGrid,
  InvalidPermutation,
  // numerical problems (CLI exit code 3)
  NoConvergence,
  NotPositiveSemidefinite,
  DegenerateData,
};

std::string_view to_string(ErrorCode code);

/// True for failures of the numerical machinery rather than of the input.
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pcasim
