#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hsim {

/// @brief Base class of every library error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// @brief Malformed .ham or .css text; carries a 1-based position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

#define HSIM_DECLARE_ERROR(Name)   \
  class Name : public Error {      \
   public:                         \
    using Error::Error;            \
  }

HSIM_DECLARE_ERROR(IndexOutOfRange);
HSIM_DECLARE_ERROR(InvalidArgument);
HSIM_DECLARE_ERROR(CapExceeded);
HSIM_DECLARE_ERROR(NonFiniteValue);
HSIM_DECLARE_ERROR(ConvergenceFailure);
HSIM_DECLARE_ERROR(NonCommutingGenerators);
HSIM_DECLARE_ERROR(UnknownCode);
HSIM_DECLARE_ERROR(GammaTooSmall);
HSIM_DECLARE_ERROR(DegenerateSplit);
HSIM_DECLARE_ERROR(InvalidGamma);
HSIM_DECLARE_ERROR(SingularRestriction);
HSIM_DECLARE_ERROR(DegenerateGroundSpace);
HSIM_DECLARE_ERROR(OverlappingSupports);
HSIM_DECLARE_ERROR(AncillaCollision);
HSIM_DECLARE_ERROR(PreconditionViolated);
HSIM_DECLARE_ERROR(SpectrumMismatch);
HSIM_DECLARE_ERROR(NotLowEnergy);
HSIM_DECLARE_ERROR(InvalidMeasurement);
HSIM_DECLARE_ERROR(UnsupportedEncoding);

#undef HSIM_DECLARE_ERROR

/// @brief Error raised by a compiler pass, tagged with the pass name.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what);
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace hsim
