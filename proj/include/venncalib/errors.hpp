#pragma once

#include <stdexcept>
#include <string>

namespace venncalib {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyInput : Error {
  using Error::Error;
};
struct InvalidScore : Error {
  using Error::Error;
};
struct ScoreNotInDomain : Error {
  using Error::Error;
};
struct TooLarge : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct NonFiniteFeature : Error {
  using Error::Error;
};
struct SingleClassTraining : Error {
  using Error::Error;
};
struct InvalidK : Error {
  using Error::Error;
};
struct DegenerateInput : Error {
  using Error::Error;
};
struct LengthMismatch : Error {
  using Error::Error;
};
struct DatasetTooSmall : Error {
  using Error::Error;
};
struct SingleClassDataset : Error {
  using Error::Error;
};

// data_io
struct IoError : Error {
  using Error::Error;
};
struct ParseError : Error {
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};
struct MissingLabelColumn : Error {
  using Error::Error;
};
struct NonBinaryLabel : Error {
  using Error::Error;
};
struct UnparseableNumeric : Error {
  using Error::Error;
};

// cli / config files
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace venncalib
