#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rimcert {

/// Base of every error raised by the library. Input errors map to CLI exit
/// code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotSymmetrizable : public Error {
 public:
  using Error::Error;
};

class ZeroPolynomial : public Error {
 public:
  using Error::Error;
};

class InexactDivision : public Error {
 public:
  using Error::Error;
};

class InvalidSeifertMatrix : public Error {
 public:
  using Error::Error;
};

class InvalidKnot : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class TorsionTorusClass : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

class DegenerateLevelSet : public Error {
 public:
  using Error::Error;
};

class ResolutionTooCoarse : public Error {
 public:
  using Error::Error;
};

class ArithmeticOverflow : public Error {
 public:
  using Error::Error;
};

/// Parse failure; `position` is the byte offset into the input text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  [[nodiscard]] std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace rimcert
