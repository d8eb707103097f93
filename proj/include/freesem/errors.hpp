#ifndef FREESEM_ERRORS_HPP
#define FREESEM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace freesem {

// Enumeration limits. Everything in this workbench is exhaustive search, so
// blowing past a cap is an error, never a silent truncation.
struct Caps {
  int max_morphisms = 64;          // largest category any operation will build
  long long max_enum = 100000;     // candidate/partial-assignment budget per search
  int max_exhaustive_frame = 4;    // largest carrier swept over all subset triples
};

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An index in an input table points outside the structure it refers to.
class MalformedTable : public Error {
public:
  using Error::Error;
};

// A constructed object (product category, coend carrier, ...) would exceed caps.
class CapacityExceeded : public Error {
public:
  using Error::Error;
};

// A search visited more candidates than the configured budget.
class EnumerationCapExceeded : public Error {
public:
  using Error::Error;
};

class UnknownName : public Error {
public:
  using Error::Error;
};

class DialectError : public Error {
public:
  using Error::Error;
};

class ValuationNotUpClosed : public Error {
public:
  using Error::Error;
};

// Raised when a law that holds by construction fails; a defect detector.
class InternalLawViolation : public Error {
public:
  using Error::Error;
};

class SyntaxError : public Error {
public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

}  // namespace freesem

#endif
