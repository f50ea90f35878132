#pragma once

#include <stdexcept>
#include <string>

namespace loam {

// Base of all loam errors. what() is "<Name>: <detail>" so callers and
// error messages always carry the error name.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& detail)
      : std::runtime_error(name + ": " + detail), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

// A subject/observer cell is missing, has extra replicates, or the
// replicate counts differ across cells.
class UnbalancedDesign : public Error {
 public:
  explicit UnbalancedDesign(const std::string& detail) : Error("UnbalancedDesign", detail) {}
};

// Fewer than two subjects, observers, or replicates.
class DegenerateDesign : public Error {
 public:
  explicit DegenerateDesign(const std::string& detail) : Error("DegenerateDesign", detail) {}
};

// The same (subject, observer, replicate) appears twice.
class DuplicateCell : public Error {
 public:
  explicit DuplicateCell(const std::string& detail) : Error("DuplicateCell", detail) {}
};

// A measurement is NaN or infinite.
class NonFiniteValue : public Error {
 public:
  explicit NonFiniteValue(const std::string& detail) : Error("NonFiniteValue", detail) {}
};

// An argument is outside its mathematical domain.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& detail) : Error("DomainError", detail) {}
};

// Malformed input text; the message names the offending line.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& detail) : Error("ParseError", detail) {}
};

// The two grids of a paired study differ in design or labels.
class MismatchedDesign : public Error {
 public:
  explicit MismatchedDesign(const std::string& detail) : Error("MismatchedDesign", detail) {}
};

// A bootstrap resample kept degenerating (zero total sum of squares)
// past the redraw budget.
class DegenerateResample : public Error {
 public:
  explicit DegenerateResample(const std::string& detail) : Error("DegenerateResample", detail) {}
};

}  // namespace loam
