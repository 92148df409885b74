#pragma once

#include <stdexcept>
#include <string>

namespace ramified {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation needed more π_K-digits than were available.
/// `needed` is a sufficient precision to retry with.
class PrecisionInsufficient : public Error {
 public:
  PrecisionInsufficient(int needed, const std::string& what)
      : Error(what + " (needs precision " + std::to_string(needed) + ")"),
        needed_(needed) {}
  int needed() const noexcept { return needed_; }

 private:
  int needed_;
};

class NotEisenstein : public Error {
 public:
  NotEisenstein(int index, const std::string& what)
      : Error(what), index_(index) {}
  /// Coefficient index that violates the Eisenstein condition.
  int index() const noexcept { return index_; }

 private:
  int index_;
};

class ChoiceRequired : public Error {
 public:
  using Error::Error;
};

class NonTermination : public Error {
 public:
  using Error::Error;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class InconsistentNormDatum : public Error {
 public:
  using Error::Error;
};

class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

class IndistinguishablePolynomials : public Error {
 public:
  using Error::Error;
};

class SearchBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace ramified
