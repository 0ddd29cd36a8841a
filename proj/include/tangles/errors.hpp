#pragma once

#include <stdexcept>
#include <string>

namespace tangles {

// Invalid arguments: wrong ground set, overlapping boxes, non-bases, ...
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Membership queried for a set whose order is not below the tangle order.
class OutOfOrderError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A configured size bound would be exceeded; the computation is refused.
class SizeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A structural assumption failed at runtime (inconsistent oracle, broken
// invariant). Signals a bug or a non-submodular input.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& where, int line, const std::string& what)
      : std::runtime_error(where + ":" + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace tangles
