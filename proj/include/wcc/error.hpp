#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wcc {

/// Malformed text input. Carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Argument outside the domain of an operation (bad vertex id, empty set, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A partition that does not describe a disjoint cover of the graph.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, std::vector<std::string> offenders)
      : std::runtime_error(format(what, offenders)), offenders_(std::move(offenders)) {}

  const std::vector<std::string>& offenders() const noexcept { return offenders_; }

 private:
  static std::string format(const std::string& what, const std::vector<std::string>& offenders) {
    std::string msg = what;
    if (!offenders.empty()) {
      msg += ":";
      constexpr std::size_t kShown = 20;
      for (std::size_t i = 0; i < offenders.size() && i < kShown; ++i) msg += " " + offenders[i];
      if (offenders.size() > kShown)
        msg += " ... (" + std::to_string(offenders.size() - kShown) + " more)";
    }
    return msg;
  }

  std::vector<std::string> offenders_;
};

/// Request exceeds what an operation is willing to do (e.g. exhaustive search on a large graph).
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wcc
