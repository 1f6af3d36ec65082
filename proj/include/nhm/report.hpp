#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nhm {

struct Diagnostic {
  std::string rule;
  std::string location;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

/// Collected invariant violations; empty means valid.
struct ValidationReport {
  std::vector<Diagnostic> entries;

  bool ok() const { return entries.empty(); }
  void add(std::string rule, std::string location, std::string message) {
    entries.push_back({std::move(rule), std::move(location), std::move(message)});
  }
  void append(const ValidationReport& other) {
    entries.insert(entries.end(), other.entries.begin(), other.entries.end());
  }
  bool has_rule(const std::string& rule) const {
    for (const auto& e : entries)
      if (e.rule == rule) return true;
    return false;
  }
};

/// A theorem hypothesis or operation precondition does not hold.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nhm
