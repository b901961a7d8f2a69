#pragma once

// Named identity checks with witnesses, and the exceptions raised when a
// construction's hypotheses fail.

#include <modext/rational.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace modext {

/// Basis indices at which an identity failed, with both evaluated sides.
struct Witness {
  std::vector<std::size_t> indices;
  Vector lhs;
  Vector rhs;
};

struct Check {
  std::string name;
  std::string statement;
  std::size_t total = 0;
  std::size_t failed = 0;
  std::vector<Witness> witnesses;  // the first few failures
  // Informational checks are reported but do not affect ConditionReport::passed().
  bool informational = false;
  std::string note;

  static constexpr std::size_t kMaxWitnesses = 4;

  bool passed() const noexcept { return failed == 0; }

  void record(bool ok, std::vector<std::size_t> indices, const Vector& lhs, const Vector& rhs) {
    ++total;
    if (ok) return;
    ++failed;
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back({std::move(indices), lhs, rhs});
  }

  /// Compares the two sides exactly and records the outcome.
  void expect_equal(std::vector<std::size_t> indices, const Vector& lhs, const Vector& rhs) {
    record(lhs == rhs, std::move(indices), lhs, rhs);
  }
};

struct ConditionReport {
  std::vector<Check> checks;

  bool passed() const noexcept {
    for (const auto& c : checks)
      if (!c.informational && !c.passed()) return false;
    return true;
  }

  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }

  /// First failing non-informational check, or nullptr.
  const Check* first_failure() const {
    for (const auto& c : checks)
      if (!c.informational && !c.passed()) return &c;
    return nullptr;
  }

  void append(const ConditionReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
};

inline std::string describe(const Witness& w) {
  std::string s = "at (";
  for (std::size_t i = 0; i < w.indices.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w.indices[i]);
  }
  return s + "): lhs " + to_string(w.lhs) + " vs rhs " + to_string(w.rhs);
}

/// Structure-constant data violating an algebra or bimodule axiom.
class AxiomViolation : public std::invalid_argument {
 public:
  explicit AxiomViolation(ConditionReport report)
      : std::invalid_argument(message(report)), report_(std::move(report)) {}
  const ConditionReport& report() const noexcept { return report_; }

 private:
  static std::string message(const ConditionReport& r) {
    const Check* c = r.first_failure();
    if (!c) return "axiom violation";
    std::string s = "axiom '" + c->name + "' fails";
    if (!c->witnesses.empty()) s += " " + describe(c->witnesses.front());
    return s;
  }
  ConditionReport report_;
};

/// A named hypothesis of a construction is not satisfied.
class HypothesisError : public std::invalid_argument {
 public:
  HypothesisError(std::string hypothesis, std::string witness)
      : std::invalid_argument("hypothesis '" + hypothesis + "' fails: " + witness),
        hypothesis_(std::move(hypothesis)),
        witness_(std::move(witness)) {}

  HypothesisError(std::string hypothesis, const Check& failed)
      : HypothesisError(std::move(hypothesis),
                        failed.witnesses.empty() ? failed.name
                                                 : failed.name + " " + describe(failed.witnesses.front())) {}

  const std::string& hypothesis() const noexcept { return hypothesis_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string hypothesis_;
  std::string witness_;
};

}  // namespace modext
