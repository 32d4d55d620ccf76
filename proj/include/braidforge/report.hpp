#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "braidforge/tensor.hpp"

namespace braidforge {

/// Whether reports carry wall-clock timings. Off by default so that
/// serialized reports are byte-deterministic.
bool timing_enabled();
void set_timing_enabled(bool on);

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

enum class CheckStatus { pass, fail, skipped };

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  nlohmann::json witness;  // null when absent
  double elapsed_ms = 0.0;
  std::string note;
};

struct VerificationReport {
  std::string subject;
  std::vector<Check> checks;

  /// Overall pass: every non-skipped check passes.
  bool passed() const;
  const Check* find(const std::string& name) const;
  bool check_passed(const std::string& name) const;
  void add(Check check) { checks.push_back(std::move(check)); }
  void append(const VerificationReport& other, const std::string& prefix = "");
  nlohmann::json to_json() const;
};

/// Convenience: runs body (returns optional witness) and records a check.
template <class Body>
Check timed_check(const std::string& name, Body&& body) {
  Stopwatch sw;
  std::optional<nlohmann::json> witness = body();
  Check c;
  c.name = name;
  c.status = witness ? CheckStatus::fail : CheckStatus::pass;
  if (witness) c.witness = std::move(*witness);
  c.elapsed_ms = sw.elapsed_ms();
  return c;
}

enum class YBEquation { ybe, nybe_right, nybe_left };

const char* equation_name(YBEquation eq);

struct YBReport {
  YBEquation equation = YBEquation::ybe;
  std::size_t n = 2;
  std::size_t dim = 0;
  bool holds = false;
  bool invertible = false;
  std::optional<Index> witness;
  nlohmann::json witness_detail;
  std::size_t nonzeros = 0;
  Index verification_dim = 0;
  double elapsed_ms = 0.0;

  nlohmann::json to_json() const;
};

const char* status_name(CheckStatus s);

}  // namespace braidforge
