#include "braidforge/report.hpp"

#include <atomic>

namespace braidforge {

namespace {
std::atomic<bool> g_timing{false};

nlohmann::json ms(double v) { return timing_enabled() ? nlohmann::json(v) : nlohmann::json(0); }
}  // namespace

bool timing_enabled() { return g_timing.load(); }
void set_timing_enabled(bool on) { g_timing.store(on); }

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

bool VerificationReport::passed() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::fail) return false;
  return true;
}

const Check* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

bool VerificationReport::check_passed(const std::string& name) const {
  const Check* c = find(name);
  return c != nullptr && c->status == CheckStatus::pass;
}

void VerificationReport::append(const VerificationReport& other, const std::string& prefix) {
  for (auto c : other.checks) {
    c.name = prefix + c.name;
    checks.push_back(std::move(c));
  }
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["subject"] = subject;
  j["status"] = passed() ? "pass" : "fail";
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json cj{{"name", c.name}, {"status", status_name(c.status)}, {"elapsed_ms", ms(c.elapsed_ms)}};
    cj["witness"] = c.witness;
    if (!c.note.empty()) cj["note"] = c.note;
    j["checks"].push_back(std::move(cj));
  }
  return j;
}

const char* equation_name(YBEquation eq) {
  switch (eq) {
    case YBEquation::ybe: return "ybe";
    case YBEquation::nybe_right: return "n_ybe_right";
    case YBEquation::nybe_left: return "n_ybe_left";
  }
  return "?";
}

nlohmann::json YBReport::to_json() const {
  nlohmann::json j{{"equation", equation_name(equation)},
                   {"n", n},
                   {"dim", dim},
                   {"holds", holds},
                   {"invertible", invertible},
                   {"nonzeros", nonzeros},
                   {"verification_dim", verification_dim},
                   {"elapsed_ms", ms(elapsed_ms)}};
  j["witness"] = witness ? nlohmann::json(*witness) : nlohmann::json(nullptr);
  if (!witness_detail.is_null()) j["witness_detail"] = witness_detail;
  return j;
}

}  // namespace braidforge
