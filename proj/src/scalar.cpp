#include "braidforge/scalar.hpp"

#include <atomic>
#include <charconv>
#include <cmath>

#include "braidforge/error.hpp"

namespace braidforge {

namespace {
std::atomic<double> g_tolerance{1e-9};
}

double float_tolerance() { return g_tolerance.load(std::memory_order_relaxed); }
void set_float_tolerance(double eps) { g_tolerance.store(eps, std::memory_order_relaxed); }

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::division_by_zero, "zero denominator");
  return Scalar(mpq_class(num, den));
}

Scalar Scalar::from_double(double v) {
  Scalar s;
  s.mode_ = ScalarMode::float64;
  s.f_ = v;
  return s;
}

Scalar Scalar::zero(ScalarMode mode) {
  return mode == ScalarMode::exact ? Scalar() : from_double(0.0);
}

Scalar Scalar::one(ScalarMode mode) {
  return mode == ScalarMode::exact ? Scalar(1) : from_double(1.0);
}

Scalar Scalar::parse(const std::string& text) {
  const auto bad = [&] {
    return Error(ErrorCode::schema_error, "invalid rational literal '" + text + "'");
  };
  if (text.empty()) throw bad();
  const auto slash = text.find('/');
  const auto valid_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw bad();
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  mpq_class q;
  q.get_num() = mpz_class(num, 10);
  q.get_den() = mpz_class(den, 10);
  if (q.get_den() == 0) throw Error(ErrorCode::schema_error, "zero denominator in '" + text + "'");
  return Scalar(q);
}

double Scalar::to_double() const { return is_exact() ? q_.get_d() : f_; }

Scalar Scalar::to_mode(ScalarMode mode) const {
  if (mode == mode_) return *this;
  if (mode == ScalarMode::float64) return from_double(q_.get_d());
  mpq_class q;
  q = f_;
  return Scalar(q);
}

bool Scalar::is_zero() const {
  return is_exact() ? sgn(q_) == 0 : std::fabs(f_) <= float_tolerance();
}

bool Scalar::is_literal_zero() const { return is_exact() ? sgn(q_) == 0 : f_ == 0.0; }

double Scalar::abs() const { return std::fabs(to_double()); }

std::string Scalar::str() const {
  if (is_exact()) return q_.get_str();
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, f_);
  return std::string(buf, res.ptr);
}

void Scalar::promote_with(const Scalar& o) {
  if (mode_ == ScalarMode::exact && o.mode_ == ScalarMode::float64) {
    f_ = q_.get_d();
    mode_ = ScalarMode::float64;
  }
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (is_exact()) r.q_ = -q_;
  else r.f_ = -f_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  promote_with(o);
  if (is_exact()) q_ += o.q_;
  else f_ += o.to_double();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  promote_with(o);
  if (is_exact()) q_ -= o.q_;
  else f_ -= o.to_double();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  promote_with(o);
  if (is_exact()) q_ *= o.q_;
  else f_ *= o.to_double();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  promote_with(o);
  if (is_exact()) {
    if (sgn(o.q_) == 0) throw Error(ErrorCode::division_by_zero, "division by zero");
    q_ /= o.q_;
  } else {
    f_ /= o.to_double();
  }
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.q_ == b.q_;
  return std::fabs(a.to_double() - b.to_double()) <= float_tolerance();
}

}  // namespace braidforge
