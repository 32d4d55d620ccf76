#pragma once

#include <gmpxx.h>

#include <string>

namespace braidforge {

enum class ScalarMode { exact, float64 };

/// Absolute comparison tolerance for float-mode scalars (default 1e-9).
double float_tolerance();
void set_float_tolerance(double eps);

/// A field element over Q (exact) or an approximation in binary64.
/// Mixed arithmetic promotes to float64.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : q_(v) {}  // NOLINT: implicit from integers is intended
  Scalar(int v) : q_(v) {}   // NOLINT
  explicit Scalar(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  static Scalar rational(long num, long den);
  static Scalar from_double(double v);
  static Scalar zero(ScalarMode mode);
  static Scalar one(ScalarMode mode);

  /// Parses "p", "p/q" (exact). Throws Error(schema_error) otherwise.
  static Scalar parse(const std::string& text);

  ScalarMode mode() const { return mode_; }
  bool is_exact() const { return mode_ == ScalarMode::exact; }
  const mpq_class& rational() const { return q_; }
  double to_double() const;
  Scalar to_mode(ScalarMode mode) const;

  bool is_zero() const;
  /// True when the value is a stored zero (exact 0 or float 0.0).
  bool is_literal_zero() const;
  double abs() const;

  /// Canonical text: "p/q" or "p" for exact, shortest round-trip for float.
  std::string str() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Exact: literal equality. Float (either side): |a-b| <= tolerance.
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

 private:
  void promote_with(const Scalar& o);

  ScalarMode mode_ = ScalarMode::exact;
  mpq_class q_{0};
  double f_ = 0.0;
};

}  // namespace braidforge
