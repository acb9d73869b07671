#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace wta {

/// The commutative semifields supported by the library. All of them are
/// represented exactly on top of arbitrary-precision rationals.
enum class SemifieldKind {
  kRational,  // (Q, +, *, 0, 1)
  kViterbi,   // (Q>=0, max, *, 0, 1)
  kBoolean,   // ({0,1}, max, min, 0, 1)
};

std::string_view to_string(SemifieldKind kind);
SemifieldKind semifield_from_string(std::string_view name);

/// An exact element of one of the supported semifields.
///
/// The value is kept in canonical form (lowest terms, positive denominator),
/// so equality is structural. Values of different kinds never compare equal
/// and mixing them in arithmetic raises UsageError.
class Weight {
 public:
  /// Zero of the rational field.
  Weight() : kind_(SemifieldKind::kRational), value_(0) {}

  static Weight zero(SemifieldKind kind);
  static Weight one(SemifieldKind kind);
  static Weight from_integer(SemifieldKind kind, long value);
  static Weight from_fraction(SemifieldKind kind, long numerator,
                              long denominator);
  /// Takes a rational and checks it against the domain of `kind`.
  static Weight from_rational(SemifieldKind kind, const mpq_class& value);
  /// Parses `INT ("/" POSINT)?` with an optional leading `-`.
  static Weight parse(SemifieldKind kind, std::string_view text);

  SemifieldKind kind() const noexcept { return kind_; }
  const mpq_class& rational() const noexcept { return value_; }
  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }

  std::string to_string() const;
  std::size_t hash() const;

  friend bool operator==(const Weight& a, const Weight& b) {
    return a.kind_ == b.kind_ && a.value_ == b.value_;
  }
  /// Total order (kind first, then numeric value); used for sorting only.
  friend std::strong_ordering operator<=>(const Weight& a, const Weight& b);

 private:
  Weight(SemifieldKind kind, mpq_class value)
      : kind_(kind), value_(std::move(value)) {}

  friend Weight plus(const Weight&, const Weight&);
  friend Weight times(const Weight&, const Weight&);
  friend Weight inverse(const Weight&);

  SemifieldKind kind_;
  mpq_class value_;
};

Weight plus(const Weight& a, const Weight& b);
Weight times(const Weight& a, const Weight& b);
/// Multiplicative inverse; DomainError on zero.
Weight inverse(const Weight& a);
/// a * b^-1.
Weight divide(const Weight& a, const Weight& b);

inline Weight operator+(const Weight& a, const Weight& b) { return plus(a, b); }
inline Weight operator*(const Weight& a, const Weight& b) {
  return times(a, b);
}

std::ostream& operator<<(std::ostream& os, const Weight& w);

/// Operation bundle for one semifield instance.
struct Semifield {
  SemifieldKind kind;

  Weight zero() const { return Weight::zero(kind); }
  Weight one() const { return Weight::one(kind); }
  Weight plus(const Weight& a, const Weight& b) const {
    return wta::plus(a, b);
  }
  Weight times(const Weight& a, const Weight& b) const {
    return wta::times(a, b);
  }
  Weight inverse(const Weight& a) const { return wta::inverse(a); }
  Weight parse(std::string_view text) const {
    return Weight::parse(kind, text);
  }
};

}  // namespace wta

template <>
struct std::hash<wta::Weight> {
  std::size_t operator()(const wta::Weight& w) const { return w.hash(); }
};
