#include "wta/semifield.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

#include "wta/error.hpp"

namespace wta {

std::string_view to_string(SemifieldKind kind) {
  switch (kind) {
    case SemifieldKind::kRational:
      return "rational";
    case SemifieldKind::kViterbi:
      return "viterbi";
    case SemifieldKind::kBoolean:
      return "boolean";
  }
  return "?";
}

SemifieldKind semifield_from_string(std::string_view name) {
  if (name == "rational") return SemifieldKind::kRational;
  if (name == "viterbi") return SemifieldKind::kViterbi;
  if (name == "boolean") return SemifieldKind::kBoolean;
  throw UsageError("unknown semifield '" + std::string(name) +
                   "' (expected rational, viterbi or boolean)");
}

namespace {

void check_domain(SemifieldKind kind, const mpq_class& v) {
  switch (kind) {
    case SemifieldKind::kRational:
      return;
    case SemifieldKind::kViterbi:
      if (sgn(v) < 0)
        throw DomainError("viterbi weights must be nonnegative, got " +
                          v.get_str());
      return;
    case SemifieldKind::kBoolean:
      if (v != 0 && v != 1)
        throw DomainError("boolean weights must be 0 or 1, got " +
                          v.get_str());
      return;
  }
}

void check_same(const Weight& a, const Weight& b) {
  if (a.kind() != b.kind())
    throw UsageError("semifield mismatch: " + std::string(to_string(a.kind())) +
                     " vs " + std::string(to_string(b.kind())));
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  });
}

}  // namespace

Weight Weight::zero(SemifieldKind kind) { return Weight(kind, mpq_class(0)); }
Weight Weight::one(SemifieldKind kind) { return Weight(kind, mpq_class(1)); }

Weight Weight::from_integer(SemifieldKind kind, long value) {
  return from_rational(kind, mpq_class(value));
}

Weight Weight::from_fraction(SemifieldKind kind, long numerator,
                             long denominator) {
  if (denominator == 0) throw DomainError("zero denominator");
  mpq_class v(numerator, denominator);
  v.canonicalize();
  return from_rational(kind, v);
}

Weight Weight::from_rational(SemifieldKind kind, const mpq_class& value) {
  mpq_class v(value);
  v.canonicalize();
  check_domain(kind, v);
  return Weight(kind, std::move(v));
}

Weight Weight::parse(SemifieldKind kind, std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  std::string_view num = body;
  std::string_view den;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    num = body.substr(0, slash);
    den = body.substr(slash + 1);
    if (!all_digits(den))
      throw ParseError("malformed weight '" + std::string(text) + "'", 0, 0);
  }
  if (!all_digits(num))
    throw ParseError("malformed weight '" + std::string(text) + "'", 0, 0);
  mpq_class v;
  v.get_num() = mpz_class(std::string(num), 10);
  v.get_den() = den.empty() ? mpz_class(1) : mpz_class(std::string(den), 10);
  if (v.get_den() == 0)
    throw ParseError("zero denominator in weight '" + std::string(text) + "'",
                     0, 0);
  if (negative) v.get_num() = -v.get_num();
  v.canonicalize();
  if (negative && kind != SemifieldKind::kRational && sgn(v) != 0)
    throw DomainError("negative weight '" + std::string(text) + "' in the " +
                      std::string(wta::to_string(kind)) + " semifield");
  check_domain(kind, v);
  return Weight(kind, std::move(v));
}

std::string Weight::to_string() const { return value_.get_str(10); }

std::size_t Weight::hash() const {
  std::size_t h = std::hash<long>{}(mpz_get_si(value_.get_num_mpz_t()));
  h ^= std::hash<long>{}(mpz_get_si(value_.get_den_mpz_t())) + 0x9e3779b97f4a7c15ULL +
       (h << 6) + (h >> 2);
  return h ^ static_cast<std::size_t>(kind_);
}

std::strong_ordering operator<=>(const Weight& a, const Weight& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  int c = cmp(a.value_, b.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Weight plus(const Weight& a, const Weight& b) {
  check_same(a, b);
  if (a.kind_ == SemifieldKind::kRational)
    return Weight(a.kind_, mpq_class(a.value_ + b.value_));
  return Weight(a.kind_, a.value_ < b.value_ ? b.value_ : a.value_);
}

Weight times(const Weight& a, const Weight& b) {
  check_same(a, b);
  if (a.kind_ == SemifieldKind::kBoolean)
    return Weight(a.kind_, a.value_ < b.value_ ? a.value_ : b.value_);
  return Weight(a.kind_, mpq_class(a.value_ * b.value_));
}

Weight inverse(const Weight& a) {
  if (a.is_zero()) throw DomainError("inverse of zero");
  return Weight(a.kind_, mpq_class(1 / a.value_));
}

Weight divide(const Weight& a, const Weight& b) { return times(a, inverse(b)); }

std::ostream& operator<<(std::ostream& os, const Weight& w) {
  return os << w.to_string();
}

}  // namespace wta
