#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace predperm {

enum class Sense { minimize, maximize };

inline const char* to_string(Sense sense) { return sense == Sense::minimize ? "minimize" : "maximize"; }

// A number extended with +inf and -inf. Infinite values only ever encode
// infeasibility: +inf for minimization, -inf for maximization.
template <class T>
class Extended {
 public:
  enum class Kind : std::uint8_t { neg_inf, finite, pos_inf };

  constexpr Extended() = default;
  constexpr Extended(T v) : kind_(Kind::finite), value_(v) {}  // NOLINT(implicit)

  static constexpr Extended pos_inf() { return Extended(Kind::pos_inf); }
  static constexpr Extended neg_inf() { return Extended(Kind::neg_inf); }
  static constexpr Extended infeasible(Sense sense) {
    return sense == Sense::minimize ? pos_inf() : neg_inf();
  }

  constexpr bool is_finite() const { return kind_ == Kind::finite; }
  constexpr Kind kind() const { return kind_; }

  constexpr T value() const {
    if (!is_finite()) throw std::logic_error("value() of an infinite objective");
    return value_;
  }

  // Lossless for the integer objectives used here (|v| < 2^53).
  constexpr double as_double() const {
    switch (kind_) {
      case Kind::neg_inf: return -std::numeric_limits<double>::infinity();
      case Kind::pos_inf: return std::numeric_limits<double>::infinity();
      default: return static_cast<double>(value_);
    }
  }

  friend constexpr Extended operator+(const Extended& a, const Extended& b) {
    if (a.is_finite() && b.is_finite()) return Extended(a.value_ + b.value_);
    if (!a.is_finite() && !b.is_finite() && a.kind_ != b.kind_)
      throw std::logic_error("adding +inf and -inf");
    return a.is_finite() ? b : a;
  }
  Extended& operator+=(const Extended& other) { return *this = *this + other; }

  friend constexpr bool operator==(const Extended& a, const Extended& b) {
    return a.kind_ == b.kind_ && (!a.is_finite() || a.value_ == b.value_);
  }

  friend constexpr std::partial_ordering operator<=>(const Extended& a, const Extended& b) {
    if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
    if (!a.is_finite()) return std::partial_ordering::equivalent;
    return a.value_ <=> b.value_;
  }

  std::string str() const {
    switch (kind_) {
      case Kind::neg_inf: return "-inf";
      case Kind::pos_inf: return "inf";
      default: return std::to_string(value_);
    }
  }

 private:
  constexpr explicit Extended(Kind k) : kind_(k) {}
  Kind kind_ = Kind::finite;
  T value_{};
};

using IntValue = Extended<std::int64_t>;
using RealValue = Extended<double>;

// True iff `a` is strictly preferable to `b`.
template <class T>
constexpr bool better(const Extended<T>& a, const Extended<T>& b, Sense sense) {
  return sense == Sense::minimize ? a < b : a > b;
}

// Ties within `tol` count as equal; used for floating-point objectives.
inline bool better(const RealValue& a, const RealValue& b, Sense sense, double tol) {
  if (a.is_finite() && b.is_finite()) {
    return sense == Sense::minimize ? a.value() < b.value() - tol : a.value() > b.value() + tol;
  }
  return better(a, b, sense);
}

inline RealValue to_real(const IntValue& v) {
  switch (v.kind()) {
    case IntValue::Kind::neg_inf: return RealValue::neg_inf();
    case IntValue::Kind::pos_inf: return RealValue::pos_inf();
    default: return RealValue(static_cast<double>(v.value()));
  }
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Extended<T>& v) {
  return os << v.str();
}

}  // namespace predperm
