#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace helirad {

//! A real number that may instead be the divergent value -infinity.
//!
//! Collective Lamb shifts diverge logarithmically at kappa = +-1 and at the
//! origin of the Bessel Y / K kernels. Those points are carried explicitly as
//! a sentinel state so that downstream code can treat them
//! deliberately instead of letting a raw -inf leak through arithmetic.
class ExtendedReal {
public:
  constexpr ExtendedReal() = default;
  constexpr explicit ExtendedReal(double v) : m_value(v) {}

  static constexpr ExtendedReal neg_inf() {
    ExtendedReal e;
    e.m_divergent = true;
    return e;
  }

  constexpr bool is_neg_inf() const { return m_divergent; }
  constexpr bool is_finite() const { return !m_divergent; }

  //! The finite value; throws if the sentinel is set.
  double value() const {
    if (m_divergent)
      throw std::domain_error("ExtendedReal: value() on -inf sentinel");
    return m_value;
  }

  //! IEEE view, for plotting or comparisons only.
  double as_double() const {
    return m_divergent ? -HUGE_VAL : m_value;
  }

  //! Sum where a divergent summand makes the total divergent.
  friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
    if (a.m_divergent || b.m_divergent)
      return neg_inf();
    return ExtendedReal(a.m_value + b.m_value);
  }
  ExtendedReal &operator+=(ExtendedReal o) { return *this = *this + o; }

  //! Scaling by a strictly positive factor keeps the sentinel.
  friend ExtendedReal scale(double positive_factor, ExtendedReal a) {
    if (a.m_divergent)
      return a;
    return ExtendedReal(positive_factor * a.m_value);
  }

  friend bool operator<(ExtendedReal a, ExtendedReal b) {
    if (a.m_divergent)
      return !b.m_divergent;
    if (b.m_divergent)
      return false;
    return a.m_value < b.m_value;
  }

  friend bool operator==(ExtendedReal a, ExtendedReal b) {
    if (a.m_divergent || b.m_divergent)
      return a.m_divergent == b.m_divergent;
    return a.m_value == b.m_value;
  }

private:
  double m_value = 0.0;
  bool m_divergent = false;
};

//! Shortest round-trippable text: 17 significant digits, "-inf" for the
//! sentinel. Uses the C locale conventions of printf ('.' separator).
inline std::string format_real(double x) {
  if (std::isinf(x))
    return x < 0 ? "-inf" : "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string format_real(ExtendedReal x) {
  return x.is_neg_inf() ? std::string("-inf") : format_real(x.value());
}

} // namespace helirad
