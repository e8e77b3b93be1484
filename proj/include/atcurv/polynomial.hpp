#pragma once

#include <Eigen/Core>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "atcurv/errors.hpp"
#include "atcurv/rational.hpp"

namespace atcurv {

inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline bool is_zero(double v) { return v == 0.0; }

inline Rational divide_by_integer(const Rational& r, long k) { return r / Rational(k); }
inline double divide_by_integer(double v, long k) { return v / static_cast<double>(k); }

template <class S>
class Polynomial;
template <class S>
bool is_zero(const Polynomial<S>& p);
template <class S>
Polynomial<S> divide_by_integer(const Polynomial<S>& p, long k);

/// Dense univariate polynomial, coefficients stored lowest degree first.
/// The highest stored coefficient is nonzero unless the polynomial is zero,
/// in which case no coefficients are stored.
template <class S>
class Polynomial {
 public:
  using Scalar = S;

  Polynomial() = default;
  Polynomial(int c) : Polynomial(S(c)) {}  // NOLINT(google-explicit-constructor)
  Polynomial(const S& c) {                 // NOLINT(google-explicit-constructor)
    if (!atcurv::is_zero(c)) coeffs_.push_back(c);
  }
  explicit Polynomial(std::vector<S> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  /// The indeterminate itself.
  static Polynomial x() { return Polynomial(std::vector<S>{S(0), S(1)}); }
  static Polynomial monomial(const S& c, int degree) {
    std::vector<S> v(static_cast<std::size_t>(degree) + 1, S(0));
    v.back() = c;
    return Polynomial(std::move(v));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<S>& coefficients() const { return coeffs_; }
  S coeff(int k) const {
    return (k < 0 || k > degree()) ? S(0) : coeffs_[static_cast<std::size_t>(k)];
  }
  S leading() const { return is_zero() ? S(0) : coeffs_.back(); }

  S eval(const S& at) const {
    S acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (degree() < 1) return {};
    std::vector<S> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * S(static_cast<long>(k));
    return Polynomial(std::move(d));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), S(0));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), S(0));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<S> out(a.coeffs_.size() + b.coeffs_.size() - 1, S(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(out));
  }
  /// Coefficientwise division by a nonzero scalar.
  friend Polynomial operator/(const Polynomial& a, const S& s) {
    std::vector<S> out = a.coeffs_;
    for (auto& c : out) c = c / s;
    return Polynomial(std::move(out));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Euclidean division; requires S to be a field.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const {
    if (divisor.is_zero()) throw InvalidArgument("Polynomial::divmod: zero divisor");
    Polynomial rem = *this;
    if (rem.degree() < divisor.degree()) return {Polynomial{}, rem};
    std::vector<S> quot(static_cast<std::size_t>(rem.degree() - divisor.degree()) + 1, S(0));
    const S lead = divisor.leading();
    while (!rem.is_zero() && rem.degree() >= divisor.degree()) {
      const int shift = rem.degree() - divisor.degree();
      const S factor = rem.leading() / lead;
      quot[static_cast<std::size_t>(shift)] = factor;
      for (int k = 0; k <= divisor.degree(); ++k)
        rem.coeffs_[static_cast<std::size_t>(k + shift)] -= factor * divisor.coeffs_[static_cast<std::size_t>(k)];
      rem.trim();
    }
    return {Polynomial(std::move(quot)), rem};
  }

  /// Human-readable form such as "t^2 - 5*t + 6", highest degree first.
  std::string to_string(const std::string& var = "x") const;

 private:
  void trim() {
    while (!coeffs_.empty() && atcurv::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<S> coeffs_;
};

template <class S>
bool is_zero(const Polynomial<S>& p) {
  return p.is_zero();
}

template <class S>
Polynomial<S> divide_by_integer(const Polynomial<S>& p, long k) {
  std::vector<S> out = p.coefficients();
  for (auto& c : out) c = divide_by_integer(c, k);
  return Polynomial<S>(std::move(out));
}

using PolyRational = Polynomial<Rational>;

namespace detail {
inline std::string scalar_text(const Rational& r) { return r.short_str(); }
inline std::string scalar_text(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}
template <class S>
std::string scalar_text(const Polynomial<S>& p) {
  return "(" + p.to_string("n") + ")";
}
inline bool negative(const Rational& r) { return r.sign() < 0; }
inline bool negative(double v) { return v < 0; }
template <class S>
bool negative(const Polynomial<S>&) {
  return false;
}
inline bool is_one(const Rational& r) { return r == Rational(1); }
inline bool is_one(double v) { return v == 1.0; }
template <class S>
bool is_one(const Polynomial<S>& p) {
  return p == Polynomial<S>(S(1));
}
}  // namespace detail

template <class S>
std::string Polynomial<S>::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    S c = coeffs_[static_cast<std::size_t>(k)];
    if (atcurv::is_zero(c)) continue;
    const bool neg = detail::negative(c);
    if (neg) c = -c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    const bool unit = detail::is_one(c);
    if (k == 0 || !unit) out += detail::scalar_text(c);
    if (k > 0) {
      if (!unit) out += "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

/// Unique polynomial of degree < points.size() through (points[i], values[i]).
template <class S>
Polynomial<S> interpolate(const std::vector<S>& points, const std::vector<S>& values) {
  if (points.size() != values.size() || points.empty())
    throw InvalidArgument("interpolate: mismatched or empty samples");
  Polynomial<S> result;
  for (std::size_t i = 0; i < points.size(); ++i) {
    Polynomial<S> basis(S(1));
    S denom(1);
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (i == j) continue;
      basis *= Polynomial<S>(std::vector<S>{-points[j], S(1)});
      denom *= points[i] - points[j];
    }
    result += basis * Polynomial<S>(values[i] / denom);
  }
  return result;
}

}  // namespace atcurv

namespace Eigen {
template <class S>
struct NumTraits<atcurv::Polynomial<S>> : GenericNumTraits<atcurv::Polynomial<S>> {
  using Real = atcurv::Polynomial<S>;
  using NonInteger = atcurv::Polynomial<S>;
  using Nested = atcurv::Polynomial<S>;
  using Literal = atcurv::Polynomial<S>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 16,
    AddCost = 256,
    MulCost = 1024
  };
  static inline Real epsilon() { return Real(); }
  static inline Real dummy_precision() { return Real(); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
