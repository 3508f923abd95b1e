#pragma once

#include <gmpxx.h>

#include <array>
#include <complex>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace quartic_sos {

using Complex = std::complex<double>;

/// Exponent triple (a, b, c) of the monomial x^a y^b z^c.
using Exponent = std::array<int, 3>;

/// Sparse polynomial in x, y, z with exact rational coefficients.
///
/// Only used for the small degrees this project needs (quartics, their
/// gradients, and the degree-7 products of the resultant construction).
class Polynomial {
 public:
  using Terms = std::map<Exponent, mpq_class>;

  Polynomial() = default;
  explicit Polynomial(const mpq_class& constant);
  static Polynomial variable(int index);
  static Polynomial monomial(const Exponent& e, const mpq_class& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  mpq_class coeff(const Exponent& e) const;

  /// Degree of every term, or -1 if the polynomial is zero or mixed-degree.
  int homogeneous_degree() const;
  int max_degree() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const mpq_class& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const mpq_class& s) { return a *= s; }
  Polynomial operator-() const;
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  Polynomial pow(unsigned exponent) const;
  Polynomial derivative(int var) const;

  /// Substitutes x_i -> sum_j a[i][j] x_j.
  Polynomial substitute_linear(const std::array<std::array<mpq_class, 3>, 3>& a) const;

 private:
  void add_term(const Exponent& e, const mpq_class& c);
  Terms terms_;
};

/// The 15 degree-4 monomials in graded-lexicographic order (x > y > z).
extern const std::array<Exponent, 15> kQuarticMonomials;

/// Quadratic monomial order m = (x^2, y^2, z^2, yz, xz, xy). Global and fixed.
extern const std::array<Exponent, 6> kQuadMonomials;

/// Index of a degree-4 exponent into kQuarticMonomials.
int quartic_index(const Exponent& e);

template <typename T>
using QuarticCoeffs = std::array<T, 15>;

/// A nonzero homogeneous degree-4 form with exact rational coefficients.
class TernaryQuartic {
 public:
  /// Throws ParseError(NotHomogeneous / ZeroForm) on invalid input.
  static TernaryQuartic from_polynomial(const Polynomial& p);
  static TernaryQuartic from_coeffs(const QuarticCoeffs<mpq_class>& c);

  const QuarticCoeffs<mpq_class>& coeffs() const { return coeffs_; }
  const mpq_class& coeff(const Exponent& e) const { return coeffs_[quartic_index(e)]; }
  Polynomial to_polynomial() const;

  QuarticCoeffs<double> to_double() const;
  /// Max-norm of the coefficient vector (as double).
  double scale() const;

  friend bool operator==(const TernaryQuartic& a, const TernaryQuartic& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  TernaryQuartic() = default;
  QuarticCoeffs<mpq_class> coeffs_;
};

/// Quadratic form as a length-6 coefficient vector in the kQuadMonomials order.
template <typename T>
struct QuadraticForm {
  std::array<T, 6> c{};

  friend bool operator==(const QuadraticForm& a, const QuadraticForm& b) = default;
};

/// Exact expanded product u * v.
template <typename T>
QuarticCoeffs<T> quad_product(const QuadraticForm<T>& u, const QuadraticForm<T>& v) {
  QuarticCoeffs<T> out{};
  for (auto& o : out) o = T(0);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      const Exponent& a = kQuadMonomials[i];
      const Exponent& b = kQuadMonomials[j];
      out[quartic_index({a[0] + b[0], a[1] + b[1], a[2] + b[2]})] += u.c[i] * v.c[j];
    }
  }
  return out;
}

template <typename T>
QuarticCoeffs<T> quad_square(const QuadraticForm<T>& u) {
  return quad_product(u, u);
}

template <typename T>
T eval_quartic(const QuarticCoeffs<T>& f, const std::array<T, 3>& p) {
  T sum(0);
  for (std::size_t k = 0; k < 15; ++k) {
    const Exponent& e = kQuarticMonomials[k];
    T term = f[k];
    for (int v = 0; v < 3; ++v) {
      for (int r = 0; r < e[v]; ++r) term *= p[v];
    }
    sum += term;
  }
  return sum;
}

inline mpq_class eval_quartic(const TernaryQuartic& f, const std::array<mpq_class, 3>& p) {
  return eval_quartic<mpq_class>(f.coeffs(), p);
}

/// Formal partial derivatives (f_x, f_y, f_z).
std::array<Polynomial, 3> gradient(const TernaryQuartic& f);

/// Exact product of the form with the change of variables x -> A x.
TernaryQuartic change_variables(const TernaryQuartic& f,
                                 const std::array<std::array<mpq_class, 3>, 3>& a);

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, NotHomogeneous, ZeroForm };
  ParseError(Kind kind, std::size_t position, const std::string& message)
      : std::runtime_error(message), kind_(kind), position_(position) {}
  Kind kind() const { return kind_; }
  std::size_t position() const { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

/// Parses an arithmetic expression in x, y, z: integer/decimal/rational
/// literals, `+ - * /`, `^` with nonnegative integer exponents, parentheses,
/// and juxtaposition as multiplication. Division only by constants.
Polynomial parse_polynomial(std::string_view text);

TernaryQuartic parse_quartic(std::string_view text);

/// Canonical text: graded-lex monomials, coefficients as "num/den".
std::string to_string(const Polynomial& p);
std::string to_string(const TernaryQuartic& f);

/// Parses "3", "-3/4", or a decimal like "1.25" into an exact rational.
mpq_class parse_rational(std::string_view text);

}  // namespace quartic_sos
