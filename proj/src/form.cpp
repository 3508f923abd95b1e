#include "quartic_sos/form.hpp"

#include <algorithm>
#include <vector>

namespace quartic_sos {

const std::array<Exponent, 15> kQuarticMonomials = {{
    {4, 0, 0}, {3, 1, 0}, {3, 0, 1}, {2, 2, 0}, {2, 1, 1},
    {2, 0, 2}, {1, 3, 0}, {1, 2, 1}, {1, 1, 2}, {1, 0, 3},
    {0, 4, 0}, {0, 3, 1}, {0, 2, 2}, {0, 1, 3}, {0, 0, 4},
}};

const std::array<Exponent, 6> kQuadMonomials = {{
    {2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0},
}};

int quartic_index(const Exponent& e) {
  // Graded-lex position among degree-4 monomials: block by a, then by b.
  const int a = e[0];
  const int b = e[1];
  int offset = 0;
  for (int k = 4; k > a; --k) offset += 4 - k + 1;
  return offset + (4 - a - b);
}

Polynomial::Polynomial(const mpq_class& constant) {
  add_term({0, 0, 0}, constant);
}

Polynomial Polynomial::variable(int index) {
  Exponent e{0, 0, 0};
  e[index] = 1;
  return monomial(e);
}

Polynomial Polynomial::monomial(const Exponent& e, const mpq_class& c) {
  Polynomial p;
  p.add_term(e, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent{0, 0, 0});
}

mpq_class Polynomial::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

int Polynomial::homogeneous_degree() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) {
    const int d = e[0] + e[1] + e[2];
    if (deg >= 0 && d != deg) return -1;
    deg = d;
  }
  return deg;
}

int Polynomial::max_degree() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) deg = std::max(deg, e[0] + e[1] + e[2]);
  return deg;
}

void Polynomial::add_term(const Exponent& e, const mpq_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const mpq_class& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial out;
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    out.add_term(d, c * e[var]);
  }
  return out;
}

Polynomial Polynomial::substitute_linear(const std::array<std::array<mpq_class, 3>, 3>& a) const {
  std::array<Polynomial, 3> images;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) images[i] += monomial(Exponent{j == 0, j == 1, j == 2}, a[i][j]);
  }
  Polynomial out;
  for (const auto& [e, c] : terms_) {
    Polynomial term(c);
    for (int v = 0; v < 3; ++v) term = term * images[v].pow(e[v]);
    out += term;
  }
  return out;
}

TernaryQuartic TernaryQuartic::from_polynomial(const Polynomial& p) {
  if (p.is_zero()) throw ParseError(ParseError::Kind::ZeroForm, 0, "form is identically zero");
  for (const auto& [e, c] : p.terms()) {
    if (e[0] + e[1] + e[2] != 4) {
      throw ParseError(ParseError::Kind::NotHomogeneous, 0,
                       "monomial " + to_string(Polynomial::monomial(e)) + " has degree " +
                           std::to_string(e[0] + e[1] + e[2]) + ", expected 4");
    }
  }
  TernaryQuartic f;
  for (auto& c : f.coeffs_) c = 0;
  for (const auto& [e, c] : p.terms()) f.coeffs_[quartic_index(e)] = c;
  return f;
}

TernaryQuartic TernaryQuartic::from_coeffs(const QuarticCoeffs<mpq_class>& c) {
  if (std::all_of(c.begin(), c.end(), [](const mpq_class& v) { return v == 0; })) {
    throw ParseError(ParseError::Kind::ZeroForm, 0, "form is identically zero");
  }
  TernaryQuartic f;
  f.coeffs_ = c;
  return f;
}

Polynomial TernaryQuartic::to_polynomial() const {
  Polynomial p;
  for (int k = 0; k < 15; ++k) p += Polynomial::monomial(kQuarticMonomials[k], coeffs_[k]);
  return p;
}

QuarticCoeffs<double> TernaryQuartic::to_double() const {
  QuarticCoeffs<double> out{};
  for (int k = 0; k < 15; ++k) out[k] = coeffs_[k].get_d();
  return out;
}

double TernaryQuartic::scale() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s = std::max(s, std::abs(c.get_d()));
  return s;
}

std::array<Polynomial, 3> gradient(const TernaryQuartic& f) {
  const Polynomial p = f.to_polynomial();
  return {p.derivative(0), p.derivative(1), p.derivative(2)};
}

TernaryQuartic change_variables(const TernaryQuartic& f,
                                const std::array<std::array<mpq_class, 3>, 3>& a) {
  return TernaryQuartic::from_polynomial(f.to_polynomial().substitute_linear(a));
}

namespace {

std::string monomial_text(const Exponent& e) {
  static constexpr char kNames[3] = {'x', 'y', 'z'};
  std::string out;
  for (int v = 0; v < 3; ++v) {
    if (e[v] == 0) continue;
    if (!out.empty()) out += '*';
    out += kNames[v];
    if (e[v] > 1) out += '^' + std::to_string(e[v]);
  }
  return out;
}

}  // namespace

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<Exponent, mpq_class>> terms(p.terms().begin(), p.terms().end());
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    const int da = a.first[0] + a.first[1] + a.first[2];
    const int db = b.first[0] + b.first[1] + b.first[2];
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::string out;
  for (const auto& [e, c] : terms) {
    const bool negative = c < 0;
    const mpq_class mag = abs(c);
    if (out.empty()) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    const std::string mono = monomial_text(e);
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + '*' + mono;
    }
  }
  return out;
}

std::string to_string(const TernaryQuartic& f) {
  return to_string(f.to_polynomial());
}

}  // namespace quartic_sos
