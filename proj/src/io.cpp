#include "quartic_sos/io.hpp"

namespace quartic_sos {

namespace {

std::string monomial_text(const Exponent& e) {
  static const char* names[] = {"x", "y", "z"};
  std::string out;
  for (int v = 0; v < 3; ++v) {
    if (e[v] == 0) continue;
    if (!out.empty()) out += "*";
    out += names[v];
    if (e[v] > 1) out += "^" + std::to_string(e[v]);
  }
  return out.empty() ? "1" : out;
}

void require(bool condition, const std::string& what) {
  if (!condition) throw JsonFormatError(what);
}

}  // namespace

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
          "expected a number or an [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json sym_matrix_to_json(const Matrix6c& m) {
  Json out = Json::array();
  for (const Complex& c : from_dense(m).entries()) out.push_back(complex_to_json(c));
  return out;
}

Matrix6c sym_matrix_from_json(const Json& j) {
  require(j.is_array() && j.size() == SymMatrix6<Complex>::kEntries,
          "symmetric matrix must have 21 entries");
  SymMatrix6<Complex> s;
  for (int k = 0; k < SymMatrix6<Complex>::kEntries; ++k) s.entries()[k] = complex_from_json(j[k]);
  return to_dense(s);
}

Json lambda_to_json(const LambdaVector& lambda) {
  Json out = Json::array();
  for (int i = 0; i < 6; ++i) out.push_back(complex_to_json(lambda(i)));
  return out;
}

LambdaVector lambda_from_json(const Json& j) {
  require(j.is_array() && j.size() == 6, "lambda must have 6 entries");
  LambdaVector out;
  for (int i = 0; i < 6; ++i) out(i) = complex_from_json(j[i]);
  return out;
}

Json config_to_json(const SolveConfig& c) {
  return Json{{"restarts", c.restarts},
              {"newton_max_iters", c.newton_max_iters},
              {"convergence_tol", c.convergence_tol},
              {"dedup_tol", c.dedup_tol},
              {"real_tol", c.real_tol},
              {"monodromy_loops", c.monodromy_loops},
              {"monodromy_stall", c.monodromy_stall}};
}

Json counts_to_json(const Counts& c) {
  return Json{{"complex", c.complex_total}, {"real", c.real_total}, {"psd", c.psd_total}};
}

Json solution_set_to_json(const SolutionSet& set) {
  Json points = Json::array();
  for (const GramPoint& p : set.points) {
    Json sig = nullptr;
    if (p.signature) sig = Json::array({p.signature->positive, p.signature->negative});
    points.push_back(Json{{"lambda", lambda_to_json(p.lambda)},
                          {"rank", p.numerical_rank},
                          {"reality", p.reality == Reality::Real ? "real" : "complex"},
                          {"signature", sig},
                          {"residual", p.kernel_residual}});
  }
  return Json{{"points", points},
              {"counts", counts_to_json(set.counts)},
              {"budget_exhausted", set.budget_exhausted},
              {"config", config_to_json(set.config)},
              {"seed", set.config.master_seed}};
}

Json representation_to_json(const Representation& rep, bool basepoint_free) {
  Json forms = Json::array();
  for (const auto& q : rep.forms) {
    Json coeffs = Json::array();
    for (const Complex& c : q.c) coeffs.push_back(complex_to_json(c));
    forms.push_back(coeffs);
  }
  return Json{{"signs", rep.signs},
              {"forms", forms},
              {"class_lambda", lambda_to_json(rep.class_lambda)},
              {"residual", rep.residual},
              {"basepoint_free", basepoint_free}};
}

Representation representation_from_json(const Json& j) {
  require(j.is_object(), "certificate must be an object");
  require(j.contains("signs") && j["signs"].is_array() && j["signs"].size() == 3,
          "certificate needs three signs");
  require(j.contains("forms") && j["forms"].is_array() && j["forms"].size() == 3,
          "certificate needs three forms");
  Representation rep;
  for (int k = 0; k < 3; ++k) {
    const Json& s = j["signs"][k];
    require(s.is_number_integer() && (s.get<int>() == 1 || s.get<int>() == -1),
            "signs must be +1 or -1");
    rep.signs[k] = s.get<int>();
    const Json& form = j["forms"][k];
    require(form.is_array() && form.size() == 6, "each form needs 6 coefficients");
    for (int i = 0; i < 6; ++i) rep.forms[k].c[i] = complex_from_json(form[i]);
  }
  if (j.contains("class_lambda")) rep.class_lambda = lambda_from_json(j["class_lambda"]);
  if (j.contains("residual") && j["residual"].is_number()) rep.residual = j["residual"].get<double>();
  return rep;
}

std::vector<Representation> certificates_from_json(const Json& j) {
  std::vector<Representation> out;
  const Json* list = &j;
  if (j.is_object() && j.contains("certificates")) list = &j["certificates"];
  if (list->is_array()) {
    for (const Json& c : *list) out.push_back(representation_from_json(c));
  } else {
    out.push_back(representation_from_json(*list));
  }
  require(!out.empty(), "no certificates found");
  return out;
}

Json quartic_to_json(const TernaryQuartic& f) {
  Json coeffs = Json::object();
  for (std::size_t k = 0; k < kQuarticMonomials.size(); ++k) {
    if (f.coeffs()[k] != 0) coeffs[monomial_text(kQuarticMonomials[k])] = f.coeffs()[k].get_str();
  }
  return Json{{"form", to_string(f)}, {"coefficients", coeffs}};
}

TernaryQuartic quartic_from_json(const Json& j) {
  const Json* map = &j;
  if (j.is_object() && j.contains("coefficients")) map = &j["coefficients"];
  require(map->is_object(), "coefficient map must be an object");
  Polynomial p;
  for (const auto& [key, value] : map->items()) {
    mpq_class c;
    if (value.is_string()) {
      c = parse_rational(value.get<std::string>());
    } else if (value.is_number_integer()) {
      c = mpq_class(value.get<long>());
    } else if (value.is_number()) {
      c = mpq_class(value.get<double>());
    } else {
      throw JsonFormatError("coefficient of " + key + " must be a number or a string");
    }
    p += parse_polynomial(key) * c;
  }
  return TernaryQuartic::from_polynomial(p);
}

}  // namespace quartic_sos
