#pragma once

#include <json.hpp>

#include <vector>

#include "quartic_sos/classify.hpp"
#include "quartic_sos/curve.hpp"
#include "quartic_sos/solver.hpp"

namespace quartic_sos {

using Json = nlohmann::ordered_json;

class JsonFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Complex scalars are [re, im] pairs.
Json complex_to_json(Complex c);
Complex complex_from_json(const Json& j);

/// The 21 upper-triangle entries in row-major order.
Json sym_matrix_to_json(const Matrix6c& m);
Matrix6c sym_matrix_from_json(const Json& j);

Json lambda_to_json(const LambdaVector& lambda);
LambdaVector lambda_from_json(const Json& j);

Json config_to_json(const SolveConfig& config);
Json counts_to_json(const Counts& counts);
Json solution_set_to_json(const SolutionSet& set);

/// {signs, forms, class_lambda, residual, basepoint_free}.
Json representation_to_json(const Representation& rep, bool basepoint_free);
Representation representation_from_json(const Json& j);

/// Accepts one certificate object, {"certificates": [...]}, or a bare array.
std::vector<Representation> certificates_from_json(const Json& j);

/// {"form": canonical text, "coefficients": {"x^2*y^2": "num/den", ...}}.
Json quartic_to_json(const TernaryQuartic& f);

/// Reads a coefficient map {"<monomial>": number or "num/den", ...}, either
/// at the top level or under "coefficients".
TernaryQuartic quartic_from_json(const Json& j);

}  // namespace quartic_sos
