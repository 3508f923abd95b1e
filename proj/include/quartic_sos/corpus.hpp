#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "quartic_sos/form.hpp"

namespace quartic_sos {

using LinearMap = std::array<std::array<mpq_class, 3>, 3>;

/// p^2 + q^2 + r^2 + (x^2 + y^2 + z^2)^2 / 100 for random quadratics with
/// coefficients a/b, a in [-3, 3], b in [1, 3]; redrawn until the curve is smooth.
TernaryQuartic random_nonnegative_quartic(std::uint64_t seed, int index);

/// Random invertible map with entries a/b, a in [-3, 3], b in [1, 2].
LinearMap random_change_of_variables(std::uint64_t seed, int index);

struct CorpusEntry {
  std::string name;
  TernaryQuartic form;
};

/// The Fermat quartic followed by `count` random non-negative smooth quartics.
std::vector<CorpusEntry> build_corpus(std::uint64_t seed, int count);

}  // namespace quartic_sos
