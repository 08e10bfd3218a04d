#pragma once

#include <string>

#include "qtda/pipeline.hpp"
#include "qtda/polynomial.hpp"

namespace qtda::report {

/// Key order is fixed and floats print in shortest round-trip form, so equal reports are equal bytes.
enum class Sections { Classical, Quantum, Both };

/// Both adds the simulated-vs-classical discrepancy fields.
std::string to_json(const EstimationReport& r, Sections sections);

/// Basis, parity, coefficients, parameters and the certified bands.
std::string polynomial_json(const BoundedPolynomial& p);

}  // namespace qtda::report
