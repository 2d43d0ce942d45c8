#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "qcopula/copula.hpp"
#include "qcopula/matcore.hpp"
#include "qcopula/states.hpp"

namespace qcopula {

using json = nlohmann::json;

// Files may carry truncated decimals, so parsing is looser than kStateTol.
inline constexpr double kFileStateTol = 1e-8;

// Complex matrices: array of rows, each row an array of [re, im] pairs.
json complex_matrix_to_json(const CMatrix& a);
CMatrix complex_matrix_from_json(const json& j, const std::string& what);

// Real matrices: array of rows of numbers.
json real_matrix_to_json(const RMatrix& a);
RMatrix real_matrix_from_json(const json& j, const std::string& what);
json real_vector_to_json(const RVector& v);

/// {"dims": [n, m], "matrix": [...]}.
json density_to_json(const DensityMatrix& rho);

/// Parses the density-matrix schema. Structural problems raise ParseError;
/// a violated state invariant (dims, Hermitian, trace, PSD) raises
/// InvalidState naming it. Accepted matrices are Hermitized and
/// trace-renormalized.
DensityMatrix density_from_json(const json& j, double tol = kFileStateTol);

json config_to_json(const SolverConfig& cfg);
/// Overrides the fields of `base` present in `j`; unknown keys are rejected.
SolverConfig config_from_json(const json& j, SolverConfig base = {});

/// Deterministic serialization: sorted keys, floats as %.17g, arrays of
/// scalars kept on one line.
std::string dump_json(const json& j, int indent = 2);

}  // namespace qcopula
