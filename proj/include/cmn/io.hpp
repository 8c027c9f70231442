// JSON and CSV serialization for states, verdicts and correlation matrices.
#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "cmn/correlation.hpp"
#include "cmn/detect.hpp"
#include "cmn/states.hpp"

namespace cmn {

/// {"dim_a": int, "dim_b": int, "matrix": [[[re, im], ...], ...]}, row-major.
nlohmann::json state_to_json(const DensityMatrix& rho);

/// Throws std::invalid_argument on a malformed document and InvalidState when
/// the matrix is not a density matrix.
DensityMatrix state_from_json(const nlohmann::json& doc);

DensityMatrix read_state_file(const std::string& path);
void write_state_file(const DensityMatrix& rho, const std::string& path);

/// {entangled, triggered_by, criteria: [{name, value, bound, violated,
/// applicable, theorem_backed}]}.
nlohmann::json verdict_to_json(const Verdict& verdict);

/// Fixed 12-significant-digit scientific notation.
std::string format_number(double x);

/// One row per row of C, no header.
void write_correlation_csv(const CorrelationMatrix& c, std::ostream& out);

}  // namespace cmn
