#pragma once

#include "skewgap/bounds.hpp"
#include "skewgap/csc.hpp"
#include "skewgap/curvature.hpp"
#include "skewgap/spectral.hpp"
#include "skewgap/units.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace skewgap {

using Json = nlohmann::ordered_json;

Json units_json(const PhysicalUnits& units);
PhysicalUnits units_from_json(const Json& j);

/// `{lambda, energy, labels:[{mode, parity}], residuals, units:{hbar, mass}}`
/// plus mesh_size, multiplicities and warnings. Eigenvectors are not written.
Json spectrum_json(const SpectralResult& result, const PhysicalUnits& units);

/// Reads eigenvalues, labels and residuals back (no eigenvectors). Throws
/// ParseError on missing or malformed fields.
SpectralResult spectrum_from_json(const Json& j);

Json summary_json(const GeometricSummary& geom);

/// `{surface, units, bounds:{...}, gaps, verdicts:[{bound, pass, margin}]}`.
Json bound_report_json(const BoundReport& report);

/// `{k, k0, branches:[{t_lo, t_hi, kind, degenerate}]}`.
Json branch_report_json(double k, const std::vector<CscBranch>& branches);

/// Pretty-printed with a trailing newline. Throws Error if the file cannot be written.
void write_json(const std::string& path, const Json& j);
Json read_json(const std::string& path);

} // namespace skewgap
