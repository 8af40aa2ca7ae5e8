#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "decomodes/interferometer.hpp"
#include "decomodes/kraus.hpp"
#include "decomodes/measures.hpp"
#include "decomodes/tomography.hpp"

// JSON documents shared by the CLI and the Python bindings.
//   matrix:          {"dim": 4, "re": [[..4..] x4], "im": [[..4..] x4]}, row-major
//   measure report:  {"mixedness", "concurrence", "wootters_roots"}
//   Kraus set:       {"weight", "operators": [matrix, ...]}
//   ensemble:        {"mean", "stderr_re", "stderr_im", "samples", "seed", "sigma", "mode", "variant"}
//   counts:          [{"spin", "path", "counts": [n++, n+-, n-+, n--], "shots"}, ...]
//   reconstruction:  {"estimate", "frobenius_residual"}

namespace decomodes::io {

using Json = nlohmann::json;

Json to_json(const Matrix4c& m);
Json to_json(const DensityMatrix& rho);
Json to_json(const MeasureReport& report);
Json to_json(const KrausSet& k);
Json to_json(const EnsembleEstimate& e, const FieldSetup& setup);
Json to_json(const std::vector<CountRecord>& records);
Json to_json(const Reconstruction& r);

/// Throws DomainError on a malformed document.
Matrix4c matrix_from_json(const Json& j);
DensityMatrix density_from_json(const Json& j, Repair repair = Repair::none);
MeasureReport measure_report_from_json(const Json& j);
KrausSet kraus_set_from_json(const Json& j);
std::vector<CountRecord> counts_from_json(const Json& j);

Json real_matrix_json(const Matrix4d& m);
Matrix4d real_matrix_from_json(const Json& j);

}  // namespace decomodes::io
