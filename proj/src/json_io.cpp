#include "decomodes/json_io.hpp"

namespace decomodes::io {

namespace {

Matrix4d read_block(const Json& rows, const char* name) {
  if (!rows.is_array() || rows.size() != 4)
    throw DomainError(std::string("matrix field '") + name + "' must be a 4x4 array");
  Matrix4d m;
  for (int i = 0; i < 4; ++i) {
    const Json& row = rows[i];
    if (!row.is_array() || row.size() != 4)
      throw DomainError(std::string("matrix field '") + name + "' must be a 4x4 array");
    for (int j = 0; j < 4; ++j) {
      if (!row[j].is_number()) throw DomainError(std::string("non-numeric entry in '") + name + "'");
      m(i, j) = row[j].get<double>();
    }
  }
  return m;
}

}  // namespace

Json real_matrix_json(const Matrix4d& m) {
  Json rows = Json::array();
  for (int i = 0; i < 4; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 4; ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Matrix4d real_matrix_from_json(const Json& j) { return read_block(j, "matrix"); }

Json to_json(const Matrix4c& m) {
  return Json{{"dim", 4}, {"re", real_matrix_json(m.real())}, {"im", real_matrix_json(m.imag())}};
}

Json to_json(const DensityMatrix& rho) { return to_json(rho.matrix()); }

Json to_json(const MeasureReport& report) {
  return Json{{"mixedness", report.mixedness},
              {"concurrence", report.concurrence},
              {"wootters_roots", report.wootters_roots}};
}

Json to_json(const KrausSet& k) {
  Json ops = Json::array();
  for (const auto& m : k.operators()) ops.push_back(to_json(m));
  return Json{{"weight", k.weight()}, {"operators", ops}};
}

Json to_json(const EnsembleEstimate& e, const FieldSetup& setup) {
  return Json{{"mean", to_json(e.mean)},
              {"stderr_re", real_matrix_json(e.stderr_re)},
              {"stderr_im", real_matrix_json(e.stderr_im)},
              {"samples", e.samples},
              {"seed", e.seed},
              {"sigma", setup.sigma},
              {"mode", to_string(setup.mode)},
              {"variant", to_string(setup.variant)}};
}

Json to_json(const std::vector<CountRecord>& records) {
  Json out = Json::array();
  for (const auto& r : records)
    out.push_back(Json{{"spin", to_string(r.setting.spin)},
                       {"path", to_string(r.setting.path)},
                       {"counts", r.counts},
                       {"shots", r.shots}});
  return out;
}

Json to_json(const Reconstruction& r) {
  return Json{{"estimate", to_json(r.estimate)}, {"frobenius_residual", r.frobenius_residual}};
}

Matrix4c matrix_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("matrix JSON must be an object");
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<int>() != 4)
    throw DomainError("matrix JSON must have \"dim\": 4");
  if (!j.contains("re") || !j.contains("im")) throw DomainError("matrix JSON needs \"re\" and \"im\"");
  const Matrix4d re = read_block(j["re"], "re");
  const Matrix4d im = read_block(j["im"], "im");
  return re.cast<Complex>() + kI * im.cast<Complex>();
}

DensityMatrix density_from_json(const Json& j, Repair repair) {
  auto report = validate(matrix_from_json(j), repair);
  if (!report.ok()) throw ValidationError(report.describe());
  return *report.state;
}

MeasureReport measure_report_from_json(const Json& j) {
  try {
    MeasureReport r{};
    r.mixedness = j.at("mixedness").get<double>();
    r.concurrence = j.at("concurrence").get<double>();
    r.wootters_roots = j.at("wootters_roots").get<std::array<double, 4>>();
    return r;
  } catch (const Json::exception& e) {
    throw DomainError(std::string("malformed measure report: ") + e.what());
  }
}

KrausSet kraus_set_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("operators") || !j["operators"].is_array())
    throw DomainError("Kraus JSON needs an \"operators\" array");
  std::vector<Matrix4c> ops;
  for (const auto& m : j["operators"]) ops.push_back(matrix_from_json(m));
  const double w = j.value("weight", 0.0);
  return KrausSet::custom(std::move(ops), w);
}

std::vector<CountRecord> counts_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("counts JSON must be an array");
  std::vector<CountRecord> out;
  try {
    for (const auto& r : j) {
      CountRecord rec{{parse_pauli_axis(r.at("spin").get<std::string>()),
                       parse_pauli_axis(r.at("path").get<std::string>())},
                      r.at("counts").get<std::array<std::uint64_t, 4>>(),
                      r.at("shots").get<std::uint64_t>()};
      std::uint64_t total = 0;
      for (auto c : rec.counts) total += c;
      if (total != rec.shots || rec.shots == 0) throw DomainError("counts must sum to shots >= 1");
      out.push_back(rec);
    }
  } catch (const Json::exception& e) {
    throw DomainError(std::string("malformed counts record: ") + e.what());
  }
  return out;
}

}  // namespace decomodes::io
