#include <qfim/io.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace qfim {
namespace io {

using nlohmann::json;

namespace {

imaging::Axis parse_axis(const std::string& s) {
  if (s == "x") return imaging::Axis::X;
  if (s == "y") return imaging::Axis::Y;
  if (s == "z") return imaging::Axis::Z;
  throw ParseError("scene: axis must be one of x, y, z, got '" + s + "'");
}

Index parse_source_index(const json& j, Index num_sources) {
  if (!j.is_number_integer()) throw ParseError("scene: source index must be an integer");
  const Index one_based = j.get<Index>();
  if (one_based < 1 || one_based > num_sources) {
    throw ParseError("scene: source index " + std::to_string(one_based) +
                     " out of range (1.." + std::to_string(num_sources) + ")");
  }
  return one_based - 1;
}

json matrix_to_json(const RMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

RMatrix matrix_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected array of rows");
  const Index rows = static_cast<Index>(j.size());
  Index cols = rows == 0 ? 0 : static_cast<Index>(j.at(0).size());
  RMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = j.at(i);
    if (static_cast<Index>(row.size()) != cols) {
      throw ParseError(std::string(what) + ": ragged matrix");
    }
    for (Index k = 0; k < cols; ++k) m(i, k) = row.at(k).get<double>();
  }
  return m;
}

}  // namespace

SceneFile parse_scene(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("scene: invalid JSON: ") + e.what());
  }
  try {
    SceneFile out;
    out.schema_version = root.at("schema_version").get<int>();
    if (out.schema_version != 1) {
      throw ParseError("scene: unsupported schema_version " +
                       std::to_string(out.schema_version));
    }
    const json& sc = root.at("scene");
    out.scene.k = sc.at("k").get<double>();
    out.scene.z0 = sc.at("z0").get<double>();
    for (const json& s : sc.at("sources")) {
      out.scene.sources.push_back({s.at("x").get<double>(), s.at("y").get<double>(),
                                   s.at("z").get<double>(),
                                   s.at("intensity").get<double>()});
    }
    for (const json& c : sc.at("collection_points")) {
      out.scene.collection_points.push_back({c.at("v").get<double>(),
                                             c.at("w").get<double>()});
    }
    const Index ns = out.scene.num_sources();
    if (sc.contains("estimate")) {
      for (const json& e : sc.at("estimate")) {
        const std::string type = e.at("type").get<std::string>();
        if (type == "preset") {
          const std::string name = e.at("name").get<std::string>();
          if (name != "two_source_seven") {
            throw ParseError("scene: unknown preset '" + name + "'");
          }
          if (ns != 2) throw ParseError("scene: two_source_seven needs two sources");
          out.two_source_seven_preset = true;
        } else if (type == "position") {
          out.scene.estimate.push_back(imaging::ParamSpec::position(
              parse_source_index(e.at("source"), ns), parse_axis(e.at("axis"))));
        } else if (type == "intensity") {
          out.scene.estimate.push_back(
              imaging::ParamSpec::intensity(parse_source_index(e.at("source"), ns)));
        } else if (type == "combo") {
          std::vector<imaging::PositionTerm> terms;
          for (const json& t : e.at("terms")) {
            terms.push_back({parse_source_index(t.at("source"), ns),
                             parse_axis(t.at("axis")), t.at("coeff").get<double>()});
          }
          out.scene.estimate.push_back(
              imaging::ParamSpec::combo(std::move(terms), e.at("name").get<std::string>()));
        } else {
          throw ParseError("scene: unknown estimate type '" + type + "'");
        }
      }
    }
    if (out.two_source_seven_preset && !out.scene.estimate.empty()) {
      throw ParseError("scene: the preset cannot be mixed with other estimates");
    }
    if (root.contains("options")) {
      const json& op = root.at("options");
      if (op.contains("rank_tol")) out.options.rank_tol = op.at("rank_tol").get<double>();
      if (op.contains("solve_tol")) out.options.solve_tol = op.at("solve_tol").get<double>();
      if (op.contains("compare_closed_form")) {
        out.options.compare_closed_form = op.at("compare_closed_form").get<bool>();
      }
      if (op.contains("sweep")) {
        SweepSpec sweep;
        sweep.parameter = op.at("sweep").at("parameter").get<std::string>();
        for (const json& v : op.at("sweep").at("values")) {
          sweep.values.push_back(v.get<double>());
        }
        out.options.sweep = std::move(sweep);
      }
    }
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("scene: ") + e.what());
  }
}

SceneFile load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scene file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scene(ss.str());
}

bool ReportFile::operator==(const ReportFile& other) const {
  const auto mat_eq = [](const RMatrix& a, const RMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
  };
  const auto opt_mat_eq = [&](const std::optional<RMatrix>& a,
                              const std::optional<RMatrix>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a.has_value() || mat_eq(*a, *b);
  };
  return schema_version == other.schema_version && labels == other.labels &&
         mat_eq(H, other.H) && mat_eq(Gamma, other.Gamma) &&
         opt_mat_eq(closed_form_H, other.closed_form_H) &&
         opt_mat_eq(closed_form_Gamma, other.closed_form_Gamma) &&
         closed_form_max_rel_dev == other.closed_form_max_rel_dev &&
         compatibility == other.compatibility && diagnostics == other.diagnostics &&
         rank_tol == other.rank_tol && warnings == other.warnings;
}

std::string emit_report(const ReportFile& report) {
  json root;
  root["schema_version"] = report.schema_version;
  root["labels"] = report.labels;
  root["H"] = matrix_to_json(report.H);
  root["Gamma"] = matrix_to_json(report.Gamma);
  if (report.closed_form_H) root["closed_form_H"] = matrix_to_json(*report.closed_form_H);
  if (report.closed_form_Gamma) {
    root["closed_form_Gamma"] = matrix_to_json(*report.closed_form_Gamma);
  }
  if (report.closed_form_max_rel_dev) {
    root["closed_form_max_rel_dev"] = *report.closed_form_max_rel_dev;
  }
  json compat = json::array();
  for (const PairFlagGroup& p : report.compatibility) {
    compat.push_back({{"mu", p.mu},
                      {"nu", p.nu},
                      {"commutation", p.commutation},
                      {"independence", p.independence}});
  }
  root["compatibility"] = std::move(compat);
  json diags = json::array();
  for (const ParameterDiagGroup& d : report.diagnostics) {
    diags.push_back({{"label", d.label},
                     {"cond_C", d.cond_C},
                     {"cond_D", d.cond_D},
                     {"lyapunov_residual", d.lyapunov_residual},
                     {"drho_scale", d.drho_scale}});
  }
  root["diagnostics"] = {{"rank_tol", report.rank_tol}, {"per_parameter", std::move(diags)}};
  root["warnings"] = report.warnings;
  return root.dump(2) + "\n";
}

ReportFile parse_report(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("report: invalid JSON: ") + e.what());
  }
  try {
    ReportFile out;
    out.schema_version = root.at("schema_version").get<int>();
    out.labels = root.at("labels").get<std::vector<std::string>>();
    out.H = matrix_from_json(root.at("H"), "H");
    out.Gamma = matrix_from_json(root.at("Gamma"), "Gamma");
    if (root.contains("closed_form_H")) {
      out.closed_form_H = matrix_from_json(root.at("closed_form_H"), "closed_form_H");
    }
    if (root.contains("closed_form_Gamma")) {
      out.closed_form_Gamma =
          matrix_from_json(root.at("closed_form_Gamma"), "closed_form_Gamma");
    }
    if (root.contains("closed_form_max_rel_dev")) {
      out.closed_form_max_rel_dev = root.at("closed_form_max_rel_dev").get<double>();
    }
    for (const json& p : root.at("compatibility")) {
      out.compatibility.push_back({p.at("mu").get<Index>(), p.at("nu").get<Index>(),
                                   p.at("commutation").get<bool>(),
                                   p.at("independence").get<bool>()});
    }
    out.rank_tol = root.at("diagnostics").at("rank_tol").get<double>();
    for (const json& d : root.at("diagnostics").at("per_parameter")) {
      out.diagnostics.push_back({d.at("label").get<std::string>(),
                                 d.at("cond_C").get<double>(),
                                 d.at("cond_D").get<double>(),
                                 d.at("lyapunov_residual").get<double>(),
                                 d.at("drho_scale").get<double>()});
    }
    out.warnings = root.at("warnings").get<std::vector<std::string>>();
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

std::string sweep_csv(const std::vector<std::string>& labels,
                      const std::vector<double>& values,
                      const std::vector<RMatrix>& hs, const std::vector<RMatrix>& gammas) {
  const Index n = static_cast<Index>(labels.size());
  std::ostringstream out;
  out.precision(17);
  out << "value";
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      out << ",H[" << labels[i] << "][" << labels[j] << "]";
    }
  }
  out << ",max_abs_gamma\n";
  for (std::size_t row = 0; row < values.size(); ++row) {
    out << values[row];
    for (Index i = 0; i < n; ++i) {
      for (Index j = i; j < n; ++j) out << "," << hs[row](i, j);
    }
    out << "," << max_abs(gammas[row]) << "\n";
  }
  return out.str();
}

}  // namespace io
}  // namespace qfim
