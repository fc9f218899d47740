#pragma once

#include <qfim/imaging.hpp>

#include <optional>

namespace qfim {
namespace io {

class ParseError : public QfimError {
 public:
  using QfimError::QfimError;
};

struct SweepSpec {
  std::string parameter;  // "source_scale" or "sources.<i>.<x|y|z|intensity>"
  std::vector<double> values;
};

struct SceneOptions {
  double rank_tol = kRankTol;
  double solve_tol = kSolveTol;
  bool compare_closed_form = false;
  std::optional<SweepSpec> sweep;
};

struct SceneFile {
  int schema_version = 1;
  imaging::ImagingScene scene;
  SceneOptions options;
  bool two_source_seven_preset = false;  // estimate was the centroid/relative preset
};

// Parses and validates a scene document (schema_version 1, 1-based source
// indices). Throws ParseError on malformed input.
SceneFile parse_scene(const std::string& text);
SceneFile load_scene(const std::string& path);

struct ParameterDiagGroup {
  std::string label;
  double cond_C = 1.0;
  double cond_D = 1.0;
  double lyapunov_residual = 0.0;
  double drho_scale = 0.0;
  bool operator==(const ParameterDiagGroup&) const = default;
};

struct PairFlagGroup {
  Index mu = 0, nu = 0;
  bool commutation = false;
  bool independence = false;
  bool operator==(const PairFlagGroup&) const = default;
};

struct ReportFile {
  int schema_version = 1;
  std::vector<std::string> labels;
  RMatrix H;
  RMatrix Gamma;
  std::optional<RMatrix> closed_form_H;
  std::optional<RMatrix> closed_form_Gamma;
  std::optional<double> closed_form_max_rel_dev;
  std::vector<PairFlagGroup> compatibility;
  std::vector<ParameterDiagGroup> diagnostics;
  double rank_tol = kRankTol;
  std::vector<std::string> warnings;

  bool operator==(const ReportFile& other) const;
};

// Lossless JSON round trip: doubles are emitted in shortest round-trip form,
// so parse(emit(r)) == r field for field.
std::string emit_report(const ReportFile& report);
ReportFile parse_report(const std::string& text);

// Sweep tabulation: one row per swept value with the upper triangle of H and
// max|Gamma|.
std::string sweep_csv(const std::vector<std::string>& labels,
                      const std::vector<double>& values,
                      const std::vector<RMatrix>& hs, const std::vector<RMatrix>& gammas);

}  // namespace io
}  // namespace qfim
