#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcolor/diagram.hpp"
#include "qcolor/invariants.hpp"
#include "qcolor/quandle.hpp"
#include "qcolor/solver.hpp"

namespace qc {

inline constexpr int kReportSchemaVersion = 1;

enum class Emit { text, json, csv };

struct RunConfig {
  std::filesystem::path diagram;
  std::string quandle_spec;
  SolverKind solver = SolverKind::blocks;
  std::size_t block_size = 4;
  unsigned threads = 1;
  Emit emit = Emit::text;
};

std::string to_string(SolverKind s);

// Published values known for a (link name, target spec) pair: "match", "mismatch" or
// "unverified" when nothing was published for that pair.
std::string reference_status(const std::string& link, const std::string& quandle_spec,
                             const EnhancedPolynomial& phi_e);

// The machine-readable run report; see docs/report.schema.json. Deterministic except for
// "wall_time".
nlohmann::json make_report(const LinkDiagram& d, const FiniteQuandle& q, const RunConfig& cfg,
                           const SolveReport& rep);
std::string render_text(const nlohmann::json& report);
// Header "m,a_m" then one row per nonzero coefficient.
std::string render_csv(const nlohmann::json& report);

nlohmann::json invariants_json(const InvariantRecord& r);
InvariantRecord record_from_report(const nlohmann::json& report);

// Self-contained coloring dump: the diagram, the target spec and every coloring as element ids.
nlohmann::json coloring_artifact(const LinkDiagram& d, const FiniteQuandle& q, const std::vector<Coloring>& fs);

struct VerifyOutcome {
  bool ok = true;
  std::string check;   // name of the first failing check
  std::string detail;  // first counterexample
};

// Re-checks a report against its coloring artifact: every relation on every coloring, the
// tally sum against the count, the image bound, and the tally against the colorings.
VerifyOutcome verify_artifacts(const nlohmann::json& report, const nlohmann::json& colorings);

nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace qc
