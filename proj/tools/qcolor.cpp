// Command-line driver: compute, verify, compare, generate-ln.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcolor/error.hpp"
#include "qcolor/family.hpp"
#include "qcolor/report.hpp"

#ifndef QC_DATA_DIR
#define QC_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw qc::InputError("cannot write " + path);
  out << text;
}

int run_compute(const qc::RunConfig& cfg, const std::string& out_path, const std::string& colorings_path,
                bool block_size_given) {
  const qc::LinkDiagram d = qc::load_diagram(cfg.diagram);
  const qc::FiniteQuandle q = qc::parse_quandle_spec(cfg.quandle_spec);
  if (cfg.solver == qc::SolverKind::brute && block_size_given) {
    std::cerr << "warning: --block-size has no effect with the brute-force solver\n";
  }
  qc::SolveOptions opt;
  opt.solver = cfg.solver;
  opt.block_size = cfg.block_size;
  opt.threads = cfg.threads;
  const qc::SolveResult res = qc::solve(qc::presentation(d), q, opt);
  const json report = qc::make_report(d, q, cfg, res.report);

  switch (cfg.emit) {
    case qc::Emit::json:
      write_output(report.dump(2) + "\n", out_path);
      break;
    case qc::Emit::csv:
      write_output(qc::render_csv(report), out_path);
      break;
    case qc::Emit::text:
      write_output(qc::render_text(report), out_path);
      break;
  }
  if (!colorings_path.empty()) write_output(qc::coloring_artifact(d, q, res.colorings).dump() + "\n", colorings_path);
  return 0;
}

int run_verify(const std::string& report_path, const std::string& colorings_path) {
  const auto outcome = qc::verify_artifacts(qc::read_json_file(report_path), qc::read_json_file(colorings_path));
  if (outcome.ok) {
    std::cout << "pass\n";
    return 0;
  }
  std::cout << "FAIL [" << outcome.check << "] " << outcome.detail << "\n";
  return static_cast<int>(outcome.check == "residual" ? qc::ExitCode::residual_failure : qc::ExitCode::failure);
}

int run_compare(const std::string& a_path, const std::string& b_path) {
  const auto a = qc::record_from_report(qc::read_json_file(a_path));
  const auto b = qc::record_from_report(qc::read_json_file(b_path));
  std::cout << qc::to_string(qc::separates(a, b)) << "\n";
  return 0;
}

int run_generate(std::size_t n, const std::string& out_path, const std::string& l1, const std::string& l2) {
  const auto core = qc::extract_core(qc::load_diagram(l1), qc::load_diagram(l2));
  write_output(qc::serialize_diagram(qc::generate_ln(core, n)), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quandle coloring invariants of oriented link diagrams"};
  app.require_subcommand(1);

  qc::RunConfig cfg;
  std::string diagram, out_path, colorings_path;
  auto* compute = app.add_subcommand("compute", "Solve for all colorings and report the invariants");
  compute->add_option("diagram", diagram, "Diagram JSON file")->required();
  compute->add_option("--quandle", cfg.quandle_spec, "Target, e.g. symplectic:p=3,lambda=2")->required();
  std::string solver_name = "blocks", emit_name = "text";
  compute->add_option("--solver", solver_name, "Enumeration strategy")
      ->check(CLI::IsMember({"brute", "blocks"}))
      ->capture_default_str();
  auto* block_size_opt =
      compute->add_option("--block-size", cfg.block_size, "Crossings per block (2..6)")->check(CLI::Range(2, 6))->capture_default_str();
  compute->add_option("--threads", cfg.threads, "Worker threads for block solving")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  compute->add_option("--emit", emit_name, "Report format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  compute->add_option("--out", out_path, "Write the report here instead of stdout");
  compute->add_option("--colorings", colorings_path, "Also write every coloring to this JSON file");

  std::string report_path, verify_colorings;
  auto* verify = app.add_subcommand("verify", "Re-check a report against its coloring file");
  verify->add_option("report", report_path, "Report JSON")->required()->check(CLI::ExistingFile);
  verify->add_option("colorings", verify_colorings, "Coloring JSON")->required()->check(CLI::ExistingFile);

  std::string report_a, report_b;
  auto* compare = app.add_subcommand("compare", "Decide whether two reports separate their links");
  compare->add_option("report_a", report_a, "First report JSON")->required()->check(CLI::ExistingFile);
  compare->add_option("report_b", report_b, "Second report JSON")->required()->check(CLI::ExistingFile);

  std::size_t n = 1;
  std::string gen_out, l1 = std::string(QC_DATA_DIR) + "/as_l1.json", l2 = std::string(QC_DATA_DIR) + "/as_l2.json";
  auto* generate = app.add_subcommand("generate-ln", "Write the n-copy member of the L_n family");
  generate->add_option("--n", n, "Number of core copies")->required()->check(CLI::PositiveNumber);
  generate->add_option("--out", gen_out, "Output diagram path (stdout if omitted)");
  generate->add_option("--l1", l1, "One-copy diagram the core is taken from");
  generate->add_option("--l2", l2, "Two-copy diagram the core is checked against");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(qc::ExitCode::malformed_input);
  }

  try {
    if (*compute) {
      cfg.diagram = diagram;
      cfg.solver = solver_name == "brute" ? qc::SolverKind::brute : qc::SolverKind::blocks;
      cfg.emit = emit_name == "json" ? qc::Emit::json : emit_name == "csv" ? qc::Emit::csv : qc::Emit::text;
      return run_compute(cfg, out_path, colorings_path, block_size_opt->count() > 0);
    }
    if (*verify) return run_verify(report_path, verify_colorings);
    if (*compare) return run_compare(report_a, report_b);
    if (*generate) return run_generate(n, gen_out, l1, l2);
  } catch (const qc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(qc::ExitCode::failure);
  }
  return 0;
}
