#include "qcolor/report.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "qcolor/error.hpp"

namespace qc {

using nlohmann::json;

std::string to_string(SolverKind s) { return s == SolverKind::brute ? "brute" : "blocks"; }

namespace {

struct Published {
  const char* link;
  const char* spec;
  std::map<int, std::uint64_t> phi_e;
};

const std::vector<Published>& published() {
  static const std::map<int, std::uint64_t> h3{{1, 9}, {2, 72}, {3, 72}};
  static const std::map<int, std::uint64_t> l3{{1, 9}, {2, 72}, {3, 24}, {9, 48}};
  static const std::map<int, std::uint64_t> h5{{1, 25}, {2, 360}, {3, 840}};
  static const std::map<int, std::uint64_t> l5{{1, 25}, {2, 360}, {3, 360}, {21, 360}, {22, 120}};
  static const std::vector<Published> table{
      {"H", "symplectic:p=3,lambda=2", h3},  {"L1", "symplectic:p=3,lambda=2", l3},
      {"L2", "symplectic:p=3,lambda=2", l3}, {"H", "symplectic:p=5,lambda=1", h5},
      {"H", "symplectic:p=5,lambda=2", h5},  {"L1", "symplectic:p=5,lambda=1", l5},
  };
  return table;
}

}  // namespace

std::string reference_status(const std::string& link, const std::string& quandle_spec,
                             const EnhancedPolynomial& phi_e) {
  for (const auto& p : published()) {
    if (link == p.link && quandle_spec == p.spec) {
      return phi_e == EnhancedPolynomial(p.phi_e) ? "match" : "mismatch";
    }
  }
  return "unverified";
}

json invariants_json(const InvariantRecord& r) {
  json coeffs = json::object();
  for (auto [m, a] : r.phi_e.coefficients()) coeffs[std::to_string(m)] = a;
  return {{"phi", r.phi}, {"phi_E", coeffs}, {"degree", r.degree()}};
}

InvariantRecord record_from_report(const json& report) {
  try {
    InvariantRecord r;
    r.link = report.at("link").at("name").get<std::string>();
    r.quandle_spec = report.at("quandle").at("spec").get<std::string>();
    const auto& inv = report.at("invariants");
    r.phi = inv.at("phi").get<std::uint64_t>();
    for (const auto& [m, a] : inv.at("phi_E").items()) r.phi_e.add(std::stoi(m), a.get<std::uint64_t>());
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw InputError("malformed report: non-numeric phi_E key");
  }
}

json make_report(const LinkDiagram& d, const FiniteQuandle& q, const RunConfig& cfg, const SolveReport& rep) {
  InvariantRecord rec;
  rec.link = d.name();
  rec.quandle_spec = q.spec();
  rec.phi = rep.hom_count;
  rec.phi_e = rep.image_tally;

  json params = {{"modulus", q.coord_radix()}, {"matrix", nullptr}, {"lambda", nullptr}};
  if (const auto& f = q.form()) {
    const auto& m = f->matrix();
    params["matrix"] = {{m[0], m[1]}, {m[2], m[3]}};
    if (f->lambda()) params["lambda"] = *f->lambda();
  }

  json solver = {{"kind", to_string(rep.solver)}};
  if (rep.plan) {
    const auto& plan = *rep.plan;
    json ranges = json::array();
    for (const auto& b : plan.blocks) ranges.push_back({b.first, b.last});
    std::size_t cartesian = 0;
    for (const auto& m : plan.merges) cartesian += m.cartesian ? 1 : 0;
    solver["block_size"] = plan.block_size;
    solver["plan"] = {{"blocks", plan.blocks.size()},
                      {"merges", plan.merges.size()},
                      {"cartesian_merges", cartesian},
                      {"block_ranges", ranges},
                      {"max_intermediate_rows", rep.max_intermediate_rows}};
  } else {
    solver["plan"] = to_string(rep.solver);
  }

  std::vector<std::string> notes = rep.notes;
  if (rep.plan) notes.insert(notes.end(), rep.plan->notes.begin(), rep.plan->notes.end());

  return {
      {"schema_version", kReportSchemaVersion},
      {"link",
       {{"name", d.name()},
        {"file", cfg.diagram.filename().string()},
        {"arcs", d.arc_count()},
        {"crossings", d.crossing_count()},
        {"components", d.components().size()}}},
      {"quandle", {{"spec", q.spec()}, {"order", q.size()}}},
      {"parameters", params},
      {"solver", solver},
      {"wall_time", rep.wall_seconds},
      {"hom_count", rep.hom_count},
      {"invariants", invariants_json(rec)},
      {"phi_E_text", rep.image_tally.render()},
      {"validation",
       {{"residual_ok", rep.residual_ok},
        {"tally_sum_ok", rep.image_tally.total() == rep.hom_count},
        {"image_bound_ok", rep.image_tally.degree() <= static_cast<int>(q.size())},
        {"reference", reference_status(d.name(), q.spec(), rep.image_tally)}}},
      {"empty_provenance", rep.empty_provenance ? json(*rep.empty_provenance) : json(nullptr)},
      {"notes", notes},
  };
}

std::string render_text(const json& r) {
  std::ostringstream out;
  const auto& link = r.at("link");
  const auto& solver = r.at("solver");
  out << "link        " << link.at("name").get<std::string>() << " (" << link.at("arcs") << " arcs, "
      << link.at("crossings") << " crossings, " << link.at("components") << " components)\n";
  out << "quandle     " << r.at("quandle").at("spec").get<std::string>() << " (order " << r.at("quandle").at("order")
      << ")\n";
  out << "solver      " << solver.at("kind").get<std::string>();
  if (solver.at("plan").is_object()) {
    const auto& p = solver.at("plan");
    out << " (block size " << solver.at("block_size") << ", " << p.at("blocks") << " blocks, " << p.at("merges")
        << " merges, max " << p.at("max_intermediate_rows") << " rows)";
  }
  out << "\nhom_count   " << r.at("hom_count") << "\n";
  out << "phi_E       " << r.at("phi_E_text").get<std::string>() << "\n";
  out << "degree      " << r.at("invariants").at("degree") << "\n";
  const auto& v = r.at("validation");
  out << "residual    " << (v.at("residual_ok").get<bool>() ? "ok" : "FAILED") << "\n";
  out << "reference   " << v.at("reference").get<std::string>() << "\n";
  if (!r.at("empty_provenance").is_null()) {
    out << "empty       " << r.at("empty_provenance").get<std::string>() << "\n";
  }
  for (const auto& n : r.at("notes")) out << "note        " << n.get<std::string>() << "\n";
  out << "wall_time   " << std::fixed << std::setprecision(3) << r.at("wall_time").get<double>() << " s\n";
  return out.str();
}

std::string render_csv(const json& r) {
  const InvariantRecord rec = record_from_report(r);
  std::ostringstream out;
  out << "m,a_m\n";
  for (auto [m, a] : rec.phi_e.coefficients()) out << m << "," << a << "\n";
  return out.str();
}

json coloring_artifact(const LinkDiagram& d, const FiniteQuandle& q, const std::vector<Coloring>& fs) {
  json rows = json::array();
  for (const auto& f : fs) rows.push_back(f.arcs);
  return {{"schema_version", kReportSchemaVersion},
          {"quandle", q.spec()},
          {"diagram", json::parse(serialize_diagram(d))},
          {"colorings", rows}};
}

VerifyOutcome verify_artifacts(const json& report, const json& colorings) {
  auto fail = [](std::string check, std::string detail) { return VerifyOutcome{false, std::move(check), std::move(detail)}; };
  const InvariantRecord rec = record_from_report(report);
  std::optional<LinkDiagram> d;
  std::optional<FiniteQuandle> q;
  std::vector<Coloring> fs;
  try {
    d = parse_diagram(colorings.at("diagram").dump());
    q = parse_quandle_spec(colorings.at("quandle").get<std::string>());
    for (const auto& row : colorings.at("colorings")) fs.push_back({row.get<std::vector<Element>>()});
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed coloring artifact: ") + e.what());
  }

  if (q->spec() != rec.quandle_spec) {
    return fail("consistency", "report target '" + rec.quandle_spec + "' but colorings use '" + q->spec() + "'");
  }
  const QuandlePresentation pres = presentation(*d);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto& f = fs[i].arcs;
    if (f.size() != d->arc_count()) {
      return fail("residual", "coloring " + std::to_string(i) + " has " + std::to_string(f.size()) +
                                  " entries for " + std::to_string(d->arc_count()) + " arcs");
    }
    for (std::size_t a = 0; a < f.size(); ++a) {
      if (f[a] >= q->size()) {
        return fail("residual", "coloring " + std::to_string(i) + " uses element " + std::to_string(f[a]) +
                                    " outside the target on arc " + std::to_string(a));
      }
    }
    if (auto bad = find_residual_failure(pres, *q, {fs[i]})) {
      const auto& r = pres.relations[bad->crossing];
      std::ostringstream msg;
      msg << "coloring " << i << " violates crossing " << bad->crossing << " (over arc " << r.over << ", under "
          << r.in << " -> " << r.out << ")";
      return fail("residual", msg.str());
    }
  }
  if (std::set<Coloring>(fs.begin(), fs.end()).size() != fs.size()) {
    return fail("distinct", "coloring list contains duplicates");
  }
  if (rec.phi_e.total() != rec.phi) {
    return fail("tally_sum", "sum of a_m is " + std::to_string(rec.phi_e.total()) + " but hom_count is " +
                                 std::to_string(rec.phi));
  }
  if (rec.phi != fs.size()) {
    return fail("hom_count", "report claims " + std::to_string(rec.phi) + " colorings, artifact holds " +
                                 std::to_string(fs.size()));
  }
  if (rec.phi_e.degree() > static_cast<int>(q->size())) {
    return fail("image_bound", "degree " + std::to_string(rec.phi_e.degree()) + " exceeds target order " +
                                   std::to_string(q->size()));
  }
  const EnhancedPolynomial recomputed = enhanced_polynomial(fs);
  if (!(recomputed == rec.phi_e)) {
    return fail("tally_match", "colorings give " + recomputed.render() + ", report says " + rec.phi_e.render());
  }
  return {};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

}  // namespace qc
