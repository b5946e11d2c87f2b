#include "qcolor/family.hpp"

#include <algorithm>
#include <set>

#include "qcolor/error.hpp"

namespace qc {

namespace {

constexpr ArcId kUnset = static_cast<ArcId>(-1);

struct Layout {
  LinkDiagram diagram;
  // copy_maps[j][a]: id in L_n of base arc a inside copy j (kUnset for arcs outside the core).
  std::vector<std::vector<ArcId>> copy_maps;
};

std::set<ArcId> arcs_of(const std::vector<Crossing>& xs, std::size_t first, std::size_t last) {
  std::set<ArcId> s;
  for (std::size_t i = first; i < last; ++i) s.insert({xs[i].over, xs[i].under_in, xs[i].under_out});
  return s;
}

Layout build(const CoreTangle& core, std::size_t n) {
  if (n < 1) throw InputError("L_n needs n >= 1");
  const auto& base = core.base;
  const auto& bx = base.crossings();
  const std::set<ArcId> core_arcs = arcs_of(bx, core.core_begin, bx.size());

  std::vector<std::vector<ArcId>> maps;
  ArcId next = static_cast<ArcId>(base.arc_count());
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<ArcId> m(base.arc_count(), kUnset);
    for (ArcId a : core_arcs) {
      if (j == 0) {
        m[a] = a;
      } else if (a == core.boundary_in[0] || a == core.boundary_in[1]) {
        m[a] = maps.back()[a == core.boundary_in[0] ? core.boundary_out[0] : core.boundary_out[1]];
      } else {
        m[a] = next++;
      }
    }
    maps.push_back(std::move(m));
  }

  std::vector<Crossing> xs(bx.begin(), bx.begin() + static_cast<std::ptrdiff_t>(core.core_begin));
  for (int k = 0; k < 2; ++k) xs[core.closing[k]].under_in = maps.back()[core.boundary_out[k]];
  for (const auto& m : maps) {
    for (std::size_t i = core.core_begin; i < bx.size(); ++i) {
      const auto& c = bx[i];
      xs.push_back({c.sign, m[c.over], m[c.under_in], m[c.under_out]});
    }
  }

  // Components: follow the under_in -> under_out succession, starting from the base's
  // component heads (those keep their ids), then any cycle not yet reached.
  const std::size_t arc_count = next;
  std::vector<ArcId> succ(arc_count, kUnset);
  for (const auto& c : xs) succ[c.under_in] = c.under_out;
  std::vector<char> seen(arc_count, 0);
  std::vector<std::vector<ArcId>> comps;
  auto trace = [&](ArcId start) {
    if (seen[start]) return;
    std::vector<ArcId> comp;
    for (ArcId a = start; a != kUnset && !seen[a]; a = succ[a]) {
      seen[a] = 1;
      comp.push_back(a);
    }
    comps.push_back(std::move(comp));
  };
  for (const auto& comp : base.components()) trace(comp.front());
  for (ArcId a = 0; a < arc_count; ++a) trace(a);

  return {LinkDiagram("L" + std::to_string(n), arc_count, std::move(comps), std::move(xs)), std::move(maps)};
}

}  // namespace

CoreTangle extract_core(const LinkDiagram& l1, const LinkDiagram& l2) {
  const auto& x1 = l1.crossings();
  const auto& x2 = l2.crossings();
  if (x2.size() <= x1.size()) throw InputError("two-copy diagram must have more crossings than the one-copy diagram");
  const std::size_t k = x2.size() - x1.size();
  if (k >= x1.size()) throw InputError("one-copy diagram is too small to contain a closure and a core");

  CoreTangle core{l1, x1.size() - k, {}, {}, {}};
  if (!std::equal(x1.begin() + static_cast<std::ptrdiff_t>(core.core_begin), x1.end(),
                  x2.begin() + static_cast<std::ptrdiff_t>(core.core_begin))) {
    throw InputError("the first core copy differs between the two diagrams");
  }
  std::vector<std::size_t> closing;
  for (std::size_t i = 0; i < core.core_begin; ++i) {
    if (x1[i] == x2[i]) continue;
    Crossing c = x2[i];
    c.under_in = x1[i].under_in;
    if (!(c == x1[i])) throw InputError("closure crossing " + std::to_string(i) + " differs beyond its under_in arc");
    closing.push_back(i);
  }
  if (closing.size() != 2) {
    throw InputError("expected two closure crossings to change, found " + std::to_string(closing.size()));
  }
  for (int j = 0; j < 2; ++j) {
    core.closing[j] = closing[j];
    core.boundary_out[j] = x1[closing[j]].under_in;
    core.boundary_in[j] = x1[closing[j]].under_out;
  }

  const std::set<ArcId> core_arcs = arcs_of(x1, core.core_begin, x1.size());
  const std::set<ArcId> boundary{core.boundary_in[0], core.boundary_in[1], core.boundary_out[0],
                                 core.boundary_out[1]};
  if (boundary.size() != 4) throw InputError("core boundary arcs are not distinct");
  for (ArcId a : boundary) {
    if (!core_arcs.contains(a)) throw InputError("boundary arc " + std::to_string(a) + " does not meet the core");
  }
  for (ArcId a : arcs_of(x1, 0, core.core_begin)) {
    if (core_arcs.contains(a) && !boundary.contains(a)) {
      throw InputError("closure uses interior core arc " + std::to_string(a));
    }
  }

  if (!find_arc_relabeling(generate_ln(core, 2), l2)) {
    throw InputError("two copies of the extracted core do not reproduce the two-copy diagram");
  }
  return core;
}

LinkDiagram generate_ln(const CoreTangle& core, std::size_t n) { return build(core, n).diagram; }

Coloring transfer_coloring(const CoreTangle& core, const FiniteQuandle& q, const Coloring& f1, std::size_t n) {
  if (find_residual_failure(presentation(core.base), q, {f1})) {
    throw ResidualFailure("source is not a coloring of " + core.base.name());
  }
  const Layout layout = build(core, n);
  Coloring fn{std::vector<Element>(layout.diagram.arc_count(), 0)};
  // Closure arcs and copy 1 keep their ids; every later copy repeats copy 1's colors.
  for (ArcId a = 0; a < core.base.arc_count(); ++a) fn.arcs[a] = f1.arcs[a];
  for (const auto& m : layout.copy_maps) {
    for (ArcId a = 0; a < m.size(); ++a) {
      if (m[a] != kUnset) fn.arcs[m[a]] = f1.arcs[a];
    }
  }
  if (auto bad = find_residual_failure(presentation(layout.diagram), q, {fn})) {
    throw ResidualFailure("transferred coloring violates crossing " + std::to_string(bad->crossing) + " of " +
                          layout.diagram.name());
  }
  return fn;
}

std::string to_string(GapVerdict v) { return v == GapVerdict::separated ? "separated" : "not_separated"; }

GapVerdict degree_gap_check(const InvariantRecord& h, const InvariantRecord& l1) {
  if (h.quandle_spec != l1.quandle_spec) {
    throw InputError("degree gap needs both records over the same target, got '" + h.quandle_spec + "' and '" +
                     l1.quandle_spec + "'");
  }
  if (h.phi == 0 || l1.phi == 0) throw InputError("degree gap needs computed invariant records");
  return l1.degree() > h.degree() ? GapVerdict::separated : GapVerdict::not_separated;
}

GapCertificate degree_gap_check(const FiniteQuandle& target, const LinkDiagram& h, const CoreTangle& core,
                                const SolveOptions& opt) {
  GapCertificate cert;
  cert.h = make_record(h.name(), target.spec(), solve(presentation(h), target, opt).colorings);
  cert.l1 = make_record(core.base.name(), target.spec(), solve(presentation(core.base), target, opt).colorings);
  cert.verdict = degree_gap_check(cert.h, cert.l1);
  return cert;
}

}  // namespace qc
