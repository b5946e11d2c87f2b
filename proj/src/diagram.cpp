#include "qcolor/diagram.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qcolor/error.hpp"

namespace qc {

namespace {

std::string arc_str(ArcId a) { return "arc " + std::to_string(a); }

}  // namespace

LinkDiagram::LinkDiagram(std::string name, std::size_t arc_count,
                         std::vector<std::vector<ArcId>> components, std::vector<Crossing> crossings)
    : name_(std::move(name)),
      arc_count_(arc_count),
      components_(std::move(components)),
      crossings_(std::move(crossings)) {
  if (arc_count_ == 0) throw InputError("diagram has no arcs");

  std::vector<int> in_count(arc_count_, 0), out_count(arc_count_, 0);
  std::vector<ArcId> succ(arc_count_, 0);
  for (std::size_t i = 0; i < crossings_.size(); ++i) {
    const auto& c = crossings_[i];
    for (ArcId a : {c.over, c.under_in, c.under_out}) {
      if (a >= arc_count_) {
        throw InputError("crossing " + std::to_string(i) + " references undefined arc " +
                         std::to_string(a) + " (diagram has " + std::to_string(arc_count_) + " arcs)");
      }
    }
    if (c.sign != Sign::positive && c.sign != Sign::negative) {
      throw InputError("crossing " + std::to_string(i) + " has sign outside {+1,-1}");
    }
    ++in_count[c.under_in];
    ++out_count[c.under_out];
    succ[c.under_in] = c.under_out;
  }
  for (ArcId a = 0; a < arc_count_; ++a) {
    if (in_count[a] != out_count[a] || in_count[a] > 1) {
      throw InputError(arc_str(a) + " appears " + std::to_string(in_count[a]) + " time(s) as under_in and " +
                       std::to_string(out_count[a]) + " time(s) as under_out; expected exactly once each");
    }
  }

  component_of_.assign(arc_count_, static_cast<std::size_t>(-1));
  for (std::size_t ci = 0; ci < components_.size(); ++ci) {
    const auto& comp = components_[ci];
    if (comp.empty()) throw InputError("component " + std::to_string(ci) + " is empty");
    for (ArcId a : comp) {
      if (a >= arc_count_) throw InputError("component " + std::to_string(ci) + " references undefined " + arc_str(a));
      if (component_of_[a] != static_cast<std::size_t>(-1)) {
        throw InputError(arc_str(a) + " is listed in more than one component");
      }
      component_of_[a] = ci;
    }
    // The component must be exactly one cycle of the under_in -> under_out succession, or a
    // single arc with no undercrossings.
    const ArcId first = comp.front();
    if (in_count[first] == 0) {
      if (comp.size() != 1) {
        throw InputError("component " + std::to_string(ci) + " has an arc with no undercrossing but more than one arc");
      }
      continue;
    }
    std::set<ArcId> cycle;
    ArcId a = first;
    do {
      if (in_count[a] == 0) {
        throw InputError("component " + std::to_string(ci) + " mixes crossing-free and crossing arcs");
      }
      cycle.insert(a);
      a = succ[a];
    } while (a != first && cycle.size() <= arc_count_);
    const std::set<ArcId> listed(comp.begin(), comp.end());
    if (cycle != listed) {
      throw InputError("component " + std::to_string(ci) + " is inconsistent with the undercrossing succession");
    }
  }
  for (ArcId a = 0; a < arc_count_; ++a) {
    if (component_of_[a] == static_cast<std::size_t>(-1)) {
      throw InputError(arc_str(a) + " belongs to no component");
    }
  }
}

LinkDiagram parse_diagram(std::string_view text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed diagram JSON: ") + e.what());
  }
  try {
    if (!j.is_object()) throw InputError("diagram must be a JSON object");
    const std::string name = j.value("name", std::string{});
    const auto arcs = j.at("arcs").get<long long>();
    if (arcs <= 0) throw InputError("'arcs' must be positive");
    std::vector<std::vector<ArcId>> components;
    for (const auto& comp : j.at("components")) {
      std::vector<ArcId> c;
      for (const auto& a : comp) {
        const auto v = a.get<long long>();
        if (v < 0) throw InputError("negative arc id in components");
        c.push_back(static_cast<ArcId>(v));
      }
      components.push_back(std::move(c));
    }
    std::vector<Crossing> crossings;
    for (const auto& c : j.at("crossings")) {
      const auto sign = c.at("sign").get<int>();
      if (sign != 1 && sign != -1) {
        throw InputError("crossing sign must be 1 or -1, got " + std::to_string(sign));
      }
      auto arc = [&](const char* key) {
        const auto v = c.at(key).get<long long>();
        if (v < 0) throw InputError(std::string("negative arc id in '") + key + "'");
        return static_cast<ArcId>(v);
      };
      crossings.push_back({sign > 0 ? Sign::positive : Sign::negative, arc("over"), arc("under_in"),
                           arc("under_out")});
    }
    return LinkDiagram(name, static_cast<std::size_t>(arcs), std::move(components), std::move(crossings));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed diagram: ") + e.what());
  }
}

LinkDiagram load_diagram(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read diagram file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_diagram(buf.str());
}

std::string serialize_diagram(const LinkDiagram& d) {
  std::ostringstream out;
  out << "{\n  \"name\": " << nlohmann::json(d.name()).dump() << ",\n";
  out << "  \"arcs\": " << d.arc_count() << ",\n  \"components\": [\n";
  for (std::size_t i = 0; i < d.components().size(); ++i) {
    out << "    " << nlohmann::json(d.components()[i]).dump(-1, ' ', false);
    out << (i + 1 < d.components().size() ? ",\n" : "\n");
  }
  out << "  ],\n  \"crossings\": [\n";
  for (std::size_t i = 0; i < d.crossings().size(); ++i) {
    const auto& c = d.crossings()[i];
    out << "    {\"sign\": " << to_int(c.sign) << ", \"over\": " << c.over << ", \"under_in\": " << c.under_in
        << ", \"under_out\": " << c.under_out << "}" << (i + 1 < d.crossings().size() ? ",\n" : "\n");
  }
  out << "  ]\n}\n";
  return out.str();
}

QuandlePresentation presentation(const LinkDiagram& d) {
  QuandlePresentation p;
  p.generator_count = d.arc_count();
  p.relations.reserve(d.crossing_count());
  for (const auto& c : d.crossings()) p.relations.push_back({c.under_out, c.under_in, c.over, c.sign});
  return p;
}

LinkDiagram relabel_arcs(const LinkDiagram& d, std::span<const ArcId> perm) {
  const auto n = d.arc_count();
  if (perm.size() != n) throw InputError("relabeling must cover every arc");
  std::vector<char> hit(n, 0);
  for (ArcId v : perm) {
    if (v >= n || hit[v]) throw InputError("relabeling is not a bijection");
    hit[v] = 1;
  }
  std::vector<std::vector<ArcId>> comps = d.components();
  for (auto& c : comps) {
    for (auto& a : c) a = perm[a];
  }
  std::vector<Crossing> xs = d.crossings();
  for (auto& c : xs) {
    c.over = perm[c.over];
    c.under_in = perm[c.under_in];
    c.under_out = perm[c.under_out];
  }
  return LinkDiagram(d.name(), n, std::move(comps), std::move(xs));
}

std::optional<std::vector<ArcId>> find_arc_relabeling(const LinkDiagram& a, const LinkDiagram& b) {
  if (a.arc_count() != b.arc_count() || a.crossing_count() != b.crossing_count() ||
      a.components().size() != b.components().size()) {
    return std::nullopt;
  }
  constexpr ArcId unset = static_cast<ArcId>(-1);
  const auto n = a.arc_count();
  std::vector<ArcId> fwd(n, unset), back(n, unset);
  auto bind = [&](ArcId x, ArcId y) {
    if (fwd[x] == unset && back[y] == unset) {
      fwd[x] = y;
      back[y] = x;
      return true;
    }
    return fwd[x] == y;
  };
  for (std::size_t i = 0; i < a.crossing_count(); ++i) {
    const auto& ca = a.crossings()[i];
    const auto& cb = b.crossings()[i];
    if (ca.sign != cb.sign || !bind(ca.over, cb.over) || !bind(ca.under_in, cb.under_in) ||
        !bind(ca.under_out, cb.under_out)) {
      return std::nullopt;
    }
  }
  // Remaining arcs are crossing-free circles; pair them up in component order.
  std::vector<ArcId> free_b;
  for (const auto& comp : b.components()) {
    if (comp.size() == 1 && back[comp[0]] == unset) free_b.push_back(comp[0]);
  }
  std::size_t k = 0;
  for (const auto& comp : a.components()) {
    if (comp.size() == 1 && fwd[comp[0]] == unset) {
      if (k == free_b.size()) return std::nullopt;
      bind(comp[0], free_b[k++]);
    }
  }
  if (k != free_b.size()) return std::nullopt;
  // Components must correspond as sets.
  auto as_sets = [](std::vector<std::vector<ArcId>> comps) {
    for (auto& c : comps) std::sort(c.begin(), c.end());
    std::sort(comps.begin(), comps.end());
    return comps;
  };
  std::vector<std::vector<ArcId>> mapped = a.components();
  for (auto& c : mapped) {
    for (auto& x : c) x = fwd[x];
  }
  if (as_sets(mapped) != as_sets(b.components())) return std::nullopt;
  return fwd;
}

LinkDiagram add_kink(const LinkDiagram& d, ArcId arc, Sign sign) {
  if (arc >= d.arc_count()) throw InputError("cannot add a kink to undefined " + arc_str(arc));
  const auto fresh = static_cast<ArcId>(d.arc_count());
  std::vector<Crossing> xs = d.crossings();
  std::vector<std::vector<ArcId>> comps = d.components();
  auto& comp = comps[d.component_of(arc)];

  const bool has_under = std::any_of(xs.begin(), xs.end(), [&](const Crossing& c) { return c.under_in == arc; });
  if (has_under) {
    // arc ... -> [kink] -> fresh ... -> original end of arc. The curl's over strand is the new
    // under_in arc itself.
    for (auto& c : xs) {
      if (c.under_in == arc) c.under_in = fresh;
    }
    xs.push_back({sign, arc, arc, fresh});
    comp.insert(std::find(comp.begin(), comp.end(), arc) + 1, fresh);
  } else {
    // A crossing-free circle with one curl is still a single arc, passing under itself.
    xs.push_back({sign, arc, arc, arc});
    return LinkDiagram(d.name(), d.arc_count(), std::move(comps), std::move(xs));
  }
  return LinkDiagram(d.name(), d.arc_count() + 1, std::move(comps), std::move(xs));
}

LinkDiagram split_union(const LinkDiagram& a, const LinkDiagram& b, std::string name) {
  const auto shift = static_cast<ArcId>(a.arc_count());
  std::vector<std::vector<ArcId>> comps = a.components();
  for (auto c : b.components()) {
    for (auto& x : c) x += shift;
    comps.push_back(std::move(c));
  }
  std::vector<Crossing> xs = a.crossings();
  for (auto c : b.crossings()) {
    c.over += shift;
    c.under_in += shift;
    c.under_out += shift;
    xs.push_back(c);
  }
  if (name.empty()) name = a.name() + "+" + b.name();
  return LinkDiagram(std::move(name), a.arc_count() + b.arc_count(), std::move(comps), std::move(xs));
}

}  // namespace qc
