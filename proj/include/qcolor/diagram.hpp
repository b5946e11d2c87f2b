#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qc {

using ArcId = std::uint32_t;

enum class Sign : int { negative = -1, positive = 1 };

constexpr int to_int(Sign s) noexcept { return static_cast<int>(s); }

struct Crossing {
  Sign sign = Sign::positive;
  ArcId over = 0;
  ArcId under_in = 0;
  ArcId under_out = 0;

  bool operator==(const Crossing&) const = default;
};

// One relation per crossing: out = in |> over (positive) or out = in |>^-1 over (negative).
struct Relation {
  ArcId out = 0;
  ArcId in = 0;
  ArcId over = 0;
  Sign sign = Sign::positive;

  bool operator==(const Relation&) const = default;
};

struct QuandlePresentation {
  std::size_t generator_count = 0;
  std::vector<Relation> relations;
};

// An oriented link diagram as arcs plus signed crossings. Arcs are 0..arc_count()-1. Every
// arc either starts and ends at undercrossings (appearing exactly once as under_out and once
// as under_in), or is the only arc of a component that never passes under anything.
// Validated on construction; immutable afterwards.
class LinkDiagram {
 public:
  LinkDiagram(std::string name, std::size_t arc_count, std::vector<std::vector<ArcId>> components,
              std::vector<Crossing> crossings);

  const std::string& name() const noexcept { return name_; }
  std::size_t arc_count() const noexcept { return arc_count_; }
  const std::vector<std::vector<ArcId>>& components() const noexcept { return components_; }
  const std::vector<Crossing>& crossings() const noexcept { return crossings_; }
  std::size_t crossing_count() const noexcept { return crossings_.size(); }
  // Component index of each arc.
  std::size_t component_of(ArcId a) const { return component_of_.at(a); }

  bool operator==(const LinkDiagram& o) const {
    return name_ == o.name_ && arc_count_ == o.arc_count_ && components_ == o.components_ &&
           crossings_ == o.crossings_;
  }

 private:
  std::string name_;
  std::size_t arc_count_;
  std::vector<std::vector<ArcId>> components_;
  std::vector<Crossing> crossings_;
  std::vector<std::size_t> component_of_;
};

// Diagram file format:
//   {"name": str, "arcs": int, "components": [[arcIds]],
//    "crossings": [{"sign": 1|-1, "over": int, "under_in": int, "under_out": int}]}
// Throws InputError on malformed or inconsistent input.
LinkDiagram parse_diagram(std::string_view text);
LinkDiagram load_diagram(const std::filesystem::path& path);
// Canonical form: fixed key order, one crossing per line.
std::string serialize_diagram(const LinkDiagram& d);

QuandlePresentation presentation(const LinkDiagram& d);

// Renames arc a to perm[a]. perm must be a bijection on 0..N-1.
LinkDiagram relabel_arcs(const LinkDiagram& d, std::span<const ArcId> perm);

// The arc renaming perm with relabel_arcs(a, perm) == b (names aside), if one exists. Crossings
// are matched in order, so this recognises the same diagram under different arc ids.
std::optional<std::vector<ArcId>> find_arc_relabeling(const LinkDiagram& a, const LinkDiagram& b);

// Reidemeister I: inserts a curl of the given sign at the end of `arc`. On a component with
// undercrossings the curl splits `arc` and the new piece gets id N; a crossing-free circle
// stays one arc that passes under itself.
LinkDiagram add_kink(const LinkDiagram& d, ArcId arc, Sign sign);

// Disjoint union; arcs of b are shifted by a.arc_count().
LinkDiagram split_union(const LinkDiagram& a, const LinkDiagram& b, std::string name = {});

}  // namespace qc
