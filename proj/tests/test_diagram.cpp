#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracle.hpp"
#include "qcolor/diagram.hpp"
#include "qcolor/error.hpp"

using namespace qc;

namespace {

std::string crossing_json(int sign, int over, int in, int out) {
  return "{\"sign\": " + std::to_string(sign) + ", \"over\": " + std::to_string(over) +
         ", \"under_in\": " + std::to_string(in) + ", \"under_out\": " + std::to_string(out) + "}";
}

std::string hopf_text(const std::string& second_crossing) {
  return "{\"name\": \"x\", \"arcs\": 2, \"components\": [[0], [1]], \"crossings\": [" + crossing_json(1, 1, 0, 0) +
         ", " + second_crossing + "]}";
}

}  // namespace

TEST(ParseDiagram, ShippedFiles) {
  struct Expect {
    const char* file;
    const char* name;
    std::size_t arcs, crossings, components;
  };
  for (const auto& e : {Expect{"unknot.json", "unknot", 1, 0, 1}, Expect{"unlink2.json", "unlink2", 2, 0, 2},
                        Expect{"hopf.json", "hopf", 2, 2, 2}, Expect{"hopf_sum.json", "H", 4, 4, 3},
                        Expect{"as_l1.json", "L1", 45, 45, 3}, Expect{"as_l2.json", "L2", 85, 85, 3}}) {
    const auto d = load_diagram(oracle::data(e.file));
    EXPECT_EQ(d.name(), e.name);
    EXPECT_EQ(d.arc_count(), e.arcs) << e.file;
    EXPECT_EQ(d.crossing_count(), e.crossings) << e.file;
    EXPECT_EQ(d.components().size(), e.components) << e.file;
  }
}

TEST(ParseDiagram, HopfCrossingsArePositive) {
  const auto d = load_diagram(oracle::data("hopf.json"));
  for (const auto& c : d.crossings()) EXPECT_EQ(c.sign, Sign::positive);
  EXPECT_NE(d.component_of(0), d.component_of(1));
}

TEST(ParseDiagram, RejectsUndefinedArc) {
  const std::string text =
      "{\"name\": \"x\", \"arcs\": 4, \"components\": [[0, 1, 2, 3]], \"crossings\": [" + crossing_json(1, 99, 0, 1) + "]}";
  try {
    parse_diagram(text);
    FAIL() << "accepted a crossing over arc 99";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("undefined arc"), std::string::npos) << e.what();
  }
}

TEST(ParseDiagram, RejectsInconsistentInput) {
  // arc 0 consumed twice, arc 1 never produced
  EXPECT_THROW(parse_diagram(hopf_text(crossing_json(1, 0, 0, 1))), InputError);
  EXPECT_THROW(parse_diagram(hopf_text(crossing_json(2, 0, 1, 1))), InputError);
  EXPECT_THROW(parse_diagram(hopf_text(crossing_json(0, 0, 1, 1))), InputError);
  EXPECT_THROW(parse_diagram("{\"name\": \"x\", \"arcs\": 2, "), InputError);
  EXPECT_THROW(parse_diagram("{\"name\": \"x\", \"components\": [[0]], \"crossings\": []}"), InputError);
  EXPECT_THROW(parse_diagram("[1, 2]"), InputError);
  EXPECT_THROW(parse_diagram("{\"name\": \"x\", \"arcs\": 2, \"components\": [[0, 1]], \"crossings\": []}"),
               InputError);
  EXPECT_THROW(parse_diagram("{\"name\": \"x\", \"arcs\": 2, \"components\": [[0]], \"crossings\": []}"), InputError);
  // components listed against the succession
  EXPECT_THROW(parse_diagram("{\"name\": \"x\", \"arcs\": 2, \"components\": [[0, 1]], \"crossings\": [" +
                             crossing_json(1, 1, 0, 0) + ", " + crossing_json(1, 0, 1, 1) + "]}"),
               InputError);
  EXPECT_THROW(load_diagram(oracle::data("missing.json")), InputError);
  EXPECT_NO_THROW(parse_diagram(hopf_text(crossing_json(-1, 0, 1, 1))));
}

TEST(SerializeDiagram, RoundTrips) {
  for (const char* f : {"unknot.json", "unlink2.json", "hopf.json", "hopf_sum.json", "as_l1.json", "as_l2.json"}) {
    const auto d = load_diagram(oracle::data(f));
    const auto text = serialize_diagram(d);
    EXPECT_EQ(parse_diagram(text), d) << f;
    EXPECT_EQ(serialize_diagram(parse_diagram(text)), text) << f;
  }
}

TEST(Presentation, OneRelationPerCrossing) {
  const auto unknot = presentation(load_diagram(oracle::data("unknot.json")));
  EXPECT_EQ(unknot.generator_count, 1u);
  EXPECT_TRUE(unknot.relations.empty());

  const auto hopf = presentation(load_diagram(oracle::data("hopf.json")));
  ASSERT_EQ(hopf.relations.size(), 2u);
  EXPECT_EQ(hopf.relations[0], (Relation{0, 0, 1, Sign::positive}));
  EXPECT_EQ(hopf.relations[1], (Relation{1, 1, 0, Sign::positive}));

  for (const char* f : {"hopf_sum.json", "as_l1.json", "as_l2.json"}) {
    const auto d = load_diagram(oracle::data(f));
    const auto p = presentation(d);
    ASSERT_EQ(p.relations.size(), d.crossing_count());
    for (std::size_t i = 0; i < p.relations.size(); ++i) {
      EXPECT_EQ(p.relations[i].over, d.crossings()[i].over);
      EXPECT_EQ(p.relations[i].in, d.crossings()[i].under_in);
      EXPECT_EQ(p.relations[i].out, d.crossings()[i].under_out);
    }
  }
}

TEST(RelabelArcs, IdentityAndBijectionChecks) {
  const auto h = load_diagram(oracle::data("hopf_sum.json"));
  std::vector<ArcId> id(h.arc_count());
  std::iota(id.begin(), id.end(), 0u);
  EXPECT_EQ(relabel_arcs(h, id), h);
  const std::vector<ArcId> not_bijective{0, 0, 1, 2};
  EXPECT_THROW(relabel_arcs(h, not_bijective), InputError);
  const std::vector<ArcId> too_short{0, 1};
  EXPECT_THROW(relabel_arcs(h, too_short), InputError);
}

TEST(RelabelArcs, RecoveredByRelabelingSearch) {
  std::mt19937 rng(3);
  for (const char* f : {"unlink2.json", "hopf.json", "hopf_sum.json", "as_l1.json"}) {
    const auto d = load_diagram(oracle::data(f));
    std::vector<ArcId> perm(d.arc_count());
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto moved = relabel_arcs(d, perm);
    const auto found = find_arc_relabeling(d, moved);
    ASSERT_TRUE(found) << f;
    EXPECT_EQ(relabel_arcs(d, *found), moved) << f;
  }
  EXPECT_FALSE(find_arc_relabeling(load_diagram(oracle::data("as_l1.json")), load_diagram(oracle::data("as_l2.json"))));
  EXPECT_FALSE(find_arc_relabeling(load_diagram(oracle::data("hopf.json")), load_diagram(oracle::data("unlink2.json"))));
}

TEST(AddKink, SplitsArcOrCurlsCircle) {
  const auto h = load_diagram(oracle::data("hopf_sum.json"));
  const auto k = add_kink(h, 2, Sign::positive);
  EXPECT_EQ(k.arc_count(), 5u);
  EXPECT_EQ(k.crossing_count(), 5u);
  EXPECT_EQ(k.components()[h.component_of(2)].size(), 3u);
  EXPECT_EQ(k.crossings().back(), (Crossing{Sign::positive, 2, 2, 4}));

  const auto u = add_kink(load_diagram(oracle::data("unknot.json")), 0, Sign::negative);
  EXPECT_EQ(u.arc_count(), 1u);
  EXPECT_EQ(u.crossing_count(), 1u);
  EXPECT_THROW(add_kink(h, 17, Sign::positive), InputError);
}

TEST(SplitUnion, ShiftsSecondOperand) {
  const auto u = split_union(load_diagram(oracle::data("hopf.json")), load_diagram(oracle::data("unknot.json")));
  EXPECT_EQ(u.arc_count(), 3u);
  EXPECT_EQ(u.components().size(), 3u);
  EXPECT_EQ(u.name(), "hopf+unknot");
}
