#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "qcolor/diagram.hpp"
#include "qcolor/invariants.hpp"
#include "qcolor/quandle.hpp"
#include "qcolor/solver.hpp"

namespace qc {

// The replicable 2-in/2-out tangle of the L_n family, kept together with the closed one-copy
// diagram it was found in. Arc ids refer to that base diagram.
struct CoreTangle {
  LinkDiagram base;
  std::size_t core_begin = 0;  // crossings [core_begin, base.crossing_count()) form the core
  std::array<std::size_t, 2> closing{};  // closure crossings whose under_in is a core exit
  std::array<ArcId, 2> boundary_in{};
  std::array<ArcId, 2> boundary_out{};

  std::size_t core_size() const noexcept { return base.crossing_count() - core_begin; }
};

// Recovers the core by diffing the one-copy and two-copy diagrams: the crossing surplus of l2
// is the core, the shared prefix beyond the closure must match, and the closure crossings may
// differ only in which exit arc they consume. Throws InputError if the pair is not of that shape
// or if generate_ln(core, 2) does not reproduce l2 up to arc relabeling.
CoreTangle extract_core(const LinkDiagram& l1, const LinkDiagram& l2);

// Closure followed by n copies of the core; copy j + 1 enters along the exits of copy j.
// Copy 1 keeps the base arc ids, later copies number their arcs consecutively.
LinkDiagram generate_ln(const CoreTangle& core, std::size_t n);

// Copies a coloring of the base diagram onto every core copy. Throws ResidualFailure if f1 is
// not a coloring of the base, or if the copied assignment is not a coloring of L_n.
Coloring transfer_coloring(const CoreTangle& core, const FiniteQuandle& q, const Coloring& f1, std::size_t n);

enum class GapVerdict { separated, not_separated };

std::string to_string(GapVerdict v);

struct GapCertificate {
  GapVerdict verdict = GapVerdict::not_separated;
  InvariantRecord h;
  InvariantRecord l1;
};

// Separated iff deg Phi_E(L_1) exceeds deg Phi_E(H). Since transfer preserves image sizes, this
// degree bound carries to every L_n.
GapVerdict degree_gap_check(const InvariantRecord& h, const InvariantRecord& l1);
GapCertificate degree_gap_check(const FiniteQuandle& target, const LinkDiagram& h, const CoreTangle& core,
                                const SolveOptions& opt = {});

}  // namespace qc
