#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcolor/diagram.hpp"
#include "qcolor/invariants.hpp"
#include "qcolor/quandle.hpp"

namespace qc {

// Scalar variable id: arc * coord_dim + coordinate slot.
using ScalarVar = std::uint32_t;

std::string var_name(ScalarVar v, int coord_dim);

// Partial colorings over an ordered set of scalar variables. Rows are stored flat, row-major.
struct PartialSolutionTable {
  std::vector<ScalarVar> vars;  // strictly increasing
  std::vector<std::uint8_t> data;
  // Set when the table is empty because the constraints are inconsistent (not a guard trip).
  std::string empty_reason;

  std::size_t width() const noexcept { return vars.size(); }
  std::size_t rows() const noexcept { return vars.empty() ? 0 : data.size() / vars.size(); }
  bool empty() const noexcept { return rows() == 0; }
  std::span<const std::uint8_t> row(std::size_t i) const { return {data.data() + i * width(), width()}; }
  // Sort rows lexicographically and drop duplicates.
  void canonicalize();
  // Header of variable names, then one line per row.
  std::string to_csv(int coord_dim) const;

  bool operator==(const PartialSolutionTable& o) const { return vars == o.vars && data == o.data; }
};

// Half-open range of crossing indices [first, last).
struct BlockRange {
  std::size_t first = 0;
  std::size_t last = 0;
  std::size_t size() const noexcept { return last - first; }
};

// Node ids: 0..blocks-1 are leaves, blocks + i is the result of merges[i].
struct Merge {
  std::size_t left = 0;
  std::size_t right = 0;
  std::size_t shared_arcs = 0;
  bool cartesian = false;
};

struct BlockPlan {
  std::size_t block_size = 0;
  std::vector<BlockRange> blocks;
  std::vector<Merge> merges;
  std::vector<std::string> notes;

  std::size_t root() const noexcept { return blocks.size() + merges.size() - 1; }
};

BlockPlan make_block_plan(const QuandlePresentation& pres, std::size_t block_size = 4);
// Throws InputError unless the plan covers every crossing exactly once and forms one tree.
void validate_plan(const QuandlePresentation& pres, const BlockPlan& plan);

PartialSolutionTable solve_block(const QuandlePresentation& pres, BlockRange block, const FiniteQuandle& q);

// Hash join on the shared variables. Throws JoinGuardError if either side is empty or nothing
// is shared. A consistent-but-empty result carries an empty_reason.
PartialSolutionTable equi_join(const PartialSolutionTable& a, const PartialSolutionTable& b);
// Cartesian product of tables over disjoint variable sets.
PartialSolutionTable cross_join(const PartialSolutionTable& a, const PartialSolutionTable& b);

// Reads QC_BUDGET, falling back to 1e8.
std::uint64_t default_brute_budget();

// All colorings in lexicographic order. Throws BudgetExceeded if |q|^N exceeds the budget.
std::vector<Coloring> brute_force(const QuandlePresentation& pres, const FiniteQuandle& q,
                                  std::uint64_t budget = default_brute_budget());

enum class SolverKind { brute, blocks };

struct SolveOptions {
  SolverKind solver = SolverKind::blocks;
  std::size_t block_size = 4;
  unsigned threads = 1;
  std::uint64_t brute_budget = default_brute_budget();
  std::uint64_t row_warning = 10'000'000;
  std::optional<BlockPlan> plan;  // overrides block_size when set
};

struct SolveReport {
  std::uint64_t hom_count = 0;
  EnhancedPolynomial image_tally;
  bool residual_ok = false;
  double wall_seconds = 0;
  SolverKind solver = SolverKind::blocks;
  std::optional<BlockPlan> plan;
  std::size_t max_intermediate_rows = 0;
  std::optional<std::string> empty_provenance;
  std::vector<std::string> notes;
};

struct SolveResult {
  SolveReport report;
  std::vector<Coloring> colorings;  // sorted
};

// Full pipeline: enumerate, canonically sort, residual-check every coloring, tally images.
SolveResult solve(const QuandlePresentation& pres, const FiniteQuandle& q, const SolveOptions& opt = {});

}  // namespace qc
