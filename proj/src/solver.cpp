#include "qcolor/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <numeric>
#include <sstream>
#include <string_view>
#include <thread>
#include <unordered_map>

#include "qcolor/error.hpp"

namespace qc {

std::string var_name(ScalarVar v, int coord_dim) {
  if (coord_dim == 1) return "a" + std::to_string(v);
  return "a" + std::to_string(v / coord_dim) + "_" + std::to_string(v % coord_dim);
}

// ---------------------------------------------------------------------------
// PartialSolutionTable

void PartialSolutionTable::canonicalize() {
  const std::size_t w = width();
  const std::size_t n = rows();
  if (n < 2) return;
  std::vector<std::uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0u);
  const std::uint8_t* base = data.data();
  auto cmp = [&](std::uint32_t x, std::uint32_t y) { return std::memcmp(base + x * w, base + y * w, w) < 0; };
  std::sort(idx.begin(), idx.end(), cmp);
  std::vector<std::uint8_t> out;
  out.reserve(data.size());
  const std::uint8_t* prev = nullptr;
  for (auto i : idx) {
    const std::uint8_t* r = base + static_cast<std::size_t>(i) * w;
    if (prev && std::memcmp(prev, r, w) == 0) continue;
    out.insert(out.end(), r, r + w);
    prev = r;
  }
  data = std::move(out);
}

std::string PartialSolutionTable::to_csv(int coord_dim) const {
  std::ostringstream out;
  for (std::size_t i = 0; i < vars.size(); ++i) out << (i ? "," : "") << var_name(vars[i], coord_dim);
  out << '\n';
  for (std::size_t r = 0; r < rows(); ++r) {
    auto row_view = row(r);
    for (std::size_t i = 0; i < row_view.size(); ++i) out << (i ? "," : "") << int{row_view[i]};
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Planning

namespace {

std::vector<ArcId> block_arcs(const QuandlePresentation& pres, BlockRange b) {
  std::vector<ArcId> arcs;
  for (std::size_t c = b.first; c < b.last; ++c) {
    const auto& r = pres.relations[c];
    arcs.insert(arcs.end(), {r.in, r.out, r.over});
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  return arcs;
}

std::size_t shared_count(const std::vector<ArcId>& a, const std::vector<ArcId>& b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n, ++i, ++j;
    }
  }
  return n;
}

std::vector<ArcId> merge_sets(const std::vector<ArcId>& a, const std::vector<ArcId>& b) {
  std::vector<ArcId> u;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
  return u;
}

std::string range_str(BlockRange b) {
  return "crossings " + std::to_string(b.first) + ".." + std::to_string(b.last - 1);
}

}  // namespace

BlockPlan make_block_plan(const QuandlePresentation& pres, std::size_t block_size) {
  if (block_size < 2 || block_size > 6) {
    throw InputError("block size must be between 2 and 6, got " + std::to_string(block_size));
  }
  const std::size_t n = pres.relations.size();
  if (n == 0) throw InputError("cannot plan blocks for a presentation without relations");

  BlockPlan plan;
  plan.block_size = block_size;
  for (std::size_t first = 0; first < n; first += block_size) {
    plan.blocks.push_back({first, std::min(n, first + block_size)});
  }

  // Greedy merge order: repeatedly join the pair of live nodes sharing the most arcs, preferring
  // the smaller union on ties. Pairs with nothing shared are only merged when no other pair is
  // left, i.e. the relation graph is disconnected.
  struct Node {
    std::size_t id;
    std::vector<ArcId> arcs;
  };
  std::vector<Node> live;
  for (std::size_t i = 0; i < plan.blocks.size(); ++i) live.push_back({i, block_arcs(pres, plan.blocks[i])});
  std::size_t next_id = plan.blocks.size();
  while (live.size() > 1) {
    std::size_t bi = 0, bj = 1, best_shared = 0, best_union = static_cast<std::size_t>(-1);
    bool found = false;
    for (std::size_t i = 0; i < live.size(); ++i) {
      for (std::size_t j = i + 1; j < live.size(); ++j) {
        const std::size_t s = shared_count(live[i].arcs, live[j].arcs);
        const std::size_t u = live[i].arcs.size() + live[j].arcs.size() - s;
        if (!found || s > best_shared || (s == best_shared && u < best_union)) {
          found = true;
          bi = i, bj = j, best_shared = s, best_union = u;
        }
      }
    }
    Merge m{live[bi].id, live[bj].id, best_shared, best_shared == 0};
    if (m.cartesian) {
      plan.notes.push_back("relation graph is disconnected: merge " + std::to_string(plan.merges.size()) +
                           " falls back to a cartesian product");
    }
    plan.merges.push_back(m);
    Node merged{next_id++, merge_sets(live[bi].arcs, live[bj].arcs)};
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(bj));
    live[bi] = std::move(merged);
  }
  return plan;
}

void validate_plan(const QuandlePresentation& pres, const BlockPlan& plan) {
  const std::size_t n = pres.relations.size();
  if (plan.blocks.empty()) throw InputError("plan has no blocks");
  std::vector<char> covered(n, 0);
  for (const auto& b : plan.blocks) {
    if (b.first >= b.last || b.last > n) throw InputError("plan block " + range_str(b) + " is out of range");
    for (std::size_t c = b.first; c < b.last; ++c) {
      if (covered[c]) throw InputError("crossing " + std::to_string(c) + " appears in two blocks");
      covered[c] = 1;
    }
  }
  if (std::find(covered.begin(), covered.end(), 0) != covered.end()) {
    throw InputError("plan blocks do not cover every crossing");
  }
  if (plan.merges.size() + 1 != plan.blocks.size()) throw InputError("plan merge tree has the wrong size");
  std::vector<std::vector<ArcId>> arcs;
  for (const auto& b : plan.blocks) arcs.push_back(block_arcs(pres, b));
  std::vector<char> used(plan.blocks.size() + plan.merges.size(), 0);
  for (std::size_t i = 0; i < plan.merges.size(); ++i) {
    const auto& m = plan.merges[i];
    const std::size_t self = plan.blocks.size() + i;
    if (m.left >= self || m.right >= self || m.left == m.right || used[m.left] || used[m.right]) {
      throw InputError("plan merge " + std::to_string(i) + " does not form a tree");
    }
    used[m.left] = used[m.right] = 1;
    const std::size_t s = shared_count(arcs[m.left], arcs[m.right]);
    if ((s == 0) != m.cartesian) {
      throw InputError("plan merge " + std::to_string(i) + " misstates whether its operands share arcs");
    }
    arcs.push_back(merge_sets(arcs[m.left], arcs[m.right]));
  }
}

// ---------------------------------------------------------------------------
// Block solving and joins

namespace {

constexpr int kUnset = -1;

struct BlockSearch {
  const FiniteQuandle& q;
  std::vector<Relation> rels;  // in local arc indices
  std::vector<int> value;      // per local arc, kUnset if free
  std::vector<std::vector<int>> rows;

  // Applies forced consequences until nothing changes. False on contradiction.
  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& r : rels) {
        const int s = to_int(r.sign);
        const int y = value[r.over];
        if (y == kUnset) continue;
        const int x = value[r.in];
        const int z = value[r.out];
        if (x != kUnset) {
          const int forced = q.act(static_cast<Element>(x), static_cast<Element>(y), s);
          if (z == kUnset) {
            value[r.out] = forced;
            changed = true;
          } else if (z != forced) {
            return false;
          }
        } else if (z != kUnset) {
          value[r.in] = q.act(static_cast<Element>(z), static_cast<Element>(y), -s);
          changed = true;
        }
      }
    }
    return true;
  }

  void run() {
    const std::vector<int> saved = value;
    if (!propagate()) {
      value = saved;
      return;
    }
    std::size_t branch = value.size();
    for (const auto& r : rels) {
      if (value[r.over] == kUnset) {
        branch = r.over;
        break;
      }
      if (value[r.in] == kUnset) {
        branch = r.in;
        break;
      }
    }
    if (branch == value.size()) {
      rows.push_back(value);
    } else {
      for (std::size_t e = 0; e < q.size(); ++e) {
        value[branch] = static_cast<int>(e);
        run();
        value[branch] = kUnset;
      }
    }
    value = saved;
  }
};

}  // namespace

PartialSolutionTable solve_block(const QuandlePresentation& pres, BlockRange block, const FiniteQuandle& q) {
  if (block.first >= block.last || block.last > pres.relations.size()) {
    throw InputError("block " + range_str(block) + " is empty or out of range");
  }
  const std::vector<ArcId> arcs = block_arcs(pres, block);
  auto local = [&](ArcId a) {
    return static_cast<ArcId>(std::lower_bound(arcs.begin(), arcs.end(), a) - arcs.begin());
  };
  BlockSearch search{q, {}, std::vector<int>(arcs.size(), kUnset), {}};
  for (std::size_t c = block.first; c < block.last; ++c) {
    const auto& r = pres.relations[c];
    search.rels.push_back({local(r.out), local(r.in), local(r.over), r.sign});
  }
  search.run();

  const int dim = q.coord_dim();
  PartialSolutionTable t;
  for (ArcId a : arcs) {
    for (int k = 0; k < dim; ++k) t.vars.push_back(static_cast<ScalarVar>(a * dim + k));
  }
  t.data.reserve(search.rows.size() * t.vars.size());
  for (const auto& row : search.rows) {
    for (int e : row) {
      auto c = q.coords(static_cast<Element>(e));
      t.data.insert(t.data.end(), c.begin(), c.end());
    }
  }
  t.canonicalize();
  if (t.empty()) t.empty_reason = "block " + range_str(block) + " has no solutions";
  return t;
}

PartialSolutionTable equi_join(const PartialSolutionTable& a, const PartialSolutionTable& b) {
  using Guard = JoinGuardError::Guard;
  if (a.empty()) throw JoinGuardError(Guard::left_empty, "join guard: left operand is empty");
  if (b.empty()) throw JoinGuardError(Guard::right_empty, "join guard: right operand is empty");

  std::vector<std::size_t> a_key, b_key;
  {
    std::size_t i = 0, j = 0;
    while (i < a.vars.size() && j < b.vars.size()) {
      if (a.vars[i] < b.vars[j]) {
        ++i;
      } else if (b.vars[j] < a.vars[i]) {
        ++j;
      } else {
        a_key.push_back(i++);
        b_key.push_back(j++);
      }
    }
  }
  if (a_key.empty()) {
    throw JoinGuardError(Guard::no_shared_key, "join guard: operands share no variables");
  }

  // Output layout: union of variables in increasing order, each sourced from a or from b.
  PartialSolutionTable out;
  std::vector<std::pair<bool, std::size_t>> source;
  {
    std::size_t i = 0, j = 0;
    while (i < a.vars.size() || j < b.vars.size()) {
      if (j == b.vars.size() || (i < a.vars.size() && a.vars[i] <= b.vars[j])) {
        if (j < b.vars.size() && a.vars[i] == b.vars[j]) ++j;
        out.vars.push_back(a.vars[i]);
        source.push_back({true, i++});
      } else {
        out.vars.push_back(b.vars[j]);
        source.push_back({false, j++});
      }
    }
  }

  auto key_of = [](std::span<const std::uint8_t> row, const std::vector<std::size_t>& cols) {
    std::string k(cols.size(), '\0');
    for (std::size_t i = 0; i < cols.size(); ++i) k[i] = static_cast<char>(row[cols[i]]);
    return k;
  };
  std::unordered_map<std::string, std::vector<std::uint32_t>> index;
  index.reserve(b.rows());
  for (std::size_t r = 0; r < b.rows(); ++r) index[key_of(b.row(r), b_key)].push_back(static_cast<std::uint32_t>(r));

  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto ra = a.row(r);
    auto it = index.find(key_of(ra, a_key));
    if (it == index.end()) continue;
    for (auto rb_idx : it->second) {
      const auto rb = b.row(rb_idx);
      for (const auto& [from_a, col] : source) out.data.push_back(from_a ? ra[col] : rb[col]);
    }
  }
  out.canonicalize();
  if (out.empty()) out.empty_reason = "no pair of rows agrees on the shared variables";
  return out;
}

PartialSolutionTable cross_join(const PartialSolutionTable& a, const PartialSolutionTable& b) {
  std::vector<ScalarVar> common;
  std::set_intersection(a.vars.begin(), a.vars.end(), b.vars.begin(), b.vars.end(), std::back_inserter(common));
  if (!common.empty()) throw InputError("cartesian product of tables that share variables");
  PartialSolutionTable out;
  std::vector<std::pair<bool, std::size_t>> source;
  {
    std::size_t i = 0, j = 0;
    while (i < a.vars.size() || j < b.vars.size()) {
      if (j == b.vars.size() || (i < a.vars.size() && a.vars[i] < b.vars[j])) {
        out.vars.push_back(a.vars[i]);
        source.push_back({true, i++});
      } else {
        out.vars.push_back(b.vars[j]);
        source.push_back({false, j++});
      }
    }
  }
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t s = 0; s < b.rows(); ++s) {
      const auto ra = a.row(r);
      const auto rb = b.row(s);
      for (const auto& [from_a, col] : source) out.data.push_back(from_a ? ra[col] : rb[col]);
    }
  }
  out.canonicalize();
  if (out.empty()) out.empty_reason = "cartesian product with an empty operand";
  return out;
}

// ---------------------------------------------------------------------------
// Brute force

std::uint64_t default_brute_budget() {
  constexpr std::uint64_t fallback = 100'000'000;
  const char* env = std::getenv("QC_BUDGET");
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v >= 1)) {
    throw InputError(std::string("QC_BUDGET must be a positive number, got '") + env + "'");
  }
  return static_cast<std::uint64_t>(v);
}

namespace {

void check_budget(std::size_t n_elems, std::size_t n_arcs, std::uint64_t budget) {
  const long double space = std::pow(static_cast<long double>(n_elems), static_cast<long double>(n_arcs));
  if (space > static_cast<long double>(budget)) {
    std::ostringstream msg;
    msg << "brute force would enumerate " << n_elems << "^" << n_arcs << " assignments, above the budget of "
        << budget << " (set QC_BUDGET or use the block solver)";
    throw BudgetExceeded(msg.str());
  }
}

}  // namespace

std::vector<Coloring> brute_force(const QuandlePresentation& pres, const FiniteQuandle& q, std::uint64_t budget) {
  const std::size_t n = pres.generator_count;
  check_budget(q.size(), n, budget);
  // Each relation is tested as soon as its largest arc is assigned.
  std::vector<std::vector<Relation>> due(n);
  for (const auto& r : pres.relations) due[std::max({r.in, r.out, r.over})].push_back(r);

  std::vector<Coloring> out;
  Coloring f{std::vector<Element>(n, 0)};
  auto dfs = [&](auto&& self, std::size_t arc) -> void {
    if (arc == n) {
      out.push_back(f);
      return;
    }
    for (std::size_t e = 0; e < q.size(); ++e) {
      f.arcs[arc] = static_cast<Element>(e);
      const bool ok = std::all_of(due[arc].begin(), due[arc].end(), [&](const Relation& r) {
        return q.act(f.arcs[r.in], f.arcs[r.over], to_int(r.sign)) == f.arcs[r.out];
      });
      if (ok) self(self, arc + 1);
    }
  };
  dfs(dfs, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Full solve

namespace {

std::vector<PartialSolutionTable> solve_blocks(const QuandlePresentation& pres, const BlockPlan& plan,
                                               const FiniteQuandle& q, unsigned threads) {
  std::vector<PartialSolutionTable> tables(plan.blocks.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(plan.blocks.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < plan.blocks.size(); ++i) tables[i] = solve_block(pres, plan.blocks[i], q);
    return tables;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < plan.blocks.size(); i = next++) {
            tables[i] = solve_block(pres, plan.blocks[i], q);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return tables;
}

// Runs the merge tree. Returns the root table, or an empty table with provenance in the report.
PartialSolutionTable run_plan(const QuandlePresentation& pres, const BlockPlan& plan, const FiniteQuandle& q,
                              const SolveOptions& opt, SolveReport& report) {
  std::vector<PartialSolutionTable> nodes = solve_blocks(pres, plan, q, opt.threads);
  auto note_size = [&](const PartialSolutionTable& t) {
    report.max_intermediate_rows = std::max(report.max_intermediate_rows, t.rows());
  };
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    note_size(nodes[i]);
    if (nodes[i].empty()) {
      report.empty_provenance = nodes[i].empty_reason;
      return {};
    }
  }
  nodes.resize(plan.blocks.size() + plan.merges.size());
  bool warned = false;
  for (std::size_t i = 0; i < plan.merges.size(); ++i) {
    const auto& m = plan.merges[i];
    PartialSolutionTable t = m.cartesian ? cross_join(nodes[m.left], nodes[m.right])
                                         : equi_join(nodes[m.left], nodes[m.right]);
    nodes[m.left] = {};
    nodes[m.right] = {};
    note_size(t);
    if (!warned && t.rows() > opt.row_warning) {
      warned = true;
      report.notes.push_back("merge " + std::to_string(i) + " produced " + std::to_string(t.rows()) +
                             " intermediate rows, above the warning threshold of " +
                             std::to_string(opt.row_warning));
    }
    if (t.empty()) {
      report.empty_provenance = "merge " + std::to_string(i) + " (nodes " + std::to_string(m.left) + " and " +
                                std::to_string(m.right) + "): " + t.empty_reason;
      return {};
    }
    nodes[plan.blocks.size() + i] = std::move(t);
  }
  return std::move(nodes[plan.root()]);
}

// Expands table rows into full colorings, letting arcs absent from the table range over q.
std::vector<Coloring> expand_rows(const PartialSolutionTable& t, std::size_t arc_count, const FiniteQuandle& q) {
  const int dim = q.coord_dim();
  std::vector<char> bound(arc_count, 0);
  for (ScalarVar v : t.vars) bound[v / dim] = 1;
  std::vector<ArcId> free_arcs;
  for (ArcId a = 0; a < arc_count; ++a) {
    if (!bound[a]) free_arcs.push_back(a);
  }

  std::vector<Coloring> bases;
  if (t.vars.empty()) {
    bases.push_back({std::vector<Element>(arc_count, 0)});
  } else {
    for (std::size_t r = 0; r < t.rows(); ++r) {
      Coloring f{std::vector<Element>(arc_count, 0)};
      const auto row = t.row(r);
      for (std::size_t i = 0; i < row.size(); i += dim) {
        const auto e = q.from_coords(row.subspan(i, dim));
        if (!e) throw ResidualFailure("solver produced coordinates that name no quandle element");
        f.arcs[t.vars[i] / dim] = *e;
      }
      bases.push_back(std::move(f));
    }
  }
  std::vector<Coloring> out;
  for (auto& base : bases) {
    auto fill = [&](auto&& self, std::size_t k) -> void {
      if (k == free_arcs.size()) {
        out.push_back(base);
        return;
      }
      for (std::size_t e = 0; e < q.size(); ++e) {
        base.arcs[free_arcs[k]] = static_cast<Element>(e);
        self(self, k + 1);
      }
    };
    fill(fill, 0);
  }
  return out;
}

}  // namespace

SolveResult solve(const QuandlePresentation& pres, const FiniteQuandle& q, const SolveOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  SolveResult result;
  SolveReport& rep = result.report;
  rep.solver = opt.solver;

  if (opt.solver == SolverKind::brute) {
    result.colorings = brute_force(pres, q, opt.brute_budget);
  } else if (pres.relations.empty()) {
    std::size_t free_count = pres.generator_count;
    check_budget(q.size(), free_count, opt.brute_budget);
    rep.notes.push_back("no relations: every arc is free");
    result.colorings = expand_rows(PartialSolutionTable{}, pres.generator_count, q);
  } else {
    BlockPlan plan = opt.plan ? *opt.plan : make_block_plan(pres, opt.block_size);
    validate_plan(pres, plan);
    PartialSolutionTable root = run_plan(pres, plan, q, opt, rep);
    if (!rep.empty_provenance) {
      const std::size_t bound_arcs = root.vars.size() / q.coord_dim();
      if (bound_arcs < pres.generator_count) {
        rep.notes.push_back(std::to_string(pres.generator_count - bound_arcs) +
                            " arc(s) meet no crossing and range freely");
      }
      result.colorings = expand_rows(root, pres.generator_count, q);
    }
    rep.plan = std::move(plan);
  }

  std::sort(result.colorings.begin(), result.colorings.end());
  if (auto bad = find_residual_failure(pres, q, result.colorings)) {
    throw ResidualFailure("coloring " + std::to_string(bad->coloring) + " violates the relation at crossing " +
                          std::to_string(bad->crossing));
  }
  rep.residual_ok = true;
  rep.hom_count = result.colorings.size();
  rep.image_tally = enhanced_polynomial(result.colorings);
  if (rep.image_tally.degree() > static_cast<int>(q.size())) {
    throw ResidualFailure("image size exceeds the target quandle order");
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace qc
