// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any criterion fails.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "oracle.hpp"
#include "qcolor/error.hpp"
#include "qcolor/family.hpp"
#include "qcolor/invariants.hpp"
#include "qcolor/solver.hpp"

using namespace qc;
using Coeffs = std::map<int, std::uint64_t>;

namespace {

constexpr double kMaxSecondsZ3 = 10.0;

struct Solved {
  SolveResult result;
  InvariantRecord record;
  double seconds = 0;
};

std::map<std::string, LinkDiagram> g_diagrams;
std::map<std::pair<std::string, std::string>, Solved> g_cache;

const LinkDiagram& diagram(const std::string& file) {
  auto it = g_diagrams.find(file);
  if (it == g_diagrams.end()) it = g_diagrams.emplace(file, load_diagram(oracle::data(file))).first;
  return it->second;
}

Solved run(const LinkDiagram& d, const FiniteQuandle& q) {
  const auto start = std::chrono::steady_clock::now();
  Solved s{solve(presentation(d), q), {}, 0};
  s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  s.record = make_record(d.name(), q.spec(), s.result.colorings);
  return s;
}

const Solved& solved(const std::string& file, const std::string& spec) {
  const auto key = std::make_pair(file, spec);
  auto it = g_cache.find(key);
  if (it == g_cache.end()) it = g_cache.emplace(key, run(diagram(file), parse_quandle_spec(spec))).first;
  return it->second;
}

// Collects failures for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && first_.empty()) first_ = what;
    ok_ = ok_ && ok;
  }
  void info(const std::string& s) { info_ += (info_.empty() ? "" : "; ") + s; }
  bool ok() const { return ok_; }
  std::string summary() const { return ok_ ? info_ : "first failure: " + first_ + (info_.empty() ? "" : " | " + info_); }

 private:
  bool ok_ = true;
  std::string first_;
  std::string info_;
};

int g_failed = 0;

void report(int id, const std::string& title, const Check& c) {
  std::cout << (c.ok() ? "PASS" : "FAIL") << "  " << id << "  " << title << "  --  " << c.summary() << std::endl;
  if (!c.ok()) ++g_failed;
}

template <class F>
void criterion(int id, const std::string& title, F body) {
  Check c;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  report(id, title, c);
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

std::set<std::vector<Element>> as_set(const std::vector<Coloring>& fs) {
  std::set<std::vector<Element>> s;
  for (const auto& f : fs) s.insert(f.arcs);
  return s;
}

std::array<int, 4> random_invertible(std::mt19937& rng, int p) {
  std::uniform_int_distribution<int> d(0, p - 1);
  while (true) {
    std::array<int, 4> s{d(rng), d(rng), d(rng), d(rng)};
    if (mod(s[0] * s[3] - s[1] * s[2], p) != 0) return s;
  }
}

const char* const kZ3 = "symplectic:p=3,lambda=2";
const char* const kZ5 = "symplectic:p=5,lambda=1";

}  // namespace

int main() {
  const Coeffs h3{{1, 9}, {2, 72}, {3, 72}};
  const Coeffs l3{{1, 9}, {2, 72}, {3, 24}, {9, 48}};
  const Coeffs h5{{1, 25}, {2, 360}, {3, 840}};
  const Coeffs l5{{1, 25}, {2, 360}, {3, 360}, {21, 360}, {22, 120}};

  criterion(1, "Z3 regression for H, L1, L2 (exact; block solver < 10 s each)", [&](Check& c) {
    for (const auto& [file, want] : {std::pair{"hopf_sum.json", h3}, {"as_l1.json", l3}, {"as_l2.json", l3}}) {
      const auto& s = solved(file, kZ3);
      c.expect(s.record.phi == 153, std::string(file) + " hom_count " + std::to_string(s.record.phi));
      c.expect(s.record.phi_e == EnhancedPolynomial(want), std::string(file) + " phi_E " + s.record.phi_e.render());
      c.expect(s.seconds < kMaxSecondsZ3, std::string(file) + " took " + fmt_seconds(s.seconds));
      c.info(std::string(file) + ": " + std::to_string(s.record.phi) + ", " + s.record.phi_e.render() + ", " +
             fmt_seconds(s.seconds));
    }
  });

  criterion(2, "Z5 regression for H (lambda 1, 2) and L1 (lambda 1), exact", [&](Check& c) {
    for (const char* spec : {"symplectic:p=5,lambda=1", "symplectic:p=5,lambda=2"}) {
      const auto& s = solved("hopf_sum.json", spec);
      c.expect(s.record.phi == 1225 && s.record.phi_e == EnhancedPolynomial(h5),
               std::string("H over ") + spec + ": " + s.record.phi_e.render());
    }
    const auto& l1 = solved("as_l1.json", kZ5);
    c.expect(l1.record.phi == 1225, "L1 hom_count " + std::to_string(l1.record.phi));
    c.expect(l1.record.phi_e == EnhancedPolynomial(l5), "L1 phi_E " + l1.record.phi_e.render());
    const Coeffs tabulated{{1, 25}, {2, 360}, {3, 840}, {21, 360}, {22, 120}};
    c.expect(EnhancedPolynomial(tabulated).total() != 1225, "840q^3 variant unexpectedly sums to 1225");
    c.info("H: " + solved("hopf_sum.json", kZ5).record.phi_e.render());
    c.info("L1: " + l1.record.phi_e.render() + " in " + fmt_seconds(l1.seconds));
    c.info("840q^3 variant sums to " + std::to_string(EnhancedPolynomial(tabulated).total()));
  });

  criterion(3, "L2 over Z5 completes without a join-guard failure (no reference value)", [&](Check& c) {
    const auto& s = solved("as_l2.json", kZ5);
    c.expect(s.result.report.hom_count > 0, "empty Hom set");
    c.expect(!s.result.report.empty_provenance, "emptied by " + s.result.report.empty_provenance.value_or(""));
    c.expect(s.result.report.residual_ok, "residual check");
    c.expect(s.record.phi_e.coefficient(1) == 25, "constant colorings missing");
    c.info("unverified result: " + std::to_string(s.record.phi) + ", " + s.record.phi_e.render() + " in " +
           fmt_seconds(s.seconds));
  });

  criterion(4, "brute force and block solver agree on every target with |T| <= 25 (exact sets)", [&](Check& c) {
    std::vector<FiniteQuandle> targets;
    for (int p : {2, 3, 5}) {
      for (int l = 1; l < p; ++l) {
        targets.push_back(symplectic_quandle(FieldPrime(p), l));
        targets.push_back(punctured(targets.back()));
      }
    }
    for (int n = 1; n <= 25; ++n) {
      targets.push_back(takasaki_quandle(n));
      for (int t = 1; t < std::max(n, 2); ++t) {
        if (std::gcd(t, n) == 1) targets.push_back(alexander_quandle(n, t));
      }
    }
    std::size_t runs = 0;
    for (const char* file : {"unknot.json", "unlink2.json", "hopf.json", "hopf_sum.json"}) {
      const auto pres = presentation(diagram(file));
      for (const auto& q : targets) {
        const auto brute = as_set(brute_force(pres, q));
        for (std::size_t bs : {2u, 4u}) {
          SolveOptions o;
          o.block_size = bs;
          c.expect(as_set(solve(pres, q, o).colorings) == brute, std::string(file) + " over " + q.spec());
          ++runs;
        }
      }
    }
    c.info(std::to_string(targets.size()) + " targets, " + std::to_string(runs) + " comparisons");
  });

  criterion(5, "quandle axioms (exhaustive) and single orbit on M minus 0", [&](Check& c) {
    std::size_t checked = 0;
    for (int p : {2, 3, 5, 7}) {
      for (int l = 1; l < p; ++l) {
        const auto q = symplectic_quandle(FieldPrime(p), l);
        c.expect(verify_axioms(q).ok(), "axioms " + q.spec());
        std::vector<Element> nonzero(q.size() - 1);
        std::iota(nonzero.begin(), nonzero.end(), Element{1});
        c.expect(connected_components(q, nonzero).size() == 1, "orbit " + q.spec());
        ++checked;
      }
    }
    for (int n = 1; n <= 9; ++n) {
      c.expect(verify_axioms(takasaki_quandle(n)).ok(), "axioms takasaki n=" + std::to_string(n));
      ++checked;
      for (int t = 1; t < std::max(n, 2); ++t) {
        if (std::gcd(t, n) != 1) continue;
        c.expect(verify_axioms(alexander_quandle(n, t)).ok(),
                 "axioms alexander n=" + std::to_string(n) + " t=" + std::to_string(t));
        ++checked;
      }
    }
    c.info(std::to_string(checked) + " quandles");
  });

  criterion(6, "every Z3 coloring of L1 transfers to L2 and L3 with the same image size", [&](Check& c) {
    const auto core = extract_core(diagram("as_l1.json"), diagram("as_l2.json"));
    const auto q = parse_quandle_spec(kZ3);
    const auto& l1 = solved("as_l1.json", kZ3).result.colorings;
    const auto l2_hom = as_set(solved("as_l2.json", kZ3).result.colorings);
    c.expect(l1.size() == 153, "L1 has " + std::to_string(l1.size()) + " colorings");
    for (std::size_t n : {2u, 3u}) {
      std::set<std::vector<Element>> image;
      for (const auto& f1 : l1) {
        const auto fn = transfer_coloring(core, q, f1, n);  // residual-checked
        c.expect(image_size(fn) == image_size(f1), "image size changed for n=" + std::to_string(n));
        image.insert(fn.arcs);
        if (n == 2) c.expect(l2_hom.contains(fn.arcs), "transferred coloring missing from Hom(L2)");
      }
      c.expect(image.size() == 153, "n=" + std::to_string(n) + " gives " + std::to_string(image.size()) +
                                        " distinct colorings");
    }
    c.info("153 -> L2 (subset of " + std::to_string(l2_hom.size()) + ") and L3");
  });

  criterion(7, "degree gap: deg H = 3, deg L1 = 9 / 22, separation verdicts", [&](Check& c) {
    for (const auto& [spec, deg] : {std::pair{kZ3, 9}, {kZ5, 22}}) {
      const auto& h = solved("hopf_sum.json", spec).record;
      const auto& l1 = solved("as_l1.json", spec).record;
      const auto& l2 = solved("as_l2.json", spec).record;
      c.expect(h.degree() == 3, std::string("deg H over ") + spec + " = " + std::to_string(h.degree()));
      c.expect(l1.degree() == deg, std::string("deg L1 over ") + spec + " = " + std::to_string(l1.degree()));
      c.expect(separates(h, l1) == Separation::by_polynomial, std::string("(H, L1) over ") + spec);
      c.expect(separates(h, l2) == Separation::by_polynomial, std::string("(H, L2) over ") + spec);
      c.expect(degree_gap_check(h, l1) == GapVerdict::separated, std::string("gap over ") + spec);
      c.info(std::string(spec) + ": deg H " + std::to_string(h.degree()) + ", deg L1 " + std::to_string(l1.degree()));
    }
    const auto v = separates(solved("as_l1.json", kZ3).record, solved("as_l2.json", kZ3).record);
    c.expect(v == Separation::none, "(L1, L2) over Z3 gives " + to_string(v));
  });

  criterion(8, "phi_E invariant under lambda scaling, S^T J S, relabeling and an R-I kink", [&](Check& c) {
    std::mt19937 rng(20240601);
    std::size_t runs = 0;
    for (int p : {3, 5}) {
      const FieldPrime fp(p);
      const auto base_spec = "symplectic:p=" + std::to_string(p) + ",lambda=1";
      std::vector<std::string> files{"hopf.json", "hopf_sum.json", "as_l1.json"};
      for (const auto& file : files) {
        const auto& ref = solved(file, base_spec).record.phi_e;
        for (int l = 2; l < p; ++l) {
          const auto& r = solved(file, "symplectic:p=" + std::to_string(p) + ",lambda=" + std::to_string(l)).record;
          c.expect(r.phi_e == ref, file + " lambda=" + std::to_string(l) + " p=" + std::to_string(p));
          ++runs;
        }
      }
      const auto j = SymplecticForm::scaled_standard(fp, 1);
      for (int i = 0; i < 20; ++i) {
        const auto q = symplectic_quandle(j.congruent(random_invertible(rng, p)));
        for (const auto& file : files) {
          if (p == 5 && file == "as_l1.json") continue;  // covered by scaling; keeps the run short
          const auto r = run(diagram(file), q).record;
          c.expect(r.phi_e == solved(file, base_spec).record.phi_e, file + " under " + q.spec());
          ++runs;
        }
      }
      const auto& h = diagram("hopf_sum.json");
      std::vector<ArcId> reversed(h.arc_count());
      std::iota(reversed.rbegin(), reversed.rend(), 0u);
      const auto q = symplectic_quandle(fp, 1);
      const auto& ref = solved("hopf_sum.json", base_spec).record;
      const auto relabeled = run(relabel_arcs(h, reversed), q).record;
      c.expect(relabeled.phi == ref.phi && relabeled.phi_e == ref.phi_e, "relabeled H over p=" + std::to_string(p));
      for (ArcId a = 0; a < h.arc_count(); ++a) {
        for (Sign s : {Sign::positive, Sign::negative}) {
          const auto kinked = run(add_kink(h, a, s), q).record;
          c.expect(kinked.phi == ref.phi && kinked.phi_e == ref.phi_e,
                   "kink on arc " + std::to_string(a) + " over p=" + std::to_string(p));
          ++runs;
        }
      }
    }
    c.info(std::to_string(runs) + " comparisons");
  });

  std::cout << (g_failed == 0 ? "all criteria passed" : std::to_string(g_failed) + " criteria failed") << std::endl;
  return g_failed == 0 ? 0 : 1;
}
