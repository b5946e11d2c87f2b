#include "qcolor/quandle.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>

#include "qcolor/error.hpp"

namespace qc {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldPrime::FieldPrime(int p) : p_(p) {
  if (!is_prime(p)) throw InputError("modulus " + std::to_string(p) + " is not prime");
}

int FieldPrime::inverse(int a) const {
  a = mod(a, p_);
  if (a == 0) throw InputError("zero has no inverse mod " + std::to_string(p_));
  for (int b = 1; b < p_; ++b) {
    if (a * b % p_ == 1) return b;
  }
  return 0;  // unreachable for prime p
}

// ---------------------------------------------------------------------------
// SymplecticForm

SymplecticForm SymplecticForm::scaled_standard(FieldPrime p, int lambda) {
  const int q = p.value();
  const int l = mod(lambda, q);
  if (l == 0) {
    throw InputError("lambda = " + std::to_string(lambda) + " is zero mod " + std::to_string(q) +
                     ": degenerate form");
  }
  return SymplecticForm(q, {0, l, mod(-l, q), 0}, l);
}

SymplecticForm SymplecticForm::from_matrix(FieldPrime p, std::array<int, 4> m) {
  const int q = p.value();
  for (auto& v : m) v = mod(v, q);
  if (m[0] != 0 || m[3] != 0 || mod(m[1] + m[2], q) != 0) {
    throw InputError("form matrix is not alternating mod " + std::to_string(q));
  }
  SymplecticForm f(q, m, std::nullopt);
  if (f.determinant() == 0) throw InputError("form matrix is degenerate mod " + std::to_string(q));
  return f;
}

int SymplecticForm::determinant() const noexcept {
  return mod(static_cast<long long>(m_[0]) * m_[3] - static_cast<long long>(m_[1]) * m_[2], p_);
}

int SymplecticForm::pair(int x1, int x2, int y1, int y2) const noexcept {
  const long long v = static_cast<long long>(x1) * (m_[0] * y1 + m_[1] * y2) +
                      static_cast<long long>(x2) * (m_[2] * y1 + m_[3] * y2);
  return mod(v, p_);
}

SymplecticForm SymplecticForm::congruent(const std::array<int, 4>& s) const {
  const int det = mod(static_cast<long long>(s[0]) * s[3] - static_cast<long long>(s[1]) * s[2], p_);
  if (det == 0) throw InputError("basis change matrix is singular");
  // (S^T M S)_{ij} = sum_{k,l} S_{ki} M_{kl} S_{lj}
  std::array<int, 4> r{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      long long acc = 0;
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) acc += static_cast<long long>(s[k * 2 + i]) * m_[k * 2 + l] * s[l * 2 + j];
      }
      r[i * 2 + j] = mod(acc, p_);
    }
  }
  return from_matrix(FieldPrime(p_), r);
}

// ---------------------------------------------------------------------------
// FiniteQuandle

FiniteQuandle::FiniteQuandle(std::size_t n, std::vector<Element> op, std::vector<Element> inv,
                             std::string spec)
    : n_(n), op_(std::move(op)), inv_(std::move(inv)), spec_(std::move(spec)) {
  if (n_ == 0) throw InputError("quandle must be non-empty");
  if (op_.size() != n_ * n_ || inv_.size() != n_ * n_) {
    throw InputError("operation tables must be n x n");
  }
  for (std::size_t i = 0; i < n_ * n_; ++i) {
    if (op_[i] >= n_ || inv_[i] >= n_) throw InputError("operation table entry out of range");
  }
  std::vector<std::uint8_t> c(n_);
  if (n_ > 256) throw InputError("quandles larger than 256 elements are not supported");
  std::iota(c.begin(), c.end(), std::uint8_t{0});
  set_coords(1, static_cast<int>(n_), std::move(c));
}

void FiniteQuandle::set_coords(int dim, int radix, std::vector<std::uint8_t> coords) {
  coord_dim_ = dim;
  coord_radix_ = radix;
  coords_ = std::move(coords);
  std::size_t cells = 1;
  for (int i = 0; i < dim; ++i) cells *= static_cast<std::size_t>(radix);
  coord_index_.assign(cells, -1);
  for (std::size_t e = 0; e < n_; ++e) {
    std::size_t code = 0;
    for (int i = 0; i < dim; ++i) code = code * radix + coords_[e * dim + i];
    coord_index_[code] = static_cast<std::int32_t>(e);
  }
}

std::optional<Element> FiniteQuandle::from_coords(std::span<const std::uint8_t> c) const {
  if (static_cast<int>(c.size()) != coord_dim_) return std::nullopt;
  std::size_t code = 0;
  for (auto v : c) {
    if (v >= coord_radix_) return std::nullopt;
    code = code * coord_radix_ + v;
  }
  const auto e = coord_index_[code];
  if (e < 0) return std::nullopt;
  return static_cast<Element>(e);
}

std::string FiniteQuandle::label(Element e) const {
  auto c = coords(e);
  if (coord_dim_ == 1) return std::to_string(c[0]);
  std::string s = "(";
  for (int i = 0; i < coord_dim_; ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s + ")";
}

FiniteQuandle symplectic_quandle(const SymplecticForm& form) {
  const int p = form.prime();
  const std::size_t n = static_cast<std::size_t>(p) * p;
  std::vector<Element> op(n * n), inv(n * n);
  for (int x1 = 0; x1 < p; ++x1) {
    for (int x2 = 0; x2 < p; ++x2) {
      for (int y1 = 0; y1 < p; ++y1) {
        for (int y2 = 0; y2 < p; ++y2) {
          const int f = form.pair(x1, x2, y1, y2);
          const std::size_t idx = static_cast<std::size_t>(x1 * p + x2) * n + (y1 * p + y2);
          op[idx] = static_cast<Element>(mod(x1 + f * y1, p) * p + mod(x2 + f * y2, p));
          inv[idx] = static_cast<Element>(mod(x1 - f * y1, p) * p + mod(x2 - f * y2, p));
        }
      }
    }
  }
  std::ostringstream spec;
  if (form.lambda()) {
    spec << "symplectic:p=" << p << ",lambda=" << *form.lambda();
  } else {
    const auto& m = form.matrix();
    spec << "symplectic:p=" << p << ",matrix=" << m[0] << ';' << m[1] << ';' << m[2] << ';' << m[3];
  }
  FiniteQuandle q(n, std::move(op), std::move(inv), spec.str());
  q.kind_ = QuandleKind::symplectic;
  q.form_ = form;
  std::vector<std::uint8_t> coords(n * 2);
  for (std::size_t e = 0; e < n; ++e) {
    coords[e * 2] = static_cast<std::uint8_t>(e / p);
    coords[e * 2 + 1] = static_cast<std::uint8_t>(e % p);
  }
  q.set_coords(2, p, std::move(coords));
  return q;
}

FiniteQuandle symplectic_quandle(FieldPrime p, int lambda) {
  return symplectic_quandle(SymplecticForm::scaled_standard(p, lambda));
}

FiniteQuandle alexander_quandle(int n, int t) {
  if (n < 1) throw InputError("alexander quandle needs n >= 1");
  const int tt = mod(t, n);
  if (std::gcd(tt, n) != 1 && n > 1) {
    throw InputError("t = " + std::to_string(t) + " is not a unit mod " + std::to_string(n));
  }
  int t_inv = 0;
  for (int u = 0; u < n; ++u) {
    if (mod(static_cast<long long>(u) * tt, n) == mod(1, n)) {
      t_inv = u;
      break;
    }
  }
  const std::size_t sz = static_cast<std::size_t>(n);
  std::vector<Element> op(sz * sz), inv(sz * sz);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      op[x * sz + y] = static_cast<Element>(mod(static_cast<long long>(tt) * x + (1 - tt) * y, n));
      // x = t z + (1 - t) y  =>  z = t^-1 (x - (1 - t) y)
      inv[x * sz + y] = static_cast<Element>(
          mod(static_cast<long long>(t_inv) * mod(x - static_cast<long long>(1 - tt) * y, n), n));
    }
  }
  FiniteQuandle q(sz, std::move(op), std::move(inv),
                  "alexander:n=" + std::to_string(n) + ",t=" + std::to_string(tt));
  q.kind_ = QuandleKind::alexander;
  return q;
}

FiniteQuandle takasaki_quandle(int n) {
  if (n < 1) throw InputError("takasaki quandle needs n >= 1");
  FiniteQuandle q = alexander_quandle(n, n - 1);
  q.kind_ = QuandleKind::takasaki;
  q.spec_ = "takasaki:n=" + std::to_string(n);
  return q;
}

FiniteQuandle subquandle(const FiniteQuandle& parent, std::span<const Element> subset) {
  if (subset.empty()) throw InputError("subquandle must be non-empty");
  std::vector<std::int32_t> index(parent.size(), -1);
  std::vector<Element> elems(subset.begin(), subset.end());
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (elems[i] >= parent.size()) throw InputError("subset element out of range");
    index[elems[i]] = static_cast<std::int32_t>(i);
  }
  const std::size_t k = elems.size();
  std::vector<Element> op(k * k), inv(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const auto a = index[parent.op(elems[i], elems[j])];
      const auto b = index[parent.inv(elems[i], elems[j])];
      if (a < 0 || b < 0) {
        throw InputError("subset is not closed: " + parent.label(elems[i]) + " and " +
                         parent.label(elems[j]) + " leave it");
      }
      op[i * k + j] = static_cast<Element>(a);
      inv[i * k + j] = static_cast<Element>(b);
    }
  }
  FiniteQuandle q(k, std::move(op), std::move(inv), parent.spec());
  q.kind_ = QuandleKind::subquandle;
  q.form_ = parent.form();
  const int dim = parent.coord_dim();
  std::vector<std::uint8_t> coords(k * dim);
  for (std::size_t i = 0; i < k; ++i) {
    auto c = parent.coords(elems[i]);
    std::copy(c.begin(), c.end(), coords.begin() + static_cast<std::ptrdiff_t>(i * dim));
  }
  q.set_coords(dim, parent.coord_radix(), std::move(coords));
  return q;
}

FiniteQuandle punctured(const FiniteQuandle& q) {
  std::vector<Element> keep;
  for (std::size_t e = 0; e < q.size(); ++e) {
    auto c = q.coords(static_cast<Element>(e));
    if (!std::all_of(c.begin(), c.end(), [](std::uint8_t v) { return v == 0; })) {
      keep.push_back(static_cast<Element>(e));
    }
  }
  FiniteQuandle sub = subquandle(q, keep);
  sub.spec_ = q.spec() + ":punctured";
  return sub;
}

// ---------------------------------------------------------------------------
// Spec strings

namespace {

int parse_int(std::string_view s, std::string_view what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InputError("bad integer for " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

FiniteQuandle parse_quandle_spec(std::string_view spec) {
  auto parts = split(spec, ':');
  if (parts.size() < 2 || parts.size() > 3) {
    throw InputError("quandle spec must look like 'family:key=value,...': '" + std::string(spec) + "'");
  }
  bool drop_zero = false;
  if (parts.size() == 3) {
    if (parts[2] != "punctured") throw InputError("unknown quandle modifier '" + std::string(parts[2]) + "'");
    drop_zero = true;
  }
  std::map<std::string, std::string, std::less<>> kv;
  for (auto item : split(parts[1], ',')) {
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw InputError("expected key=value in '" + std::string(item) + "'");
    kv.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
  }
  auto take = [&](const char* key) -> std::string {
    auto it = kv.find(key);
    if (it == kv.end()) throw InputError(std::string("quandle spec is missing '") + key + "'");
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  const std::string family(parts[0]);
  std::optional<FiniteQuandle> q;
  if (family == "symplectic") {
    FieldPrime p(parse_int(take("p"), "p"));
    if (kv.count("matrix")) {
      auto cells = split(take("matrix"), ';');
      if (cells.size() != 4) throw InputError("matrix needs four ';'-separated entries");
      std::array<int, 4> m{};
      for (int i = 0; i < 4; ++i) m[i] = parse_int(cells[i], "matrix");
      q = symplectic_quandle(SymplecticForm::from_matrix(p, m));
    } else {
      const int lambda = kv.count("lambda") ? parse_int(take("lambda"), "lambda") : 1;
      q = symplectic_quandle(p, lambda);
    }
  } else if (family == "takasaki") {
    q = takasaki_quandle(parse_int(take("n"), "n"));
  } else if (family == "alexander") {
    const int n = parse_int(take("n"), "n");
    q = alexander_quandle(n, parse_int(take("t"), "t"));
  } else {
    throw InputError("unknown quandle family '" + family + "'");
  }
  if (!kv.empty()) throw InputError("unexpected key '" + kv.begin()->first + "' in quandle spec");
  if (drop_zero) return punctured(*q);
  return std::move(*q);
}

// ---------------------------------------------------------------------------
// Axioms and orbits

AxiomReport verify_axioms(const FiniteQuandle& q, std::size_t max_violations) {
  AxiomReport report;
  const auto n = static_cast<Element>(q.size());
  auto add = [&](int axiom, Element x, Element y, Element z) {
    if (report.violations.size() < max_violations) report.violations.push_back({axiom, x, y, z});
  };
  for (Element x = 0; x < n; ++x) {
    if (q.op(x, x) != x) add(1, x, x, x);
  }
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (q.inv(q.op(x, y), y) != x || q.op(q.inv(x, y), y) != x) add(2, x, y, y);
    }
  }
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      const Element xy = q.op(x, y);
      for (Element z = 0; z < n; ++z) {
        if (q.op(xy, z) != q.op(q.op(x, z), q.op(y, z))) add(3, x, y, z);
      }
    }
  }
  return report;
}

std::vector<std::vector<Element>> connected_components(const FiniteQuandle& q,
                                                       std::span<const Element> subset) {
  std::vector<char> member(q.size(), 0);
  for (auto e : subset) {
    if (e >= q.size()) throw InputError("subset element out of range");
    member[e] = 1;
  }
  for (auto s : subset) {
    for (auto t : subset) {
      if (!member[q.op(s, t)] || !member[q.inv(s, t)]) {
        throw InputError("subset is not closed under the quandle operation");
      }
    }
  }
  std::vector<Element> parent(q.size());
  std::iota(parent.begin(), parent.end(), Element{0});
  auto find = [&](Element x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto s : subset) {
    for (auto t : subset) {
      const Element a = find(s), b = find(q.op(s, t));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<Element, std::vector<Element>> classes;
  std::vector<Element> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (auto e : sorted) classes[find(e)].push_back(e);
  std::vector<std::vector<Element>> out;
  for (auto& [root, members] : classes) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Element>> connected_components(const FiniteQuandle& q) {
  std::vector<Element> all(q.size());
  std::iota(all.begin(), all.end(), Element{0});
  return connected_components(q, all);
}

// ---------------------------------------------------------------------------
// Isomorphism search

namespace {

struct Signature {
  std::size_t fixed_by;  // #{y : x |> y = x}
  std::size_t fixes;     // #{y : y |> x = y}
  std::size_t orbit;     // size of x's connected component
  auto operator<=>(const Signature&) const = default;
};

std::vector<Signature> signatures(const FiniteQuandle& q) {
  const auto n = q.size();
  std::vector<Signature> sig(n);
  auto comps = connected_components(q);
  for (const auto& c : comps) {
    for (auto e : c) sig[e].orbit = c.size();
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (q.op(static_cast<Element>(x), static_cast<Element>(y)) == x) ++sig[x].fixed_by;
      if (q.op(static_cast<Element>(y), static_cast<Element>(x)) == y) ++sig[x].fixes;
    }
  }
  return sig;
}

// Greedy generating sequence: each generator lies outside the subquandle generated so far.
std::vector<Element> generating_sequence(const FiniteQuandle& q) {
  const auto n = q.size();
  std::vector<char> in(n, 0);
  std::vector<Element> members, gens;
  for (std::size_t cand = 0; cand < n; ++cand) {
    if (in[cand]) continue;
    gens.push_back(static_cast<Element>(cand));
    in[cand] = 1;
    members.push_back(static_cast<Element>(cand));
    bool grew = true;
    while (grew) {
      grew = false;
      const std::size_t m = members.size();
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          for (Element r : {q.op(members[i], members[j]), q.inv(members[i], members[j])}) {
            if (!in[r]) {
              in[r] = 1;
              members.push_back(r);
              grew = true;
            }
          }
        }
      }
    }
  }
  return gens;
}

class IsoSearch {
 public:
  IsoSearch(const FiniteQuandle& a, const FiniteQuandle& b)
      : a_(a), b_(b), sig_a_(signatures(a)), sig_b_(signatures(b)), gens_(generating_sequence(a)) {}

  std::optional<std::vector<Element>> run() {
    std::vector<std::int32_t> f(a_.size(), -1), g(b_.size(), -1);
    if (extend(0, f, g)) {
      std::vector<Element> out(f.begin(), f.end());
      return out;
    }
    return std::nullopt;
  }

 private:
  static constexpr std::int32_t kUnset = -1;

  // Closes the partial map under op and inv; false on conflict.
  bool close(std::vector<std::int32_t>& f, std::vector<std::int32_t>& g) const {
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<Element> dom;
      for (std::size_t x = 0; x < f.size(); ++x) {
        if (f[x] != kUnset) dom.push_back(static_cast<Element>(x));
      }
      for (auto x : dom) {
        for (auto y : dom) {
          const auto fx = static_cast<Element>(f[x]), fy = static_cast<Element>(f[y]);
          const std::pair<Element, Element> pairs[2] = {{a_.op(x, y), b_.op(fx, fy)},
                                                        {a_.inv(x, y), b_.inv(fx, fy)}};
          for (auto [src, dst] : pairs) {
            if (f[src] == kUnset) {
              if (g[dst] != kUnset) return false;
              if (sig_a_[src] != sig_b_[dst]) return false;
              f[src] = dst;
              g[dst] = src;
              grew = true;
            } else if (f[src] != dst) {
              return false;
            }
          }
        }
      }
    }
    return true;
  }

  bool extend(std::size_t k, std::vector<std::int32_t>& f, std::vector<std::int32_t>& g) const {
    if (k == gens_.size()) {
      return std::all_of(f.begin(), f.end(), [](auto v) { return v != kUnset; });
    }
    const Element x = gens_[k];
    if (f[x] != kUnset) return extend(k + 1, f, g);
    for (std::size_t y = 0; y < b_.size(); ++y) {
      if (g[y] != kUnset || sig_a_[x] != sig_b_[y]) continue;
      auto f2 = f;
      auto g2 = g;
      f2[x] = static_cast<std::int32_t>(y);
      g2[y] = x;
      if (close(f2, g2) && extend(k + 1, f2, g2)) {
        f = std::move(f2);
        g = std::move(g2);
        return true;
      }
    }
    return false;
  }

  const FiniteQuandle& a_;
  const FiniteQuandle& b_;
  std::vector<Signature> sig_a_, sig_b_;
  std::vector<Element> gens_;
};

}  // namespace

std::optional<std::vector<Element>> find_isomorphism(const FiniteQuandle& a, const FiniteQuandle& b) {
  if (a.size() != b.size()) return std::nullopt;
  auto sa = signatures(a), sb = signatures(b);
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return std::nullopt;
  auto f = IsoSearch(a, b).run();
  if (!f) return std::nullopt;
  for (std::size_t x = 0; x < a.size(); ++x) {
    for (std::size_t y = 0; y < a.size(); ++y) {
      if ((*f)[a.op(static_cast<Element>(x), static_cast<Element>(y))] != b.op((*f)[x], (*f)[y])) {
        return std::nullopt;
      }
    }
  }
  return f;
}

}  // namespace qc
