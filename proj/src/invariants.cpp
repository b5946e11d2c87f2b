#include "qcolor/invariants.hpp"

#include <algorithm>
#include <numeric>

#include "qcolor/error.hpp"

namespace qc {

std::size_t image_size(const Coloring& f) {
  std::vector<Element> v = f.arcs;
  std::sort(v.begin(), v.end());
  return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
}

EnhancedPolynomial::EnhancedPolynomial(std::map<int, std::uint64_t> coeffs) {
  for (auto [m, a] : coeffs) add(m, a);
}

void EnhancedPolynomial::add(int m, std::uint64_t count) {
  if (m < 1) throw InputError("image sizes start at 1, got " + std::to_string(m));
  if (count > 0) coeffs_[m] += count;
}

std::uint64_t EnhancedPolynomial::coefficient(int m) const {
  auto it = coeffs_.find(m);
  return it == coeffs_.end() ? 0 : it->second;
}

std::uint64_t EnhancedPolynomial::total() const {
  return std::accumulate(coeffs_.begin(), coeffs_.end(), std::uint64_t{0},
                         [](std::uint64_t acc, const auto& kv) { return acc + kv.second; });
}

int EnhancedPolynomial::degree() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

std::string EnhancedPolynomial::render() const {
  if (coeffs_.empty()) return "0";
  std::string s;
  for (auto [m, a] : coeffs_) {
    if (!s.empty()) s += " + ";
    if (a != 1) s += std::to_string(a);
    s += 'q';
    if (m != 1) s += "^" + std::to_string(m);
  }
  return s;
}

EnhancedPolynomial enhanced_polynomial(const std::vector<Coloring>& colorings) {
  EnhancedPolynomial p;
  for (const auto& f : colorings) p.add(static_cast<int>(image_size(f)));
  if (p.total() != colorings.size()) throw Error(ExitCode::failure, "image tally does not sum to the coloring count");
  return p;
}

InvariantRecord make_record(std::string link, std::string quandle_spec,
                            const std::vector<Coloring>& colorings) {
  InvariantRecord r;
  r.link = std::move(link);
  r.quandle_spec = std::move(quandle_spec);
  r.phi = colorings.size();
  r.phi_e = enhanced_polynomial(colorings);
  return r;
}

std::string to_string(Separation s) {
  switch (s) {
    case Separation::by_count:
      return "by_count";
    case Separation::by_polynomial:
      return "by_polynomial";
    case Separation::none:
      break;
  }
  return "none";
}

Separation separates(const InvariantRecord& a, const InvariantRecord& b) {
  if (a.quandle_spec != b.quandle_spec) {
    throw InputError("cannot compare invariants over different targets: '" + a.quandle_spec + "' vs '" +
                     b.quandle_spec + "'");
  }
  if (a.phi != b.phi) return Separation::by_count;
  if (!(a.phi_e == b.phi_e)) return Separation::by_polynomial;
  return Separation::none;
}

std::optional<ResidualFailureInfo> find_residual_failure(const QuandlePresentation& pres,
                                                         const FiniteQuandle& q,
                                                         const std::vector<Coloring>& colorings) {
  for (std::size_t i = 0; i < colorings.size(); ++i) {
    const auto& f = colorings[i].arcs;
    if (f.size() != pres.generator_count) return ResidualFailureInfo{i, 0};
    for (std::size_t c = 0; c < pres.relations.size(); ++c) {
      const auto& r = pres.relations[c];
      if (f[r.in] >= q.size() || f[r.over] >= q.size() ||
          q.act(f[r.in], f[r.over], to_int(r.sign)) != f[r.out]) {
        return ResidualFailureInfo{i, c};
      }
    }
  }
  return std::nullopt;
}

}  // namespace qc
