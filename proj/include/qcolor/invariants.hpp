#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcolor/diagram.hpp"
#include "qcolor/quandle.hpp"

namespace qc {

// A total assignment ArcId -> quandle element.
struct Coloring {
  std::vector<Element> arcs;

  auto operator<=>(const Coloring&) const = default;
};

// Number of distinct elements used on the arcs.
std::size_t image_size(const Coloring& f);

// Sparse coefficient map m -> a_m of sum_f q^{|Im f|}. Only positive coefficients are stored.
class EnhancedPolynomial {
 public:
  EnhancedPolynomial() = default;
  explicit EnhancedPolynomial(std::map<int, std::uint64_t> coeffs);

  void add(int m, std::uint64_t count = 1);
  std::uint64_t coefficient(int m) const;
  const std::map<int, std::uint64_t>& coefficients() const noexcept { return coeffs_; }
  std::uint64_t total() const;
  // Largest m with a_m > 0; 0 for the zero polynomial.
  int degree() const;
  // "9q + 72q^2 + 72q^3", terms ascending in m; "0" when empty.
  std::string render() const;

  bool operator==(const EnhancedPolynomial&) const = default;

 private:
  std::map<int, std::uint64_t> coeffs_;
};

EnhancedPolynomial enhanced_polynomial(const std::vector<Coloring>& colorings);

struct InvariantRecord {
  std::string link;
  std::string quandle_spec;
  std::uint64_t phi = 0;
  EnhancedPolynomial phi_e;
  int degree() const { return phi_e.degree(); }
};

InvariantRecord make_record(std::string link, std::string quandle_spec,
                            const std::vector<Coloring>& colorings);

enum class Separation { none, by_count, by_polynomial };

std::string to_string(Separation s);

// by_count if the counts differ, else by_polynomial if the polynomials differ, else none.
// Throws InputError when the records were computed against different target quandles.
Separation separates(const InvariantRecord& a, const InvariantRecord& b);

struct ResidualFailureInfo {
  std::size_t coloring = 0;
  std::size_t crossing = 0;
};

// First (coloring, crossing) pair whose relation does not hold, if any.
std::optional<ResidualFailureInfo> find_residual_failure(const QuandlePresentation& pres,
                                                         const FiniteQuandle& q,
                                                         const std::vector<Coloring>& colorings);

}  // namespace qc
