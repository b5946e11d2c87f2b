#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qc {

using Element = std::uint16_t;

bool is_prime(int n);

// Reduce v into [0, m).
constexpr int mod(long long v, int m) {
  long long r = v % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

class FieldPrime {
 public:
  // Throws InputError unless p is prime.
  explicit FieldPrime(int p);
  int value() const noexcept { return p_; }
  int inverse(int a) const;

 private:
  int p_;
};

// Alternating non-degenerate bilinear form on (Z_p)^2, stored as a row-major 2x2 matrix M
// with <x, y> = x M y^T.
class SymplecticForm {
 public:
  // lambda * [[0, 1], [-1, 0]].
  static SymplecticForm scaled_standard(FieldPrime p, int lambda);
  // Validates that the matrix is alternating and non-degenerate mod p.
  static SymplecticForm from_matrix(FieldPrime p, std::array<int, 4> matrix);

  int prime() const noexcept { return p_; }
  const std::array<int, 4>& matrix() const noexcept { return m_; }
  std::optional<int> lambda() const noexcept { return lambda_; }
  int determinant() const noexcept;
  int pair(int x1, int x2, int y1, int y2) const noexcept;

  // S^T M S for an invertible S (row-major). Throws InputError if S is singular.
  SymplecticForm congruent(const std::array<int, 4>& s) const;

 private:
  SymplecticForm(int p, std::array<int, 4> m, std::optional<int> lambda)
      : p_(p), m_(m), lambda_(lambda) {}

  int p_;
  std::array<int, 4> m_;
  std::optional<int> lambda_;
};

enum class QuandleKind { symplectic, takasaki, alexander, subquandle, table };

// A finite quandle held as dense operation tables. Elements are 0..size()-1. Every element
// also carries a coordinate tuple (two scalars in Z_p for symplectic quandles, one scalar for
// the affine families); the solver binds these scalars as its join variables.
class FiniteQuandle {
 public:
  // Raw tables, row-major: op[x * n + y] = x |> y. No axiom checking; see verify_axioms().
  FiniteQuandle(std::size_t n, std::vector<Element> op, std::vector<Element> inv,
                std::string spec = "table");

  std::size_t size() const noexcept { return n_; }
  Element op(Element x, Element y) const noexcept { return op_[x * n_ + y]; }
  Element inv(Element x, Element y) const noexcept { return inv_[x * n_ + y]; }
  // x |> y for sign +1, x |>^-1 y for sign -1.
  Element act(Element x, Element y, int sign) const noexcept {
    return sign > 0 ? op(x, y) : inv(x, y);
  }

  QuandleKind kind() const noexcept { return kind_; }
  const std::string& spec() const noexcept { return spec_; }
  const std::optional<SymplecticForm>& form() const noexcept { return form_; }

  int coord_dim() const noexcept { return coord_dim_; }
  int coord_radix() const noexcept { return coord_radix_; }
  std::span<const std::uint8_t> coords(Element e) const {
    return {coords_.data() + static_cast<std::size_t>(e) * coord_dim_,
            static_cast<std::size_t>(coord_dim_)};
  }
  // Element with the given coordinates, if any.
  std::optional<Element> from_coords(std::span<const std::uint8_t> c) const;
  std::string label(Element e) const;

  const std::vector<Element>& op_table() const noexcept { return op_; }
  const std::vector<Element>& inv_table() const noexcept { return inv_; }

 private:
  friend FiniteQuandle symplectic_quandle(const SymplecticForm& form);
  friend FiniteQuandle takasaki_quandle(int n);
  friend FiniteQuandle alexander_quandle(int n, int t);
  friend FiniteQuandle subquandle(const FiniteQuandle& parent, std::span<const Element> subset);
  friend FiniteQuandle punctured(const FiniteQuandle& q);

  void set_coords(int dim, int radix, std::vector<std::uint8_t> coords);

  std::size_t n_;
  std::vector<Element> op_;
  std::vector<Element> inv_;
  QuandleKind kind_ = QuandleKind::table;
  std::string spec_;
  std::optional<SymplecticForm> form_;
  int coord_dim_ = 1;
  int coord_radix_ = 0;
  std::vector<std::uint8_t> coords_;
  std::vector<std::int32_t> coord_index_;  // mixed-radix coordinate code -> element or -1
};

// x |> y = x + <x, y> y on (Z_p)^2. Element index is x1 * p + x2.
FiniteQuandle symplectic_quandle(const SymplecticForm& form);
FiniteQuandle symplectic_quandle(FieldPrime p, int lambda);
// x |> y = 2y - x on Z_n.
FiniteQuandle takasaki_quandle(int n);
// x |> y = t x + (1 - t) y on Z_n, t a unit.
FiniteQuandle alexander_quandle(int n, int t);
// Restriction to a subset closed under |> and |>^-1; throws InputError otherwise.
FiniteQuandle subquandle(const FiniteQuandle& parent, std::span<const Element> subset);
// Drops the element whose coordinates are all zero.
FiniteQuandle punctured(const FiniteQuandle& q);

// Parses "symplectic:p=3,lambda=2", "symplectic:p=5,matrix=0;1;4;0", "takasaki:n=5",
// "alexander:n=5,t=4", each optionally followed by ":punctured".
FiniteQuandle parse_quandle_spec(std::string_view spec);

struct AxiomViolation {
  int axiom;  // 1 idempotency, 2 right invertibility, 3 right self-distributivity
  Element x;
  Element y;
  Element z;
};

struct AxiomReport {
  std::vector<AxiomViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

// Exhaustive check of all three axioms; stops after max_violations entries.
AxiomReport verify_axioms(const FiniteQuandle& q, std::size_t max_violations = 64);

// Orbits of subset under the group generated by right translations s -> s |> t, t in subset.
// Classes are sorted by their smallest element. Throws InputError if subset is not closed.
std::vector<std::vector<Element>> connected_components(const FiniteQuandle& q,
                                                       std::span<const Element> subset);
std::vector<std::vector<Element>> connected_components(const FiniteQuandle& q);

// Bijection f with f(x |> y) = f(x) |> f(y), if one exists. Backtracks over images of a
// generating set; intended for the small quandles used in tests.
std::optional<std::vector<Element>> find_isomorphism(const FiniteQuandle& a,
                                                     const FiniteQuandle& b);

}  // namespace qc
