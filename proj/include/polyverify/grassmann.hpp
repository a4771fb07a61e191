#pragma once

// k-subspaces of F_q^n in canonical (reduced row echelon) form.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "polyverify/checked.hpp"
#include "polyverify/gf.hpp"

namespace polyverify::grassmann {

using gf::Elem;
using gf::FieldPtr;
using gf::Matrix;
using gf::Vector;

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

// A nonzero subspace stored as its RREF basis. Two Subspace values are
// equal exactly when they describe the same subspace.
class Subspace {
 public:
  // Throws std::invalid_argument if `basis` is not a full-rank RREF matrix.
  explicit Subspace(Matrix basis);

  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const FieldPtr& field() const { return basis_.field(); }

  bool contains(std::span<const Elem> v) const;

  // Semicolon-separated basis rows, each comma-separated codes.
  std::string to_text() const { return basis_.to_text(); }
  static Subspace from_text(FieldPtr field, const std::string& text);

  bool operator==(const Subspace& other) const { return basis_ == other.basis_; }

 private:
  Matrix basis_;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const noexcept { return gf::MatrixHash{}(s.basis()); }
};

// Row space of the given vectors. Throws std::invalid_argument if the span is zero.
Subspace span(const std::vector<Vector>& vectors, FieldPtr field);
// Span of standard basis vectors; indices are 1-based.
Subspace coordinate_subspace(const std::vector<std::size_t>& indices, std::size_t n, FieldPtr field);
Vector basis_vector(std::size_t n, std::size_t index_1based);

std::size_t intersect_dim(const Subspace& x, const Subspace& y);

// Number of k-subspaces of F_q^n. Throws OverflowError rather than wrap.
u128 gaussian_binomial(unsigned n, unsigned k, std::uint64_t q);

// Calls `visit` for every k-subspace of F_q^n exactly once. Order: pivot
// column sets in lexicographic order; within a pivot set, the free entries
// read row by row, left to right, as base-q digits with the first entry most
// significant, counting upward from all zeros.
// Throws BudgetExceeded if gaussian_binomial(n, k, q) > budget.
void for_each_subspace(unsigned n, unsigned k, const FieldPtr& field, const std::function<void(const Subspace&)>& visit,
                       std::uint64_t budget = kDefaultEnumerationBudget);
std::vector<Subspace> enumerate_subspaces(unsigned n, unsigned k, const FieldPtr& field,
                                          std::uint64_t budget = kDefaultEnumerationBudget);

// Image x*M. Throws std::domain_error when M is singular.
Subspace apply_matrix(const Subspace& x, const Matrix& m);
// As apply_matrix but skips the invertibility check; for inner loops whose
// generators were validated up front.
Subspace apply_matrix_unchecked(const Subspace& x, const Matrix& m);

// Generalised Johnson graph J(n,k)_i over F_q: all k-subspaces, adjacent iff
// they meet in dimension exactly i.
class JohnsonGraph {
 public:
  JohnsonGraph(unsigned n, unsigned k, FieldPtr field, unsigned i,
               std::uint64_t budget = kDefaultEnumerationBudget);

  unsigned n() const { return n_; }
  unsigned k() const { return k_; }
  unsigned i() const { return i_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<Subspace>& vertices() const { return vertices_; }
  bool adjacent(std::size_t a, std::size_t b) const;
  std::vector<std::size_t> neighbours(std::size_t a) const;
  std::size_t edge_count() const;

 private:
  unsigned n_, k_, i_;
  FieldPtr field_;
  std::vector<Subspace> vertices_;
};

bool johnson_connected(const JohnsonGraph& graph);

}  // namespace polyverify::grassmann
