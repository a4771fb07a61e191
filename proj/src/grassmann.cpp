#include "polyverify/grassmann.hpp"

#include <deque>
#include <stdexcept>

namespace polyverify::grassmann {

namespace {

bool is_full_rank_rref(const Matrix& m) {
  std::size_t prev_pivot = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::size_t c = 0;
    while (c < m.cols() && m.at(r, c) == 0) ++c;
    if (c == m.cols() || m.at(r, c) != 1) return false;
    if (r > 0 && c <= prev_pivot) return false;
    for (std::size_t other = 0; other < m.rows(); ++other)
      if (other != r && m.at(other, c) != 0) return false;
    prev_pivot = c;
  }
  return true;
}

Subspace canonical_row_space(const Matrix& m) {
  gf::Rref r = gf::rref(m);
  if (r.rank == 0) throw std::invalid_argument("span of the given vectors is the zero subspace");
  Matrix basis(m.field(), r.rank, m.cols());
  for (std::size_t i = 0; i < r.rank; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) basis.set(i, j, r.reduced.at(i, j));
  return Subspace(std::move(basis));
}

Matrix stack(const Matrix& a, const Matrix& b) {
  gf::check_same_field(a, b);
  if (a.cols() != b.cols()) throw std::invalid_argument("subspaces live in different ambient spaces");
  Matrix out(a.field(), a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, a.at(i, j));
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out.set(a.rows() + i, j, b.at(i, j));
  return out;
}

}  // namespace

Subspace::Subspace(Matrix basis) : basis_(std::move(basis)) {
  if (basis_.rows() == 0) throw std::invalid_argument("subspace must have dimension >= 1");
  if (!is_full_rank_rref(basis_)) throw std::invalid_argument("subspace basis must be a full-rank RREF matrix");
}

bool Subspace::contains(std::span<const Elem> v) const {
  if (v.size() != ambient_dim()) throw std::invalid_argument("vector length does not match ambient dimension");
  Matrix row(field(), 1, v.size());
  for (std::size_t j = 0; j < v.size(); ++j) row.set(0, j, v[j]);
  return gf::rank(stack(basis_, row)) == dim();
}

Subspace Subspace::from_text(FieldPtr field, const std::string& text) {
  return canonical_row_space(Matrix::from_text(std::move(field), text));
}

Subspace span(const std::vector<Vector>& vectors, FieldPtr field) {
  if (vectors.empty()) throw std::invalid_argument("span of an empty vector list");
  return canonical_row_space(Matrix::from_rows(std::move(field), vectors));
}

Vector basis_vector(std::size_t n, std::size_t index_1based) {
  if (index_1based < 1 || index_1based > n) throw std::invalid_argument("basis index out of range");
  Vector v(n, 0);
  v[index_1based - 1] = 1;
  return v;
}

Subspace coordinate_subspace(const std::vector<std::size_t>& indices, std::size_t n, FieldPtr field) {
  std::vector<Vector> rows;
  for (std::size_t i : indices) rows.push_back(basis_vector(n, i));
  return span(rows, std::move(field));
}

std::size_t intersect_dim(const Subspace& x, const Subspace& y) {
  if (x.ambient_dim() != y.ambient_dim()) throw std::invalid_argument("ambient dimension mismatch");
  if (!(*x.field() == *y.field())) throw std::invalid_argument("subspaces over different fields");
  return x.dim() + y.dim() - gf::rank(stack(x.basis(), y.basis()));
}

u128 gaussian_binomial(unsigned n, unsigned k, std::uint64_t q) {
  if (k > n) throw std::invalid_argument("gaussian_binomial requires k <= n");
  if (q < 2) throw std::invalid_argument("gaussian_binomial requires q >= 2");
  u128 result = 1;
  for (unsigned j = 0; j < k; ++j) {
    u128 num = checked_pow(q, n - j) - 1;
    u128 den = checked_pow(q, j + 1) - 1;
    // result is the count of j-subspaces here, so the quotient is exact.
    result = checked_mul(result, num) / den;
  }
  return result;
}

void for_each_subspace(unsigned n, unsigned k, const FieldPtr& field, const std::function<void(const Subspace&)>& visit,
                       std::uint64_t budget) {
  if (k < 1 || k > n) throw std::invalid_argument("enumeration requires 1 <= k <= n");
  const unsigned q = field->q();
  u128 total = gaussian_binomial(n, k, q);
  if (total > budget)
    throw BudgetExceeded("enumerating " + to_string(total) + " subspaces exceeds budget " + std::to_string(budget));

  std::vector<std::size_t> pivots(k);
  for (unsigned i = 0; i < k; ++i) pivots[i] = i;
  for (;;) {
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    std::vector<std::pair<std::size_t, std::size_t>> free_cells;
    for (unsigned r = 0; r < k; ++r)
      for (std::size_t c = pivots[r] + 1; c < n; ++c)
        if (!is_pivot[c]) free_cells.emplace_back(r, c);

    Matrix m(field, k, n);
    for (unsigned r = 0; r < k; ++r) m.set(r, pivots[r], 1);
    std::vector<Elem> digits(free_cells.size(), 0);
    for (;;) {
      for (std::size_t d = 0; d < digits.size(); ++d) m.set(free_cells[d].first, free_cells[d].second, digits[d]);
      visit(Subspace(m));
      std::size_t pos = digits.size();
      while (pos > 0 && digits[pos - 1] == q - 1) digits[--pos] = 0;
      if (pos == 0) break;
      ++digits[pos - 1];
    }

    // Next k-combination of {0..n-1} in lexicographic order.
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && pivots[i] == n - k + static_cast<unsigned>(i)) --i;
    if (i < 0) break;
    ++pivots[i];
    for (unsigned j = static_cast<unsigned>(i) + 1; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
  }
}

std::vector<Subspace> enumerate_subspaces(unsigned n, unsigned k, const FieldPtr& field, std::uint64_t budget) {
  std::vector<Subspace> out;
  for_each_subspace(n, k, field, [&out](const Subspace& s) { out.push_back(s); }, budget);
  return out;
}

Subspace apply_matrix_unchecked(const Subspace& x, const Matrix& m) {
  if (m.rows() != x.ambient_dim() || !m.is_square()) throw std::invalid_argument("matrix size does not match ambient dimension");
  return canonical_row_space(x.basis() * m);
}

Subspace apply_matrix(const Subspace& x, const Matrix& m) {
  if (!gf::is_invertible(m)) throw std::domain_error("apply_matrix requires an invertible matrix");
  return apply_matrix_unchecked(x, m);
}

JohnsonGraph::JohnsonGraph(unsigned n, unsigned k, FieldPtr field, unsigned i, std::uint64_t budget)
    : n_(n), k_(k), i_(i), field_(std::move(field)) {
  if (k < 1 || k > n) throw std::invalid_argument("Johnson graph requires 1 <= k <= n");
  if (i >= k) throw std::invalid_argument("Johnson graph requires 0 <= i <= k-1");
  vertices_ = enumerate_subspaces(n, k, field_, budget);
}

bool JohnsonGraph::adjacent(std::size_t a, std::size_t b) const {
  return a != b && intersect_dim(vertices_[a], vertices_[b]) == i_;
}

std::vector<std::size_t> JohnsonGraph::neighbours(std::size_t a) const {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < vertices_.size(); ++b)
    if (adjacent(a, b)) out.push_back(b);
  return out;
}

std::size_t JohnsonGraph::edge_count() const {
  std::size_t edges = 0;
  for (std::size_t a = 0; a < vertices_.size(); ++a)
    for (std::size_t b = a + 1; b < vertices_.size(); ++b)
      if (adjacent(a, b)) ++edges;
  return edges;
}

bool johnson_connected(const JohnsonGraph& graph) {
  const std::size_t v = graph.vertex_count();
  if (v == 0) return true;
  std::vector<bool> seen(v, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    std::size_t a = queue.front();
    queue.pop_front();
    for (std::size_t b = 0; b < v; ++b) {
      if (seen[b] || !graph.adjacent(a, b)) continue;
      seen[b] = true;
      ++reached;
      queue.push_back(b);
    }
  }
  return reached == v;
}

}  // namespace polyverify::grassmann
