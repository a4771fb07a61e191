#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "polyverify/grassmann.hpp"

using namespace polyverify;
using namespace polyverify::grassmann;
using gf::Field;

namespace {

Matrix random_invertible(const FieldPtr& f, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<unsigned> d(0, f->q() - 1);
  for (;;) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m.set(i, j, static_cast<Elem>(d(rng)));
    if (gf::is_invertible(m)) return m;
  }
}

// Number of k-subspaces by counting ordered bases: |{independent k-tuples}| / |GL_k(q)|.
u128 count_by_bases(unsigned n, unsigned k, std::uint64_t q) {
  u128 tuples = 1, gl = 1;
  for (unsigned i = 0; i < k; ++i) {
    tuples *= oracle::ipow(q, n) - oracle::ipow(q, i);
    gl *= oracle::ipow(q, k) - oracle::ipow(q, i);
  }
  return tuples / gl;
}

}  // namespace

TEST_CASE("span canonicalises") {
  auto f2 = Field::of_order(2);
  const Subspace a = span({basis_vector(4, 1), basis_vector(4, 2)}, f2);
  CHECK(a.to_text() == "1,0,0,0;0,1,0,0");
  const Subspace b = span({{1, 1, 0, 0}, {0, 1, 0, 0}}, f2);
  CHECK(a == b);
  CHECK(span({basis_vector(4, 1), basis_vector(4, 1)}, f2).dim() == 1);
  CHECK_THROWS(span({{0, 0, 0}}, f2));
  CHECK_THROWS(span({}, f2));
  CHECK(Subspace::from_text(f2, "1,0,0,0;0,1,0,0") == a);
  CHECK(Subspace::from_text(f2, "1,1;0,1").basis() == Matrix::identity(f2, 2));
  CHECK_THROWS(Subspace(Matrix::from_text(f2, "1,1;0,1")));
  CHECK_THROWS(Subspace(Matrix::from_text(f2, "1,0;1,0")));
  CHECK(a.contains(std::vector<Elem>{1, 1, 0, 0}));
  CHECK_FALSE(a.contains(std::vector<Elem>{0, 0, 1, 0}));
}

TEST_CASE("intersection dimension") {
  for (unsigned q : {2u, 3u, 4u}) {
    auto f = Field::of_order(q);
    for (unsigned k : {1u, 2u, 3u}) {
      const unsigned n = 2 * k;
      std::vector<std::size_t> lo, hi;
      std::vector<gf::Vector> mixed;
      for (unsigned i = 1; i <= k; ++i) {
        lo.push_back(i);
        hi.push_back(k + i);
        gf::Vector v(n, 0);
        v[i - 1] = 1;
        v[k + i - 1] = 1;
        mixed.push_back(v);
      }
      const Subspace x = coordinate_subspace(lo, n, f), y = coordinate_subspace(hi, n, f), z = span(mixed, f);
      CHECK(intersect_dim(x, x) == k);
      CHECK(intersect_dim(x, y) == 0);
      CHECK(intersect_dim(x, z) == 0);
      CHECK(intersect_dim(y, z) == 0);
    }
  }
  auto f2 = Field::of_order(2);
  CHECK_THROWS(intersect_dim(coordinate_subspace({1}, 3, f2), coordinate_subspace({1}, 4, f2)));
  CHECK_THROWS(intersect_dim(coordinate_subspace({1}, 3, f2), coordinate_subspace({1}, 3, Field::of_order(3))));
}

TEST_CASE("intersection dimension agrees with the row-space oracle") {
  auto f3 = Field::of_order(3);
  const auto all = enumerate_subspaces(4, 2, f3);
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto& a = all[pick(rng)];
    const auto& b = all[pick(rng)];
    CHECK(intersect_dim(a, b) == oracle::intersect_dim(a, b));
    CHECK(intersect_dim(a, b) == intersect_dim(b, a));
  }
}

TEST_CASE("gaussian binomial") {
  CHECK(gaussian_binomial(5, 0, 3) == 1);
  CHECK(gaussian_binomial(4, 2, 2) == 35);
  CHECK(gaussian_binomial(3, 1, 2) == 7);
  CHECK(gaussian_binomial(6, 3, 2) == 1395);
  for (unsigned n = 1; n <= 6; ++n)
    for (unsigned k = 0; k <= n; ++k)
      for (std::uint64_t q : {2, 3, 4, 5}) CHECK(gaussian_binomial(n, k, q) == count_by_bases(n, k, q));
  CHECK_THROWS(gaussian_binomial(2, 3, 2));
  CHECK_THROWS_AS(gaussian_binomial(200, 100, 65536), OverflowError);
}

TEST_CASE("enumeration") {
  auto f2 = Field::of_order(2);
  const auto lines = enumerate_subspaces(2, 1, f2);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0].to_text() == "1,0");
  CHECK(lines[1].to_text() == "1,1");
  CHECK(lines[2].to_text() == "0,1");

  const auto full = enumerate_subspaces(3, 3, f2);
  REQUIRE(full.size() == 1);
  CHECK(full[0].basis() == Matrix::identity(f2, 3));

  for (auto [n, k, q] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{
           {4, 2, 2}, {4, 2, 3}, {5, 2, 2}, {4, 1, 4}, {6, 3, 2}, {3, 2, 5}}) {
    auto f = Field::of_order(q);
    const auto all = enumerate_subspaces(n, k, f);
    CHECK(all.size() == gaussian_binomial(n, k, q));
    std::set<std::string> distinct;
    for (const auto& s : all) {
      distinct.insert(s.to_text());
      CHECK(s.dim() == k);
      CHECK(gf::rref(s.basis()).reduced == s.basis());
    }
    CHECK(distinct.size() == all.size());
  }
  CHECK_THROWS_AS(enumerate_subspaces(6, 3, f2, 100), BudgetExceeded);
  CHECK_THROWS(enumerate_subspaces(3, 0, f2));
}

TEST_CASE("intersection classes partition the Grassmannian") {
  for (auto [n, k, q] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{{4, 2, 2}, {4, 2, 3}, {6, 3, 2}, {5, 2, 2}}) {
    auto f = Field::of_order(q);
    std::vector<std::size_t> idx;
    for (unsigned i = 1; i <= k; ++i) idx.push_back(i);
    const Subspace x = coordinate_subspace(idx, n, f);
    std::map<std::size_t, std::uint64_t> sizes;
    for (const auto& y : enumerate_subspaces(n, k, f)) ++sizes[intersect_dim(x, y)];
    std::uint64_t total = 0;
    for (const auto& [i, c] : sizes) total += c;
    CHECK(total == gaussian_binomial(n, k, q));
    CHECK(sizes.size() == k + 1);
    CHECK(sizes[k] == 1);
    // Complements of x when n = 2k; in general q^{k^2} choices over each
    // k-subspace of a fixed complement.
    CHECK(sizes[0] == count_by_bases(n - k, k, q) * oracle::ipow(q, k * k));
    if (n == 2 * k) CHECK(sizes[0] == oracle::ipow(q, k * (n - k)));
  }
}

TEST_CASE("apply_matrix") {
  auto f2 = Field::of_order(2);
  const Subspace e1 = coordinate_subspace({1}, 2, f2);
  CHECK(apply_matrix(e1, Matrix::identity(f2, 2)) == e1);
  CHECK(apply_matrix(e1, gf::permutation_matrix({{1, 2}}, 2, f2)) == coordinate_subspace({2}, 2, f2));

  const Subspace y = coordinate_subspace({1, 2, 3, 5}, 8, f2);
  CHECK(apply_matrix(y, gf::permutation_matrix({{1, 5}, {4, 6}}, 8, f2)) == y);

  CHECK_THROWS(apply_matrix(e1, Matrix(f2, 2, 2)));
}

TEST_CASE("apply_matrix is a group action and preserves intersections") {
  std::mt19937_64 rng(29);
  for (unsigned q : {2u, 3u}) {
    auto f = Field::of_order(q);
    const auto all = enumerate_subspaces(5, 2, f);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int trial = 0; trial < 100; ++trial) {
      const auto& x = all[pick(rng)];
      const auto& y = all[pick(rng)];
      const Matrix m = random_invertible(f, 5, rng), g = random_invertible(f, 5, rng);
      CHECK(apply_matrix(apply_matrix(x, m), g) == apply_matrix(x, m * g));
      CHECK(intersect_dim(apply_matrix(x, m), apply_matrix(y, m)) == intersect_dim(x, y));
      CHECK(apply_matrix(x, m).dim() == 2);
    }
  }
}

TEST_CASE("generalised Johnson graphs") {
  auto f2 = Field::of_order(2);
  const JohnsonGraph tri(2, 1, f2, 0);
  CHECK(tri.vertex_count() == 3);
  CHECK(tri.edge_count() == 3);
  CHECK(johnson_connected(tri));

  for (unsigned i : {0u, 1u}) {
    const JohnsonGraph j(4, 2, f2, i);
    CHECK(j.vertex_count() == 35);
    CHECK(johnson_connected(j));
    bool symmetric = true, irreflexive = true, by_dim = true;
    for (std::size_t a = 0; a < j.vertex_count(); ++a) {
      irreflexive = irreflexive && !j.adjacent(a, a);
      for (std::size_t b = 0; b < j.vertex_count(); ++b) {
        symmetric = symmetric && j.adjacent(a, b) == j.adjacent(b, a);
        if (a != b) by_dim = by_dim && j.adjacent(a, b) == (intersect_dim(j.vertices()[a], j.vertices()[b]) == i);
      }
    }
    CHECK(symmetric);
    CHECK(irreflexive);
    CHECK(by_dim);
  }
  // Each point of the 18-element class meets x in a line: 35 * 18 / 2 edges.
  CHECK(JohnsonGraph(4, 2, f2, 1).edge_count() == 35 * 18 / 2);
  CHECK(JohnsonGraph(4, 2, f2, 0).edge_count() == 35 * 16 / 2);
  CHECK_THROWS(JohnsonGraph(4, 2, f2, 2));
  CHECK_THROWS_AS(JohnsonGraph(8, 4, f2, 0, 1000), BudgetExceeded);
}
