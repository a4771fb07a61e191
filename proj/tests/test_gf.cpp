#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "polyverify/gf.hpp"

using namespace polyverify::gf;

namespace {

const std::vector<unsigned> kSmallOrders{2, 3, 4, 5, 7, 8, 9, 11, 13, 16};

Matrix random_matrix(const FieldPtr& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::uniform_int_distribution<unsigned> d(0, f->q() - 1);
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, static_cast<Elem>(d(rng)));
  return m;
}

Matrix random_invertible(const FieldPtr& f, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Matrix m = random_matrix(f, n, n, rng);
    if (is_invertible(m)) return m;
  }
}

std::vector<std::size_t> as_permutation(const std::vector<Cycle>& cycles, std::size_t n) {
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  for (const auto& c : cycles)
    for (std::size_t i = 0; i < c.size(); ++i) sigma[c[i] - 1] = c[(i + 1) % c.size()] - 1;
  return sigma;
}

std::vector<Cycle> to_cycles(const std::vector<std::size_t>& sigma) {
  std::vector<Cycle> out;
  std::vector<bool> done(sigma.size(), false);
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (done[i] || sigma[i] == i) continue;
    Cycle c;
    for (std::size_t j = i; !done[j]; j = sigma[j]) {
      done[j] = true;
      c.push_back(j + 1);
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace

TEST_CASE("field construction") {
  auto f2 = Field::make(2, 1);
  CHECK(f2->q() == 2);
  CHECK(f2->add(1, 1) == 0);
  CHECK(f2->name() == "GF(2)");

  auto f9 = Field::make(3, 2);
  const Elem g = f9->generator();
  CHECK(f9->pow(g, 8) == 1);
  CHECK(f9->pow(g, 4) != 1);

  CHECK_THROWS_AS(Field::make(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(Field::make(2, 17), std::invalid_argument);
  CHECK_THROWS(Field::of_order(6));
  CHECK_THROWS(Field::of_order(1));
  CHECK(Field::of_order(65536)->e() == 16);
  CHECK(Field::of_order(65521)->p() == 65521);
  CHECK(*Field::of_order(27) == *Field::make(3, 3));
}

TEST_CASE("generator has order q-1") {
  for (unsigned q : {2u, 3u, 4u, 8u, 9u, 16u, 25u, 27u, 49u, 64u, 81u, 125u, 243u, 256u, 1024u, 4096u, 65536u}) {
    auto f = Field::of_order(q);
    CHECK(f->order(f->generator()) == q - 1);
  }
}

TEST_CASE("arithmetic matches schoolbook polynomial arithmetic") {
  for (unsigned q : kSmallOrders) {
    auto f = Field::of_order(q);
    for (unsigned a = 0; a < q; ++a)
      for (unsigned b = 0; b < q; ++b) {
        CHECK(f->add(a, b) == oracle::add(*f, a, b));
        CHECK(f->mul(a, b) == oracle::mul(*f, a, b));
      }
  }
  // Digitwise addition path for larger extension fields.
  auto f = Field::of_order(625);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<unsigned> d(0, 624);
  for (int i = 0; i < 2000; ++i) {
    const Elem a = d(rng), b = d(rng);
    CHECK(f->add(a, b) == oracle::add(*f, a, b));
    CHECK(f->mul(a, b) == oracle::mul(*f, a, b));
  }
}

TEST_CASE("field axioms by exhaustion for q <= 16") {
  for (unsigned q : kSmallOrders) {
    auto f = Field::of_order(q);
    INFO("q = " << q);
    bool ok = true;
    for (Elem a = 0; a < q; ++a) {
      ok = ok && f->add(a, 0) == a && f->mul(a, 1) == a && f->add(a, f->neg(a)) == 0;
      if (a != 0) ok = ok && f->mul(a, f->inv(a)) == 1;
      for (Elem b = 0; b < q; ++b) {
        ok = ok && f->add(a, b) == f->add(b, a) && f->mul(a, b) == f->mul(b, a);
        for (Elem c = 0; c < q; ++c) {
          ok = ok && f->add(f->add(a, b), c) == f->add(a, f->add(b, c));
          ok = ok && f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c));
          ok = ok && f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c));
        }
      }
    }
    CHECK(ok);
    CHECK_THROWS_AS(f->inv(0), std::domain_error);
  }
}

TEST_CASE("rref examples") {
  auto f2 = Field::of_order(2);
  auto id = Matrix::identity(f2, 3);
  auto r = rref(id);
  CHECK(r.reduced == id);
  CHECK(r.rank == 3);

  Matrix zero(f2, 2, 4);
  CHECK(rref(zero).rank == 0);
  CHECK(rref(zero).reduced == zero);

  auto m = Matrix::from_rows(f2, {{1, 1}, {0, 1}});
  CHECK(rref(m).reduced == Matrix::identity(f2, 2));
  CHECK(rref(m).rank == 2);

  auto f3 = Field::of_order(3);
  auto a = Matrix::from_text(f3, "1,2,0;2,1,0;0,0,1");
  auto ra = rref(a);
  CHECK(ra.rank == 2);
  CHECK(ra.pivots == std::vector<std::size_t>{0, 2});
  CHECK(ra.reduced.to_text() == "1,2,0;0,0,1;0,0,0");
}

TEST_CASE("rref is idempotent and canonical for a row space") {
  std::mt19937_64 rng(11);
  for (unsigned q : {2u, 3u, 4u, 5u, 9u}) {
    auto f = Field::of_order(q);
    std::uniform_int_distribution<unsigned> d(1, q - 1);
    for (int trial = 0; trial < 60; ++trial) {
      Matrix m = random_matrix(f, 3, 5, rng);
      const Rref r = rref(m);
      CHECK(rref(r.reduced).reduced == r.reduced);
      CHECK(r.rank == oracle::rank(m));
      // Random invertible row operations keep the row space.
      Matrix ops = random_invertible(f, 3, rng);
      CHECK(rref(ops * m).reduced == r.reduced);
    }
  }
}

TEST_CASE("multiplication and inverse") {
  std::mt19937_64 rng(3);
  for (unsigned q : {2u, 3u, 4u, 7u, 8u}) {
    auto f = Field::of_order(q);
    for (int trial = 0; trial < 30; ++trial) {
      Matrix a = random_matrix(f, 3, 4, rng), b = random_matrix(f, 4, 2, rng);
      CHECK(a * b == oracle::mul(a, b));
      CHECK(a * Matrix::identity(f, 4) == a);
      Matrix g = random_invertible(f, 4, rng);
      CHECK(g * inverse(g) == Matrix::identity(f, 4));
      CHECK(inverse(g) * g == Matrix::identity(f, 4));
      Matrix h = random_invertible(f, 4, rng);
      CHECK(determinant(g * h) == f->mul(determinant(g), determinant(h)));
    }
  }
  auto f3 = Field::of_order(3);
  auto a = Matrix::from_rows(f3, {{1, 1}, {0, 1}});
  CHECK(inverse(a) == Matrix::from_rows(f3, {{1, 2}, {0, 1}}));
  CHECK(inverse(Matrix::identity(f3, 3)) == Matrix::identity(f3, 3));
  CHECK_THROWS_AS(inverse(Matrix::from_rows(f3, {{1, 2}, {2, 1}})), std::domain_error);
  CHECK_THROWS(Matrix(f3, 2, 3) * Matrix(f3, 2, 3));
  CHECK_THROWS(Matrix(f3, 2, 2) * Matrix(Field::of_order(2), 2, 2));
}

TEST_CASE("matrix text form") {
  auto f = Field::of_order(5);
  auto m = Matrix::from_text(f, "1,4;0,3");
  CHECK(m.to_text() == "1,4;0,3");
  CHECK_THROWS(Matrix::from_text(f, "1,5;0,3"));
  CHECK_THROWS(Matrix::from_text(f, "1,2;3"));
  CHECK_THROWS(m.set(0, 0, 5));
}

TEST_CASE("permutation matrices") {
  auto f2 = Field::of_order(2);
  CHECK(permutation_matrix({}, 3, f2) == Matrix::identity(f2, 3));
  CHECK(permutation_matrix({{1, 2}}, 2, f2) == Matrix::from_rows(f2, {{0, 1}, {1, 0}}));

  auto p = permutation_matrix({{1, 5}, {4, 6}}, 8, f2);
  const std::vector<std::size_t> image{5, 2, 3, 6, 1, 4, 7, 8};
  for (std::size_t i = 1; i <= 8; ++i) {
    Vector e(8, 0);
    e[i - 1] = 1;
    Vector want(8, 0);
    want[image[i - 1] - 1] = 1;
    CHECK(polyverify::gf::apply(e, p) == want);
  }
  CHECK(cycles_to_text({{1, 5}, {4, 6}}) == "(1,5)(4,6)");

  CHECK_THROWS(permutation_matrix({{1, 9}}, 8, f2));
  CHECK_THROWS(permutation_matrix({{1, 2}, {2, 3}}, 8, f2));
  CHECK_THROWS(permutation_matrix({{0, 2}}, 8, f2));
}

TEST_CASE("permutation_matrix is a homomorphism") {
  std::mt19937_64 rng(17);
  auto f = Field::of_order(3);
  const std::size_t n = 7;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::size_t> s(n), t(n);
    std::iota(s.begin(), s.end(), 0);
    std::iota(t.begin(), t.end(), 0);
    std::shuffle(s.begin(), s.end(), rng);
    std::shuffle(t.begin(), t.end(), rng);
    CHECK(as_permutation(to_cycles(s), n) == s);
    // First s, then t.
    std::vector<std::size_t> st(n);
    for (std::size_t i = 0; i < n; ++i) st[i] = t[s[i]];
    const Matrix product = permutation_matrix(to_cycles(s), n, f) * permutation_matrix(to_cycles(t), n, f);
    CHECK(product == permutation_matrix(to_cycles(st), n, f));
  }
}

TEST_CASE("block and unit matrices") {
  auto f = Field::of_order(3);
  auto a = Matrix::from_text(f, "1,2;0,1");
  auto z = Matrix(f, 2, 2);
  auto b = block(a, z, z, Matrix::identity(f, 2));
  CHECK(b.to_text() == "1,2,0,0;0,1,0,0;0,0,1,0;0,0,0,1");
  CHECK(unit(f, 2, 0, 1).to_text() == "0,1;0,0");
  CHECK_THROWS(block(a, Matrix(f, 3, 2), z, z));
}
