#pragma once

// Slow, independent reference computations used as test oracles.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>
#include <vector>

#include "polyverify/gf.hpp"
#include "polyverify/grassmann.hpp"

namespace oracle {

using polyverify::gf::Elem;
using polyverify::gf::Field;
using polyverify::gf::Matrix;
using polyverify::gf::Vector;

inline std::vector<unsigned> digits(const Field& f, unsigned code) {
  std::vector<unsigned> d(f.e(), 0);
  for (unsigned i = 0; i < f.e(); ++i, code /= f.p()) d[i] = code % f.p();
  return d;
}

inline unsigned undigits(const Field& f, const std::vector<unsigned>& d) {
  unsigned code = 0;
  for (std::size_t i = d.size(); i-- > 0;) code = code * f.p() + d[i];
  return code;
}

inline Elem add(const Field& f, Elem a, Elem b) {
  auto da = digits(f, a), db = digits(f, b);
  for (unsigned i = 0; i < f.e(); ++i) da[i] = (da[i] + db[i]) % f.p();
  return static_cast<Elem>(undigits(f, da));
}

// Schoolbook product of the coefficient vectors, reduced by the defining polynomial.
inline Elem mul(const Field& f, Elem a, Elem b) {
  const unsigned p = f.p(), e = f.e();
  auto da = digits(f, a), db = digits(f, b);
  std::vector<unsigned> prod(2 * e, 0);
  for (unsigned i = 0; i < e; ++i)
    for (unsigned j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
  if (e > 1) {
    const auto& m = f.modulus();
    for (unsigned deg = 2 * e - 1; deg >= e; --deg) {
      const unsigned c = prod[deg];
      if (c == 0) continue;
      for (unsigned i = 0; i <= e; ++i) prod[deg - e + i] = (prod[deg - e + i] + p * p - c * m[i] % p) % p;
    }
  }
  prod.resize(e);
  return static_cast<Elem>(undigits(f, prod));
}

// Every vector of the row space, by enumerating all coefficient tuples.
inline std::set<Vector> row_space(const Matrix& m) {
  const Field& f = *m.field();
  std::set<Vector> out;
  std::vector<unsigned> coeff(m.rows(), 0);
  for (;;) {
    Vector v(m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) v[c] = add(f, v[c], mul(f, static_cast<Elem>(coeff[r]), m.at(r, c)));
    out.insert(v);
    std::size_t pos = 0;
    while (pos < coeff.size() && coeff[pos] == f.q() - 1) coeff[pos++] = 0;
    if (pos == coeff.size()) break;
    ++coeff[pos];
  }
  return out;
}

inline std::size_t log_q(std::size_t count, unsigned q) {
  std::size_t d = 0;
  while (count > 1) {
    count /= q;
    ++d;
  }
  return d;
}

inline std::size_t rank(const Matrix& m) { return log_q(row_space(m).size(), m.field()->q()); }

inline std::size_t intersect_dim(const polyverify::grassmann::Subspace& x, const polyverify::grassmann::Subspace& y) {
  const auto a = row_space(x.basis()), b = row_space(y.basis());
  std::size_t common = 0;
  for (const auto& v : a) common += b.count(v);
  return log_q(common, x.field()->q());
}

// Product of matrices by the textbook triple loop over oracle arithmetic.
inline Matrix mul(const Matrix& a, const Matrix& b) {
  const Field& f = *a.field();
  Matrix out(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Elem acc = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) acc = add(f, acc, mul(f, a.at(i, k), b.at(k, j)));
      out.set(i, j, acc);
    }
  return out;
}

// Group elements by BFS with oracle multiplication.
inline std::size_t group_size(const std::vector<Matrix>& gens, std::size_t n, const polyverify::gf::FieldPtr& f) {
  std::set<std::vector<Elem>> seen;
  std::deque<Matrix> queue{Matrix::identity(f, n)};
  seen.insert(std::vector<Elem>(queue.front().data().begin(), queue.front().data().end()));
  while (!queue.empty()) {
    Matrix g = queue.front();
    queue.pop_front();
    for (const Matrix& s : gens) {
      Matrix h = mul(g, s);
      std::vector<Elem> key(h.data().begin(), h.data().end());
      if (seen.insert(key).second) queue.push_back(h);
    }
  }
  return seen.size();
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace oracle
