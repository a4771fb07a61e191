#include "polyverify/gf.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace polyverify::gf {

namespace {

constexpr unsigned kAddTableLimit = 256;

// Digitwise base-p addition of two codes.
Elem add_digits(unsigned p, unsigned e, Elem a, Elem b) {
  unsigned result = 0, scale = 1;
  for (unsigned i = 0; i < e; ++i) {
    unsigned da = a % p, db = b % p;
    result += ((da + db) % p) * scale;
    a = static_cast<Elem>(a / p);
    b = static_cast<Elem>(b / p);
    scale *= p;
  }
  return static_cast<Elem>(result);
}

// Multiplies the polynomial with digit vector `digits` by x and reduces
// modulo the monic polynomial with lower coefficients `low`.
void times_x(std::vector<unsigned>& digits, const std::vector<unsigned>& low, unsigned p) {
  const std::size_t e = digits.size();
  unsigned top = digits[e - 1];
  for (std::size_t i = e - 1; i > 0; --i) digits[i] = digits[i - 1];
  digits[0] = 0;
  if (top == 0) return;
  // x^e = -(c_0 + ... + c_{e-1} x^{e-1})
  for (std::size_t i = 0; i < e; ++i) digits[i] = (digits[i] + (p - (top * low[i]) % p)) % p;
}

unsigned encode(const std::vector<unsigned>& digits, unsigned p) {
  unsigned code = 0;
  for (std::size_t i = digits.size(); i-- > 0;) code = code * p + digits[i];
  return code;
}

// Returns the sequence of codes of x^0..x^{q-2} if x has order q-1 modulo
// the given polynomial, empty otherwise.
std::vector<Elem> powers_of_x(const std::vector<unsigned>& low, unsigned p, unsigned q) {
  std::vector<unsigned> digits(low.size(), 0);
  digits[0] = 1;
  std::vector<Elem> seq;
  seq.reserve(q - 1);
  for (unsigned i = 0; i < q - 1; ++i) {
    unsigned code = encode(digits, p);
    if (i > 0 && code == 1) return {};
    seq.push_back(static_cast<Elem>(code));
    times_x(digits, low, p);
  }
  if (encode(digits, p) != 1) return {};
  return seq;
}

}  // namespace

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field::Field(unsigned p, unsigned e) : p_(p), e_(e), q_(1) {
  for (unsigned i = 0; i < e; ++i) q_ *= p;

  std::vector<Elem> powers;
  if (e == 1) {
    modulus_ = {0, 1};
    for (unsigned g = 1; g < p && powers.empty(); ++g) {
      std::vector<Elem> seq;
      unsigned cur = 1;
      bool primitive = true;
      for (unsigned i = 0; i < p - 1; ++i) {
        if (i > 0 && cur == 1) {
          primitive = false;
          break;
        }
        seq.push_back(static_cast<Elem>(cur));
        cur = cur * g % p;
      }
      if (primitive) {
        powers = std::move(seq);
        generator_ = static_cast<Elem>(g);
      }
    }
  } else {
    unsigned low_count = q_;
    for (unsigned code = 1; code < low_count && powers.empty(); ++code) {
      std::vector<unsigned> low(e);
      unsigned c = code;
      for (unsigned i = 0; i < e; ++i) {
        low[i] = c % p;
        c /= p;
      }
      if (low[0] == 0) continue;
      powers = powers_of_x(low, p, q_);
      if (!powers.empty()) {
        modulus_ = low;
        modulus_.push_back(1);
        generator_ = static_cast<Elem>(p);
      }
    }
  }
  if (powers.size() != q_ - 1) throw std::logic_error("no primitive polynomial found");

  exp_.resize(2 * (q_ - 1));
  log_.assign(q_, 0);
  for (unsigned i = 0; i < q_ - 1; ++i) {
    exp_[i] = exp_[i + q_ - 1] = powers[i];
    log_[powers[i]] = i;
  }

  neg_.resize(q_);
  for (unsigned a = 0; a < q_; ++a) {
    unsigned result = 0, scale = 1, x = a;
    for (unsigned i = 0; i < e_; ++i) {
      result += ((p_ - x % p_) % p_) * scale;
      x /= p_;
      scale *= p_;
    }
    neg_[a] = static_cast<Elem>(result);
  }

  if (e_ > 1 && q_ <= kAddTableLimit) {
    add_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (unsigned a = 0; a < q_; ++a)
      for (unsigned b = 0; b < q_; ++b)
        add_table_[a * q_ + b] = add_digits(p_, e_, static_cast<Elem>(a), static_cast<Elem>(b));
  }
}

std::shared_ptr<const Field> Field::make(unsigned p, unsigned e) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
  if (e == 0) throw std::invalid_argument("field extension degree must be >= 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxFieldOrder) throw std::invalid_argument("field order exceeds " + std::to_string(kMaxFieldOrder));
  }
  return std::shared_ptr<const Field>(new Field(p, e));
}

std::shared_ptr<const Field> Field::of_order(unsigned q) {
  if (q < 2) throw std::invalid_argument("field order must be >= 2");
  unsigned p = 2;
  while (q % p != 0) ++p;
  unsigned e = 0, r = q;
  while (r % p == 0) {
    r /= p;
    ++e;
  }
  if (r != 1) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  return make(p, e);
}

Elem Field::add(Elem a, Elem b) const {
  if (e_ == 1) {
    unsigned s = static_cast<unsigned>(a) + b;
    return static_cast<Elem>(s >= p_ ? s - p_ : s);
  }
  if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
  return add_digits(p_, e_, a, b);
}

Elem Field::neg(Elem a) const { return neg_[a]; }

Elem Field::inv(Elem a) const {
  if (a == 0) throw std::domain_error("zero has no multiplicative inverse");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Elem Field::pow(Elem a, std::uint64_t k) const {
  if (k == 0) return 1;
  if (a == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (k % (q_ - 1))) % (q_ - 1)];
}

unsigned Field::log(Elem a) const {
  if (a == 0) throw std::domain_error("log of zero");
  return log_[a];
}

unsigned Field::order(Elem a) const {
  if (a == 0) throw std::domain_error("order of zero");
  unsigned l = log_[a], n = q_ - 1;
  unsigned g = std::gcd(l, n);
  return n / g;
}

std::string Field::name() const { return "GF(" + std::to_string(q_) + ")"; }

// ---------------------------------------------------------------------------

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {
  if (!field_) throw std::invalid_argument("matrix requires a field");
}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

Matrix Matrix::from_rows(FieldPtr field, const std::vector<Vector>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(std::move(field), rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

void Matrix::set(std::size_t r, std::size_t c, Elem v) {
  if (v >= field_->q()) throw std::invalid_argument("entry code out of range for " + field_->name());
  data_[r * cols_ + c] = v;
}

bool Matrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (at(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

std::string Matrix::to_text() const {
  std::ostringstream out;
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) out << ';';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) out << ',';
      out << at(r, c);
    }
  }
  return out.str();
}

Matrix Matrix::from_text(FieldPtr field, const std::string& text) {
  std::vector<Vector> rows;
  std::stringstream rows_in(text);
  std::string row_text;
  while (std::getline(rows_in, row_text, ';')) {
    Vector row;
    std::stringstream cells(row_text);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(static_cast<Elem>(std::stoul(cell)));
    rows.push_back(std::move(row));
  }
  return from_rows(std::move(field), rows);
}

std::size_t MatrixHash::operator()(const Matrix& m) const noexcept {
  // FNV-1a over the entry codes and shape.
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::size_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(m.rows());
  mix(m.cols());
  for (Elem v : m.data()) mix(v);
  return h;
}

void check_same_field(const Matrix& a, const Matrix& b) {
  if (!a.field() || !b.field() || !(*a.field() == *b.field()))
    throw std::invalid_argument("matrices over different fields");
}

Rref rref(const Matrix& m) {
  const Field& f = *m.field();
  Rref out{m, 0, {}};
  Matrix& r = out.reduced;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<Elem> buf(r.data().begin(), r.data().end());
  auto at = [&](std::size_t i, std::size_t j) -> Elem& { return buf[i * cols + j]; };

  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols && lead < rows; ++c) {
    std::size_t piv = lead;
    while (piv < rows && at(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != lead)
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(piv, j), at(lead, j));
    Elem s = f.inv(at(lead, c));
    for (std::size_t j = c; j < cols; ++j) at(lead, j) = f.mul(at(lead, j), s);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == lead || at(i, c) == 0) continue;
      Elem factor = f.neg(at(i, c));
      for (std::size_t j = c; j < cols; ++j) at(i, j) = f.add(at(i, j), f.mul(factor, at(lead, j)));
    }
    out.pivots.push_back(c);
    ++lead;
  }
  out.rank = lead;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) r.set(i, j, at(i, j));
  return out;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  check_same_field(a, b);
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
  const Field& f = *a.field();
  Matrix out(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Elem acc = 0;
      for (std::size_t l = 0; l < a.cols(); ++l) acc = f.add(acc, f.mul(a.at(i, l), b.at(l, j)));
      out.set(i, j, acc);
    }
  }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  check_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum dimension mismatch");
  const Field& f = *a.field();
  Matrix out(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, f.add(a.at(i, j), b.at(i, j)));
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  check_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix difference dimension mismatch");
  const Field& f = *a.field();
  Matrix out(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, f.sub(a.at(i, j), b.at(i, j)));
  return out;
}

Matrix inverse(const Matrix& a) {
  if (!a.is_square()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix aug(a.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.set(i, j, a.at(i, j));
    aug.set(i, n + i, 1);
  }
  Rref r = rref(aug);
  if (r.rank < n || r.pivots[n - 1] != n - 1) throw std::domain_error("matrix is singular");
  Matrix inv(a.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.set(i, j, r.reduced.at(i, n + j));
  return inv;
}

Elem determinant(const Matrix& a) {
  if (!a.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  const Field& f = *a.field();
  const std::size_t n = a.rows();
  std::vector<Elem> m(a.data().begin(), a.data().end());
  Elem det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv * n + c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[piv * n + j], m[c * n + j]);
      det = f.neg(det);
    }
    Elem d = m[c * n + c];
    det = f.mul(det, d);
    Elem dinv = f.inv(d);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i * n + c] == 0) continue;
      Elem factor = f.neg(f.mul(m[i * n + c], dinv));
      for (std::size_t j = c; j < n; ++j) m[i * n + j] = f.add(m[i * n + j], f.mul(factor, m[c * n + j]));
    }
  }
  return det;
}

bool is_invertible(const Matrix& a) { return a.is_square() && rank(a) == a.rows(); }

Vector apply(std::span<const Elem> v, const Matrix& m) {
  if (v.size() != m.rows()) throw std::invalid_argument("vector length does not match matrix rows");
  const Field& f = *m.field();
  Vector out(m.cols(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] = f.add(out[j], f.mul(v[i], m.at(i, j)));
  }
  return out;
}

Matrix block(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
  check_same_field(a, d);
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() || b.cols() != d.cols())
    throw std::invalid_argument("non-conformable blocks");
  Matrix out(a.field(), a.rows() + c.rows(), a.cols() + b.cols());
  auto put = [&out](const Matrix& blk, std::size_t r0, std::size_t c0) {
    for (std::size_t i = 0; i < blk.rows(); ++i)
      for (std::size_t j = 0; j < blk.cols(); ++j) out.set(r0 + i, c0 + j, blk.at(i, j));
  };
  put(a, 0, 0);
  put(b, 0, a.cols());
  put(c, a.rows(), 0);
  put(d, a.rows(), a.cols());
  return out;
}

Matrix unit(FieldPtr field, std::size_t n, std::size_t i, std::size_t j) {
  Matrix m(std::move(field), n, n);
  m.set(i, j, 1);
  return m;
}

Matrix permutation_matrix(const std::vector<Cycle>& cycles, std::size_t n, FieldPtr field) {
  std::vector<std::size_t> image(n);
  for (std::size_t i = 0; i < n; ++i) image[i] = i;
  std::vector<bool> used(n, false);
  for (const Cycle& cycle : cycles) {
    for (std::size_t pt : cycle) {
      if (pt < 1 || pt > n) throw std::invalid_argument("cycle entry " + std::to_string(pt) + " outside 1.." + std::to_string(n));
      if (used[pt - 1]) throw std::invalid_argument("cycle entry " + std::to_string(pt) + " repeated");
      used[pt - 1] = true;
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) image[cycle[i] - 1] = cycle[(i + 1) % cycle.size()] - 1;
  }
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, image[i], 1);
  return m;
}

std::string cycles_to_text(const std::vector<Cycle>& cycles) {
  if (cycles.empty()) return "()";
  std::ostringstream out;
  for (const Cycle& c : cycles) {
    out << '(';
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i];
    out << ')';
  }
  return out.str();
}

}  // namespace polyverify::gf
