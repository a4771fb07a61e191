#pragma once

// Finite fields F_q (q = p^e <= 2^16) and dense matrices over them.
//
// Elements are integer codes 0..q-1. A code c stands for the polynomial
// sum_i d_i x^i where d_i are the base-p digits of c, reduced modulo the
// field's defining polynomial. For e = 1 this is just arithmetic mod p.
//
// Defining polynomial: the smallest monic primitive polynomial of degree e
// over F_p, where polynomials are ordered by the code of their lower
// coefficients (c_0 + c_1 p + ... + c_{e-1} p^{e-1}). With this choice the
// class of x (code p) is a primitive element. For prime fields the stored
// generator is the least primitive root mod p.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace polyverify::gf {

using Elem = std::uint16_t;

inline constexpr unsigned kMaxFieldOrder = 1u << 16;

bool is_prime(unsigned n);

class Field {
 public:
  // Throws std::invalid_argument for non-prime p, e == 0, or p^e above kMaxFieldOrder.
  static std::shared_ptr<const Field> make(unsigned p, unsigned e = 1);
  // Convenience: the field of order q, which must be a prime power.
  static std::shared_ptr<const Field> of_order(unsigned q);

  unsigned p() const { return p_; }
  unsigned e() const { return e_; }
  unsigned q() const { return q_; }
  bool is_prime_field() const { return e_ == 1; }

  // Coefficients c_0..c_e of the monic defining polynomial (c_e = 1).
  const std::vector<unsigned>& modulus() const { return modulus_; }
  Elem generator() const { return generator_; }

  Elem add(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  // Throws std::domain_error for a == 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t k) const;

  // Discrete log base generator(); a must be nonzero.
  unsigned log(Elem a) const;
  Elem exp(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }
  // Multiplicative order of a nonzero element.
  unsigned order(Elem a) const;

  std::string name() const;

  bool operator==(const Field& other) const { return p_ == other.p_ && e_ == other.e_; }

 private:
  Field(unsigned p, unsigned e);

  unsigned p_;
  unsigned e_;
  unsigned q_;
  std::vector<unsigned> modulus_;
  Elem generator_ = 1;
  std::vector<Elem> exp_;  // length 2(q-1) so mul needs no reduction
  std::vector<unsigned> log_;
  std::vector<Elem> add_table_;  // q*q, only for small extension fields
  std::vector<Elem> neg_;
};

using FieldPtr = std::shared_ptr<const Field>;

using Vector = std::vector<Elem>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);

  static Matrix identity(FieldPtr field, std::size_t n);
  static Matrix from_rows(FieldPtr field, const std::vector<Vector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldPtr& field() const { return field_; }

  Elem at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Elem v);
  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> data() const { return data_; }

  bool is_square() const { return rows_ == cols_; }
  bool is_identity() const;

  // Rows joined by ';', entries by ','. Example: "1,0;0,1".
  std::string to_text() const;
  static Matrix from_text(FieldPtr field, const std::string& text);

  bool operator==(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }

 private:
  FieldPtr field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

struct MatrixHash {
  std::size_t operator()(const Matrix& m) const noexcept;
};

struct Rref {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

Rref rref(const Matrix& m);
std::size_t rank(const Matrix& m);

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
// Throws std::domain_error when the matrix is singular.
Matrix inverse(const Matrix& a);
Elem determinant(const Matrix& a);
bool is_invertible(const Matrix& a);

// Row vector times matrix.
Vector apply(std::span<const Elem> v, const Matrix& m);

// Stacks [[a, b], [c, d]]; block shapes must be conformable.
Matrix block(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d);
// The elementary matrix E_{i,j} (0-based indices) of size n.
Matrix unit(FieldPtr field, std::size_t n, std::size_t i, std::size_t j);

// Cycles use 1-based points. The result sends basis row e_i to e_{sigma(i)},
// i.e. row i has its single 1 in column sigma(i).
using Cycle = std::vector<std::size_t>;
Matrix permutation_matrix(const std::vector<Cycle>& cycles, std::size_t n, FieldPtr field);
std::string cycles_to_text(const std::vector<Cycle>& cycles);

void check_same_field(const Matrix& a, const Matrix& b);

}  // namespace polyverify::gf
