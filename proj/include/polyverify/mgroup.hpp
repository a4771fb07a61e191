#pragma once

// Matrix groups over F_q: orbits, exact orders via a stabilizer chain on
// nonzero vectors, brute-force closure, and classical order formulas.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "polyverify/checked.hpp"
#include "polyverify/gf.hpp"
#include "polyverify/grassmann.hpp"

namespace polyverify::mgroup {

using gf::FieldPtr;
using gf::Matrix;
using gf::Vector;
using grassmann::Subspace;

inline constexpr std::uint64_t kDefaultOrbitBudget = 10'000'000;
inline constexpr std::uint64_t kDefaultClosureCap = 1'000'000;

struct VectorHash {
  std::size_t operator()(const Vector& v) const noexcept;
};

// Base-and-strong-generating-set data for a group of n x n matrices acting
// on row vectors. The base is e_1, ..., e_n; a matrix fixing every e_i is
// the identity, so stripping through all n levels decides membership.
class StabilizerChain {
 public:
  StabilizerChain(std::size_t n, FieldPtr field, std::uint64_t orbit_budget = kDefaultOrbitBudget);

  // Adds g to the group and restores a complete chain. Returns false if g
  // was already a member.
  bool add_generator(const Matrix& g);

  bool contains(const Matrix& g) const;
  u128 order() const;
  std::vector<std::size_t> orbit_sizes() const;
  std::size_t strong_generator_count() const;

 private:
  struct Level {
    Vector base;
    std::vector<Matrix> gens;
    std::vector<Vector> points;
    std::unordered_map<Vector, std::size_t, VectorHash> index;
    std::vector<Matrix> transversal;      // base * transversal[b] == points[b]
    std::vector<Matrix> transversal_inv;
    std::unordered_set<std::uint64_t> checked;  // (point, generator) pairs already verified
    std::unordered_set<Matrix, gf::MatrixHash> seen_schreier;
  };

  // Returns the residue and the level where stripping stopped (n if it
  // passed every level, in which case the residue is the identity).
  std::pair<Matrix, std::size_t> strip(Matrix g, std::size_t from) const;
  void push_generator(std::size_t level, const Matrix& g);
  void extend_orbit(std::size_t level);
  void complete_from(std::size_t level);

  std::size_t n_;
  FieldPtr field_;
  std::uint64_t budget_;
  std::vector<Level> levels_;
};

class MatrixGroup {
 public:
  // Throws std::invalid_argument for a non-invertible or mis-sized generator.
  MatrixGroup(std::size_t n, FieldPtr field, std::vector<Matrix> generators);

  std::size_t degree() const { return n_; }
  const FieldPtr& field() const { return field_; }
  const std::vector<Matrix>& generators() const { return generators_; }

  // Builds the chain on first use. Throws BudgetExceeded if q^n > budget.
  const StabilizerChain& chain(std::uint64_t orbit_budget = kDefaultOrbitBudget) const;

 private:
  std::size_t n_;
  FieldPtr field_;
  std::vector<Matrix> generators_;
  mutable std::optional<StabilizerChain> chain_;
};

u128 group_order_bsgs(const MatrixGroup& group, std::uint64_t orbit_budget = kDefaultOrbitBudget);

// All group elements by breadth-first multiplication. Throws BudgetExceeded
// once more than `cap` elements are found.
std::vector<Matrix> closure(const MatrixGroup& group, std::uint64_t cap = kDefaultClosureCap);

// Orbits, returned in canonical (lexicographic) order.
std::vector<Vector> orbit_of_vector(const MatrixGroup& group, const Vector& seed,
                                    std::uint64_t budget = kDefaultOrbitBudget);
std::vector<Subspace> orbit_of_subspace(const MatrixGroup& group, const Subspace& seed,
                                        std::uint64_t budget = kDefaultOrbitBudget);

bool subspace_less(const Subspace& a, const Subspace& b);

// Transvections I + g^j E_{a,b} (a != b, 0 <= j < e) with g the field's
// primitive element; these generate SL_n(q).
std::vector<Matrix> sl_generators(std::size_t n, const FieldPtr& field);
// sl_generators plus diag(g, 1, ..., 1).
std::vector<Matrix> gl_generators(std::size_t n, const FieldPtr& field);

// Stabilizer of x = <e_1..e_k> in SL_n(q): matrices [[A, 0], [C, D]].
// Generated by transvections inside A, inside D and inside C, plus
// diag(g, 1, ..., 1, g^-1) when q > 2.
std::vector<Matrix> parabolic_stabilizer_generators(std::size_t n, std::size_t k, const FieldPtr& field);

// ---------------------------------------------------------------------------
// Group orders by formula.

// A family name plus integer parameters, e.g. {"PSL", {5, 3}}, {"A", {5}},
// {"M11", {}}. Text form: "PSL(5,3)", "A(5)", "M11", "2^4.A6".
struct GroupSpec {
  std::string family;
  std::vector<std::uint64_t> params;

  static GroupSpec parse(const std::string& text);
  std::string to_string() const;
  // Display form such as "PSL_5(3)", "A_5", "M_11".
  std::string display() const;
  bool operator==(const GroupSpec&) const = default;
};

// Supported families: GL, SL, PSL, PGL (n, q); GU, SU, PSU (n, q);
// Sp, PSp (n even, q); A, S (m); cyclic C (m); constants M11 and 2^4.A6.
// Throws std::invalid_argument for unknown families or bad parameters.
u128 order_formula(const std::string& family, const std::vector<std::uint64_t>& params);
inline u128 order_formula(const GroupSpec& spec) { return order_formula(spec.family, spec.params); }

// ---------------------------------------------------------------------------

struct OrbitPartition {
  std::string domain;                      // e.g. "2-subspaces of GF(2)^4"
  std::vector<std::vector<Subspace>> orbits;
  std::vector<Subspace> representatives;  // first member of each orbit
};

// Orbits of the SL_n(q)-stabilizer of x = <e_1..e_k> on all k-subspaces.
// Orbits are ordered by decreasing dim(x cap y), i.e. Gamma_k(x) first.
OrbitPartition stabilizer_orbits_on_subspaces(unsigned n, unsigned k, const FieldPtr& field,
                                              std::uint64_t budget = grassmann::kDefaultEnumerationBudget);

}  // namespace polyverify::mgroup
