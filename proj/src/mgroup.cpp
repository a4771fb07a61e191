#include "polyverify/mgroup.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace polyverify::mgroup {

namespace {

Vector row_of(const Matrix& m, std::size_t r) {
  auto row = m.row(r);
  return Vector(row.begin(), row.end());
}

bool is_prime_power(std::uint64_t q) {
  if (q < 2) return false;
  std::uint64_t p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) return true;  // q itself is prime
  while (q % p == 0) q /= p;
  return q == 1;
}

}  // namespace

std::size_t VectorHash::operator()(const Vector& v) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto x : v) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

// ---------------------------------------------------------------------------

StabilizerChain::StabilizerChain(std::size_t n, FieldPtr field, std::uint64_t orbit_budget)
    : n_(n), field_(std::move(field)), budget_(orbit_budget) {
  if (n == 0) throw std::invalid_argument("stabilizer chain needs degree >= 1");
  u128 domain = checked_pow(field_->q(), static_cast<unsigned>(n));
  if (domain > budget_)
    throw BudgetExceeded("q^n = " + to_string(domain) + " exceeds orbit budget " + std::to_string(budget_));
  levels_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Level& level = levels_[i];
    level.base.assign(n, 0);
    level.base[i] = 1;
    level.points.push_back(level.base);
    level.index.emplace(level.base, 0);
    level.transversal.push_back(Matrix::identity(field_, n));
    level.transversal_inv.push_back(Matrix::identity(field_, n));
  }
}

std::pair<Matrix, std::size_t> StabilizerChain::strip(Matrix g, std::size_t from) const {
  for (std::size_t i = from; i < n_; ++i) {
    const Level& level = levels_[i];
    auto it = level.index.find(row_of(g, i));
    if (it == level.index.end()) return {std::move(g), i};
    g = g * level.transversal_inv[it->second];
  }
  return {std::move(g), n_};
}

void StabilizerChain::extend_orbit(std::size_t i) {
  Level& level = levels_[i];
  for (std::size_t b = 0; b < level.points.size(); ++b) {
    for (const Matrix& s : level.gens) {
      Vector image = gf::apply(level.points[b], s);
      if (level.index.contains(image)) continue;
      if (level.points.size() >= budget_) throw BudgetExceeded("orbit exceeds budget " + std::to_string(budget_));
      Matrix u = level.transversal[b] * s;
      level.index.emplace(image, level.points.size());
      level.points.push_back(std::move(image));
      level.transversal_inv.push_back(gf::inverse(u));
      level.transversal.push_back(std::move(u));
    }
  }
}

void StabilizerChain::push_generator(std::size_t i, const Matrix& g) {
  levels_[i].gens.push_back(g);
  extend_orbit(i);
}

void StabilizerChain::complete_from(std::size_t start) {
  std::size_t i = start;
  for (;;) {
    bool restarted = false;
    Level& level = levels_[i];
    for (std::size_t b = 0; b < level.points.size() && !restarted; ++b) {
      for (std::size_t s = 0; s < level.gens.size(); ++s) {
        const std::uint64_t key = (static_cast<std::uint64_t>(b) << 32) | s;
        if (!level.checked.insert(key).second) continue;
        Matrix h = level.transversal[b] * level.gens[s];
        h = h * level.transversal_inv[level.index.at(row_of(h, i))];
        if (h.is_identity()) continue;
        if (!level.seen_schreier.insert(h).second) continue;
        auto [residue, stop] = strip(std::move(h), i + 1);
        if (stop == n_) continue;
        for (std::size_t l = i + 1; l <= stop; ++l) push_generator(l, residue);
        i = stop;
        restarted = true;
        break;
      }
    }
    if (restarted) continue;
    if (i == 0) return;
    --i;
  }
}

bool StabilizerChain::add_generator(const Matrix& g) {
  if (g.rows() != n_ || !g.is_square()) throw std::invalid_argument("generator has the wrong size");
  auto [residue, stop] = strip(g, 0);
  if (stop == n_) return false;
  for (std::size_t l = 0; l <= stop; ++l) push_generator(l, residue);
  complete_from(stop);
  return true;
}

bool StabilizerChain::contains(const Matrix& g) const { return strip(g, 0).second == n_; }

u128 StabilizerChain::order() const {
  u128 order = 1;
  for (const Level& level : levels_) order = checked_mul(order, level.points.size());
  return order;
}

std::vector<std::size_t> StabilizerChain::orbit_sizes() const {
  std::vector<std::size_t> sizes;
  for (const Level& level : levels_) sizes.push_back(level.points.size());
  return sizes;
}

std::size_t StabilizerChain::strong_generator_count() const {
  std::unordered_set<Matrix, gf::MatrixHash> all;
  for (const Level& level : levels_) all.insert(level.gens.begin(), level.gens.end());
  return all.size();
}

// ---------------------------------------------------------------------------

MatrixGroup::MatrixGroup(std::size_t n, FieldPtr field, std::vector<Matrix> generators)
    : n_(n), field_(std::move(field)), generators_(std::move(generators)) {
  for (const Matrix& g : generators_) {
    if (g.rows() != n_ || g.cols() != n_) throw std::invalid_argument("generator is not " + std::to_string(n_) + "x" + std::to_string(n_));
    if (!(*g.field() == *field_)) throw std::invalid_argument("generator over a different field");
    if (!gf::is_invertible(g)) throw std::invalid_argument("generator is not invertible");
  }
}

const StabilizerChain& MatrixGroup::chain(std::uint64_t orbit_budget) const {
  if (!chain_) {
    StabilizerChain built(n_, field_, orbit_budget);
    for (const Matrix& g : generators_) built.add_generator(g);
    chain_ = std::move(built);
  }
  return *chain_;
}

u128 group_order_bsgs(const MatrixGroup& group, std::uint64_t orbit_budget) {
  return group.chain(orbit_budget).order();
}

std::vector<Matrix> closure(const MatrixGroup& group, std::uint64_t cap) {
  Matrix id = Matrix::identity(group.field(), group.degree());
  std::unordered_set<Matrix, gf::MatrixHash> seen{id};
  std::vector<Matrix> elements{id};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const Matrix& s : group.generators()) {
      Matrix next = elements[head] * s;
      if (seen.contains(next)) continue;
      if (elements.size() >= cap) throw BudgetExceeded("closure exceeds cap " + std::to_string(cap));
      seen.insert(next);
      elements.push_back(std::move(next));
    }
  }
  return elements;
}

std::vector<Vector> orbit_of_vector(const MatrixGroup& group, const Vector& seed, std::uint64_t budget) {
  std::unordered_set<Vector, VectorHash> seen{seed};
  std::vector<Vector> orbit{seed};
  for (std::size_t head = 0; head < orbit.size(); ++head) {
    for (const Matrix& s : group.generators()) {
      Vector image = gf::apply(orbit[head], s);
      if (seen.contains(image)) continue;
      if (orbit.size() >= budget) throw BudgetExceeded("orbit exceeds budget " + std::to_string(budget));
      seen.insert(image);
      orbit.push_back(std::move(image));
    }
  }
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

bool subspace_less(const Subspace& a, const Subspace& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  auto da = a.basis().data(), db = b.basis().data();
  return std::lexicographical_compare(da.begin(), da.end(), db.begin(), db.end());
}

std::vector<Subspace> orbit_of_subspace(const MatrixGroup& group, const Subspace& seed, std::uint64_t budget) {
  std::unordered_set<Subspace, grassmann::SubspaceHash> seen{seed};
  std::vector<Subspace> orbit{seed};
  for (std::size_t head = 0; head < orbit.size(); ++head) {
    for (const Matrix& s : group.generators()) {
      Subspace image = grassmann::apply_matrix_unchecked(orbit[head], s);
      if (seen.contains(image)) continue;
      if (orbit.size() >= budget) throw BudgetExceeded("orbit exceeds budget " + std::to_string(budget));
      seen.insert(image);
      orbit.push_back(std::move(image));
    }
  }
  std::sort(orbit.begin(), orbit.end(), subspace_less);
  return orbit;
}

std::vector<Matrix> sl_generators(std::size_t n, const FieldPtr& field) {
  std::vector<Matrix> gens;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      for (unsigned j = 0; j < field->e(); ++j) {
        Matrix t = Matrix::identity(field, n);
        t.set(a, b, field->exp(j));
        gens.push_back(std::move(t));
      }
    }
  }
  return gens;
}

std::vector<Matrix> gl_generators(std::size_t n, const FieldPtr& field) {
  std::vector<Matrix> gens = sl_generators(n, field);
  if (field->q() > 2) {
    Matrix d = Matrix::identity(field, n);
    d.set(0, 0, field->generator());
    gens.push_back(std::move(d));
  }
  return gens;
}

std::vector<Matrix> parabolic_stabilizer_generators(std::size_t n, std::size_t k, const FieldPtr& field) {
  if (k < 1 || k >= n) throw std::invalid_argument("parabolic stabilizer needs 1 <= k < n");
  std::vector<Matrix> gens;
  auto allowed = [k](std::size_t a, std::size_t b) {
    bool top_a = a < k, top_b = b < k;
    return (top_a && top_b) || (!top_a && !top_b) || (!top_a && top_b);
  };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !allowed(a, b)) continue;
      for (unsigned j = 0; j < field->e(); ++j) {
        Matrix t = Matrix::identity(field, n);
        t.set(a, b, field->exp(j));
        gens.push_back(std::move(t));
      }
    }
  }
  if (field->q() > 2) {
    Matrix d = Matrix::identity(field, n);
    d.set(0, 0, field->generator());
    d.set(n - 1, n - 1, field->inv(field->generator()));
    gens.push_back(std::move(d));
  }
  return gens;
}

// ---------------------------------------------------------------------------

GroupSpec GroupSpec::parse(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  std::string compact;
  for (char c : text)
    if (c != '_') compact += c;
  if (compact == "M11") return {"M11", {}};
  if (compact == "2^4.A6") return {"2^4.A6", {}};

  std::size_t pos = 0;
  while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == 0) throw std::invalid_argument("cannot parse group name '" + raw + "'");
  GroupSpec spec{text.substr(0, pos), {}};
  auto read_number = [&](std::size_t& p) {
    std::size_t start = p;
    while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
    if (start == p) throw std::invalid_argument("expected a number in group name '" + raw + "'");
    return std::stoull(text.substr(start, p - start));
  };
  if (pos < text.size() && text[pos] == '_') {
    ++pos;
    spec.params.push_back(read_number(pos));
  } else if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    spec.params.push_back(read_number(pos));
  }
  if (pos < text.size() && text[pos] == '(') {
    ++pos;
    for (;;) {
      spec.params.push_back(read_number(pos));
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        break;
      }
      throw std::invalid_argument("unterminated parameter list in group name '" + raw + "'");
    }
  }
  if (pos != text.size()) throw std::invalid_argument("trailing characters in group name '" + raw + "'");
  return spec;
}

std::string GroupSpec::to_string() const {
  if (params.empty()) return family;
  std::string out = family + "(";
  for (std::size_t i = 0; i < params.size(); ++i) out += (i ? "," : "") + std::to_string(params[i]);
  return out + ")";
}

std::string GroupSpec::display() const {
  if (family == "M11") return "M_11";
  if (family == "2^4.A6") return "2^4.A_6";
  if (params.size() == 1) return family + "_" + std::to_string(params[0]);
  if (params.size() == 2) return family + "_" + std::to_string(params[0]) + "(" + std::to_string(params[1]) + ")";
  return to_string();
}

u128 order_formula(const std::string& family, const std::vector<std::uint64_t>& params) {
  auto need = [&](std::size_t count) {
    if (params.size() != count)
      throw std::invalid_argument(family + " expects " + std::to_string(count) + " parameter(s)");
  };
  auto factorial = [](std::uint64_t m) {
    u128 f = 1;
    for (std::uint64_t i = 2; i <= m; ++i) f = checked_mul(f, i);
    return f;
  };

  if (family == "M11") {
    need(0);
    return 7920;  // Atlas of Finite Groups
  }
  if (family == "2^4.A6") {
    need(0);
    return checked_mul(16, factorial(6) / 2);
  }
  if (family == "C") {
    need(1);
    if (params[0] < 1) throw std::invalid_argument("cyclic group order must be >= 1");
    return params[0];
  }
  if (family == "A" || family == "S") {
    need(1);
    const std::uint64_t m = params[0];
    if (m < 1) throw std::invalid_argument("degree must be >= 1");
    u128 f = factorial(m);
    return family == "S" || m < 2 ? f : f / 2;
  }

  need(2);
  const std::uint64_t n = params[0], q = params[1];
  if (n < 1) throw std::invalid_argument(family + " needs dimension >= 1");
  if (!is_prime_power(q)) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  const unsigned nn = static_cast<unsigned>(n);

  if (family == "GL" || family == "SL" || family == "PSL" || family == "PGL") {
    u128 gl = checked_pow(q, nn * (nn - 1) / 2);
    for (unsigned i = 1; i <= nn; ++i) gl = checked_mul(gl, checked_pow(q, i) - 1);
    if (family == "GL") return gl;
    u128 sl = gl / (q - 1);
    if (family == "SL" || family == "PGL") return sl;
    return sl / std::gcd(n, q - 1);
  }
  if (family == "GU" || family == "SU" || family == "PSU") {
    u128 gu = checked_pow(q, nn * (nn - 1) / 2);
    for (unsigned i = 1; i <= nn; ++i) {
      u128 qi = checked_pow(q, i);
      gu = checked_mul(gu, i % 2 == 0 ? qi - 1 : checked_add(qi, 1));
    }
    if (family == "GU") return gu;
    u128 su = gu / (q + 1);
    if (family == "SU") return su;
    return su / std::gcd(n, q + 1);
  }
  if (family == "Sp" || family == "PSp") {
    if (n % 2 != 0) throw std::invalid_argument("symplectic groups need even dimension");
    const unsigned m = nn / 2;
    u128 sp = checked_pow(q, m * m);
    for (unsigned i = 1; i <= m; ++i) sp = checked_mul(sp, checked_pow(q, 2 * i) - 1);
    return family == "Sp" ? sp : sp / std::gcd<std::uint64_t>(2, q - 1);
  }
  throw std::invalid_argument("unknown group family '" + family + "'");
}

// ---------------------------------------------------------------------------

OrbitPartition stabilizer_orbits_on_subspaces(unsigned n, unsigned k, const FieldPtr& field, std::uint64_t budget) {
  if (k < 1 || 2 * k > n) throw std::invalid_argument("stabilizer orbits require 1 <= k <= n/2");
  std::vector<Subspace> all = grassmann::enumerate_subspaces(n, k, field, budget);
  std::unordered_map<Subspace, std::size_t, grassmann::SubspaceHash> index;
  for (std::size_t i = 0; i < all.size(); ++i) index.emplace(all[i], i);

  std::vector<std::size_t> x_indices(k);
  std::iota(x_indices.begin(), x_indices.end(), 1);
  const Subspace x = grassmann::coordinate_subspace(x_indices, n, field);
  MatrixGroup stabilizer(n, field, parabolic_stabilizer_generators(n, k, field));

  std::vector<int> orbit_of(all.size(), -1);
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t start = 0; start < all.size(); ++start) {
    if (orbit_of[start] >= 0) continue;
    const int id = static_cast<int>(members.size());
    members.push_back({start});
    orbit_of[start] = id;
    for (std::size_t head = 0; head < members[id].size(); ++head) {
      const Subspace& cur = all[members[id][head]];
      for (const Matrix& g : stabilizer.generators()) {
        std::size_t img = index.at(grassmann::apply_matrix_unchecked(cur, g));
        if (orbit_of[img] >= 0) continue;
        orbit_of[img] = id;
        members[id].push_back(img);
      }
    }
  }

  OrbitPartition out;
  out.domain = std::to_string(k) + "-subspaces of " + field->name() + "^" + std::to_string(n);
  std::vector<std::pair<std::size_t, std::vector<Subspace>>> keyed;
  for (const auto& m : members) {
    std::vector<Subspace> orbit;
    for (std::size_t idx : m) orbit.push_back(all[idx]);
    std::sort(orbit.begin(), orbit.end(), subspace_less);
    keyed.emplace_back(grassmann::intersect_dim(x, orbit.front()), std::move(orbit));
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (auto& [dim, orbit] : keyed) {
    out.representatives.push_back(orbit.front());
    out.orbits.push_back(std::move(orbit));
  }
  return out;
}

}  // namespace polyverify::mgroup
