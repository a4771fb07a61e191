#include "polyverify/claims.hpp"

#include <random>

namespace polyverify::claims {

namespace {

using gf::Matrix;
using grassmann::Subspace;

std::vector<std::size_t> range(std::size_t first, std::size_t last) {
  std::vector<std::size_t> out;
  for (std::size_t i = first; i <= last; ++i) out.push_back(i);
  return out;
}

std::vector<std::size_t> concat(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Subspace coords(const std::vector<std::size_t>& idx, unsigned n, const FieldPtr& f) {
  return grassmann::coordinate_subspace(idx, n, f);
}

void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

void check_dim(WitnessReport& r, const std::string& label, const Subspace& a, const Subspace& b, std::size_t want) {
  const std::size_t got = grassmann::intersect_dim(a, b);
  r.values.emplace_back(label, std::to_string(got));
  r.checks.push_back({label + " == " + std::to_string(want), got == want, true});
}

// Fix/move outcomes straight from the action on canonical forms.
void check_action(WitnessReport& r, const Matrix& perm, const std::vector<std::pair<std::string, const Subspace*>>& fixed,
                  const std::pair<std::string, const Subspace*>& moved) {
  for (const auto& [name, s] : fixed)
    r.checks.push_back({"fixes " + name, grassmann::apply_matrix(*s, perm) == *s, true});
  r.checks.push_back({"fixes " + moved.first, grassmann::apply_matrix(*moved.second, perm) == *moved.second, false});
}

std::uint64_t param(const ClaimRequest& req, const std::string& name) {
  auto it = req.params.find(name);
  if (it == req.params.end()) throw PreconditionError("missing parameter '" + name + "' for " + req.claim);
  return it->second;
}

std::uint64_t param_or(const ClaimRequest& req, const std::string& name, std::uint64_t fallback) {
  auto it = req.params.find(name);
  return it == req.params.end() ? fallback : it->second;
}

Matrix random_invertible(unsigned k, const FieldPtr& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<unsigned> entry(0, f->q() - 1);
  for (;;) {
    Matrix m(f, k, k);
    for (unsigned i = 0; i < k; ++i)
      for (unsigned j = 0; j < k; ++j) m.set(i, j, static_cast<gf::Elem>(entry(rng)));
    if (gf::is_invertible(m)) return m;
  }
}

}  // namespace

void WitnessReport::finalize() {
  pass = !error.has_value();
  for (const Check& c : checks) pass = pass && c.ok();
}

WitnessReport verify_claim2(unsigned k, const FieldPtr& f) {
  require(k >= 4, "claim2 requires k >= 4 (got k = " + std::to_string(k) + ")");
  const unsigned n = 2 * k;
  WitnessReport r;
  r.claim = "claim2";
  r.params = {{"n", n}, {"k", k}, {"q", f->q()}};

  const Subspace x = coords(range(1, k), n, f);
  const Subspace y = coords(concat(range(1, k - 1), {k + 1}), n, f);
  const Subspace y2 = coords(concat(range(2, k), {k + 2}), n, f);
  const std::vector<gf::Cycle> cycles{{1, k + 1}, {k, k + 2}};
  const Matrix perm = gf::permutation_matrix(cycles, n, f);
  r.subspaces = {{"x", x.to_text()}, {"y", y.to_text()}, {"y'", y2.to_text()}};
  r.permutation = gf::cycles_to_text(cycles);

  check_dim(r, "dim(x cap y)", x, y, k - 1);
  check_dim(r, "dim(x cap y')", x, y2, k - 1);
  check_dim(r, "dim(y cap y')", y, y2, k - 2);
  check_action(r, perm, {{"y", &y}, {"y'", &y2}}, {"x", &x});
  r.finalize();
  return r;
}

WitnessReport verify_claim3(unsigned n, unsigned k, unsigned k1, const FieldPtr& f) {
  require(k >= 4, "claim3 requires k >= 4 (got k = " + std::to_string(k) + ")");
  require(k1 >= 1 && k1 + 2 <= k, "claim3 requires 1 <= k1 <= k-2 (got k1 = " + std::to_string(k1) + ")");
  require(2 * k - k1 + 1 <= n, "claim3 requires 2k-k1+1 <= n");
  require(2 * k <= n, "claim3 requires k <= n/2");
  WitnessReport r;
  r.claim = "claim3";
  r.params = {{"n", n}, {"k", k}, {"k1", k1}, {"q", f->q()}};

  const Subspace x = coords(range(1, k), n, f);
  const Subspace y = coords(concat(range(1, k1), range(k + 1, 2 * k - k1)), n, f);
  const Subspace z = coords(concat(range(1, k1), range(k + 2, 2 * k - k1 + 1)), n, f);
  // The transposition of coordinates k-1 and k.
  const std::vector<gf::Cycle> cycles{{1, k + 2}, {k - 1, k}};
  const Matrix perm = gf::permutation_matrix(cycles, n, f);
  r.subspaces = {{"x", x.to_text()}, {"y", y.to_text()}, {"z", z.to_text()}};
  r.permutation = gf::cycles_to_text(cycles);

  check_dim(r, "dim(x cap y)", x, y, k1);
  check_dim(r, "dim(x cap z)", x, z, k1);
  check_dim(r, "dim(y cap z)", y, z, k - 1);
  check_action(r, perm, {{"y", &y}, {"z", &z}}, {"x", &x});
  r.finalize();
  return r;
}

WitnessReport verify_claim4(unsigned n, unsigned k, const FieldPtr& f) {
  require(k >= 4, "claim4 requires k >= 4 (got k = " + std::to_string(k) + ")");
  require(n >= 2 * k + 2, "claim4 requires n >= 2k+2 (got n = " + std::to_string(n) + ", k = " + std::to_string(k) + ")");
  WitnessReport r;
  r.claim = "claim4";
  r.params = {{"n", n}, {"k", k}, {"q", f->q()}};

  const Subspace x = coords(range(1, k), n, f);
  const Subspace y = coords(range(k + 1, 2 * k), n, f);
  const Subspace z = coords(range(k + 2, 2 * k + 1), n, f);
  const std::vector<gf::Cycle> cycles{{1, 2 * k + 2}, {2, 3}};
  const Matrix perm = gf::permutation_matrix(cycles, n, f);
  r.subspaces = {{"x", x.to_text()}, {"y", y.to_text()}, {"z", z.to_text()}};
  r.permutation = gf::cycles_to_text(cycles);

  check_dim(r, "dim(x cap y)", x, y, 0);
  check_dim(r, "dim(x cap z)", x, z, 0);
  const std::size_t yz = grassmann::intersect_dim(y, z);
  r.values.emplace_back("dim(y cap z)", std::to_string(yz));
  r.checks.push_back({"dim(y cap z) > 0", yz > 0, true});
  if (yz != k - 2)
    r.notes.push_back("computed dim(y cap z) = " + std::to_string(yz) + " (k-1), not k-2 = " + std::to_string(k - 2) +
                      "; only positivity is used");
  check_action(r, perm, {{"y", &y}, {"z", &z}}, {"x", &x});
  r.finalize();
  return r;
}

WitnessReport verify_claim5(unsigned k, const FieldPtr& f) {
  require(k >= 4, "claim5 requires k >= 4 (got k = " + std::to_string(k) + ")");
  const unsigned n = 2 * k + 1;
  WitnessReport r;
  r.claim = "claim5";
  r.params = {{"n", n}, {"k", k}, {"q", f->q()}};

  const Subspace x = coords(range(1, k), n, f);
  const Subspace y = coords(range(k + 1, 2 * k), n, f);
  std::vector<gf::Vector> z_rows;
  for (std::size_t i = k + 1; i <= 2 * k - 1; ++i) z_rows.push_back(grassmann::basis_vector(n, i));
  gf::Vector mixed = grassmann::basis_vector(n, 1);
  mixed[2 * k] = 1;  // e_1 + e_{2k+1}
  z_rows.push_back(mixed);
  const Subspace z = grassmann::span(z_rows, f);
  const std::vector<gf::Cycle> cycles{{1, 2 * k + 1}, {k + 1, k + 2}};
  const Matrix perm = gf::permutation_matrix(cycles, n, f);
  r.subspaces = {{"x", x.to_text()}, {"y", y.to_text()}, {"z", z.to_text()}};
  r.permutation = gf::cycles_to_text(cycles);

  check_dim(r, "dim(x cap y)", x, y, 0);
  check_dim(r, "dim(x cap z)", x, z, 0);
  check_dim(r, "dim(y cap z)", y, z, k - 1);
  check_action(r, perm, {{"y", &y}, {"z", &z}}, {"x", &x});
  r.finalize();
  return r;
}

// ---------------------------------------------------------------------------

std::vector<Matrix> enumerate_gl(unsigned k, const FieldPtr& f, std::uint64_t budget) {
  const unsigned q = f->q();
  u128 candidates = checked_pow(q, k * k);
  if (candidates > budget)
    throw BudgetExceeded("enumerating GL_" + std::to_string(k) + "(" + std::to_string(q) + ") needs " +
                         to_string(candidates) + " candidates, budget " + std::to_string(budget));
  std::vector<Matrix> out;
  std::vector<gf::Elem> digits(k * k, 0);
  for (;;) {
    Matrix m(f, k, k);
    for (unsigned i = 0; i < k * k; ++i) m.set(i / k, i % k, digits[i]);
    if (gf::is_invertible(m)) out.push_back(std::move(m));
    std::size_t pos = digits.size();
    while (pos > 0 && digits[pos - 1] == q - 1) digits[--pos] = 0;
    if (pos == 0) break;
    ++digits[pos - 1];
  }
  return out;
}

namespace {

std::vector<std::pair<Matrix, Matrix>> generation_pairs(unsigned k, const FieldPtr& f, PairSet set,
                                                        std::uint64_t gl_budget) {
  const gf::Field& field = *f;
  std::vector<std::pair<Matrix, Matrix>> pairs;
  const Matrix id = Matrix::identity(f, k);
  if (set == PairSet::kFull) {
    const std::vector<Matrix> gl = enumerate_gl(k, f, gl_budget);
    for (const Matrix& a : gl)
      for (const Matrix& d : gl)
        if (field.mul(gf::determinant(a), gf::determinant(d)) == 1) pairs.emplace_back(a, d);
    return pairs;
  }
  for (const Matrix& m : enumerate_gl(k, f, gl_budget)) {
    if (gf::determinant(m) != 1) continue;
    pairs.emplace_back(id, m);
    if (!m.is_identity()) pairs.emplace_back(m, id);
  }
  // All permutation matrices of degree k, via Heap's algorithm on images.
  std::vector<Matrix> perms;
  std::vector<std::size_t> image(k);
  for (std::size_t i = 0; i < k; ++i) image[i] = i;
  std::vector<std::size_t> c(k, 0);
  auto emit = [&] {
    Matrix p(f, k, k);
    for (std::size_t i = 0; i < k; ++i) p.set(i, image[i], 1);
    perms.push_back(std::move(p));
  };
  emit();
  for (std::size_t i = 0; i < k;) {
    if (c[i] < i) {
      std::swap(image[i % 2 == 0 ? 0 : c[i]], image[i]);
      emit();
      ++c[i];
      i = 0;
    } else {
      c[i] = 0;
      ++i;
    }
  }
  for (const Matrix& a : perms)
    for (const Matrix& d : perms)
      if (field.mul(gf::determinant(a), gf::determinant(d)) == 1) pairs.emplace_back(a, d);
  return pairs;
}

Matrix family_member(int family, const Matrix& a, const Matrix& d) {
  const Matrix zero(a.field(), a.rows(), a.cols());
  switch (family) {
    case 0: return gf::block(a, zero, zero, d);
    case 1: return gf::block(a, a - d, zero, d);
    case 2: return gf::block(a, zero, d - a, d);
  }
  throw std::invalid_argument("family index must be 0, 1 or 2");
}

u128 order_of_families(unsigned k, const FieldPtr& f, const std::vector<std::pair<Matrix, Matrix>>& pairs,
                       const GenerationOptions& options, std::size_t& generator_count) {
  mgroup::StabilizerChain chain(2 * k, f, options.orbit_budget);
  generator_count = 0;
  for (int family : options.family_order) {
    for (const auto& [a, d] : pairs) {
      chain.add_generator(family_member(family, a, d));
      ++generator_count;
    }
  }
  return chain.order();
}

}  // namespace

std::vector<Matrix> generation_family(unsigned k, const FieldPtr& f, int family, PairSet pairs, std::uint64_t gl_budget) {
  std::vector<Matrix> out;
  for (const auto& [a, d] : generation_pairs(k, f, pairs, gl_budget)) out.push_back(family_member(family, a, d));
  return out;
}

WitnessReport verify_generation(unsigned k, const FieldPtr& f, const GenerationOptions& options) {
  require(k >= 2, "generation is unsupported for k = " + std::to_string(k) + " (needs k >= 2)");
  WitnessReport r;
  r.claim = "generation";
  r.params = {{"k", k}, {"q", f->q()}};

  const u128 expected = mgroup::order_formula("SL", {2ull * k, f->q()});
  const u128 gl = mgroup::order_formula("GL", {k, f->q()});
  const u128 sl = mgroup::order_formula("SL", {k, f->q()});
  const u128 full_pairs = checked_mul(gl, sl);

  std::size_t generators = 0;
  u128 order = 0;
  std::string mode;
  if (full_pairs <= options.full_pair_limit) {
    order = order_of_families(k, f, generation_pairs(k, f, PairSet::kFull, options.gl_enumeration_budget), options,
                              generators);
    mode = "full";
  } else {
    order = order_of_families(k, f, generation_pairs(k, f, PairSet::kSubset, options.gl_enumeration_budget), options,
                              generators);
    mode = "subset";
    if (order != expected) {
      if (full_pairs <= options.escalation_pair_limit) {
        order = order_of_families(k, f, generation_pairs(k, f, PairSet::kFull, options.gl_enumeration_budget),
                                  options, generators);
        mode = "subset, escalated to full";
      } else {
        r.notes.push_back("subset fell short and the full pair set (" + to_string(full_pairs) +
                          " pairs) exceeds the escalation limit");
      }
    }
  }

  r.order = order;
  r.values = {{"order", to_string(order)},
              {"expected", to_string(expected)},
              {"generators", std::to_string(generators)},
              {"pair_set", mode}};
  r.checks.push_back({"order == |SL_" + std::to_string(2 * k) + "(" + std::to_string(f->q()) + ")|", order == expected, true});
  r.finalize();
  return r;
}

std::pair<bool, bool> sl_identities_hold(const Matrix& a, const Matrix& d) {
  const FieldPtr& f = a.field();
  const std::size_t k = a.rows();
  const Matrix id = Matrix::identity(f, k);
  const Matrix zero(f, k, k);
  const Matrix a_inv = gf::inverse(a), d_inv = gf::inverse(d);

  const Matrix lhs1 = gf::block(a, zero, d - a, d) * gf::block(a_inv, zero, zero, d_inv);
  const Matrix rhs1 = gf::block(id, zero, d * a_inv - id, id);

  const Matrix e12 = gf::unit(f, k, 0, 1);
  const Matrix h = gf::block(a, zero, zero, d);
  const Matrix m = gf::block(id, zero, e12, id);
  const Matrix lhs2 = gf::inverse(h) * m * h;
  const Matrix rhs2 = gf::block(id, zero, d_inv * e12 * a, id);
  return {lhs1 == rhs1, lhs2 == rhs2};
}

WitnessReport verify_sl_identities(unsigned k, const FieldPtr& f, unsigned trials, std::uint64_t seed) {
  require(k >= 2, "sl-identities requires k >= 2");
  WitnessReport r;
  r.claim = "sl-identities";
  r.params = {{"k", k}, {"q", f->q()}, {"trials", trials}, {"seed", seed}};
  std::mt19937_64 rng(seed);
  unsigned product_ok = 0, conjugate_ok = 0;
  for (unsigned t = 0; t < trials; ++t) {
    const Matrix a = random_invertible(k, f, rng);
    const Matrix d = random_invertible(k, f, rng);
    auto [first, second] = sl_identities_hold(a, d);
    product_ok += first;
    conjugate_ok += second;
  }
  r.values = {{"product identity", std::to_string(product_ok) + "/" + std::to_string(trials)},
              {"conjugation identity", std::to_string(conjugate_ok) + "/" + std::to_string(trials)}};
  r.checks.push_back({"product identity on all trials", product_ok == trials, true});
  r.checks.push_back({"conjugation identity on all trials", conjugate_ok == trials, true});
  r.finalize();
  return r;
}

WitnessReport verify_orbit_count(unsigned n, unsigned k, const FieldPtr& f, const Budgets& budgets) {
  require(k >= 1 && 2 * k <= n, "orbit-count requires 1 <= k <= n/2");
  WitnessReport r;
  r.claim = "orbit-count";
  r.params = {{"n", n}, {"k", k}, {"q", f->q()}};
  const mgroup::OrbitPartition partition = mgroup::stabilizer_orbits_on_subspaces(n, k, f, budgets.enumeration);

  std::vector<std::size_t> x_idx(k);
  for (unsigned i = 0; i < k; ++i) x_idx[i] = i + 1;
  const Subspace x = coords(x_idx, n, f);
  r.subspaces = {{"x", x.to_text()}};

  bool constant = true;
  std::vector<bool> dim_seen(k + 1, false);
  std::string dims;
  for (const auto& orbit : partition.orbits) {
    const std::size_t d = grassmann::intersect_dim(x, orbit.front());
    for (const Subspace& y : orbit) constant = constant && grassmann::intersect_dim(x, y) == d;
    dim_seen[d] = true;
    r.orbit_sizes.push_back(orbit.size());
    dims += (dims.empty() ? "" : ",") + std::to_string(d);
  }
  bool all_dims = true;
  for (bool b : dim_seen) all_dims = all_dims && b;

  r.values = {{"orbits", std::to_string(partition.orbits.size())}, {"intersection dims", dims}};
  r.checks.push_back({"orbit count == k+1", partition.orbits.size() == k + 1, true});
  r.checks.push_back({"each orbit constant in dim(x cap y)", constant, true});
  r.checks.push_back({"every dimension 0..k occurs", all_dims, true});
  r.finalize();
  return r;
}

WitnessReport verify_f2_connectivity(unsigned n, unsigned k, const FieldPtr& f, unsigned i, const Budgets& budgets) {
  require(k >= 1 && k <= n, "connectivity requires 1 <= k <= n");
  require(i < k, "connectivity requires 0 <= i <= k-1");
  WitnessReport r;
  r.claim = "connectivity";
  r.params = {{"n", n}, {"k", k}, {"q", f->q()}, {"i", i}};
  const grassmann::JohnsonGraph graph(n, k, f, i, budgets.enumeration);
  const bool connected = grassmann::johnson_connected(graph);
  r.values = {{"vertices", std::to_string(graph.vertex_count())}};
  r.checks.push_back({"J(n,k)_i connected", connected, true});
  r.finalize();
  return r;
}

// ---------------------------------------------------------------------------

WitnessReport run_request(const ClaimRequest& req, const Budgets& budgets) {
  try {
    auto field = [&] { return gf::Field::of_order(static_cast<unsigned>(param(req, "q"))); };
    auto u = [&](const std::string& name) { return static_cast<unsigned>(param(req, name)); };
    if (req.claim == "claim2") return verify_claim2(u("k"), field());
    if (req.claim == "claim3") return verify_claim3(u("n"), u("k"), u("k1"), field());
    if (req.claim == "claim4") return verify_claim4(u("n"), u("k"), field());
    if (req.claim == "claim5") return verify_claim5(u("k"), field());
    if (req.claim == "generation") {
      GenerationOptions options;
      options.orbit_budget = budgets.orbit;
      options.gl_enumeration_budget = budgets.enumeration;
      return verify_generation(u("k"), field(), options);
    }
    if (req.claim == "sl-identities")
      return verify_sl_identities(u("k"), field(), static_cast<unsigned>(param_or(req, "trials", 100)),
                                  param_or(req, "seed", 1));
    if (req.claim == "orbit-count") return verify_orbit_count(u("n"), u("k"), field(), budgets);
    if (req.claim == "connectivity") return verify_f2_connectivity(u("n"), u("k"), field(), u("i"), budgets);
    throw PreconditionError("unknown claim '" + req.claim + "'");
  } catch (const std::exception& e) {
    WitnessReport r;
    r.claim = req.claim;
    for (const auto& [name, value] : req.params) r.params.emplace_back(name, value);
    r.error = e.what();
    r.finalize();
    return r;
  }
}

std::vector<WitnessReport> run_batch(const std::vector<ClaimRequest>& requests, const Budgets& budgets) {
  std::vector<WitnessReport> out;
  out.reserve(requests.size());
  for (const auto& req : requests) out.push_back(run_request(req, budgets));
  return out;
}

std::vector<ClaimRequest> default_suite() {
  std::vector<ClaimRequest> suite;
  for (std::uint64_t k : {4, 5}) {
    for (std::uint64_t q : {2, 3}) {
      suite.push_back({"claim2", {{"k", k}, {"q", q}}});
      suite.push_back({"claim3", {{"n", 2 * k}, {"k", k}, {"k1", 1}, {"q", q}}});
      suite.push_back({"claim3", {{"n", 2 * k}, {"k", k}, {"k1", k - 2}, {"q", q}}});
      suite.push_back({"claim4", {{"n", 2 * k + 2}, {"k", k}, {"q", q}}});
      suite.push_back({"claim5", {{"k", k}, {"q", q}}});
    }
  }
  suite.push_back({"orbit-count", {{"n", 4}, {"k", 2}, {"q", 2}}});
  suite.push_back({"orbit-count", {{"n", 6}, {"k", 3}, {"q", 2}}});
  suite.push_back({"connectivity", {{"n", 4}, {"k", 2}, {"q", 2}, {"i", 0}}});
  suite.push_back({"connectivity", {{"n", 4}, {"k", 2}, {"q", 2}, {"i", 1}}});
  suite.push_back({"sl-identities", {{"k", 2}, {"q", 3}, {"trials", 100}}});
  suite.push_back({"sl-identities", {{"k", 3}, {"q", 2}, {"trials", 100}}});
  suite.push_back({"generation", {{"k", 2}, {"q", 2}}});
  suite.push_back({"generation", {{"k", 2}, {"q", 3}}});
  return suite;
}

}  // namespace polyverify::claims
