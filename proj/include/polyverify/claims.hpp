#pragma once

// Executable checks for the subspace-action argument: permutation-matrix
// witnesses, stabilizer orbit counts, Johnson-graph connectivity and the
// generation of SL_2k(q) by three block-matrix families.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polyverify/checked.hpp"
#include "polyverify/gf.hpp"
#include "polyverify/grassmann.hpp"
#include "polyverify/mgroup.hpp"

namespace polyverify::claims {

using gf::FieldPtr;

// A violated parameter constraint; the batch runner reports it per item.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Check {
  std::string name;
  bool observed = false;
  bool expected = true;
  bool ok() const { return observed == expected; }
};

struct WitnessReport {
  std::string claim;
  std::vector<std::pair<std::string, std::uint64_t>> params;
  std::vector<std::pair<std::string, std::string>> subspaces;  // name -> canonical text
  std::string permutation;                                     // cycle notation, empty if none
  std::vector<Check> checks;
  std::vector<std::pair<std::string, std::string>> values;     // computed quantities
  std::vector<std::size_t> orbit_sizes;
  std::optional<u128> order;
  std::vector<std::string> notes;
  std::optional<std::string> error;
  bool pass = false;

  // pass = no error and every check has its expected outcome.
  void finalize();
};

struct Budgets {
  std::uint64_t enumeration = grassmann::kDefaultEnumerationBudget;
  std::uint64_t orbit = mgroup::kDefaultOrbitBudget;
  std::uint64_t closure_cap = mgroup::kDefaultClosureCap;
};

// x = <e1..ek>, y = <e1..e_{k-1}, e_{k+1}>, y' = <e2..ek, e_{k+2}> in F_q^{2k}
// under (1,k+1)(k,k+2). Requires k >= 4.
WitnessReport verify_claim2(unsigned k, const FieldPtr& field);
// y = <e1..e_{k1}, e_{k+1}..e_{2k-k1}>, z = <e1..e_{k1}, e_{k+2}..e_{2k-k1+1}>
// under (1,k+2)(k-1,k). Requires k >= 4, 1 <= k1 <= k-2, 2k-k1+1 <= n.
WitnessReport verify_claim3(unsigned n, unsigned k, unsigned k1, const FieldPtr& field);
// y = <e_{k+1}..e_{2k}>, z = <e_{k+2}..e_{2k+1}> under (1,2k+2)(2,3).
// Requires k >= 4, n >= 2k+2.
WitnessReport verify_claim4(unsigned n, unsigned k, const FieldPtr& field);
// n = 2k+1, y = <e_{k+1}..e_{2k}>, z = <e_{k+1}..e_{2k-1}, e1+e_{2k+1}>
// under (1,2k+1)(k+1,k+2). Requires k >= 4.
WitnessReport verify_claim5(unsigned k, const FieldPtr& field);

struct GenerationOptions {
  // Order in which the families (0 block-diagonal, 1 upper, 2 lower) are fed
  // to the stabilizer chain.
  std::array<int, 3> family_order{0, 1, 2};
  // Use every pair (A, D) when |GL_k(q)| * |SL_k(q)| is at most this.
  std::uint64_t full_pair_limit = 20'000;
  // Escalation from the subset to the full pair set is allowed up to this.
  std::uint64_t escalation_pair_limit = 200'000;
  std::uint64_t gl_enumeration_budget = 1'000'000;
  std::uint64_t orbit_budget = mgroup::kDefaultOrbitBudget;
};

// The three families, over all (A, D) in GL_k(q)^2 with det(AD) = 1:
//   [[A, 0], [0, D]],  [[A, A-D], [0, D]],  [[A, 0], [D-A, D]].
// Large instances start from the subset {A = I or D = I} plus all pairs of
// permutation matrices, escalating to all pairs if that subset falls short.
// Passes iff the generated group has order |SL_2k(q)|. Requires k >= 2.
WitnessReport verify_generation(unsigned k, const FieldPtr& field, const GenerationOptions& options = {});

enum class PairSet { kFull, kSubset };
std::vector<gf::Matrix> generation_family(unsigned k, const FieldPtr& field, int family, PairSet pairs,
                                          std::uint64_t gl_budget = 1'000'000);
// All invertible k x k matrices, by exhaustion over q^{k^2} candidates.
std::vector<gf::Matrix> enumerate_gl(unsigned k, const FieldPtr& field, std::uint64_t budget = 1'000'000);

// For random invertible A, D:
//   [[A,0],[D-A,D]] * [[A^-1,0],[0,D^-1]] == [[I,0],[DA^-1 - I, I]]
//   h^-1 [[I,0],[E12,I]] h == [[I,0],[D^-1 E12 A, I]],  h = [[A,0],[0,D]].
WitnessReport verify_sl_identities(unsigned k, const FieldPtr& field, unsigned trials, std::uint64_t seed = 1);
// Both identities for one given pair.
std::pair<bool, bool> sl_identities_hold(const gf::Matrix& a, const gf::Matrix& d);

WitnessReport verify_orbit_count(unsigned n, unsigned k, const FieldPtr& field, const Budgets& budgets = {});
WitnessReport verify_f2_connectivity(unsigned n, unsigned k, const FieldPtr& field, unsigned i,
                                     const Budgets& budgets = {});

// Batch interface. Claim ids: claim2, claim3, claim4, claim5, generation,
// sl-identities, orbit-count, connectivity. Parameters: n, k, k1, q, i,
// trials, seed.
struct ClaimRequest {
  std::string claim;
  std::map<std::string, std::uint64_t> params;
};

// Never throws for a bad request; errors land in WitnessReport::error.
WitnessReport run_request(const ClaimRequest& request, const Budgets& budgets = {});
std::vector<WitnessReport> run_batch(const std::vector<ClaimRequest>& requests, const Budgets& budgets = {});
std::vector<ClaimRequest> default_suite();

}  // namespace polyverify::claims
