#pragma once

// Parameter feasibility arithmetic for thick generalised hexagons and octagons.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "polyverify/checked.hpp"
#include "polyverify/mgroup.hpp"

namespace polyverify::sieve {

enum class PolygonKind { kHexagon, kOctagon };

std::string to_string(PolygonKind kind);
// Accepts "hexagon" / "octagon". Throws std::invalid_argument otherwise.
PolygonKind parse_kind(const std::string& text);

// Number of points of a generalised hexagon / octagon of order (s, t):
//   hexagon  (s+1)(s^2 t^2 + s t + 1)
//   octagon  (s+1)(s^3 t^3 + s^2 t^2 + s t + 1)
// Throws std::invalid_argument unless s, t >= 2; OverflowError past 128 bits.
u128 point_count(PolygonKind kind, std::uint64_t s, std::uint64_t t);

u128 squarefree_part(u128 v);

struct FilterResult {
  bool pass = false;
  std::string reason;
};

// Feit-Higman: n in {2,3,4,6,8}; square-free part of st is 1 for n in {3,6}
// and 2 for n = 8.
FilterResult feit_higman_filter(unsigned n, std::uint64_t s, std::uint64_t t);

using OrderPair = std::pair<std::uint64_t, std::uint64_t>;  // (s, t)

// All (s, t) with s, t >= 2 and point_count(kind, s, t) == N, ascending.
// Pairs with s <= t come from the divisors s+1 of N, solving for u = st in
// u^2+u+1 = N/(s+1) (resp. u^3+u^2+u+1); pairs with t < s come from solving
// the cubic in s for each small t. Throws std::invalid_argument for N == 0.
std::vector<OrderPair> solve_order_equation(PolygonKind kind, u128 n);

// |H|^3 > |G|. Throws std::invalid_argument unless |H| divides |G|.
bool is_large(u128 group_order, u128 subgroup_order);

struct CandidateAction {
  mgroup::GroupSpec group;
  mgroup::GroupSpec stabilizer;
};

struct ExclusionRow {
  CandidateAction action;
  u128 group_order = 0;
  u128 stabilizer_order = 0;
  u128 index = 0;
  bool large = false;
  std::vector<OrderPair> hexagon_solutions;
  std::vector<OrderPair> octagon_solutions;
  bool excluded = false;
};

// (PSL_5(3), M_11), (PSL_4(5), 2^4.A_6), (PSL_4(7), PSU_4(2)) and
// (PSL_2(q), A_5) for q in {41, 49, 59, 61, 71}.
std::vector<CandidateAction> default_table();

// Throws std::invalid_argument for unknown families or a stabilizer order
// that does not divide the group order.
ExclusionRow evaluate(const CandidateAction& action);
std::vector<ExclusionRow> exclusion_report(const std::vector<CandidateAction>& table);

// Plain-text table: one column per candidate action.
std::string format_report_text(const std::vector<ExclusionRow>& rows);

}  // namespace polyverify::sieve
