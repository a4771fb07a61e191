#include "polyverify/sieve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace polyverify::sieve {

namespace {

// u^2+u+1 or u^3+u^2+u+1; false on overflow.
bool inner_poly(PolygonKind kind, u128 u, u128& out) {
  u128 u2, u3, acc;
  if (__builtin_mul_overflow(u, u, &u2)) return false;
  if (__builtin_add_overflow(u2, u, &acc)) return false;
  if (__builtin_add_overflow(acc, static_cast<u128>(1), &acc)) return false;
  if (kind == PolygonKind::kOctagon) {
    if (__builtin_mul_overflow(u2, u, &u3)) return false;
    if (__builtin_add_overflow(acc, u3, &acc)) return false;
  }
  out = acc;
  return true;
}

// point_count without the thickness check; false on overflow.
bool try_point_count(PolygonKind kind, u128 s, u128 t, u128& out) {
  u128 u, inner;
  if (__builtin_mul_overflow(s, t, &u)) return false;
  if (!inner_poly(kind, u, inner)) return false;
  return !__builtin_mul_overflow(s + 1, inner, &out);
}

bool cube_at_most(u128 x, u128 v) {
  u128 sq, cube;
  return !__builtin_mul_overflow(x, x, &sq) && !__builtin_mul_overflow(sq, x, &cube) && cube <= v;
}

// floor of the cube root, exact.
u128 icbrt(u128 v) {
  u128 x = static_cast<u128>(std::cbrt(static_cast<double>(v)));
  while (x > 0 && !cube_at_most(x, v)) --x;
  while (cube_at_most(x + 1, v)) ++x;
  return x;
}

// Solves inner_poly(kind, u) == m for integer u >= 0.
bool solve_inner(PolygonKind kind, u128 m, u128& u) {
  if (m < 1) return false;
  u128 candidate = kind == PolygonKind::kHexagon ? isqrt(m - 1) : icbrt(m - 1);
  u128 value;
  if (!inner_poly(kind, candidate, value) || value != m) return false;
  u = candidate;
  return true;
}

u128 to_u128(double x) { return x < 2 ? 2 : static_cast<u128>(x); }

// Largest x >= lo with f(args(x)) <= n, walking from guess; lo - 1 if none.
// args maps x to (s,t) and f must be increasing in x.
template <class Args>
u128 largest_within(PolygonKind kind, u128 n, u128 lo, u128 guess, Args args) {
  auto fits = [&](u128 x) {
    const auto [s, t] = args(x);
    u128 value;
    return try_point_count(kind, s, t, value) && value <= n;
  };
  u128 x = std::max(guess, lo);
  while (!fits(x)) {
    if (x == lo) return lo - 1;
    --x;
  }
  while (fits(x + 1)) ++x;
  return x;
}

// t^(-2/3) and t^(-3/4) for small t.
std::vector<double> power_table(double exponent) {
  std::vector<double> table(1 << 16, 0.0);
  for (std::size_t t = 1; t < table.size(); ++t) table[t] = std::pow(static_cast<double>(t), exponent);
  return table;
}

const std::vector<double>& kInverseTwoThirds() {
  static const std::vector<double> table = power_table(-2.0 / 3);
  return table;
}

const std::vector<double>& kInverseThreeQuarters() {
  static const std::vector<double> table = power_table(-0.75);
  return table;
}

std::string pairs_text(const std::vector<OrderPair>& pairs) {
  if (pairs.empty()) return "-";
  std::string out;
  for (const auto& [s, t] : pairs) {
    if (!out.empty()) out += ' ';
    out += "(" + std::to_string(s) + "," + std::to_string(t) + ")";
  }
  return out;
}

}  // namespace

std::string to_string(PolygonKind kind) { return kind == PolygonKind::kHexagon ? "hexagon" : "octagon"; }

PolygonKind parse_kind(const std::string& text) {
  if (text == "hexagon") return PolygonKind::kHexagon;
  if (text == "octagon") return PolygonKind::kOctagon;
  throw std::invalid_argument("unknown polygon kind '" + text + "' (expected hexagon or octagon)");
}

u128 point_count(PolygonKind kind, std::uint64_t s, std::uint64_t t) {
  if (s < 2 || t < 2) throw std::invalid_argument("thin parameters: need s, t >= 2");
  u128 out;
  if (!try_point_count(kind, s, t, out)) throw OverflowError("point count overflows 128 bits");
  return out;
}

u128 squarefree_part(u128 v) {
  if (v == 0) throw std::invalid_argument("square-free part of zero");
  u128 part = 1;
  for (u128 p = 2; p * p <= v; ++p) {
    unsigned exponent = 0;
    while (v % p == 0) {
      v /= p;
      ++exponent;
    }
    if (exponent % 2 == 1) part *= p;
  }
  return part * v;
}

FilterResult feit_higman_filter(unsigned n, std::uint64_t s, std::uint64_t t) {
  if (s < 2 || t < 2) return {false, "thin parameters: need s, t >= 2"};
  if (n != 2 && n != 3 && n != 4 && n != 6 && n != 8) return {false, "n = " + std::to_string(n) + " not in {2,3,4,6,8}"};
  if (n == 2 || n == 4) return {true, "no square-free condition for n = " + std::to_string(n)};
  const u128 st = static_cast<u128>(s) * t;
  const u128 part = squarefree_part(st);
  const u128 required = n == 8 ? 2 : 1;
  std::string detail = "square-free part of st = " + polyverify::to_string(st) + " is " + polyverify::to_string(part) + ", required " +
                       polyverify::to_string(required);
  return {part == required, detail};
}

namespace {

// Ceiling of a non-negative double below 2^64.
std::uint64_t ceil_of(double x) {
  if (x <= 0) return 0;
  const auto whole = static_cast<std::uint64_t>(x);
  return static_cast<double>(whole) < x ? whole + 1 : whole;
}

// Any solution has (s+1) | N and s | N-1, since f(s,t) = 1 mod s. For each
// prime p | kWheel this rules out residues of s mod p; allowed[s % kWheel]
// is the combined sieve.
constexpr unsigned kWheel = 2 * 3 * 5 * 7;

template <class Word>
std::array<bool, kWheel> wheel_for(Word n) {
  std::array<bool, kWheel> allowed;
  allowed.fill(true);
  for (unsigned p : {2u, 3u, 5u, 7u}) {
    const auto r = static_cast<unsigned>(n % p);
    if (r != 0)
      for (unsigned s = p - 1; s < kWheel; s += p) allowed[s] = false;
    if (r != 1)
      for (unsigned s = 0; s < kWheel; s += p) allowed[s] = false;
  }
  return allowed;
}

// Solver body; Word is the narrowest type holding N, so divisibility tests
// stay in 64-bit arithmetic when possible.
template <class Word>
std::vector<OrderPair> solve_in(PolygonKind kind, Word n) {
  std::vector<OrderPair> out;
  const bool hex = kind == PolygonKind::kHexagon;
  const double nd = static_cast<double>(n);
  const double guess = std::pow(nd, hex ? 1.0 / 5 : 1.0 / 7);
  const std::array<bool, kWheel> allowed = wheel_for(n);

  // s <= t: f(s,s) <= N bounds s.
  const auto s_max = static_cast<std::uint64_t>(largest_within(kind, n, 2, to_u128(guess), [](u128 s) { return std::pair{s, s}; }));
  for (std::uint64_t s = 2, slot = 2; s <= s_max; ++s, slot = slot + 1 == kWheel ? 0 : slot + 1) {
    if (!allowed[slot] || n % (s + 1) != 0) continue;
    u128 u;
    if (!solve_inner(kind, n / (s + 1), u) || u % s != 0) continue;
    const u128 t = u / s;
    if (t >= s) out.emplace_back(static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(t));
  }

  // t < s: f(t+1,t) <= N bounds t. A solution has s < r <= s+1 where r is
  // the real root of s^3 t^2 = N (hexagon) or s^4 t^3 = N (octagon), so
  // s = ceil(r) - 1; the tolerance covers rounding in the estimate of r.
  const auto t_max = static_cast<std::uint64_t>(largest_within(kind, n, 2, to_u128(guess), [](u128 t) { return std::pair{t + 1, t}; }));
  const double scale = hex ? std::cbrt(nd) : std::sqrt(std::sqrt(nd));
  const auto& powers = hex ? kInverseTwoThirds() : kInverseThreeQuarters();
  for (std::uint64_t t = 2; t <= t_max; ++t) {
    const double factor = t < powers.size() ? powers[t]
                                            : std::pow(static_cast<double>(t), hex ? -2.0 / 3 : -0.75);
    const double r = scale * factor;
    const double tol = r * 1e-12 + 1e-6;
    const std::uint64_t lo = ceil_of(r - tol), hi = ceil_of(r + tol);
    for (std::uint64_t s = std::max<std::uint64_t>(lo > 0 ? lo - 1 : 0, t + 1); s + 1 <= hi; ++s) {
      if (!allowed[s % kWheel] || n % (s + 1) != 0) continue;
      u128 value;
      if (try_point_count(kind, s, t, value) && value == n)
        out.emplace_back(static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(t));
    }
  }

  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<OrderPair> solve_order_equation(PolygonKind kind, u128 n) {
  if (n == 0) throw std::invalid_argument("point count must be >= 1");
  if (n <= std::numeric_limits<std::uint64_t>::max()) return solve_in<std::uint64_t>(kind, static_cast<std::uint64_t>(n));
  return solve_in<u128>(kind, n);
}

bool is_large(u128 group_order, u128 subgroup_order) {
  if (subgroup_order == 0 || group_order % subgroup_order != 0)
    throw std::invalid_argument("subgroup order " + polyverify::to_string(subgroup_order) + " does not divide group order " +
                                polyverify::to_string(group_order));
  u128 sq, cube;
  if (__builtin_mul_overflow(subgroup_order, subgroup_order, &sq)) return true;
  if (__builtin_mul_overflow(sq, subgroup_order, &cube)) return true;
  return cube > group_order;
}

std::vector<CandidateAction> default_table() {
  using mgroup::GroupSpec;
  std::vector<CandidateAction> table{
      {GroupSpec{"PSL", {5, 3}}, GroupSpec{"M11", {}}},
      {GroupSpec{"PSL", {4, 5}}, GroupSpec{"2^4.A6", {}}},
      {GroupSpec{"PSL", {4, 7}}, GroupSpec{"PSU", {4, 2}}},
  };
  for (std::uint64_t q : {41, 49, 59, 61, 71}) table.push_back({GroupSpec{"PSL", {2, q}}, GroupSpec{"A", {5}}});
  return table;
}

ExclusionRow evaluate(const CandidateAction& action) {
  ExclusionRow row;
  row.action = action;
  row.group_order = mgroup::order_formula(action.group);
  row.stabilizer_order = mgroup::order_formula(action.stabilizer);
  row.large = is_large(row.group_order, row.stabilizer_order);
  row.index = row.group_order / row.stabilizer_order;
  row.hexagon_solutions = solve_order_equation(PolygonKind::kHexagon, row.index);
  row.octagon_solutions = solve_order_equation(PolygonKind::kOctagon, row.index);
  row.excluded = row.hexagon_solutions.empty() && row.octagon_solutions.empty();
  return row;
}

std::vector<ExclusionRow> exclusion_report(const std::vector<CandidateAction>& table) {
  std::vector<ExclusionRow> rows;
  rows.reserve(table.size());
  for (const auto& action : table) rows.push_back(evaluate(action));
  return rows;
}

std::string format_report_text(const std::vector<ExclusionRow>& rows) {
  std::vector<std::vector<std::string>> table{{"G"}, {"G_x"}, {"|G:G_x|"}, {"hexagon"}, {"octagon"}, {"result"}};
  for (const auto& row : rows) {
    table[0].push_back(row.action.group.display());
    table[1].push_back(row.action.stabilizer.display());
    table[2].push_back(polyverify::to_string(row.index));
    table[3].push_back(pairs_text(row.hexagon_solutions));
    table[4].push_back(pairs_text(row.octagon_solutions));
    table[5].push_back(row.excluded ? "EXCLUDED" : "OPEN");
  }
  std::vector<std::size_t> width(rows.size() + 1, 0);
  for (const auto& line : table)
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  std::ostringstream out;
  for (const auto& line : table) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      out << line[c];
      if (c + 1 < line.size()) out << std::string(width[c] - line[c].size() + 2, ' ');
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace polyverify::sieve
