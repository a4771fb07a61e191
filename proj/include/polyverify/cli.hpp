#pragma once

// Subcommand frontend: sieve, geometry, verify, order.
// Exit codes: 0 ok, 1 a verification failed, 2 usage or input error.

#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "polyverify/claims.hpp"
#include "polyverify/sieve.hpp"

namespace polyverify::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Integers above 2^53 become decimal strings.
Json exact(u128 v);
u128 read_exact(const Json& j);

Json to_json(const sieve::ExclusionRow& row);
sieve::ExclusionRow row_from_json(const Json& j);
Json to_json(const claims::WitnessReport& report);
claims::WitnessReport report_from_json(const Json& j);

// [{"group": "PSL(5,3)", "stabilizer": "M11"}, ...]
std::vector<sieve::CandidateAction> parse_table(const Json& j);
// [{"claim": "claim2", "params": {"k": 4, "q": 2}}, ...]
std::vector<claims::ClaimRequest> parse_claims_spec(const Json& j);

// Budgets from POLYVERIFY_ENUM_BUDGET, POLYVERIFY_ORBIT_BUDGET and
// POLYVERIFY_CLOSURE_CAP, falling back to the library defaults.
claims::Budgets budgets_from_env();

}  // namespace polyverify::cli
