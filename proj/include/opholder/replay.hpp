#ifndef OPHOLDER_REPLAY_HPP
#define OPHOLDER_REPLAY_HPP

// Fixture replay. A fixture is one JSON object with a "kind":
//
//   "verdict"                  {"inequality_id", "inputs", "tolerance",
//                               "expected": {"gap", "pass"}}
//   "geometric_mean"           {"a", "b", "expected": Matrix}
//   "weighted_geometric_mean"  {"a", "b", "theta", "expected": Matrix}
//   "transformed_gram"         {"x", "t", "alpha", "side", "expected": Matrix}
//
// A missing "kind" means "verdict". Verdict fixtures match when pass agrees
// and the gaps differ by at most 1e-9; matrix fixtures match when the
// entrywise deviation is at most 1e-9 (1 + max |expected|).

#include <string>

#include "json.hpp"
#include "opholder/verifiers.hpp"

namespace opholder {

inline constexpr double kReplayTolerance = 1e-9;

struct ReplayOutcome {
  VerdictRecord record;  // the recomputed verdict (matrix kinds: see below)
  bool matches = false;
  double deviation = 0;  // |gap - expected gap| or the matrix deviation
  std::string kind;
};

/// Re-evaluates a parsed fixture. For matrix kinds the record holds the
/// computed value as lhs, the stored value as rhs and gap = -deviation.
ReplayOutcome replay(const Json& fixture, const std::string& where = "fixture");

/// Reads and replays a fixture file; malformed files throw ParseError.
ReplayOutcome replay_file(const std::string& path);

}  // namespace opholder

#endif  // OPHOLDER_REPLAY_HPP
