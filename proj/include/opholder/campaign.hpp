#ifndef OPHOLDER_CAMPAIGN_HPP
#define OPHOLDER_CAMPAIGN_HPP

// Randomized verification campaigns.
//
// Trial k of inequality `id` draws its instance from
//   trial_seed = hash64(seed, id, k)
// where hash64 is FNV-1a 64 over the 8 little-endian bytes of seed, the
// bytes of id and the 8 little-endian bytes of k, followed by the
// splitmix64 finalizer. The instance is drawn from mt19937_64 seeded with
// trial_seed, encoded as JSON, and evaluated from that encoding, so every
// record can be replayed from its inputs alone.

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "opholder/uinorms.hpp"
#include "opholder/verifiers.hpp"

namespace opholder {

std::uint64_t trial_seed(std::uint64_t seed, const std::string& id,
                         std::uint64_t k);

/// All campaign ids in report order.
const std::vector<std::string>& all_inequality_ids();

/// Schatten {1, 1.5, 2, 3, 4, 64}, Ky Fan 1..4, Q over Schatten 1 and 2.
std::vector<UINormSpec> default_norm_catalog();

struct CampaignConfig {
  std::vector<std::string> inequality_ids = all_inequality_ids();
  std::vector<int> dims{1, 2, 3, 4};
  std::vector<int> seq_lens{1, 2, 4, 8};
  std::vector<double> p_values{1.5, 2, 3, 4};
  std::vector<double> r_values{1, 2, 3};
  std::vector<double> alpha_values{0, 0.25, 0.5, 0.75, 1};
  // Empty means theta = 1/p for each p.
  std::vector<double> theta_values;
  std::vector<UINormSpec> norm_specs = default_norm_catalog();
  int trials = 200;
  std::uint64_t seed = 0;
  double tolerance = default_tolerance();

  /// Throws UsageError on an invalid configuration.
  void validate() const;
};

/// One sampling point. Unused axes keep their defaults.
struct Combo {
  int d = 1;
  int m = 1;
  double p = 2;
  double r = 1;
  double alpha = 0.5;
  std::size_t norm = 0;  // index into CampaignConfig::norm_specs
};

/// Admissible parameter combinations for `id` under `config`.
std::vector<Combo> admissible_combos(const std::string& id,
                                     const CampaignConfig& config);

/// Instance inputs for trial k, as evaluated by evaluate_instance.
Json generate_instance(const std::string& id, const Combo& combo,
                       const UINormSpec& norm, std::uint64_t seed);

/// Runs the verifier named by `id` on JSON inputs.
VerdictRecord evaluate_instance(const std::string& id, const Json& inputs,
                                double tau);

struct InequalitySummary {
  std::size_t total = 0;
  std::size_t failures = 0;
  std::size_t admissible_combos = 0;
  double min_gap = std::numeric_limits<double>::infinity();  // over finite gaps
  // Largest lhs / (rhs without constant); only for the m^{|1/2-1/p|} forms.
  double max_sharpness_ratio = 0;
  bool has_sharpness = false;
};

struct CampaignRecord {
  VerdictRecord verdict;
  std::string id;  // campaign id, without the node-count suffix
  std::uint64_t trial = 0;
  Json inputs;
};

struct CampaignReport {
  CampaignConfig config;
  std::vector<CampaignRecord> records;
  std::map<std::string, InequalitySummary> per_inequality;
  std::size_t total = 0;
  std::size_t failures = 0;
};

/// Runs every trial; `jobs` threads evaluate trials, the report order is
/// always (inequality_id, trial).
CampaignReport run_campaign(const CampaignConfig& config, unsigned jobs = 1);

Json to_json(const CampaignConfig& config);
Json summary_json(const CampaignReport& report);
/// config, records and summary; inputs are omitted unless requested.
Json to_json(const CampaignReport& report, bool with_inputs = false);

/// Replay fixture for one campaign record.
Json fixture_json(const CampaignRecord& record, double tau);

}  // namespace opholder

#endif  // OPHOLDER_CAMPAIGN_HPP
