#include "opholder/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <thread>

#include "opholder/errors.hpp"
#include "opholder/json_io.hpp"
#include "opholder/random.hpp"

namespace opholder {

std::uint64_t trial_seed(std::uint64_t seed, const std::string& id,
                         std::uint64_t k) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](unsigned char byte) {
    h ^= byte;
    h *= 0x100000001b3ULL;
  };
  for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(seed >> (8 * i)));
  for (char c : id) mix(static_cast<unsigned char>(c));
  for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(k >> (8 * i)));
  // splitmix64 finalizer
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebULL;
  h ^= h >> 31;
  return h;
}

const std::vector<std::string>& all_inequality_ids() {
  static const std::vector<std::string> ids{
      "cs_sharp",       "weighted_cs",         "horn_mathias",
      "main",           "discrete_i",          "discrete_ii",
      "discrete_ii_q",  "discrete_iii",        "discrete_iii_finite",
      "discrete_iv",    "discrete_v",          "continuous_i",
      "continuous_ii",  "continuous_iii",      "jensen_convex",
      "jensen_concave", "seo_ordering",        "superadditivity",
      "superadditivity_quadrature"};
  return ids;
}

std::vector<UINormSpec> default_norm_catalog() {
  std::vector<UINormSpec> out;
  for (double p : {1.0, 1.5, 2.0, 3.0, 4.0, 64.0}) out.push_back(UINormSpec::schatten(p));
  for (int k = 1; k <= 4; ++k) out.push_back(UINormSpec::kyfan(k));
  out.push_back(UINormSpec::qnorm(UINormSpec::schatten(1)));
  out.push_back(UINormSpec::qnorm(UINormSpec::schatten(2)));
  return out;
}

namespace {

enum Axis : unsigned {
  kSeq = 1u << 0,
  kP = 1u << 1,
  kR = 1u << 2,
  kAlpha = 1u << 3,
  kNorm = 1u << 4,
  kTheta = 1u << 5,   // p comes from theta_values (p = 1/theta)
  kQNorm = 1u << 6,   // norm must be a Q-norm
  kRAtLeast2 = 1u << 7,
  kPAtLeast2 = 1u << 8,
};

using Generator = std::function<Json(const Combo&, const UINormSpec&, Rng&)>;
using Evaluator = std::function<VerdictRecord(const Json&, double)>;

struct Entry {
  unsigned axes;
  Generator generate;
  Evaluator evaluate;
};

// ---- instance pieces -------------------------------------------------------

std::vector<double> random_weights(int m, bool unit_mass, Rng& rng) {
  std::vector<double> w(static_cast<std::size_t>(m));
  for (double& g : w) g = rng.uniform(0.2, 1.0);
  if (unit_mass) {
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& g : w) g /= total;
  }
  return w;
}

// Mostly full rank; one draw in five is rank deficient (d >= 2).
Matrix random_block(int d, Rng& rng) {
  if (d >= 2 && rng.uniform() < 0.2) {
    const auto rank = static_cast<Index>(1 + rng.index(static_cast<std::size_t>(d - 1)));
    return random_matrix_of_rank(d, rank, rng);
  }
  return random_matrix(d, rng);
}

Matrix random_psd_block(int d, Rng& rng) {
  if (d >= 2 && rng.uniform() < 0.2) {
    const auto rank = static_cast<Index>(1 + rng.index(static_cast<std::size_t>(d - 1)));
    return random_psd_of_rank(d, rank, rng);
  }
  return random_psd(d, rng);
}

// Spectrum in [0.1, 1] or exact rank deficiency. Weighted means are only
// Hoelder continuous at singular arguments, so nearly singular blocks
// (after raising to p or q) cost digits no tolerance budget can absorb.
std::vector<Matrix> conditioned_psd_blocks(int d, int m, Rng& rng) {
  std::vector<Matrix> out;
  for (int n = 0; n < m; ++n) {
    Index rank = d;
    if (d >= 2 && rng.uniform() < 0.2) {
      rank = static_cast<Index>(1 + rng.index(static_cast<std::size_t>(d - 1)));
    }
    out.push_back(random_psd_of_rank(d, rank, rng));
  }
  return out;
}

std::vector<Matrix> random_blocks(int d, int m, Rng& rng) {
  std::vector<Matrix> out;
  for (int n = 0; n < m; ++n) out.push_back(random_block(d, rng));
  return out;
}

std::vector<Matrix> random_psd_blocks(int d, int m, Rng& rng) {
  std::vector<Matrix> out;
  for (int n = 0; n < m; ++n) out.push_back(random_psd_block(d, rng));
  return out;
}

MatrixPolynomial random_polynomial(int d, Rng& rng) {
  MatrixPolynomial poly;
  for (int i = 0; i < 3; ++i) poly.coefficients.push_back(random_matrix(d, rng));
  return poly;
}

// Coefficients W D_i W* from one commuting normal family, so every A_t is
// normal and the values commute.
MatrixPolynomial commuting_polynomial(int d, Rng& rng) {
  return {random_commuting_normal_family(d, 3, rng)};
}

// ---- input decoding --------------------------------------------------------

double num(const Json& in, const char* key) { return number_field(in, key, "inputs"); }

double num_or(const Json& in, const char* key, double fallback) {
  return in.contains(key) ? num(in, key) : fallback;
}

HolderExponents exponents(const Json& in) {
  return HolderExponents::conjugate(num(in, "p"), num_or(in, "r", 1.0));
}

UINormSpec norm_in(const Json& in) {
  return norm_from_json(field(in, "norm", "inputs"), "inputs/norm");
}

std::vector<Matrix> blocks_in(const Json& in, const char* key) {
  return matrices_from_json(field(in, key, "inputs"), std::string("inputs/") + key);
}

std::vector<double> weights_in(const Json& in) {
  return numbers_from_json(field(in, "weights", "inputs"), "inputs/weights");
}

Matrix matrix_in(const Json& in, const char* key) {
  return matrix_from_json(field(in, key, "inputs"), std::string("inputs/") + key);
}

ModuleElement element_in(const Json& in, const char* key) {
  return element_from_json(field(in, key, "inputs"), std::string("inputs/") + key);
}

MultiplierOperator multiplier_in(const Json& in, const char* key) {
  return multiplier_from_json(field(in, key, "inputs"), std::string("inputs/") + key);
}

MatrixPolynomial polynomial_in(const Json& in, const char* key) {
  return polynomial_from_json(field(in, key, "inputs"), std::string("inputs/") + key);
}

std::size_t count_in(const Json& in, const char* key) {
  const Json& v = field(in, key, "inputs");
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() > 0)) {
    throw ParseError(std::string("inputs/") + key + ": expected a positive integer");
  }
  return v.get<std::size_t>();
}

Json element_json(int d, int m, bool unit_mass, Rng& rng) {
  return to_json(ModuleElement{random_weights(m, unit_mass, rng), random_blocks(d, m, rng)});
}

// ---- the table -------------------------------------------------------------

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> table = [] {
    std::map<std::string, Entry> t;

    t["cs_sharp"] = {
        kSeq,
        [](const Combo& c, const UINormSpec&, Rng& rng) {
          const auto w = random_weights(c.m, false, rng);
          return Json{{"x", to_json(ModuleElement{w, random_blocks(c.d, c.m, rng)})},
                      {"y", to_json(ModuleElement{w, random_blocks(c.d, c.m, rng)})}};
        },
        [](const Json& in, double tau) {
          return verify_cs_sharp(element_in(in, "x"), element_in(in, "y"), tau);
        }};

    t["weighted_cs"] = {
        kSeq | kAlpha,
        [](const Combo& c, const UINormSpec&, Rng& rng) {
          const auto w = random_weights(c.m, false, rng);
          return Json{{"x", to_json(ModuleElement{w, random_blocks(c.d, c.m, rng)})},
                      {"y", to_json(ModuleElement{w, random_blocks(c.d, c.m, rng)})},
                      {"t", to_json(MultiplierOperator{random_blocks(c.d, c.m, rng)})},
                      {"alpha", c.alpha}};
        },
        [](const Json& in, double tau) {
          return verify_weighted_cs(element_in(in, "x"), element_in(in, "y"),
                                    multiplier_in(in, "t"), num(in, "alpha"), tau);
        }};

    t["horn_mathias"] = {
        kP | kR | kNorm,
        [](const Combo& c, const UINormSpec& norm, Rng& rng) {
          const Matrix a = random_psd_block(c.d, rng);
          const Matrix b = random_psd_block(c.d, rng);
          // X = A^{1/2} C B^{1/2} with a contraction C keeps [A X; X* B] PSD.
          Matrix contraction = random_matrix(c.d, rng);
          contraction *= rng.uniform(0.5, 1.0) / op_norm(contraction);
          const Matrix x = psd_power(a, 0.5) * contraction * psd_power(b, 0.5);
          return Json{{"a", to_json(a)}, {"b", to_json(b)}, {"x", to_json(x)},
                      {"p", c.p}, {"r", c.r}, {"norm", to_json(norm)}};
        },
        [](const Json& in, double tau) {
          return verify_horn_mathias(matrix_in(in, "a"), matrix_in(in, "b"),
                                     matrix_in(in, "x"), exponents(in), norm_in(in), tau);
        }};

    const Generator main_generator = [](const Combo& c, const UINormSpec& norm, Rng& rng) {
      const auto w = random_weights(c.m, false, rng);
      return Json{{"weights", w},
                  {"a", to_json(random_blocks(c.d, c.m, rng))},
                  {"b", to_json(random_blocks(c.d, c.m, rng))},
                  {"x", to_json(random_blocks(c.d, c.m, rng))},
                  {"alpha", c.alpha}, {"p", c.p}, {"r", c.r}, {"norm", to_json(norm)}};
    };

    t["main"] = {
        kSeq | kP | kR | kAlpha | kNorm, main_generator,
        [](const Json& in, double tau) {
          const auto w = weights_in(in);
          return verify_main(ModuleElement{w, blocks_in(in, "a")},
                             ModuleElement{w, blocks_in(in, "b")},
                             MultiplierOperator{blocks_in(in, "x")}, num(in, "alpha"),
                             exponents(in), norm_in(in), tau);
        }};

    t["discrete_i"] = {
        kSeq | kP | kR | kAlpha | kNorm, main_generator,
        [](const Json& in, double tau) {
          return verify_discrete_i(weights_in(in), blocks_in(in, "a"), blocks_in(in, "b"),
                                   blocks_in(in, "x"), num(in, "alpha"), exponents(in),
                                   norm_in(in), tau);
        }};

    const Generator sandwich_generator = [](const Combo& c, const UINormSpec& norm, Rng& rng) {
      return Json{{"weights", random_weights(c.m, true, rng)},
                  {"a", to_json(random_blocks(c.d, c.m, rng))},
                  {"b", to_json(random_blocks(c.d, c.m, rng))},
                  {"x", to_json(random_blocks(c.d, c.m, rng))},
                  {"p", c.p}, {"r", c.r}, {"norm", to_json(norm)}};
    };

    t["discrete_ii"] = {
        kSeq | kP | kR | kNorm | kRAtLeast2, sandwich_generator,
        [](const Json& in, double tau) {
          return verify_discrete_ii(weights_in(in), blocks_in(in, "a"), blocks_in(in, "b"),
                                    blocks_in(in, "x"), exponents(in), norm_in(in), tau);
        }};

    t["discrete_ii_q"] = {
        kSeq | kP | kNorm | kQNorm, sandwich_generator,
        [](const Json& in, double tau) {
          return verify_discrete_ii_q(weights_in(in), blocks_in(in, "a"), blocks_in(in, "b"),
                                      blocks_in(in, "x"), exponents(in), norm_in(in), tau);
        }};

    t["discrete_iii"] = {
        kSeq | kP | kNorm | kPAtLeast2, sandwich_generator,
        [](const Json& in, double tau) {
          return verify_discrete_iii(weights_in(in), blocks_in(in, "a"), blocks_in(in, "b"),
                                     blocks_in(in, "x"), exponents(in), norm_in(in), tau);
        }};

    t["discrete_iii_finite"] = {
        kSeq | kP | kNorm | kPAtLeast2,
        [](const Combo& c, const UINormSpec& norm, Rng& rng) {
          return Json{{"a", to_json(random_blocks(c.d, c.m, rng))},
                      {"b", to_json(random_blocks(c.d, c.m, rng))},
                      {"x", to_json(random_blocks(c.d, c.m, rng))},
                      {"p", c.p}, {"norm", to_json(norm)}};
        },
        [](const Json& in, double tau) {
          return verify_discrete_iii_finite(blocks_in(in, "a"), blocks_in(in, "b"),
                                            blocks_in(in, "x"), exponents(in), norm_in(in),
                                            tau);
        }};

    t["discrete_iv"] = {
        kSeq | kP | kNorm | kQNorm,
        [](const Combo& c, const UINormSpec& norm, Rng& rng) {
          return Json{{"weights", random_weights(c.m, false, rng)},
                      {"a", to_json(random_commuting_normal_family(c.d, c.m, rng))},
                      {"b", to_json(random_commuting_normal_family(c.d, c.m, rng))},
                      {"x", to_json(random_matrix(c.d, rng))},
                      {"p", c.p}, {"norm", to_json(norm)}};
        },
        [](const Json& in, double tau) {
          return verify_discrete_iv(weights_in(in), blocks_in(in, "a"), blocks_in(in, "b"),
                                    matrix_in(in, "x"), exponents(in), norm_in(in), tau);
        }};

    t["discrete_v"] = {
        kSeq | kP | kNorm,
        [](const Combo& c, const UINormSpec& norm, Rng& rng) {
          return Json{{"a", to_json(random_commuting_normal_family(c.d, c.m, rng))},
                      {"b", to_json(random_commuting_normal_family(c.d, c.m, rng))},
                      {"x", to_json(random_matrix(c.d, rng))},
                      {"p", c.p}, {"norm", to_json(norm)}};
        },
        [](const Json& in, double tau) {
          return verify_discrete_v(blocks_in(in, "a"), blocks_in(in, "b"), matrix_in(in, "x"),
                                   exponents(in), norm_in(in), tau);
        }};

    auto continuous = [](ContinuousVariant variant) {
      return [variant](const Json& in, double tau) {
        ContinuousFamilies families{polynomial_in(in, "a"), polynomial_in(in, "b"),
                                    polynomial_in(in, "x")};
        ContinuousParams params{num_or(in, "alpha", 0.5), exponents(in), norm_in(in)};
        return verify_continuous(families, count_in(in, "nodes"), variant, params, tau);
      };
    };

    const Generator polynomial_generator = [](const Combo& c, const UINormSpec& norm, Rng& rng) {
      return Json{{"a", to_json(random_polynomial(c.d, rng))},
                  {"b", to_json(random_polynomial(c.d, rng))},
                  {"x", to_json(random_polynomial(c.d, rng))},
                  {"nodes", c.m}, {"alpha", c.alpha}, {"p", c.p}, {"r", c.r},
                  {"norm", to_json(norm)}};
    };

    t["continuous_i"] = {kSeq | kP | kR | kAlpha | kNorm, polynomial_generator,
                         continuous(ContinuousVariant::i)};
    t["continuous_ii"] = {kSeq | kP | kR | kNorm | kRAtLeast2, polynomial_generator,
                          continuous(ContinuousVariant::ii)};
    t["continuous_iii"] = {
        kSeq | kP | kNorm | kQNorm,
        [](const Combo& c, const UINormSpec& norm, Rng& rng) {
          return Json{{"a", to_json(commuting_polynomial(c.d, rng))},
                      {"b", to_json(commuting_polynomial(c.d, rng))},
                      {"x", to_json(MatrixPolynomial{{random_matrix(c.d, rng)}})},
                      {"nodes", c.m}, {"p", c.p}, {"norm", to_json(norm)}};
        },
        continuous(ContinuousVariant::iii)};

    auto jensen = [](JensenBranch branch) {
      const bool convex = branch == JensenBranch::convex;
      return Entry{
          kSeq | kP | kNorm,
          [convex](const Combo& c, const UINormSpec& norm, Rng& rng) {
            const std::vector<double> w =
                convex ? random_weights(c.m, true, rng)
                       : std::vector<double>(static_cast<std::size_t>(c.m), 1.0);
            return Json{{"weights", w},
                        {"blocks", to_json(random_psd_blocks(c.d, c.m, rng))},
                        {"s", convex ? c.p : 1 / c.p},
                        {"norm", to_json(norm)}};
          },
          [branch](const Json& in, double tau) {
            return verify_jensen(branch, num(in, "s"), weights_in(in), blocks_in(in, "blocks"),
                                 norm_in(in), tau);
          }};
    };
    t["jensen_convex"] = jensen(JensenBranch::convex);
    t["jensen_concave"] = jensen(JensenBranch::concave);

    t["seo_ordering"] = {
        kSeq | kTheta,
        [](const Combo& c, const UINormSpec&, Rng& rng) {
          return Json{{"x", element_json(c.d, c.m, false, rng)},
                      {"a", to_json(MultiplierOperator{conditioned_psd_blocks(c.d, c.m, rng)})},
                      {"b", to_json(MultiplierOperator{conditioned_psd_blocks(c.d, c.m, rng)})},
                      {"p", c.p}};
        },
        [](const Json& in, double tau) {
          return verify_seo_ordering(element_in(in, "x"), multiplier_in(in, "a"),
                                     multiplier_in(in, "b"), num(in, "p"), tau);
        }};

    t["superadditivity"] = {
        kSeq | kTheta,
        [](const Combo& c, const UINormSpec&, Rng& rng) {
          return Json{{"weights", random_weights(c.m, false, rng)},
                      {"a", to_json(conditioned_psd_blocks(c.d, c.m, rng))},
                      {"b", to_json(conditioned_psd_blocks(c.d, c.m, rng))},
                      {"p", c.p}};
        },
        [](const Json& in, double tau) {
          return verify_superadditivity(weights_in(in), blocks_in(in, "a"), blocks_in(in, "b"),
                                        num(in, "p"), tau);
        }};

    t["superadditivity_quadrature"] = {
        kSeq | kTheta,
        [](const Combo& c, const UINormSpec&, Rng& rng) {
          return Json{{"ga", to_json(random_polynomial(c.d, rng))},
                      {"gb", to_json(random_polynomial(c.d, rng))},
                      {"nodes", c.m}, {"p", c.p}};
        },
        [](const Json& in, double tau) {
          return verify_superadditivity_quadrature(polynomial_in(in, "ga"),
                                                   polynomial_in(in, "gb"),
                                                   count_in(in, "nodes"), num(in, "p"), tau);
        }};
    return t;
  }();
  return table;
}

const Entry& entry(const std::string& id) {
  const auto& table = registry();
  const auto it = table.find(id);
  if (it == table.end()) throw UsageError("unknown inequality id \"" + id + "\"");
  return it->second;
}

VerdictRecord error_record(const std::string& id, const std::string& message) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  VerdictRecord r;
  r.inequality_id = id;
  r.lhs = nan;
  r.rhs = nan;
  r.gap = nan;
  r.tolerance = nan;
  r.pass = false;
  r.params = Json{{"error", message}};
  return r;
}

std::size_t coprime_stride(std::size_t n) {
  std::size_t s = 7919;
  while (std::gcd(s, n) != 1) ++s;
  return s;
}

}  // namespace

void CampaignConfig::validate() const {
  if (inequality_ids.empty()) throw UsageError("campaign: no inequality ids");
  for (const auto& id : inequality_ids) entry(id);
  if (trials < 1) throw UsageError("campaign: trials must be >= 1");
  if (dims.empty() || seq_lens.empty() || p_values.empty() || r_values.empty() ||
      alpha_values.empty() || norm_specs.empty()) {
    throw UsageError("campaign: every parameter list needs at least one value");
  }
  for (int d : dims) {
    if (d < 1 || d > 8) throw UsageError("campaign: dims must lie in 1..8");
  }
  for (int m : seq_lens) {
    if (m < 1 || m > static_cast<int>(kMaxSequenceLength)) {
      throw UsageError("campaign: sequence lengths must lie in 1..16");
    }
  }
  for (double p : p_values) {
    if (!(p > 1) || !std::isfinite(p)) throw UsageError("campaign: every p must be > 1");
  }
  for (double r : r_values) {
    if (!(r > 0) || !std::isfinite(r)) throw UsageError("campaign: every r must be > 0");
  }
  for (double a : alpha_values) {
    if (!(a >= 0 && a <= 1)) throw UsageError("campaign: alpha must lie in [0, 1]");
  }
  for (double th : theta_values) {
    if (!(th > 0 && th < 1)) throw UsageError("campaign: theta must lie in (0, 1)");
  }
  for (const auto& n : norm_specs) {
    if (nesting_depth(n) > kMaxQNormDepth) throw UsageError("campaign: Q-norm nested too deep");
    if (const auto* s = std::get_if<Schatten>(&n.kind); s && !(s->p >= 1)) {
      throw UsageError("campaign: Schatten p must be >= 1");
    }
    if (const auto* k = std::get_if<KyFan>(&n.kind); k && k->k < 1) {
      throw UsageError("campaign: Ky Fan k must be >= 1");
    }
  }
  if (!(tolerance > 0) || !std::isfinite(tolerance)) {
    throw UsageError("campaign: tolerance must be positive");
  }
}

std::vector<Combo> admissible_combos(const std::string& id, const CampaignConfig& config) {
  const unsigned axes = entry(id).axes;
  const std::vector<int> ms = (axes & kSeq) ? config.seq_lens : std::vector<int>{1};
  std::vector<double> ps{2};
  if (axes & kP) ps = config.p_values;
  if (axes & kTheta) {
    ps.clear();
    if (config.theta_values.empty()) {
      ps = config.p_values;
    } else {
      for (double th : config.theta_values) ps.push_back(1 / th);
    }
  }
  const std::vector<double> rs = (axes & kR) ? config.r_values : std::vector<double>{1};
  const std::vector<double> alphas =
      (axes & kAlpha) ? config.alpha_values : std::vector<double>{0.5};

  std::vector<Combo> out;
  for (int d : config.dims) {
    std::vector<std::size_t> norms;
    if (axes & kNorm) {
      for (std::size_t i = 0; i < config.norm_specs.size(); ++i) {
        const auto& n = config.norm_specs[i];
        if ((axes & kQNorm) && !is_q_norm(n)) continue;
        try {
          validate(n, d);
        } catch (const std::exception&) {
          continue;
        }
        norms.push_back(i);
      }
    } else {
      norms.push_back(0);
    }
    for (int m : ms) {
      for (double p : ps) {
        if ((axes & kPAtLeast2) && p < 2) continue;
        for (double r : rs) {
          if ((axes & kRAtLeast2) && r < 2) continue;
          for (double alpha : alphas) {
            for (std::size_t n : norms) out.push_back({d, m, p, r, alpha, n});
          }
        }
      }
    }
  }
  return out;
}

Json generate_instance(const std::string& id, const Combo& combo, const UINormSpec& norm,
                       std::uint64_t seed) {
  Rng rng(seed);
  return entry(id).generate(combo, norm, rng);
}

VerdictRecord evaluate_instance(const std::string& id, const Json& inputs, double tau) {
  return entry(id).evaluate(inputs, tau);
}

CampaignReport run_campaign(const CampaignConfig& config, unsigned jobs) {
  config.validate();
  CampaignReport report;
  report.config = config;

  struct Task {
    std::string id;
    std::uint64_t k;
    Combo combo;
  };
  std::vector<Task> tasks;
  for (const auto& id : config.inequality_ids) {
    const auto combos = admissible_combos(id, config);
    report.per_inequality[id].admissible_combos = combos.size();
    if (combos.empty()) continue;
    const std::size_t stride = coprime_stride(combos.size());
    for (int k = 0; k < config.trials; ++k) {
      const auto kk = static_cast<std::uint64_t>(k);
      tasks.push_back({id, kk, combos[(kk * stride) % combos.size()]});
    }
  }

  report.records.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& task = tasks[i];
      CampaignRecord& out = report.records[i];
      out.id = task.id;
      out.trial = task.k;
      const std::uint64_t seed = trial_seed(config.seed, task.id, task.k);
      try {
        out.inputs = generate_instance(task.id, task.combo,
                                       config.norm_specs[task.combo.norm], seed);
        out.verdict = evaluate_instance(task.id, out.inputs, config.tolerance);
      } catch (const std::exception& e) {
        out.verdict = error_record(task.id, e.what());
      }
      out.verdict.seed = seed;
      out.verdict.params["trial"] = task.k;
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (const auto& rec : report.records) {
    auto& s = report.per_inequality[rec.id];
    const auto& v = rec.verdict;
    if (std::isfinite(v.gap)) s.min_gap = std::min(s.min_gap, v.gap);
    ++s.total;
    if (!v.pass) ++s.failures;
    if (v.params.contains("sharpness_ratio")) {
      const double ratio = v.params["sharpness_ratio"].get<double>();
      s.max_sharpness_ratio = s.has_sharpness ? std::max(s.max_sharpness_ratio, ratio) : ratio;
      s.has_sharpness = true;
    }
  }
  report.total = report.records.size();
  report.failures = static_cast<std::size_t>(
      std::count_if(report.records.begin(), report.records.end(),
                    [](const CampaignRecord& r) { return !r.verdict.pass; }));
  return report;
}

Json to_json(const CampaignConfig& config) {
  Json norms = Json::array();
  for (const auto& n : config.norm_specs) norms.push_back(to_json(n));
  return Json{{"inequality_ids", config.inequality_ids},
              {"dims", config.dims},
              {"seq_lens", config.seq_lens},
              {"p_values", config.p_values},
              {"r_values", config.r_values},
              {"alpha_values", config.alpha_values},
              {"theta_values", config.theta_values},
              {"norm_specs", norms},
              {"trials", config.trials},
              {"seed", config.seed},
              {"tolerance", config.tolerance}};
}

Json summary_json(const CampaignReport& report) {
  Json per = Json::object();
  for (const auto& [id, s] : report.per_inequality) {
    Json entry_json{{"total", s.total},
                    {"failures", s.failures},
                    {"admissible_combos", s.admissible_combos},
                    {"min_gap", std::isfinite(s.min_gap) ? Json(s.min_gap) : Json(nullptr)}};
    entry_json["max_sharpness_ratio"] = s.has_sharpness ? Json(s.max_sharpness_ratio) : Json(nullptr);
    per[id] = std::move(entry_json);
  }
  return Json{{"total", report.total}, {"failures", report.failures}, {"per_inequality", per}};
}

Json to_json(const CampaignReport& report, bool with_inputs) {
  Json records = Json::array();
  for (const auto& rec : report.records) {
    Json j = to_json(rec.verdict);
    if (with_inputs) j["inputs"] = rec.inputs;
    records.push_back(std::move(j));
  }
  return Json{{"config", to_json(report.config)},
              {"records", std::move(records)},
              {"summary", summary_json(report)}};
}

Json fixture_json(const CampaignRecord& record, double tau) {
  return Json{{"kind", "verdict"},
              {"inequality_id", record.id},
              {"inputs", record.inputs},
              {"tolerance", tau},
              {"expected", {{"gap", record.verdict.gap}, {"pass", record.verdict.pass}}}};
}

}  // namespace opholder
