// opholder: campaigns, fixture replay and one-off evaluations.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "opholder/campaign.hpp"
#include "opholder/errors.hpp"
#include "opholder/json_io.hpp"
#include "opholder/means.hpp"
#include "opholder/replay.hpp"
#include "opholder/uinorms.hpp"

namespace {

using opholder::Json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

void write_json(const Json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw opholder::UsageError("cannot write " + path);
  out << j.dump(2) << '\n';
}

opholder::UINormSpec parse_norm(const std::string& text) {
  return opholder::norm_from_json(opholder::parse_json(text, "--norm"), "--norm");
}

struct VerifyOptions {
  std::vector<std::string> ineq{"all"};
  std::vector<int> dims;
  std::vector<int> lens;
  std::vector<double> p;
  std::vector<double> r;
  std::vector<double> alpha;
  std::vector<double> theta;
  std::vector<std::string> norms;
  int trials = 200;
  std::uint64_t seed = 0;
  double tol = 0;
  std::string out;
  std::string fixtures_out;
  unsigned jobs = 0;
  bool with_inputs = false;
  bool quiet = false;
};

int run_verify(const VerifyOptions& o) {
  opholder::CampaignConfig config;
  if (!(o.ineq.size() == 1 && o.ineq.front() == "all")) config.inequality_ids = o.ineq;
  if (!o.dims.empty()) config.dims = o.dims;
  if (!o.lens.empty()) config.seq_lens = o.lens;
  if (!o.p.empty()) config.p_values = o.p;
  if (!o.r.empty()) config.r_values = o.r;
  if (!o.alpha.empty()) config.alpha_values = o.alpha;
  config.theta_values = o.theta;
  if (!o.norms.empty()) {
    config.norm_specs.clear();
    for (const auto& n : o.norms) config.norm_specs.push_back(parse_norm(n));
  }
  config.trials = o.trials;
  config.seed = o.seed;
  if (o.tol > 0) config.tolerance = o.tol;

  const unsigned jobs = o.jobs ? o.jobs : std::max(1u, std::thread::hardware_concurrency());
  const auto report = opholder::run_campaign(config, jobs);

  if (!o.out.empty()) write_json(opholder::to_json(report, o.with_inputs), o.out);
  if (!o.fixtures_out.empty()) {
    std::filesystem::create_directories(o.fixtures_out);
    for (const auto& rec : report.records) {
      const auto path = std::filesystem::path(o.fixtures_out) /
                        (rec.id + "_" + std::to_string(rec.trial) + ".json");
      write_json(opholder::fixture_json(rec, config.tolerance), path.string());
    }
  }
  if (!o.quiet) {
    for (const auto& [id, s] : report.per_inequality) {
      std::printf("%-28s trials %5zu  failures %4zu  min_gap %+.3e", id.c_str(), s.total,
                  s.failures, std::isfinite(s.min_gap) ? s.min_gap : 0.0);
      if (s.has_sharpness) std::printf("  max_sharpness %.4f", s.max_sharpness_ratio);
      if (s.admissible_combos == 0) std::printf("  (no admissible parameters)");
      std::printf("\n");
    }
    for (const auto& rec : report.records) {
      if (!rec.verdict.pass) {
        std::printf("FAIL %s trial %llu seed %llu gap %.6e tol %.3e %s\n",
                    rec.verdict.inequality_id.c_str(),
                    static_cast<unsigned long long>(rec.trial),
                    static_cast<unsigned long long>(rec.verdict.seed), rec.verdict.gap,
                    rec.verdict.tolerance,
                    rec.verdict.params.contains("error")
                        ? rec.verdict.params["error"].get<std::string>().c_str()
                        : "");
      }
    }
    std::printf("total %zu failures %zu\n", report.total, report.failures);
  }
  return report.failures == 0 ? kExitOk : kExitFailure;
}

int run_replay(const std::vector<std::string>& paths) {
  bool all = true;
  for (const auto& path : paths) {
    const auto out = opholder::replay_file(path);
    std::printf("%s %s %s deviation %.3e gap %+.6e\n", out.matches ? "MATCH" : "MISMATCH",
                path.c_str(), out.record.inequality_id.c_str(), out.deviation, out.record.gap);
    all = all && out.matches;
  }
  return all ? kExitOk : kExitFailure;
}

int run_means(const std::string& op, double theta, const std::string& a_path,
              const std::string& b_path) {
  const auto a = opholder::matrix_from_json(opholder::read_json_file(a_path), a_path);
  const auto b = opholder::matrix_from_json(opholder::read_json_file(b_path), b_path);
  const auto mean = op == "geo" ? opholder::geometric_mean(a, b)
                                : opholder::weighted_geometric_mean(a, b, theta);
  write_json(opholder::to_json(mean), "-");
  return kExitOk;
}

int run_norms(const std::string& spec_text, const std::string& m_path) {
  const auto spec = parse_norm(spec_text);
  const auto m = opholder::matrix_from_json(opholder::read_json_file(m_path), m_path);
  opholder::validate(spec, m.rows());
  write_json(Json{{"norm", opholder::to_json(spec)}, {"value", opholder::evaluate(spec, m)}},
             "-");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of Hölder-type operator inequalities"};
  app.require_subcommand(1);

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Run a randomized campaign");
  verify->add_option("--ineq", vo.ineq, "Inequality ids, or all")->delimiter(',');
  verify->add_option("--dim", vo.dims, "Matrix dimensions (1..8)")->delimiter(',');
  verify->add_option("--len", vo.lens, "Sequence lengths / quadrature nodes (1..16)")
      ->delimiter(',');
  verify->add_option("--p", vo.p, "Exponents p > 1; q = p/(p-1)")->delimiter(',');
  verify->add_option("--r", vo.r, "Powers r > 0")->delimiter(',');
  verify->add_option("--alpha", vo.alpha, "alpha in [0, 1]")->delimiter(',');
  verify->add_option("--theta", vo.theta, "theta in (0, 1); default 1/p")->delimiter(',');
  verify->add_option("--norm", vo.norms, "Norm spec as JSON (repeatable)");
  verify->add_option("--trials", vo.trials, "Trials per inequality");
  verify->add_option("--seed", vo.seed, "Campaign seed");
  verify->add_option("--tol", vo.tol, "Tolerance (default 1e-8 or OPHOLDER_TOL)");
  verify->add_option("--out", vo.out, "Write the JSON report here ('-' for stdout)");
  verify->add_option("--jobs", vo.jobs, "Worker threads (default: all cores)");
  verify->add_option("--fixtures-out", vo.fixtures_out, "Write one replay fixture per record");
  verify->add_flag("--with-inputs", vo.with_inputs, "Embed instance inputs in the report");
  verify->add_flag("--quiet", vo.quiet, "No summary on stdout");

  std::vector<std::string> fixtures;
  auto* replay = app.add_subcommand("replay", "Re-evaluate stored fixtures");
  replay->add_option("fixtures", fixtures, "Fixture files")->required();

  std::string op = "geo";
  double theta = 0.5;
  std::string a_path, b_path;
  auto* means = app.add_subcommand("means", "Geometric means of two PSD matrices");
  means->add_option("--op", op, "geo or weighted")->check(CLI::IsMember({"geo", "weighted"}));
  means->add_option("--theta", theta, "Weight for --op weighted");
  means->add_option("a", a_path, "Matrix JSON")->required();
  means->add_option("b", b_path, "Matrix JSON")->required();

  std::string spec;
  std::string m_path;
  auto* norms = app.add_subcommand("norms", "Evaluate a unitarily invariant norm");
  norms->add_option("--spec", spec, "Norm spec as JSON")->required();
  norms->add_option("m", m_path, "Matrix JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*verify) return run_verify(vo);
    if (*replay) return run_replay(fixtures);
    if (*means) return run_means(op, theta, a_path, b_path);
    if (*norms) return run_norms(spec, m_path);
  } catch (const opholder::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const opholder::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
