#include "opholder/replay.hpp"

#include <algorithm>
#include <cmath>

#include "opholder/campaign.hpp"
#include "opholder/errors.hpp"
#include "opholder/json_io.hpp"
#include "opholder/means.hpp"

namespace opholder {

namespace {

ReplayOutcome compare_matrix(const std::string& kind, const Matrix& value,
                             const Matrix& expected) {
  if (value.rows() != expected.rows()) {
    throw ParseError(kind + ": expected matrix has the wrong dimension");
  }
  ReplayOutcome out;
  out.kind = kind;
  const double scale = 1 + expected.cwiseAbs().maxCoeff();
  out.deviation = (value - expected).cwiseAbs().maxCoeff();
  out.matches = out.deviation <= kReplayTolerance * scale;
  out.record.inequality_id = kind;
  out.record.lhs = value;
  out.record.rhs = expected;
  out.record.gap = -out.deviation;
  out.record.tolerance = kReplayTolerance * scale;
  out.record.pass = out.matches;
  return out;
}

}  // namespace

ReplayOutcome replay(const Json& fixture, const std::string& where) {
  if (!fixture.is_object()) throw ParseError(where + ": expected an object");
  std::string kind = "verdict";
  if (fixture.contains("kind")) {
    if (!fixture["kind"].is_string()) throw ParseError(where + "/kind: expected a string");
    kind = fixture["kind"].get<std::string>();
  }

  if (kind == "verdict") {
    const Json& id = field(fixture, "inequality_id", where);
    if (!id.is_string()) throw ParseError(where + "/inequality_id: expected a string");
    const double tau = number_field(fixture, "tolerance", where);
    const Json& expected = field(fixture, "expected", where);
    const double gap = number_field(expected, "gap", where + "/expected");
    const Json& pass = field(expected, "pass", where + "/expected");
    if (!pass.is_boolean()) throw ParseError(where + "/expected/pass: expected a boolean");

    ReplayOutcome out;
    out.kind = kind;
    try {
      out.record = evaluate_instance(id.get<std::string>(), field(fixture, "inputs", where), tau);
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
    out.deviation = std::abs(out.record.gap - gap);
    out.matches = out.record.pass == pass.get<bool>() && out.deviation <= kReplayTolerance;
    return out;
  }

  const Matrix expected = matrix_from_json(field(fixture, "expected", where), where + "/expected");
  if (kind == "geometric_mean" || kind == "weighted_geometric_mean") {
    const Matrix a = matrix_from_json(field(fixture, "a", where), where + "/a");
    const Matrix b = matrix_from_json(field(fixture, "b", where), where + "/b");
    const double theta =
        kind == "geometric_mean" ? 0.5 : number_field(fixture, "theta", where);
    const auto mean = kind == "geometric_mean" ? geometric_mean(a, b)
                                               : weighted_geometric_mean(a, b, theta);
    return compare_matrix(kind, mean.value, expected);
  }
  if (kind == "transformed_gram") {
    const auto x = element_from_json(field(fixture, "x", where), where + "/x");
    const auto t = multiplier_from_json(field(fixture, "t", where), where + "/t");
    const double alpha = number_field(fixture, "alpha", where);
    const Json& side = field(fixture, "side", where);
    if (!side.is_string() || (side != "left" && side != "right")) {
      throw ParseError(where + "/side: expected \"left\" or \"right\"");
    }
    const Matrix value = transformed_gram(
        x, t, [alpha](double s) { return std::pow(s, alpha); },
        side == "left" ? Side::left : Side::right);
    return compare_matrix(kind, value, expected);
  }
  throw ParseError(where + "/kind: unknown fixture kind \"" + kind + "\"");
}

ReplayOutcome replay_file(const std::string& path) {
  return replay(read_json_file(path), path);
}

}  // namespace opholder
