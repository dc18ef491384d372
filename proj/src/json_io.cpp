#include "opholder/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "opholder/errors.hpp"

namespace opholder {

namespace {

std::string child(const std::string& where, const std::string& key) {
  return where + "/" + key;
}

std::string child(const std::string& where, std::size_t index) {
  return where + "/" + std::to_string(index);
}

// JSON has no NaN; non-finite numbers are written as null.
Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(where + ": missing field \"" + key + "\"");
  }
  return *it;
}

double number_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_number()) {
    throw ParseError(child(where, key) + ": expected a number");
  }
  return v.get<double>();
}

std::vector<double> numbers_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ParseError(child(where, i) + ": expected a number");
    out.push_back(j[i].get<double>());
  }
  return out;
}

Json to_json(const Matrix& m) {
  Json entries = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index k = 0; k < m.cols(); ++k) {
      entries.push_back(Json::array({number(m(i, k).real()), number(m(i, k).imag())}));
    }
  }
  return Json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const Json& j, const std::string& where) {
  const Json& dim = field(j, "dim", where);
  if (!dim.is_number_integer() || dim.get<long long>() < 1) {
    throw ParseError(child(where, "dim") + ": expected a positive integer");
  }
  const Index d = dim.get<Index>();
  const Json& entries = field(j, "entries", where);
  if (!entries.is_array() || entries.size() != static_cast<std::size_t>(d * d)) {
    throw ParseError(child(where, "entries") + ": expected " +
                     std::to_string(d * d) + " [re, im] pairs");
  }
  Matrix m(d, d);
  for (std::size_t n = 0; n < entries.size(); ++n) {
    const Json& e = entries[n];
    const std::string at = child(child(where, "entries"), n);
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ParseError(at + ": expected [re, im]");
    }
    m(static_cast<Index>(n) / d, static_cast<Index>(n) % d) =
        std::complex<double>(e[0].get<double>(), e[1].get<double>());
  }
  return m;
}

Json to_json(const UINormSpec& spec) {
  if (const auto* s = std::get_if<Schatten>(&spec.kind)) {
    return Json{{"kind", "schatten"}, {"p", s->p}};
  }
  if (const auto* k = std::get_if<KyFan>(&spec.kind)) {
    return Json{{"kind", "kyfan"}, {"k", k->k}};
  }
  return Json{{"kind", "qnorm"},
              {"base", to_json(*std::get<QNorm>(spec.kind).base)}};
}

UINormSpec norm_from_json(const Json& j, const std::string& where) {
  const Json& kind = field(j, "kind", where);
  if (!kind.is_string()) throw ParseError(child(where, "kind") + ": expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "schatten") return UINormSpec::schatten(number_field(j, "p", where));
  if (k == "kyfan") {
    const Json& v = field(j, "k", where);
    if (!v.is_number_integer()) throw ParseError(child(where, "k") + ": expected an integer");
    return UINormSpec::kyfan(v.get<int>());
  }
  if (k == "qnorm") {
    return UINormSpec::qnorm(norm_from_json(field(j, "base", where), child(where, "base")));
  }
  throw ParseError(child(where, "kind") + ": unknown norm kind \"" + k + "\"");
}

Json to_json(const std::vector<Matrix>& blocks) {
  Json out = Json::array();
  for (const auto& b : blocks) out.push_back(to_json(b));
  return out;
}

std::vector<Matrix> matrices_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of matrices");
  std::vector<Matrix> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(matrix_from_json(j[i], child(where, i)));
  }
  return out;
}

Json to_json(const ModuleElement& x) {
  return Json{{"weights", x.weights}, {"blocks", to_json(x.blocks)}};
}

ModuleElement element_from_json(const Json& j, const std::string& where) {
  ModuleElement x;
  x.weights = numbers_from_json(field(j, "weights", where), child(where, "weights"));
  x.blocks = matrices_from_json(field(j, "blocks", where), child(where, "blocks"));
  return x;
}

Json to_json(const MultiplierOperator& t) {
  return Json{{"blocks", to_json(t.blocks)}};
}

MultiplierOperator multiplier_from_json(const Json& j, const std::string& where) {
  return {matrices_from_json(field(j, "blocks", where), child(where, "blocks"))};
}

Json to_json(const MatrixPolynomial& poly) {
  return Json{{"coefficients", to_json(poly.coefficients)}};
}

MatrixPolynomial polynomial_from_json(const Json& j, const std::string& where) {
  return {matrices_from_json(field(j, "coefficients", where),
                             child(where, "coefficients"))};
}

Json to_json(const VerdictRecord& record) {
  auto side = [](const SideValue& v) -> Json {
    if (const auto* d = std::get_if<double>(&v)) return number(*d);
    return to_json(std::get<Matrix>(v));
  };
  return Json{{"inequality_id", record.inequality_id},
              {"lhs", side(record.lhs)},
              {"rhs", side(record.rhs)},
              {"gap", number(record.gap)},
              {"tolerance", number(record.tolerance)},
              {"pass", record.pass},
              {"params", record.params},
              {"seed", record.seed}};
}

VerdictRecord verdict_from_json(const Json& j, const std::string& where) {
  auto side = [&](const char* key) -> SideValue {
    const Json& v = field(j, key, where);
    if (v.is_number()) return v.get<double>();
    if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
    return matrix_from_json(v, child(where, key));
  };
  auto maybe_number = [&](const char* key) {
    const Json& v = field(j, key, where);
    if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
    if (!v.is_number()) throw ParseError(child(where, key) + ": expected a number");
    return v.get<double>();
  };
  VerdictRecord r;
  const Json& id = field(j, "inequality_id", where);
  if (!id.is_string()) throw ParseError(child(where, "inequality_id") + ": expected a string");
  r.inequality_id = id.get<std::string>();
  r.lhs = side("lhs");
  r.rhs = side("rhs");
  r.gap = maybe_number("gap");
  r.tolerance = maybe_number("tolerance");
  const Json& pass = field(j, "pass", where);
  if (!pass.is_boolean()) throw ParseError(child(where, "pass") + ": expected a boolean");
  r.pass = pass.get<bool>();
  if (j.contains("params")) r.params = j.at("params");
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer()) {
      throw ParseError(child(where, "seed") + ": expected an unsigned integer");
    }
    r.seed = j.at("seed").get<std::uint64_t>();
  }
  return r;
}

Json to_json(const MeanResult<double>& mean) {
  return Json{{"value", to_json(mean.value)},
              {"epsilon_used", mean.epsilon_used},
              {"convergence_gap", number(mean.convergence_gap)}};
}

Json parse_json(const std::string& text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Byte offsets are 1-based in nlohmann's reports.
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream os;
    os << where << ":" << line << ":" << column << ": " << e.what();
    throw ParseError(os.str());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str(), path);
}

}  // namespace opholder
