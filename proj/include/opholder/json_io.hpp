#ifndef OPHOLDER_JSON_IO_HPP
#define OPHOLDER_JSON_IO_HPP

// JSON encodings shared by the CLI, reports and fixtures.
//
//   Matrix            {"dim": d, "entries": [[re, im], ...]}   row-major
//   UINormSpec        {"kind":"schatten","p":2} | {"kind":"kyfan","k":1}
//                     | {"kind":"qnorm","base":{...}}
//   ModuleElement     {"weights":[...], "blocks":[Matrix, ...]}
//   MultiplierOperator {"blocks":[Matrix, ...]}
//   VerdictRecord     {"inequality_id","lhs","rhs","gap","tolerance","pass",
//                      "params","seed"}; lhs/rhs are numbers or Matrix.

#include <string>
#include <vector>

#include "json.hpp"
#include "opholder/hilbert_module.hpp"
#include "opholder/linalg.hpp"
#include "opholder/means.hpp"
#include "opholder/uinorms.hpp"
#include "opholder/verifiers.hpp"

namespace opholder {

Json to_json(const Matrix& m);
Json to_json(const UINormSpec& spec);
Json to_json(const ModuleElement& x);
Json to_json(const MultiplierOperator& t);
Json to_json(const MatrixPolynomial& poly);
Json to_json(const std::vector<Matrix>& blocks);
Json to_json(const VerdictRecord& record);
Json to_json(const MeanResult<double>& mean);

// Decoders throw ParseError naming `where` (a file or JSON path).
Matrix matrix_from_json(const Json& j, const std::string& where);
UINormSpec norm_from_json(const Json& j, const std::string& where);
ModuleElement element_from_json(const Json& j, const std::string& where);
MultiplierOperator multiplier_from_json(const Json& j,
                                        const std::string& where);
MatrixPolynomial polynomial_from_json(const Json& j, const std::string& where);
std::vector<Matrix> matrices_from_json(const Json& j, const std::string& where);
VerdictRecord verdict_from_json(const Json& j, const std::string& where);

const Json& field(const Json& j, const char* key, const std::string& where);
double number_field(const Json& j, const char* key, const std::string& where);
std::vector<double> numbers_from_json(const Json& j, const std::string& where);

/// Parses text; syntax errors report line and column.
Json parse_json(const std::string& text, const std::string& where);
/// Reads and parses a file.
Json read_json_file(const std::string& path);

}  // namespace opholder

#endif  // OPHOLDER_JSON_IO_HPP
