#pragma once

// JSON request/result documents and CSV curve output for the command-line
// front end.

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gparith/multiplication.hpp"
#include "gparith/trace.hpp"

namespace gparith::io {

struct OperandEntry {
  double mean = 0.0;
  /// Required unless the request carries a full precision matrix.
  std::optional<double> std;
};

/// {"op": "add"|"mul", "theta": t, "operands": [{"mean", "std"} x3],
///  "precision": [[...] x3] (optional), "solver": {...} (optional)}
struct RequestDocument {
  std::optional<OpKind> op;
  double theta = 0.0;
  std::array<OperandEntry, 3> operands{};
  std::optional<Mat3> precision;
  MulSolverConfig solver;

  GaussianTriple prior() const;
  /// Throws InvalidInput when `op` is missing.
  OperationSpec spec() const;
};

/// Strict parser: unknown keys, wrong types and invalid values all raise
/// InvalidInput (or NotPositiveDefinite for a bad precision matrix).
/// With `require_op` false the "op" key may be omitted.
RequestDocument parse_request(std::string_view text, bool require_op = true);

struct ResultDocument {
  Vec3 means{};
  Mat3 precision;
  /// Absent when the refined precision is not positive definite.
  std::optional<Mat3> covariance;
  double residual = 0.0;
  double objective = 0.0;
  bool converged = false;
  int iterations = 0;
  std::vector<std::string> warnings;

  friend bool operator==(const ResultDocument&, const ResultDocument&) = default;
};

ResultDocument make_result(const RefinedTriple& refined);

/// One line of JSON; numbers printed with 17 significant digits.
std::string to_json(const ResultDocument& doc);
ResultDocument parse_result(std::string_view text);

std::string error_json(std::string_view error, std::string_view detail);

/// "%.17g"; non-finite values become "null" (JSON has no inf / nan).
std::string format_number(double v);

/// RFC 4180 field: quoted when it contains a comma, quote, CR or LF.
std::string csv_field(std::string_view s);

inline constexpr std::string_view kTraceCsvHeader =
    "sweep,mean1,mean2,mean3,residual,objective,converged";

/// Header plus one row per sample, LF line endings.
void write_trace_csv(std::ostream& out, const TraceCurve& curve);

}  // namespace gparith::io
