#include "gparith/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "gparith/errors.hpp"

namespace gparith::io {

using nlohmann::json;

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const json& require(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw InvalidInput(std::string("missing key \"") + key + "\"");
  return *it;
}

double as_number(const json& j, const std::string& what) {
  if (!j.is_number()) throw InvalidInput(what + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InvalidInput(what + " must be finite");
  return v;
}

int as_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw InvalidInput(what + " must be an integer");
  const auto v = j.get<long long>();
  if (v < 1 || v > 1'000'000'000) throw InvalidInput(what + " is out of range");
  return static_cast<int>(v);
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw InvalidInput("unknown key \"" + key + "\" in " + where);
  }
}

Mat3 as_matrix(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) throw InvalidInput(what + " must be a 3x3 array");
  Mat3 m;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!j[i].is_array() || j[i].size() != 3) throw InvalidInput(what + " must be a 3x3 array");
    for (std::size_t k = 0; k < 3; ++k) m(i, k) = as_number(j[i][k], what + " entry");
  }
  return m;
}

Vec3 as_vec3(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) throw InvalidInput(what + " must have 3 entries");
  return {as_number(j[0], what), as_number(j[1], what), as_number(j[2], what)};
}

std::string matrix_json(const Mat3& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < 3; ++i) {
    s += i ? ",[" : "[";
    for (std::size_t k = 0; k < 3; ++k) {
      if (k) s += ',';
      s += format_number(m(i, k));
    }
    s += ']';
  }
  return s + "]";
}

}  // namespace

GaussianTriple RequestDocument::prior() const {
  const Vec3 means{operands[0].mean, operands[1].mean, operands[2].mean};
  if (precision) return GaussianTriple(means, PrecisionMatrix3(*precision));
  std::array<UncertainScalar, 3> s;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!operands[i].std) throw InvalidInput("operand std is required without a precision matrix");
    s[i] = {operands[i].mean, *operands[i].std};
  }
  return triple_from_independent(s[0], s[1], s[2]);
}

OperationSpec RequestDocument::spec() const {
  if (!op) throw InvalidInput("operation is not specified");
  return {*op, theta};
}

RequestDocument parse_request(std::string_view text, bool require_op) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidInput("request must be a JSON object");
  reject_unknown(doc, {"op", "theta", "operands", "precision", "solver"}, "request");

  RequestDocument req;
  if (doc.contains("op") || require_op) {
    const json& op = require(doc, "op");
    if (op == "add") {
      req.op = OpKind::Add;
    } else if (op == "mul") {
      req.op = OpKind::Mul;
    } else {
      throw InvalidInput("op must be \"add\" or \"mul\"");
    }
  }

  req.theta = as_number(require(doc, "theta"), "theta");
  if (!(req.theta > 0.0)) throw InvalidInput("theta must be positive");

  if (doc.contains("precision")) req.precision = as_matrix(doc["precision"], "precision");

  const json& ops = require(doc, "operands");
  if (!ops.is_array() || ops.size() != 3) throw InvalidInput("operands must list exactly 3 entries");
  for (std::size_t i = 0; i < 3; ++i) {
    const json& o = ops[i];
    if (!o.is_object()) throw InvalidInput("operand must be an object");
    reject_unknown(o, {"mean", "std"}, "operand");
    req.operands[i].mean = as_number(require(o, "mean"), "operand mean");
    if (o.contains("std")) {
      const double s = as_number(o["std"], "operand std");
      if (!(s > 0.0)) throw InvalidInput("operand std must be positive");
      req.operands[i].std = s;
    } else if (!req.precision) {
      throw InvalidInput("operand std is required without a precision matrix");
    }
  }

  if (doc.contains("solver")) {
    const json& s = doc["solver"];
    if (!s.is_object()) throw InvalidInput("solver must be an object");
    reject_unknown(s, {"gradient_tolerance", "max_iterations", "max_starts", "damping_initial"},
                   "solver");
    if (s.contains("gradient_tolerance")) {
      req.solver.gradient_tolerance = as_number(s["gradient_tolerance"], "gradient_tolerance");
    }
    if (s.contains("max_iterations")) {
      req.solver.max_iterations = as_int(s["max_iterations"], "max_iterations");
    }
    if (s.contains("max_starts")) req.solver.max_starts = as_int(s["max_starts"], "max_starts");
    if (s.contains("damping_initial")) {
      req.solver.damping_initial = as_number(s["damping_initial"], "damping_initial");
    }
    req.solver.validate();
  }

  // Surface matrix problems at parse time rather than at first use.
  (void)req.prior();
  return req;
}

ResultDocument make_result(const RefinedTriple& refined) {
  ResultDocument doc;
  doc.means = refined.means;
  doc.precision = refined.precision;
  doc.residual = refined.residual;
  doc.objective = refined.objective;
  doc.converged = refined.diagnostics.converged;
  doc.iterations = refined.diagnostics.iterations;
  if (refined.diagnostics.precision_spd) {
    doc.covariance = inverse_spd(refined.precision);
  } else {
    doc.warnings.emplace_back("refined precision is not positive definite");
  }
  if (refined.diagnostics.saddle_point) doc.warnings.emplace_back("solution is a saddle point");
  if (!refined.diagnostics.converged) doc.warnings.emplace_back("solver did not converge");
  return doc;
}

std::string format_number(double v) { return std::isfinite(v) ? g17(v) : "null"; }

std::string to_json(const ResultDocument& doc) {
  std::string s = "{\"means\":[";
  for (std::size_t i = 0; i < 3; ++i) {
    if (i) s += ',';
    s += format_number(doc.means[i]);
  }
  s += "],\"precision\":" + matrix_json(doc.precision);
  s += ",\"covariance\":" + (doc.covariance ? matrix_json(*doc.covariance) : std::string("null"));
  s += ",\"residual\":" + format_number(doc.residual);
  s += ",\"objective\":" + format_number(doc.objective);
  s += ",\"converged\":" + std::string(doc.converged ? "true" : "false");
  s += ",\"iterations\":" + std::to_string(doc.iterations);
  s += ",\"warnings\":[";
  for (std::size_t i = 0; i < doc.warnings.size(); ++i) {
    if (i) s += ',';
    s += json(doc.warnings[i]).dump();
  }
  return s + "]}";
}

ResultDocument parse_result(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
  ResultDocument out;
  out.means = as_vec3(require(doc, "means"), "means");
  out.precision = as_matrix(require(doc, "precision"), "precision");
  const json& cov = require(doc, "covariance");
  if (!cov.is_null()) out.covariance = as_matrix(cov, "covariance");
  out.residual = as_number(require(doc, "residual"), "residual");
  out.objective = as_number(require(doc, "objective"), "objective");
  out.converged = require(doc, "converged").get<bool>();
  out.iterations = require(doc, "iterations").get<int>();
  out.warnings = require(doc, "warnings").get<std::vector<std::string>>();
  return out;
}

std::string error_json(std::string_view error, std::string_view detail) {
  return json{{"error", error}, {"detail", detail}}.dump();
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

void write_trace_csv(std::ostream& out, const TraceCurve& curve) {
  out << kTraceCsvHeader << '\n';
  for (const auto& s : curve.samples) {
    const auto& r = s.refined;
    out << csv_field(g17(s.sweep_value)) << ',' << csv_field(g17(r.means[0])) << ','
        << csv_field(g17(r.means[1])) << ',' << csv_field(g17(r.means[2])) << ','
        << csv_field(g17(r.residual)) << ',' << csv_field(g17(r.objective)) << ','
        << (r.diagnostics.converged ? "true" : "false") << '\n';
  }
}

}  // namespace gparith::io
