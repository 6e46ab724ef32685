// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gparith/addition.hpp"
#include "gparith/io.hpp"
#include "gparith/kernels.hpp"
#include "gparith/multiplication.hpp"
#include "gparith/oracle.hpp"
#include "gparith/trace.hpp"

#ifndef GPARITH_TOOL_PATH
#error "GPARITH_TOOL_PATH must name the gparith executable"
#endif

namespace {

using namespace gparith;

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double max_dev(const Vec3& a, const Vec3& b) {
  double d = 0;
  for (std::size_t i = 0; i < 3; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double max_dev(const Mat3& a, const Mat3& b) {
  double d = 0;
  for (std::size_t i = 0; i < 9; ++i) d = std::max(d, std::abs(a.a[i] - b.a[i]));
  return d;
}

// Reference refined precisions carry T y^2 and T x^2 in exchanged slots.
Mat3 reference_layout(const Mat3& refined, const Mat3& prior) {
  Mat3 k = refined - prior;
  std::swap(k(0, 0), k(1, 1));
  return prior + k;
}

GaussianTriple prior_of(Vec3 m, Vec3 s) {
  return triple_from_independent({m[0], s[0]}, {m[1], s[1]}, {m[2], s[2]});
}

const GaussianTriple kAddition = prior_of({1, 10, 50}, {1, 5, 10});
const GaussianTriple kSubtraction = prior_of({1, 2, 7}, {1, 10, 3});
const GaussianTriple kMultiplication = prior_of({0.5, 2, 5}, {1, 1, 10});
const GaussianTriple kDivision = prior_of({0.7, 2, 5}, {1, 10, 1});
const GaussianTriple kFactorization = prior_of({1, 1, 7}, {10, 10, 2});
const GaussianTriple kMixed = prior_of({1.2, -2, 7}, {0.4, 10, 6});

Check addition_example() {
  Check c;
  const auto r = refine_add(kAddition, OperationSpec::add(0.1));
  const double dm = max_dev(r.means, {1.3095, 17.7375, 19.0501});
  const double dp = max_dev(r.precision, Mat3::symmetric(101, 100, -100, 100.04, -100, 100.01));
  c.expect(dm <= 1e-3, fmt("means dev %.3e", dm));
  c.expect(std::abs(r.residual + 3.095e-3) <= 1e-5, fmt("residual %.6e", r.residual));
  c.expect(dp <= 1e-9, fmt("precision dev %.3e", dp));
  if (c.ok) c.detail = fmt("means dev %.2e, residual %.6e, precision dev %.2e", dm, r.residual, dp);
  return c;
}

Check subtraction_example() {
  Check c;
  const auto r = refine_add(kSubtraction, OperationSpec::add(0.1));
  const double dm = max_dev(r.means, {1.036, 5.636, 6.672});
  const double dp = max_dev(r.precision, Mat3::symmetric(101, 100, -100, 100.01, -100, 100.111));
  c.expect(dm <= 1e-3, fmt("means dev %.3e", dm));
  c.expect(dp <= 1e-2, fmt("precision dev %.3e", dp));
  if (c.ok) c.detail = fmt("means dev %.2e, precision dev %.2e", dm, dp);
  return c;
}

Check multiplication_example() {
  Check c;
  const auto r = refine_mul(kMultiplication, OperationSpec::mul(0.1));
  const double dm = max_dev(r.means, {0.577, 2.022, 1.167});
  const Mat3 want = 100 * Mat3::symmetric(0.343, 1.167, -2.022, 4.099, -0.577, 1.000);
  const double dp = max_dev(reference_layout(r.precision, kMultiplication.precision.matrix()), want);
  c.expect(r.diagnostics.converged, "not converged");
  c.expect(dm <= 5e-3, fmt("means dev %.3e", dm));
  c.expect(dp <= 1.0, fmt("precision dev %.3e (reference layout)", dp));
  if (c.ok) c.detail = fmt("means dev %.2e, precision dev %.2e (reference layout)", dm, dp);
  return c;
}

Check division_example() {
  Check c;
  const auto r = refine_mul(kDivision, OperationSpec::mul(0.1));
  const double dm = max_dev(r.means, {0.908, 5.463, 4.962});
  c.expect(r.diagnostics.converged, "not converged");
  c.expect(dm <= 5e-3, fmt("means dev %.3e", dm));
  if (c.ok) c.detail = fmt("means dev %.2e", dm);
  return c;
}

Check factorization_example() {
  Check c;
  const auto r = refine_mul(kFactorization, OperationSpec::mul(0.01));
  const double dm = max_dev(r.means, {2.641, 2.641, 6.975});
  const Mat3 want = 1e4 * Mat3::symmetric(6.975, 6.975, -2.641, 6.975, -2.641, 1);
  double rel = 0;
  for (std::size_t k = 0; k < 9; ++k)
    rel = std::max(rel, std::abs(r.precision.a[k] - want.a[k]) / std::abs(want.a[k]));
  c.expect(r.diagnostics.converged, "not converged");
  c.expect(dm <= 5e-3, fmt("means dev %.3e", dm));
  c.expect(rel <= 5e-3, fmt("precision rel dev %.3e", rel));
  if (c.ok) c.detail = fmt("means dev %.2e, precision rel dev %.2e", dm, rel);
  return c;
}

Check mixed_example() {
  Check c;
  const auto r = refine_mul(kMixed, OperationSpec::mul(0.1));
  const double dm = max_dev(r.means, {1.234, 4.205, 5.189});
  const Mat3 want = 100 * Mat3::symmetric(0, 5.188, -4.205, 0, -1.234, 1);
  double rel = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) rel = std::max(rel, std::abs(r.precision(i, j) / want(i, j) - 1));
  c.expect(r.diagnostics.converged, "not converged");
  c.expect(dm <= 5e-3, fmt("means dev %.3e", dm));
  c.expect(rel <= 1e-2, fmt("off-diagonal rel dev %.3e", rel));
  if (c.ok) c.detail = fmt("means dev %.2e, off-diagonal rel dev %.2e", dm, rel);
  return c;
}

Check diagonal_residual_oracle() {
  Check c;
  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> mean(-100, 100), logs(-2, 2), logt(-3, 1);
  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Vec3 m{mean(rng), mean(rng), mean(rng)};
    const Vec3 s{std::pow(10, logs(rng)), std::pow(10, logs(rng)), std::pow(10, logs(rng))};
    const double theta = std::pow(10, logt(rng));
    const auto r = refine_add(prior_of(m, s), OperationSpec::add(theta));
    const double want = diagonal_residual_add(m[0], m[1], m[2], 1 / (s[0] * s[0]),
                                              1 / (s[1] * s[1]), 1 / (s[2] * s[2]),
                                              1 / (theta * theta));
    worst = std::max(worst, std::abs(r.residual - want) / std::abs(want));
  }
  c.expect(worst <= 1e-10, fmt("worst rel err %.3e", worst));
  if (c.ok) c.detail = fmt("worst rel err %.2e over 1000 configurations", worst);
  return c;
}

Check derivative_consistency() {
  Check c;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-3, 3), logs(-0.5, 0.5);
  double worst_g = 0, worst_h = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Vec3 m{u(rng), u(rng), u(rng)};
    const Vec3 s{std::pow(10, logs(rng)), std::pow(10, logs(rng)), std::pow(10, logs(rng))};
    const auto prior = prior_of(m, s);
    const double t = std::pow(10, logs(rng) * 2);
    const Vec3 p{u(rng), u(rng), u(rng)};
    const Vec3 g = gradient_mul(p, prior, t);
    const Vec3 fg = oracle::fd_gradient([&](const Vec3& v) { return objective_mul(v, prior, t); }, p);
    worst_g = std::max(worst_g, norm(g - fg) / norm(g));
    const Mat3 h = hessian_mul(p, prior, t);
    const Mat3 fh = oracle::fd_hessian([&](const Vec3& v) { return gradient_mul(v, prior, t); }, p);
    worst_h = std::max(worst_h, norm(h - fh) / norm(h));
  }
  const GaussianTriple zero({0, 0, 0}, PrecisionMatrix3::identity());
  const Mat3 decisive =
      oracle::fd_hessian([&](const Vec3& v) { return gradient_mul(v, zero, 1.0) - v; }, {3, 5, 0});
  const double dd = max_dev(Vec3{decisive(0, 0), decisive(1, 1), decisive(2, 2)}, {25, 9, 1});
  c.expect(worst_g <= 1e-6, fmt("gradient rel err %.3e", worst_g));
  c.expect(worst_h <= 1e-5, fmt("hessian rel err %.3e", worst_h));
  c.expect(dd <= 1e-6, fmt("decisive diagonal off by %.3e", dd));
  if (c.ok)
    c.detail = fmt("gradient rel err %.2e, hessian rel err %.2e, FD diagonal at (3,5,0) = (%.6f, ...)",
                   worst_g, worst_h, decisive(0, 0));
  return c;
}

Check grid_dominance() {
  Check c;
  struct Case {
    const GaussianTriple* prior;
    double theta;
  };
  const Case cases[] = {{&kMultiplication, 0.1}, {&kDivision, 0.1}, {&kFactorization, 0.01},
                        {&kMixed, 0.1}};
  double worst = -INFINITY;
  for (const auto& k : cases) {
    const double t = 1 / (k.theta * k.theta);
    const auto r = refine_mul(*k.prior, OperationSpec::mul(k.theta));
    const Mat3 cov = covariance_of(k.prior->precision);
    const oracle::GridBox box{r.means,
                              {3 * std::sqrt(cov(0, 0)), 3 * std::sqrt(cov(1, 1)),
                               3 * std::sqrt(cov(2, 2))},
                              61};
    const auto g = oracle::grid_min_objective(OpKind::Mul, *k.prior, t, box);
    worst = std::max(worst, r.objective - g.value);
  }
  c.expect(worst <= 1e-9, fmt("grid beats solver by %.3e", worst));
  if (c.ok)
    c.detail = "solver - grid min <= " + fmt("%.2e", worst) + " (isa " +
               kernels::to_string(kernels::detected_isa()) + ")";
  return c;
}

Check classical_limit() {
  Check c;
  const auto prior = prior_of({2, 3, 0}, {1e-4, 1e-4, 1e4});
  const auto a = refine_add(prior, OperationSpec::add(1e-4));
  const auto m = refine_mul(prior, OperationSpec::mul(1e-4));
  c.expect(std::abs(a.means[2] - 5) <= 1e-6, fmt("add c' = %.12g", a.means[2]));
  c.expect(m.diagnostics.converged, "mul not converged");
  c.expect(std::abs(m.means[2] - 6) <= 1e-4, fmt("mul c' = %.12g", m.means[2]));
  if (c.ok) c.detail = fmt("add c' = %.12g, mul c' = %.12g", a.means[2], m.means[2]);
  return c;
}

TraceCurve division_trace(SweepMode mode) {
  return trace_sweep(kDivision, OperationSpec::mul(0.1),
                     SweepSpec{SweepOperand::First, -200, 200, 401, mode});
}

Check finiteness(const TraceCurve& warm, const TraceCurve& cold) {
  Check c;
  for (const TraceCurve* curve : {&warm, &cold}) {
    for (const auto& s : curve->samples) {
      bool finite = std::isfinite(s.refined.residual) && std::isfinite(s.refined.objective);
      for (double v : s.refined.means) finite = finite && std::isfinite(v);
      c.expect(finite, fmt("non-finite sample at a = %g", s.sweep_value));
    }
    c.expect(curve->samples.size() == 401, "wrong sample count");
    c.expect(std::isfinite(detect_features(*curve).max_second_mean), "max b' not finite");
  }
  const auto f = detect_features(cold);
  c.expect(!f.jumps.empty(), "no jump detected");
  if (!c.ok) return c;
  const auto& j = f.jumps.front();
  const double mid = 0.5 * (j.from + j.to);
  c.expect(mid < 0, fmt("jump midpoint %.3f", mid));
  if (c.ok)
    c.detail = fmt("both modes finite; max b' %.3f; jump midpoint %.2f", f.max_second_mean, mid) +
               fmt(" (magnitude %.2f)", j.magnitude);
  return c;
}

Check hyperbola_asymptotics(const TraceCurve& cold) {
  Check c;
  const auto f = detect_features(cold);
  c.expect(f.asymptote_max_rel_dev.has_value(), "no samples with |a| >= 50");
  if (!c.ok) return c;
  c.expect(*f.asymptote_max_rel_dev <= 0.05, fmt("max rel dev %.3e", *f.asymptote_max_rel_dev));
  if (c.ok) c.detail = fmt("max rel dev of b' from 5/a: %.2e", *f.asymptote_max_rel_dev);
  return c;
}

Check addition_linearity() {
  Check c;
  double worst = 0;
  for (SweepOperand op : {SweepOperand::First, SweepOperand::Second, SweepOperand::Third}) {
    const auto curve =
        trace_sweep(kAddition, OperationSpec::add(0.1), SweepSpec{op, -100, 100, 401});
    for (std::size_t i = 1; i + 1 < curve.samples.size(); ++i)
      for (std::size_t k = 0; k < 3; ++k)
        worst = std::max(worst, std::abs(curve.samples[i - 1].refined.means[k] -
                                         2 * curve.samples[i].refined.means[k] +
                                         curve.samples[i + 1].refined.means[k]));
  }
  c.expect(worst <= 1e-9, fmt("max second difference %.3e", worst));
  if (c.ok) c.detail = fmt("max second difference %.2e", worst);
  return c;
}

struct ProcessResult {
  int exit_code = -1;
  std::string out;
};

ProcessResult run(const std::string& command) {
  ProcessResult r;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Check cli_contract() {
  Check c;
  const std::string tool = GPARITH_TOOL_PATH;
  const auto ex = run("'" + tool + "' examples");
  int passes = 0;
  for (std::size_t p = ex.out.find("PASS"); p != std::string::npos; p = ex.out.find("PASS", p + 1))
    ++passes;
  c.expect(ex.exit_code == 0, "examples exit code " + std::to_string(ex.exit_code));
  c.expect(passes == 6, "examples PASS lines: " + std::to_string(passes));

  const auto input = std::filesystem::temp_directory_path() / "gparith_acceptance_request.json";
  {
    std::ofstream f(input);
    f << R"({"op":"add","theta":0.1,"operands":[{"mean":1,"std":1},{"mean":10,"std":5},{"mean":50,"std":10}]})";
  }
  const std::string cmd = "'" + tool + "' refine --input '" + input.string() + "'";
  const auto first = run(cmd);
  const auto second = run(cmd);
  std::filesystem::remove(input);
  c.expect(first.exit_code == 0, "refine exit code " + std::to_string(first.exit_code));
  c.expect(first.out == second.out, "refine output differs between runs");
  if (!c.ok) return c;
  try {
    const auto doc = io::parse_result(first.out);
    const auto lib = refine_add(kAddition, OperationSpec::add(0.1));
    c.expect(doc.means == lib.means && doc.residual == lib.residual &&
                 doc.precision == lib.precision,
             "refine output differs from the library result");
  } catch (const std::exception& e) {
    c.expect(false, std::string("unparseable refine output: ") + e.what());
  }
  if (c.ok) c.detail = "examples 6/6 PASS; refine output identical across runs and to the library";
  return c;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, const std::function<Check()>& f) {
    Check c;
    try {
      c = f();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s  %2d %-28s %s\n", c.ok ? "PASS" : "FAIL", id, name, c.detail.c_str());
    std::fflush(stdout);
    failures += c.ok ? 0 : 1;
  };

  report(1, "addition", addition_example);
  report(2, "subtraction", subtraction_example);
  report(3, "multiplication", multiplication_example);
  report(4, "division", division_example);
  report(5, "factorization", factorization_example);
  report(6, "multiply-divide", mixed_example);
  report(7, "diagonal residual oracle", diagonal_residual_oracle);
  report(8, "derivative consistency", derivative_consistency);
  report(9, "grid oracle dominance", grid_dominance);
  report(10, "classical limit", classical_limit);
  const TraceCurve warm = division_trace(SweepMode::WarmStart);
  const TraceCurve cold = division_trace(SweepMode::ColdMultiStart);
  report(11, "finiteness", [&] { return finiteness(warm, cold); });
  report(12, "hyperbola asymptotics", [&] { return hyperbola_asymptotics(cold); });
  report(13, "addition linearity", addition_linearity);
  report(14, "cli contract", cli_contract);

  std::printf("%d of 14 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
