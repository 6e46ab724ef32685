#include "gparith/multiplication.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>

namespace gparith {

namespace {

constexpr double kSaddleTolerance = 1e-9;
constexpr double kTieTolerance = 1e-12;

void check_big_theta(double big_theta) {
  if (!std::isfinite(big_theta) || !(big_theta > 0.0)) {
    throw InvalidInput("operation precision must be finite and positive");
  }
}

double relative_gradient(const Vec3& point, const GaussianTriple& prior, double big_theta) {
  return norm(gradient_mul(point, prior, big_theta)) /
         gradient_scale_mul(point, prior, big_theta);
}

// For fixed (x, y) the objective is quadratic in z with curvature
// Xi_zz + Theta, so z is eliminated in closed form and the descent runs on
// (x, y). This removes the curved xy = z valley that makes large Theta slow.
struct Sym2 {
  double a, b, c;
};

std::optional<std::pair<double, double>> solve_spd2(const Sym2& m, double r0, double r1) {
  if (!(m.a > 0.0) || !(m.c > 0.0)) return std::nullopt;
  const double l11 = std::sqrt(m.a);
  const double l21 = m.b / l11;
  const double piv = m.c - l21 * l21;
  if (!(piv > 1e-12 * m.c)) return std::nullopt;
  const double l22 = std::sqrt(piv);
  const double y0 = r0 / l11;
  const double y1 = (r1 - l21 * y0) / l22;
  const double x1 = y1 / l22;
  const double x0 = (y0 - l21 * x1) / l11;
  return std::pair{x0, x1};
}

class Reduced {
 public:
  Reduced(const GaussianTriple& prior, double big_theta)
      : prior_(prior), t_(big_theta), hzz_(prior.precision(2, 2) + big_theta) {}

  Vec3 project(double x, double y) const {
    const Mat3& p = prior_.precision.matrix();
    const auto [a, b, c] = prior_.means;
    const double s = p(0, 2) * (x - a) + p(1, 2) * (y - b);
    return {x, y, c + (t_ * (x * y - c) - s) / hzz_};
  }

  Sym2 schur(const Vec3& point) const {
    const Mat3 h = hessian_mul(point, prior_, t_);
    return {h(0, 0) - h(0, 2) * h(2, 0) / h(2, 2), h(0, 1) - h(0, 2) * h(2, 1) / h(2, 2),
            h(1, 1) - h(1, 2) * h(2, 1) / h(2, 2)};
  }

 private:
  const GaussianTriple& prior_;
  double t_;
  double hzz_;
};

}  // namespace

void MulSolverConfig::validate() const {
  if (!std::isfinite(gradient_tolerance) || !(gradient_tolerance > 0.0)) {
    throw InvalidInput("gradient_tolerance must be finite and positive");
  }
  if (max_iterations <= 0) throw InvalidInput("max_iterations must be positive");
  if (max_starts <= 0) throw InvalidInput("max_starts must be positive");
  if (!std::isfinite(damping_initial) || !(damping_initial > 0.0)) {
    throw InvalidInput("damping_initial must be finite and positive");
  }
}

double objective_mul(const Vec3& point, const GaussianTriple& prior, double big_theta) {
  const Vec3 d = point - prior.means;
  const double r = point[0] * point[1] - point[2];
  return 0.5 * (dot(d, prior.precision.matrix() * d) + big_theta * r * r);
}

Vec3 gradient_mul(const Vec3& point, const GaussianTriple& prior, double big_theta) {
  const auto [x, y, z] = point;
  const double tr = big_theta * (x * y - z);
  return prior.precision.matrix() * (point - prior.means) + Vec3{tr * y, tr * x, -tr};
}

Mat3 hessian_mul(const Vec3& point, const GaussianTriple& prior, double big_theta) {
  const auto [x, y, z] = point;
  const double t = big_theta;
  // d2/dx2 of 1/2 T (xy - z)^2 is T y^2 and d2/dy2 is T x^2.
  return prior.precision.matrix() +
         Mat3::symmetric(t * y * y, t * (2.0 * x * y - z), -t * y, t * x * x, -t * x, t);
}

double gradient_scale_mul(const Vec3& point, const GaussianTriple& prior, double big_theta) {
  const Mat3& p = prior.precision.matrix();
  const auto [x, y, z] = point;
  return 1.0 + norm(p * prior.means) + norm(p * point) +
         big_theta * (std::abs(x * y) + std::abs(z)) * norm(Vec3{y, x, 1.0});
}

LocalMinimum minimize_mul_from(const Vec3& start, const GaussianTriple& prior, double big_theta,
                               const MulSolverConfig& config) {
  check_big_theta(big_theta);
  const Reduced red(prior, big_theta);
  LocalMinimum out;
  Vec3 p = red.project(start[0], start[1]);
  double f = objective_mul(p, prior, big_theta);
  Vec3 g = gradient_mul(p, prior, big_theta);
  Sym2 h = red.schur(p);
  double rel = norm(g) / gradient_scale_mul(p, prior, big_theta);

  const double hmax = std::max(std::abs(h.a), std::abs(h.c));
  double lambda = config.damping_initial * std::max(hmax, 1e-12);
  double nu = 2.0;

  int it = 0;
  for (; it < config.max_iterations && std::isfinite(f); ++it) {
    if (rel <= config.gradient_tolerance) break;

    const auto step = solve_spd2({h.a + lambda, h.b, h.c + lambda}, -g[0], -g[1]);
    if (!step) {
      lambda = std::max(lambda * nu, 1e-12 * std::max(hmax, 1.0));
      nu *= 2.0;
      continue;
    }
    const auto [sx, sy] = *step;
    const double predicted =
        -(g[0] * sx + g[1] * sy + 0.5 * (h.a * sx * sx + 2.0 * h.b * sx * sy + h.c * sy * sy));
    const Vec3 trial = red.project(p[0] + sx, p[1] + sy);
    const double f_trial = objective_mul(trial, prior, big_theta);

    bool accept = false;
    double rho = 0.0;
    if (std::isfinite(f_trial) && predicted > 0.0) {
      rho = (f - f_trial) / predicted;
      accept = rho > 1e-4;
      // At the noise floor of F the ratio is meaningless; fall back to the
      // gradient to decide.
      if (!accept && std::abs(f - f_trial) <= 1e-14 * (std::abs(f) + 1e-300)) {
        accept = relative_gradient(trial, prior, big_theta) < rel;
        rho = accept ? 1.0 : 0.0;
      }
    }

    if (accept) {
      p = trial;
      f = f_trial;
      g = gradient_mul(p, prior, big_theta);
      h = red.schur(p);
      rel = norm(g) / gradient_scale_mul(p, prior, big_theta);
      const double c = 2.0 * rho - 1.0;
      lambda *= std::max(1.0 / 3.0, 1.0 - c * c * c);
      nu = 2.0;
    } else {
      if (std::hypot(sx, sy) <= 1e-16 * (1.0 + norm(p))) break;  // stagnated
      lambda *= nu;
      nu *= 2.0;
    }
    if (!std::isfinite(lambda)) break;
  }

  // The scaled gradient test can pass while a weak Hessian direction is still
  // off by tol / lambda_min. A few pure Newton steps take it to round-off.
  if (rel <= config.gradient_tolerance) {
    for (int k = 0; k < 4; ++k) {
      const auto step = solve_spd2(h, -g[0], -g[1]);
      if (!step) break;
      const Vec3 trial = red.project(p[0] + step->first, p[1] + step->second);
      const Vec3 g_trial = gradient_mul(trial, prior, big_theta);
      if (!(norm(g_trial) < norm(g))) break;
      p = trial;
      g = g_trial;
      f = objective_mul(p, prior, big_theta);
      h = red.schur(p);
      rel = norm(g) / gradient_scale_mul(p, prior, big_theta);
      ++it;
      if (std::hypot(step->first, step->second) <= 1e-15 * (1.0 + norm(p))) break;
    }
  }

  out.point = p;
  out.objective = f;
  out.gradient_norm = rel;
  out.iterations = it;
  out.converged = std::isfinite(f) && rel <= config.gradient_tolerance;
  return out;
}

std::vector<Vec3> mul_start_points(const GaussianTriple& prior, double theta, int max_starts) {
  const auto [a, b, c] = prior.means;
  std::vector<Vec3> starts;
  starts.push_back({a, b, c});
  if (std::abs(b) > 1e-8) starts.push_back({c / b, b, c});
  if (std::abs(a) > 1e-8) starts.push_back({a, c / a, c});
  if (std::abs(c) > 1e-12) {
    const double root = std::sqrt(std::abs(c));
    const double sign = c > 0.0 ? 1.0 : -1.0;
    for (double s : {1.0, -1.0}) starts.push_back({s * root, s * root * sign, c});
  }
  starts.push_back({a + theta, b + theta, c});
  if (max_starts >= 0 && starts.size() > static_cast<std::size_t>(max_starts)) {
    starts.resize(static_cast<std::size_t>(max_starts));
  }
  return starts;
}

RefinedTriple finish_mul(const Vec3& point, const GaussianTriple& prior, double big_theta) {
  RefinedTriple out;
  out.means = point;
  out.precision = hessian_mul(point, prior, big_theta);
  out.residual = point[0] * point[1] - point[2];
  out.objective = objective_mul(point, prior, big_theta);
  const Vec3 ev = symmetric_eigenvalues(out.precision);
  out.diagnostics.saddle_point = ev[0] < -kSaddleTolerance * norm(out.precision);
  out.diagnostics.precision_spd = cholesky(out.precision).has_value();
  return out;
}

namespace {

RefinedTriple package(const LocalMinimum& local, const GaussianTriple& prior, double big_theta,
                      int starts_tried) {
  RefinedTriple out = finish_mul(local.point, prior, big_theta);
  out.objective = local.objective;
  out.diagnostics.iterations = local.iterations;
  out.diagnostics.converged = local.converged;
  out.diagnostics.starts_tried = starts_tried;
  out.diagnostics.gradient_norm = local.gradient_norm;
  return out;
}

}  // namespace

RefinedTriple refine_mul(const GaussianTriple& prior, const OperationSpec& spec,
                         const MulSolverConfig& config) {
  if (spec.kind() != OpKind::Mul) throw InvalidInput("refine_mul needs a multiplication spec");
  config.validate();
  const double t = spec.big_theta();
  const std::vector<Vec3> starts = mul_start_points(prior, spec.theta(), config.max_starts);

  std::optional<LocalMinimum> best;
  std::optional<LocalMinimum> best_any;
  int total_iterations = 0;
  for (const Vec3& s : starts) {
    const LocalMinimum local = minimize_mul_from(s, prior, t, config);
    total_iterations += local.iterations;
    if (!best_any || local.objective < best_any->objective) best_any = local;
    if (!local.converged) continue;
    if (!best) {
      best = local;
      continue;
    }
    const double tie = kTieTolerance * (1.0 + std::min(std::abs(best->objective),
                                                       std::abs(local.objective)));
    if (local.objective < best->objective - tie) {
      best = local;
    } else if (std::abs(local.objective - best->objective) <= tie &&
               norm(local.point - prior.means) < norm(best->point - prior.means)) {
      best = local;
    }
  }

  const int tried = static_cast<int>(starts.size());
  if (!best) {
    RefinedTriple fallback = package(*best_any, prior, t, tried);
    throw NonConvergence("no multi-start run converged", std::move(fallback));
  }
  RefinedTriple out = package(*best, prior, t, tried);
  out.diagnostics.iterations = total_iterations;
  return out;
}

RefinedTriple refine_mul_from(const GaussianTriple& prior, const OperationSpec& spec,
                              const Vec3& start, const MulSolverConfig& config) {
  if (spec.kind() != OpKind::Mul) throw InvalidInput("refine_mul needs a multiplication spec");
  config.validate();
  const LocalMinimum local = minimize_mul_from(start, prior, spec.big_theta(), config);
  return package(local, prior, spec.big_theta(), 1);
}

}  // namespace gparith
