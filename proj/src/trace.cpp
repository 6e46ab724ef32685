#include "gparith/trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gparith/addition.hpp"

namespace gparith {

void SweepSpec::validate() const {
  if (!std::isfinite(from) || !std::isfinite(to) || !(from < to)) {
    throw InvalidInput("sweep needs finite from < to");
  }
  if (steps < 2) throw InvalidInput("sweep needs at least 2 steps");
}

double SweepSpec::value_at(int i) const {
  if (i == steps - 1) return to;
  return from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

namespace {

std::size_t operand_index(SweepOperand op) { return static_cast<std::size_t>(op); }

RefinedTriple cold_mul(const GaussianTriple& prior, const OperationSpec& op,
                       const MulSolverConfig& config) {
  try {
    return refine_mul(prior, op, config);
  } catch (const NonConvergence& e) {
    return e.best();
  }
}

}  // namespace

TraceCurve trace_sweep(const GaussianTriple& base, const OperationSpec& op, const SweepSpec& sweep,
                       const MulSolverConfig& config) {
  sweep.validate();
  config.validate();
  TraceCurve curve;
  curve.spec = sweep;
  curve.base = base;
  curve.samples.reserve(static_cast<std::size_t>(sweep.steps));

  const std::size_t k = operand_index(sweep.operand);
  GaussianTriple prior = base;
  const RefinedTriple* previous = nullptr;

  for (int i = 0; i < sweep.steps; ++i) {
    const double v = sweep.value_at(i);
    prior.means[k] = v;
    TraceSample sample;
    sample.sweep_value = v;
    if (op.kind() == OpKind::Add) {
      sample.refined = refine_add(prior, op);
    } else if (sweep.mode == SweepMode::WarmStart && previous != nullptr &&
               previous->diagnostics.converged) {
      sample.refined = refine_mul_from(prior, op, previous->means, config);
      // A branch that cannot be followed restarts from scratch.
      if (!sample.refined.diagnostics.converged) sample.refined = cold_mul(prior, op, config);
    } else {
      sample.refined = cold_mul(prior, op, config);
    }
    curve.samples.push_back(std::move(sample));
    previous = &curve.samples.back().refined;
  }
  return curve;
}

CurveFeatures detect_features(const TraceCurve& curve,
                              double jump_threshold, double asymptote_min_abs) {
  std::vector<const TraceSample*> ok;
  for (const auto& s : curve.samples) {
    if (s.refined.diagnostics.converged) ok.push_back(&s);
  }
  if (ok.empty()) throw EmptyCurve("no converged samples in curve");

  CurveFeatures out;
  out.max_second_mean = ok.front()->refined.means[1];
  out.max_second_mean_at = ok.front()->sweep_value;
  for (const auto* s : ok) {
    if (s->refined.means[1] > out.max_second_mean) {
      out.max_second_mean = s->refined.means[1];
      out.max_second_mean_at = s->sweep_value;
    }
  }

  std::vector<double> dist;
  for (std::size_t i = 1; i < ok.size(); ++i) {
    dist.push_back(norm(ok[i]->refined.means - ok[i - 1]->refined.means));
  }
  if (!dist.empty()) {
    std::vector<double> sorted = dist;
    const auto mid = sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2);
    std::nth_element(sorted.begin(), mid, sorted.end());
    double median = *mid;
    if (sorted.size() % 2 == 0) {
      median = 0.5 * (median + *std::max_element(sorted.begin(), mid));
    }
    const double threshold = jump_threshold * median;
    for (std::size_t i = 0; i < dist.size(); ++i) {
      if (dist[i] > threshold && dist[i] > 0.0) {
        out.jumps.push_back({ok[i]->sweep_value, ok[i + 1]->sweep_value, dist[i]});
      }
    }
  }

  const SweepOperand op = curve.spec.operand;
  if (op != SweepOperand::Third) {
    const std::size_t partner = op == SweepOperand::First ? 1 : 0;
    const double c = curve.base.means[2];
    for (const auto* s : ok) {
      if (std::abs(s->sweep_value) < asymptote_min_abs) continue;
      const double expected = c / s->sweep_value;
      const double dev = std::abs(s->refined.means[partner] - expected) /
                         std::max(std::abs(expected), std::numeric_limits<double>::min());
      out.asymptote_max_rel_dev = std::max(out.asymptote_max_rel_dev.value_or(0.0), dev);
    }
  }
  return out;
}

}  // namespace gparith
