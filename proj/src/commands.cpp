#include "gparith/commands.hpp"

#include <iostream>
#include <iterator>
#include <string>

#include "gparith/addition.hpp"
#include "gparith/examples.hpp"
#include "gparith/io.hpp"

namespace gparith::cli {

namespace {

std::string slurp(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int fail(std::ostream& out, const Error& e) {
  out << io::error_json(e.code(), e.what()) << '\n';
  return kExitInvalidInput;
}

}  // namespace

int cmd_refine(std::istream& in, std::ostream& out) {
  try {
    const io::RequestDocument req = io::parse_request(slurp(in));
    const GaussianTriple prior = req.prior();
    const OperationSpec spec = req.spec();
    RefinedTriple result;
    try {
      result = spec.kind() == OpKind::Add ? refine_add(prior, spec)
                                          : refine_mul(prior, spec, req.solver);
    } catch (const NonConvergence& e) {
      out << io::to_json(io::make_result(e.best())) << '\n';
      return kExitNonConvergence;
    }
    out << io::to_json(io::make_result(result)) << '\n';
    return result.diagnostics.converged ? kExitOk : kExitNonConvergence;
  } catch (const Error& e) {
    return fail(out, e);
  }
}

int cmd_trace(const TraceOptions& options, std::istream& in, std::ostream& out) {
  try {
    io::RequestDocument req = io::parse_request(slurp(in), /*require_op=*/false);
    if (req.op && *req.op != options.op) {
      throw InvalidInput("request op disagrees with --op");
    }
    req.op = options.op;
    SweepSpec sweep;
    sweep.operand = options.operand;
    sweep.from = options.from;
    sweep.to = options.to;
    sweep.steps = options.steps;
    sweep.mode = options.mode;
    const TraceCurve curve = trace_sweep(req.prior(), req.spec(), sweep, req.solver);
    io::write_trace_csv(out, curve);
    return kExitOk;
  } catch (const Error& e) {
    return fail(out, e);
  }
}

int cmd_examples(std::ostream& out) {
  const auto fixtures = reference_examples();
  return run_examples(out, fixtures);
}

}  // namespace gparith::cli
