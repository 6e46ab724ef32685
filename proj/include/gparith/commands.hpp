#pragma once

// Subcommand bodies of the gparith tool, separated from argument parsing so
// they can be driven from tests with string streams.

#include <iosfwd>
#include <optional>

#include "gparith/trace.hpp"

namespace gparith::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidInput = 1,
  kExitNonConvergence = 2,
  kExitExamplesFailed = 3,
};

/// Reads a request document from `in`, writes a result document (or an
/// error object) to `out`.
int cmd_refine(std::istream& in, std::ostream& out);

struct TraceOptions {
  OpKind op = OpKind::Mul;
  SweepOperand operand = SweepOperand::First;
  double from = -1.0;
  double to = 1.0;
  int steps = 401;
  SweepMode mode = SweepMode::WarmStart;
};

/// Reads the base request from `in` and writes the sweep as CSV. The
/// request's "op" may be omitted; if present it must agree with options.op.
int cmd_trace(const TraceOptions& options, std::istream& in, std::ostream& out);

int cmd_examples(std::ostream& out);

}  // namespace gparith::cli
