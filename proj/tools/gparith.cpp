// gparith: command-line front end for the refinement library.
//
//   gparith refine [--input FILE]
//   gparith trace --op mul --sweep-operand 1 --from -8 --to 8 [--steps N]
//                 [--mode warm|cold] [--input FILE]
//   gparith examples

#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "gparith/commands.hpp"
#include "gparith/io.hpp"

#ifndef GPARITH_VERSION
#define GPARITH_VERSION "0.0.0"
#endif

namespace {

int with_input(const std::string& path, const std::function<int(std::istream&)>& run) {
  if (path.empty() || path == "-") return run(std::cin);
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    std::cout << gparith::io::error_json("invalid_input", "cannot open input file: " + path)
              << '\n';
    return gparith::cli::kExitInvalidInput;
  }
  return run(file);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace gparith;

  CLI::App app{"MAP refinement of three Gaussian operands "
               "under x + y = z or x * y = z."};
  app.set_version_flag("--version", GPARITH_VERSION);
  app.require_subcommand(1);

  std::string refine_input;
  auto* refine = app.add_subcommand("refine", "Refine one request document (JSON) to a result");
  refine->add_option("--input", refine_input, "Request file (default: standard input)");

  std::string trace_input;
  cli::TraceOptions trace_opts;
  int sweep_operand = 1;
  auto* trace = app.add_subcommand("trace", "Sweep one prior mean and emit the curve as CSV");
  trace->add_option("--op", trace_opts.op, "Operation")
      ->required()
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, OpKind>{{"add", OpKind::Add}, {"mul", OpKind::Mul}}));
  trace->add_option("--sweep-operand", sweep_operand, "Operand whose mean is swept (1, 2 or 3)")
      ->required()
      ->check(CLI::Range(1, 3));
  trace->add_option("--from", trace_opts.from, "Sweep start")->required();
  trace->add_option("--to", trace_opts.to, "Sweep end")->required();
  trace->add_option("--steps", trace_opts.steps, "Number of samples, endpoints included")
      ->capture_default_str()
      ->check(CLI::Range(2, 10'000'000));
  trace->add_option("--mode", trace_opts.mode, "warm: follow the branch; cold: multi-start")
      ->transform(CLI::CheckedTransformer(std::map<std::string, SweepMode>{
          {"warm", SweepMode::WarmStart}, {"cold", SweepMode::ColdMultiStart}}));
  trace->add_option("--input", trace_input, "Base request file (default: standard input)");

  auto* examples = app.add_subcommand("examples", "Run the reference refinements and check them");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitInvalidInput;
  }

  if (refine->parsed()) {
    return with_input(refine_input, [](std::istream& in) { return cli::cmd_refine(in, std::cout); });
  }
  if (trace->parsed()) {
    trace_opts.operand = static_cast<SweepOperand>(sweep_operand - 1);
    return with_input(trace_input, [&](std::istream& in) {
      return cli::cmd_trace(trace_opts, in, std::cout);
    });
  }
  if (examples->parsed()) return cli::cmd_examples(std::cout);
  return cli::kExitInvalidInput;
}
