#include "gparith/examples.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "gparith/addition.hpp"
#include "gparith/multiplication.hpp"

namespace gparith {

GaussianTriple ExampleFixture::prior() const {
  return triple_from_independent({means[0], stds[0]}, {means[1], stds[1]}, {means[2], stds[2]});
}

std::vector<ExampleFixture> reference_examples() {
  return {
      {"addition", OpKind::Add, {1, 10, 50}, {1, 5, 10}, 0.1, {1.3095, 17.7375, 19.0501}, 1e-3},
      {"subtraction", OpKind::Add, {1, 2, 7}, {1, 10, 3}, 0.1, {1.036, 5.636, 6.672}, 1e-3},
      {"multiplication", OpKind::Mul, {0.5, 2, 5}, {1, 1, 10}, 0.1, {0.577, 2.022, 1.167}, 5e-3},
      {"division", OpKind::Mul, {0.7, 2, 5}, {1, 10, 1}, 0.1, {0.908, 5.463, 4.962}, 5e-3},
      // Operand variances 10^2, 10^2, 2^2.
      {"factorization", OpKind::Mul, {1, 1, 7}, {10, 10, 2}, 0.01, {2.641, 2.641, 6.975}, 5e-3},
      {"multiply-divide", OpKind::Mul, {1.2, -2, 7}, {0.4, 10, 6}, 0.1, {1.234, 4.205, 5.189},
       5e-3},
  };
}

int run_examples(std::ostream& out, std::span<const ExampleFixture> fixtures) {
  bool all = true;
  char line[256];
  for (const auto& fx : fixtures) {
    Vec3 got{};
    bool ok = false;
    std::string note;
    try {
      const GaussianTriple prior = fx.prior();
      const RefinedTriple r = fx.op == OpKind::Add
                                  ? refine_add(prior, OperationSpec::add(fx.theta))
                                  : refine_mul(prior, OperationSpec::mul(fx.theta));
      got = r.means;
      ok = true;
    } catch (const std::exception& e) {
      note = e.what();
    }
    double dev = 0.0;
    for (std::size_t i = 0; i < 3; ++i) dev = std::max(dev, std::abs(got[i] - fx.expected[i]));
    if (!ok) dev = INFINITY;
    const bool pass = ok && dev <= fx.tolerance;
    all = all && pass;
    std::snprintf(line, sizeof line,
                  "%-4s %-16s %s  computed (%.4f, %.4f, %.4f)  expected (%.4f, %.4f, %.4f)  "
                  "max_dev %.3e  tol %.0e",
                  pass ? "PASS" : "FAIL", fx.name.c_str(), to_string(fx.op), got[0], got[1],
                  got[2], fx.expected[0], fx.expected[1], fx.expected[2], dev, fx.tolerance);
    out << line;
    if (!note.empty()) out << "  error: " << note;
    out << '\n';
  }
  out << (all ? "all examples passed" : "some examples FAILED") << '\n';
  return all ? 0 : 3;
}

}  // namespace gparith
