#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gparith/model.hpp"

namespace gparith {

/// A reference refinement with its expected result.
struct ExampleFixture {
  std::string name;
  OpKind op = OpKind::Add;
  Vec3 means{};
  Vec3 stds{};
  double theta = 0.1;
  Vec3 expected{};
  /// Max allowed componentwise |computed - expected|.
  double tolerance = 1e-3;

  GaussianTriple prior() const;
};

/// The six reference refinements: addition, subtraction, multiplication,
/// division, factorization and mixed multiply/divide.
std::vector<ExampleFixture> reference_examples();

/// Refines every fixture and prints one line per fixture with the computed
/// means, the expected means and the max componentwise deviation.
/// Returns 0 when all pass and 3 otherwise.
int run_examples(std::ostream& out, std::span<const ExampleFixture> fixtures);

}  // namespace gparith
