#pragma once

#include <random>
#include <string>
#include <vector>

#include "mvf/bmp.hpp"
#include "mvf/moment_graph.hpp"
#include "mvf/transition.hpp"

namespace mvf {

struct SuiteCheck {
  std::string name;
  std::string expected;
  std::string actual;
  bool passed = false;
};

struct SuiteReport {
  std::string name;
  std::vector<SuiteCheck> checks;
  bool passed() const;
  void add(std::string check, std::string expected, std::string actual);
  void add_bool(std::string check, bool ok, std::string detail = {});
};

struct SuiteOptions {
  BmpOptions bmp;
  int threads = 1;
};

/// Names accepted by run_suite, in a fixed order.
const std::vector<std::string>& suite_names();

/// sl3, adjoint-ranks, lusztig, tensor-dims, eta-tables, properties.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opts = {});

/// Random topological order of the edge orientation (bottom first).
std::vector<int> random_linear_extension(const MomentGraph& g, std::mt19937_64& rng);

/// Empty when M has unit diagonal, non-negative integer entries and support
/// inside the dominance-lower set of each row; otherwise a description.
std::string multiplicity_matrix_violation(const MultiplicityMatrix& m, const RootSystem& rs);

}  // namespace mvf
