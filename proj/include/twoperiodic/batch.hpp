#pragma once

// Data-parallel classification over many parameter sets. The serial kernel
// is the reference; the OpenMP kernel must produce identical results.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "twoperiodic/analysis.hpp"

namespace twoperiodic {

enum class Execution { Serial, Parallel };

std::vector<Classification> classify_batch_serial(std::span<const Coefficients> cells,
                                                  const ClassifyOptions& opts = {});

/// Cells are independent; results are stored by index, so output order never
/// depends on scheduling. If any cell throws, the exception of the
/// lowest-index failing cell is rethrown after the loop.
std::vector<Classification> classify_batch_parallel(std::span<const Coefficients> cells,
                                                    const ClassifyOptions& opts = {});

std::vector<Classification> classify_batch(std::span<const Coefficients> cells,
                                           const ClassifyOptions& opts, Execution exec);

struct SweepAxis {
  Coef coef;
  double lo;
  double hi;
  std::size_t steps;

  /// lo + (hi - lo) i / (steps - 1).
  double value(std::size_t i) const;
};

struct SweepConfig {
  Coefficients base;
  SweepAxis axis1;
  std::optional<SweepAxis> axis2;
  ClassifyOptions options;
};

struct SweepRow {
  std::vector<double> axis_values;
  Classification cls;
};

/// InputError unless lo > 0, hi > lo, steps >= 2 and the two axes differ.
void validate(const SweepConfig& config);

/// Parameter grid in row-major order (axis1 outer, axis2 inner).
std::vector<Coefficients> sweep_grid(const SweepConfig& config);

std::vector<SweepRow> sweep(const SweepConfig& config, Execution exec = Execution::Parallel);

}  // namespace twoperiodic
