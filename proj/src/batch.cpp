#include "twoperiodic/batch.hpp"

#include <exception>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace twoperiodic {

std::vector<Classification> classify_batch_serial(std::span<const Coefficients> cells,
                                                  const ClassifyOptions& opts) {
  std::vector<Classification> out;
  out.reserve(cells.size());
  for (const auto& c : cells) out.push_back(classify(c, opts));
  return out;
}

std::vector<Classification> classify_batch_parallel(std::span<const Coefficients> cells,
                                                    const ClassifyOptions& opts) {
  const auto n = static_cast<std::ptrdiff_t>(cells.size());
  std::vector<std::optional<Classification>> slots(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());

#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      slots[static_cast<std::size_t>(i)] = classify(cells[static_cast<std::size_t>(i)], opts);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<Classification> out;
  out.reserve(cells.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<Classification> classify_batch(std::span<const Coefficients> cells,
                                           const ClassifyOptions& opts, Execution exec) {
  return exec == Execution::Serial ? classify_batch_serial(cells, opts)
                                   : classify_batch_parallel(cells, opts);
}

double SweepAxis::value(std::size_t i) const {
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

namespace {

void validate_axis(const SweepAxis& a, const char* label) {
  const std::string name(coef_name(a.coef));
  if (!(a.lo > 0.0)) throw InputError(std::string(label) + " (" + name + "): lo must be > 0");
  if (!(a.hi > a.lo)) throw InputError(std::string(label) + " (" + name + "): hi must exceed lo");
  if (a.steps < 2) throw InputError(std::string(label) + " (" + name + "): steps must be >= 2");
}

}  // namespace

void validate(const SweepConfig& config) {
  validate_axis(config.axis1, "axis1");
  if (config.axis2) {
    validate_axis(*config.axis2, "axis2");
    if (config.axis2->coef == config.axis1.coef) {
      throw InputError("axis1 and axis2 sweep the same coefficient");
    }
  }
}

std::vector<Coefficients> sweep_grid(const SweepConfig& config) {
  validate(config);
  const std::size_t inner = config.axis2 ? config.axis2->steps : 1;
  std::vector<Coefficients> grid;
  grid.reserve(config.axis1.steps * inner);
  for (std::size_t i = 0; i < config.axis1.steps; ++i) {
    const Coefficients row = config.base.with(config.axis1.coef, config.axis1.value(i));
    if (!config.axis2) {
      grid.push_back(row);
      continue;
    }
    for (std::size_t j = 0; j < inner; ++j) {
      grid.push_back(row.with(config.axis2->coef, config.axis2->value(j)));
    }
  }
  return grid;
}

std::vector<SweepRow> sweep(const SweepConfig& config, Execution exec) {
  const std::vector<Coefficients> grid = sweep_grid(config);
  std::vector<Classification> cls = classify_batch(grid, config.options, exec);
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<double> values{grid[i].get(config.axis1.coef)};
    if (config.axis2) values.push_back(grid[i].get(config.axis2->coef));
    rows.push_back({std::move(values), std::move(cls[i])});
  }
  return rows;
}

}  // namespace twoperiodic
