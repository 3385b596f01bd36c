#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "probtree/tree.hpp"
#include "probtree/value.hpp"

namespace probtree {

// Relative frequencies of the distinct values of one column. `total` is the
// number of observations; it is 0 for an exact model distribution such as
// column_marginal().
struct FrequencyTable {
  std::string column;
  std::map<CategoricalValue, double> freqs;
  std::size_t total = 0;

  double at(const CategoricalValue& v) const {
    auto it = freqs.find(v);
    return it == freqs.end() ? 0.0 : it->second;
  }
};

// Throws EmptyInput.
FrequencyTable frequency_table(std::span<const CategoricalValue> values,
                               std::string column = {});

// Sum of |f[v] - g[v]| over the union of keys. Throws ColumnMismatch.
double l1_error(const FrequencyTable& f, const FrequencyTable& g);

// Signed f[v] - g[v] over the union of keys. Throws ColumnMismatch.
std::map<CategoricalValue, double> frequency_diff(const FrequencyTable& f,
                                                  const FrequencyTable& g);

// Exact marginal distribution of one column, summed over tree paths.
// Throws InvalidColumn.
FrequencyTable column_marginal(const ProbabilityTree& tree, std::size_t column_index);

struct ConvergenceReport {
  std::size_t column_index = 0;
  std::vector<std::size_t> sizes;
  std::vector<double> errors;  // mean L1 error per size
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  // Least-squares slope of log10(error) against log10(n). Empty when fewer
  // than three sizes or any error is zero.
  std::optional<double> fitted_slope;
};

std::optional<double> fit_loglog_slope(std::span<const std::size_t> sizes,
                                       std::span<const double> errors);

// For every n in `sizes`, averages over `trials` generations of n records the
// L1 error between the generated column frequencies and the exact marginal.
// Trial t uses a Generator seeded with seed + t. Trials run concurrently when
// `parallel` is set; results are identical either way.
//
// Throws InvalidSizes (not strictly increasing, any n < 10, or trials == 0)
// and InvalidColumn.
ConvergenceReport convergence_study(const ProbabilityTree& tree,
                                    std::size_t column_index,
                                    std::span<const std::size_t> sizes,
                                    std::size_t trials, std::uint64_t seed,
                                    bool parallel = true);

std::string report_to_json(const ConvergenceReport& report);
// "n,mean_error" header then one row per size.
std::string report_to_csv(const ConvergenceReport& report);

}  // namespace probtree
