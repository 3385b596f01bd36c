#include "probtree/stats.hpp"

#include <charconv>
#include <cmath>
#include <future>
#include <unordered_map>

#include "json.hpp"
#include "probtree/error.hpp"
#include "probtree/sampler.hpp"

namespace probtree {
namespace {

void require_same_column(const FrequencyTable& f, const FrequencyTable& g) {
  if (f.column != g.column) {
    throw Error(ErrorCode::ColumnMismatch,
                "comparing column '" + f.column + "' with '" + g.column + "'");
  }
}

// L1 error of one generated sample of size n against the exact marginal.
double trial_error(const ProbabilityTree& tree, std::size_t column_index,
                   const FrequencyTable& exact, std::size_t n, std::uint64_t seed) {
  Generator gen(tree, seed);
  std::unordered_map<CategoricalValue, std::size_t> counts;
  for (std::size_t i = 0; i < n; ++i) ++counts[gen.get_record()[column_index]];

  FrequencyTable observed{exact.column, {}, n};
  for (const auto& [value, count] : counts) {
    observed.freqs[value] = static_cast<double>(count) / static_cast<double>(n);
  }
  return l1_error(observed, exact);
}

}  // namespace

FrequencyTable frequency_table(std::span<const CategoricalValue> values, std::string column) {
  if (values.empty()) throw Error(ErrorCode::EmptyInput, "no values");
  std::map<CategoricalValue, std::size_t> counts;
  for (const auto& v : values) ++counts[v];
  FrequencyTable table{std::move(column), {}, values.size()};
  const double total = static_cast<double>(values.size());
  for (const auto& [value, count] : counts) {
    table.freqs.emplace(value, static_cast<double>(count) / total);
  }
  return table;
}

double l1_error(const FrequencyTable& f, const FrequencyTable& g) {
  double sum = 0.0;
  for (const auto& [value, diff] : frequency_diff(f, g)) sum += std::abs(diff);
  return sum;
}

std::map<CategoricalValue, double> frequency_diff(const FrequencyTable& f,
                                                  const FrequencyTable& g) {
  require_same_column(f, g);
  std::map<CategoricalValue, double> diff;
  for (const auto& [value, p] : f.freqs) diff[value] = p - g.at(value);
  for (const auto& [value, q] : g.freqs) {
    if (!f.freqs.contains(value)) diff[value] = -q;
  }
  return diff;
}

FrequencyTable column_marginal(const ProbabilityTree& tree, std::size_t column_index) {
  if (column_index >= tree.depth()) {
    throw Error(ErrorCode::InvalidColumn,
                "column index " + std::to_string(column_index) + " out of range");
  }
  FrequencyTable marginal{tree.columns()[column_index], {}, 0};
  tree.for_each_path([&](const Record& path, double p) {
    marginal.freqs[path[column_index]] += p;
  });
  return marginal;
}

std::optional<double> fit_loglog_slope(std::span<const std::size_t> sizes,
                                       std::span<const double> errors) {
  if (sizes.size() != errors.size() || sizes.size() < 3) return std::nullopt;
  double mean_x = 0.0, mean_y = 0.0;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (!(errors[i] > 0.0)) return std::nullopt;
    xs.push_back(std::log10(static_cast<double>(sizes[i])));
    ys.push_back(std::log10(errors[i]));
    mean_x += xs.back();
    mean_y += ys.back();
  }
  mean_x /= static_cast<double>(xs.size());
  mean_y /= static_cast<double>(ys.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
    sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

ConvergenceReport convergence_study(const ProbabilityTree& tree, std::size_t column_index,
                                    std::span<const std::size_t> sizes,
                                    std::size_t trials, std::uint64_t seed,
                                    bool parallel) {
  if (column_index >= tree.depth()) {
    throw Error(ErrorCode::InvalidColumn,
                "column index " + std::to_string(column_index) + " out of range");
  }
  if (sizes.empty()) throw Error(ErrorCode::InvalidSizes, "no sample sizes");
  if (trials == 0) throw Error(ErrorCode::InvalidSizes, "trials must be positive");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 10) throw Error(ErrorCode::InvalidSizes, "sample sizes must be >= 10");
    if (i > 0 && sizes[i] <= sizes[i - 1]) {
      throw Error(ErrorCode::InvalidSizes, "sample sizes must be strictly increasing");
    }
  }

  const FrequencyTable exact = column_marginal(tree, column_index);
  ConvergenceReport report;
  report.column_index = column_index;
  report.sizes.assign(sizes.begin(), sizes.end());
  report.trials = trials;
  report.seed = seed;

  for (std::size_t n : sizes) {
    std::vector<double> per_trial(trials);
    if (parallel) {
      std::vector<std::future<double>> pending;
      pending.reserve(trials);
      for (std::size_t t = 0; t < trials; ++t) {
        pending.push_back(std::async(std::launch::async, trial_error, std::cref(tree),
                                     column_index, std::cref(exact), n, seed + t));
      }
      for (std::size_t t = 0; t < trials; ++t) per_trial[t] = pending[t].get();
    } else {
      for (std::size_t t = 0; t < trials; ++t) {
        per_trial[t] = trial_error(tree, column_index, exact, n, seed + t);
      }
    }
    // Summed in trial order so the result does not depend on scheduling.
    double sum = 0.0;
    for (double e : per_trial) sum += e;
    report.errors.push_back(sum / static_cast<double>(trials));
  }
  report.fitted_slope = fit_loglog_slope(report.sizes, report.errors);
  return report;
}

std::string report_to_json(const ConvergenceReport& report) {
  nlohmann::ordered_json j;
  j["column_index"] = report.column_index;
  j["sizes"] = report.sizes;
  j["errors"] = report.errors;
  j["trials"] = report.trials;
  j["seed"] = report.seed;
  j["rng_algorithm"] = std::string(kRngAlgorithm);
  j["fitted_slope"] = report.fitted_slope ? nlohmann::ordered_json(*report.fitted_slope)
                                          : nlohmann::ordered_json(nullptr);
  return j.dump(2) + "\n";
}

std::string report_to_csv(const ConvergenceReport& report) {
  std::string out = "n,mean_error\n";
  char buf[64];
  for (std::size_t i = 0; i < report.sizes.size(); ++i) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, report.errors[i],
                                   std::chars_format::general, 17);
    out += std::to_string(report.sizes[i]) + "," + std::string(buf, end) + "\n";
  }
  return out;
}

}  // namespace probtree
