#include "probtree/sampler.hpp"

#include "probtree/error.hpp"

namespace probtree {

std::size_t select_alternative(const Node& node, double u) noexcept {
  double cumulative = 0.0;
  for (std::size_t k = 0; k < node.data.size(); ++k) {
    cumulative += node.data[k].probability;
    if (cumulative >= u) return k;
  }
  return node.data.size() - 1;
}

Record Generator::get_record() {
  return sample_record(tree_, [this] { return rng_.uniform(); });
}

CategoricalTable Generator::get_records(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidCount, "record count must be positive");
  std::vector<Record> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) rows.push_back(get_record());
  return CategoricalTable(tree_.columns(), std::move(rows));
}

}  // namespace probtree
