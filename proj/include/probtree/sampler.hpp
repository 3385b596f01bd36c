#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "probtree/random.hpp"
#include "probtree/table.hpp"
#include "probtree/tree.hpp"

namespace probtree {

// Inverse-CDF selection: index of the first alternative whose cumulative
// probability reaches `u`. When rounding leaves the total below `u`, the last
// alternative is chosen.
std::size_t select_alternative(const Node& node, double u) noexcept;

// Walks `tree` from the root drawing exactly one uniform per level from
// `next_uniform` (a callable returning doubles in [0, 1)), including levels
// whose Node has a single alternative.
template <class UniformSource>
Record sample_record(const ProbabilityTree& tree, UniformSource&& next_uniform) {
  Record record;
  record.reserve(tree.depth());
  const Node* node = &tree.root();
  while (node != nullptr) {
    const double u = next_uniform();
    const DataNode& chosen = node->data[select_alternative(*node, u)];
    record.push_back(chosen.value);
    node = chosen.next.get();
  }
  return record;
}

// Monte Carlo record generator over a shared tree. Not thread-safe: one
// Generator per thread. Generators with distinct seeds over the same tree can
// run in parallel; their merged output is exchangeable with, but not equal to,
// a single stream.
class Generator {
 public:
  Generator(ProbabilityTree tree, std::uint64_t seed)
      : tree_(std::move(tree)), rng_(seed) {}

  // Resets the stream to the state of a fresh Generator with `seed`.
  void set_seed(std::uint64_t seed) noexcept { rng_.seed_with(seed); }

  Record get_record();

  // n >= 1 records in stream order, under the tree's columns. Throws
  // InvalidCount for n == 0.
  CategoricalTable get_records(std::size_t n);

  const ProbabilityTree& tree() const noexcept { return tree_; }

 private:
  ProbabilityTree tree_;
  Xoshiro256StarStar rng_;
};

}  // namespace probtree
