#include "qloc/search_tree.hpp"

#include <deque>
#include <stdexcept>

namespace qloc {

int select_middle(std::span<const std::uint64_t> prefix_costs, int lo, int hi) {
  const int l = static_cast<int>(prefix_costs.size());
  if (lo < 1 || hi > l || lo >= hi) {
    throw std::out_of_range("invalid target range [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "]");
  }
  // cum[k] = sum of c_i for i in [lo, lo + k)
  std::vector<std::uint64_t> cum(static_cast<std::size_t>(hi - lo) + 1, 0);
  for (int i = lo; i < hi; ++i) {
    cum[i - lo + 1] = cum[i - lo] + prefix_costs[i - 1];
  }
  const std::uint64_t total = cum.back();  // sum over [lo, hi)

  int best_x = lo;
  std::uint64_t best = 0;
  for (int x = lo; x < hi; ++x) {
    const std::uint64_t left = cum[x - lo];            // [lo, x)
    const std::uint64_t right = total - cum[x - lo + 1];  // (x, hi)
    const std::uint64_t value = left > right ? left - right : right - left;
    if (x == lo || value < best) {
      best = value;
      best_x = x;
    }
  }
  return best_x;
}

SearchTree SearchTree::build(const QuantumProgram& program) {
  return build(program.prefix_costs());
}

SearchTree SearchTree::build(std::span<const std::uint64_t> prefix_costs) {
  const int l = static_cast<int>(prefix_costs.size());
  if (l < 2) throw std::invalid_argument("need at least 2 segments");

  SearchTree tree;
  tree.segment_count_ = l;
  tree.node_by_middle_.assign(static_cast<std::size_t>(l) + 1, -1);

  tree.nodes_.push_back(SearchNode{1, 1, l, -1, -1, -1});
  std::deque<int> pending{1};
  while (!pending.empty()) {
    const int id = pending.front();
    pending.pop_front();
    const int lo = tree.nodes_[id - 1].lo;
    const int hi = tree.nodes_[id - 1].hi;
    if (lo == hi) continue;

    const int middle = select_middle(prefix_costs, lo, hi);
    const int left_id = static_cast<int>(tree.nodes_.size()) + 1;
    const int right_id = left_id + 1;
    tree.nodes_.push_back(SearchNode{left_id, lo, middle, -1, -1, -1});
    tree.nodes_.push_back(SearchNode{right_id, middle + 1, hi, -1, -1, -1});

    SearchNode& nd = tree.nodes_[id - 1];
    nd.middle = middle;
    nd.left = left_id;
    nd.right = right_id;
    tree.node_by_middle_[middle] = id;

    pending.push_back(left_id);
    pending.push_back(right_id);
  }
  return tree;
}

const SearchNode& SearchTree::node(int id) const {
  if (id < 1 || id > node_count()) {
    throw std::out_of_range("node id " + std::to_string(id) + " out of range");
  }
  return nodes_[static_cast<std::size_t>(id) - 1];
}

int SearchTree::node_testing(int segment) const {
  if (segment < 1 || segment >= segment_count_) {
    throw std::out_of_range("no internal node tests segment " + std::to_string(segment));
  }
  return node_by_middle_[segment];
}

}  // namespace qloc
