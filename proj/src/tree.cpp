#include "qlab/tree.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <stdexcept>
#include <string>

namespace qlab {

namespace {

// Growable child arrays used by the constructors below.
struct Builder {
  std::vector<int> left;
  std::vector<int> right;

  int add(int l = -1, int r = -1) {
    left.push_back(l);
    right.push_back(r);
    return static_cast<int>(left.size()) - 1;
  }
  int complete(int h) {
    if (h == 0) return add();
    const int l = complete(h - 1);
    const int r = complete(h - 1);
    return add(l, r);
  }
  int balanced(int n) {
    if (n == 1) return add();
    const int l = balanced((n + 1) / 2);
    const int r = balanced(n / 2);
    return add(l, r);
  }
  // Builds the final tree with `root` moved to index 0 via preorder renumbering.
  FullBinaryTree finish(int root) const {
    std::vector<int> order;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      order.push_back(u);
      if (left[static_cast<std::size_t>(u)] >= 0) {
        stack.push_back(right[static_cast<std::size_t>(u)]);
        stack.push_back(left[static_cast<std::size_t>(u)]);
      }
    }
    std::vector<int> rename(left.size(), -1);
    for (std::size_t k = 0; k < order.size(); ++k) rename[static_cast<std::size_t>(order[k])] = static_cast<int>(k);
    std::vector<int> l(order.size(), -1);
    std::vector<int> r(order.size(), -1);
    for (std::size_t k = 0; k < order.size(); ++k) {
      const auto u = static_cast<std::size_t>(order[k]);
      if (left[u] >= 0) {
        l[k] = rename[static_cast<std::size_t>(left[u])];
        r[k] = rename[static_cast<std::size_t>(right[u])];
      }
    }
    return FullBinaryTree::from_children(l, r);
  }
};

}  // namespace

FullBinaryTree FullBinaryTree::from_children(const std::vector<int>& left,
                                             const std::vector<int>& right) {
  if (left.size() != right.size() || left.empty()) {
    throw std::invalid_argument("tree: child arrays must be non-empty and of equal size");
  }
  const int count = static_cast<int>(left.size());
  std::vector<int> order;
  std::vector<int> parent(left.size(), -1);
  std::vector<int> depth(left.size(), 0);
  std::vector<char> seen(left.size(), 0);
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    if (seen[static_cast<std::size_t>(u)]) throw std::invalid_argument("tree: node reached twice");
    seen[static_cast<std::size_t>(u)] = 1;
    order.push_back(u);
    const int l = left[static_cast<std::size_t>(u)];
    const int r = right[static_cast<std::size_t>(u)];
    if ((l < 0) != (r < 0)) {
      throw std::invalid_argument("tree: node " + std::to_string(u) + " has exactly one child");
    }
    if (l < 0) continue;
    if (l >= count || r >= count) throw std::invalid_argument("tree: child id out of range");
    for (int c : {r, l}) {
      parent[static_cast<std::size_t>(c)] = u;
      depth[static_cast<std::size_t>(c)] = depth[static_cast<std::size_t>(u)] + 1;
      stack.push_back(c);
    }
  }
  if (static_cast<int>(order.size()) != count) throw std::invalid_argument("tree: unreachable nodes");

  std::vector<int> rename(left.size());
  for (std::size_t k = 0; k < order.size(); ++k) rename[static_cast<std::size_t>(order[k])] = static_cast<int>(k);
  FullBinaryTree t;
  t.nodes_.resize(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto u = static_cast<std::size_t>(order[k]);
    TreeNode& node = t.nodes_[k];
    node.id = static_cast<int>(k);
    node.depth = depth[u];
    node.parent = parent[u] < 0 ? -1 : rename[static_cast<std::size_t>(parent[u])];
    if (left[u] >= 0) {
      node.left = rename[static_cast<std::size_t>(left[u])];
      node.right = rename[static_cast<std::size_t>(right[u])];
    } else {
      node.leaf = static_cast<int>(t.leaf_nodes_.size());
      t.leaf_nodes_.push_back(node.id);
    }
  }
  if (t.leaf_nodes_.size() < 2) throw std::invalid_argument("tree: need at least two leaves");
  t.ranges_.resize(t.nodes_.size());
  for (int u = t.size() - 1; u >= 0; --u) {
    const TreeNode& node = t.nodes_[static_cast<std::size_t>(u)];
    if (node.leaf >= 0) {
      t.ranges_[static_cast<std::size_t>(u)] = {node.leaf, node.leaf};
    } else {
      t.ranges_[static_cast<std::size_t>(u)] = {t.ranges_[static_cast<std::size_t>(node.left)].first,
                                                t.ranges_[static_cast<std::size_t>(node.right)].second};
    }
  }
  return t;
}

std::vector<int> FullBinaryTree::internal_nodes() const {
  std::vector<int> out;
  for (const auto& node : nodes_)
    if (node.leaf < 0) out.push_back(node.id);
  return out;
}

int FullBinaryTree::height() const {
  int h = 0;
  for (const auto& node : nodes_) h = std::max(h, node.depth);
  return h;
}

int FullBinaryTree::split_leaf(int v) const {
  const TreeNode& node = this->node(v);
  if (node.leaf >= 0) throw std::invalid_argument("split_leaf: node is a leaf");
  return leaf_range(node.left).second;
}

std::vector<int> FullBinaryTree::path_to_leaf(int label) const {
  std::vector<int> path;
  for (int u = node(leaf_node(label)).parent; u >= 0; u = node(u).parent) path.push_back(u);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<std::pair<int, int>> FullBinaryTree::subtree_leaves(int u) const {
  std::vector<std::pair<int, int>> out;
  const auto [first, last] = leaf_range(u);
  const int base = node(u).depth;
  for (int label = first; label <= last; ++label) {
    out.emplace_back(label, node(leaf_node(label)).depth - base);
  }
  return out;
}

bool FullBinaryTree::complete_subtree(int u, int* height) const {
  const auto [first, last] = leaf_range(u);
  const int count = last - first + 1;
  if ((count & (count - 1)) != 0) return false;
  const int h = std::countr_zero(static_cast<unsigned>(count));
  for (int label = first; label <= last; ++label)
    if (node(leaf_node(label)).depth - node(u).depth != h) return false;
  if (height) *height = h;
  return true;
}

FullBinaryTree complete_tree(int h) {
  if (h < 1) throw std::invalid_argument("complete_tree needs height >= 1");
  Builder b;
  return b.finish(b.complete(h));
}

FullBinaryTree balanced_tree(int n) {
  if (n < 2) throw std::invalid_argument("balanced_tree needs N >= 2");
  Builder b;
  return b.finish(b.balanced(n));
}

FullBinaryTree join_complete_blocks(const std::vector<int>& block_heights) {
  if (block_heights.empty()) throw std::invalid_argument("join_complete_blocks: no blocks");
  Builder b;
  std::function<int(std::size_t, std::size_t)> join = [&](std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return b.complete(block_heights[lo]);
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    const int l = join(lo, mid);
    const int r = join(mid, hi);
    return b.add(l, r);
  };
  return b.finish(join(0, block_heights.size()));
}

}  // namespace qlab
