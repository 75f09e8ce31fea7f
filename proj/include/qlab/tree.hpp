// Full binary trees with leaves labeled 0..N-1 from left to right.
#pragma once

#include <utility>
#include <vector>

namespace qlab {

struct TreeNode {
  int id = 0;
  int left = -1;
  int right = -1;
  int parent = -1;
  int depth = 0;
  int leaf = -1;  // leaf label, -1 for internal nodes
};

/// Node ids are assigned in preorder, so the root is 0 and every subtree
/// occupies a contiguous id range.
class FullBinaryTree {
 public:
  FullBinaryTree() = default;
  /// Builds from child arrays (left[i] = right[i] = -1 marks a leaf) rooted
  /// at node 0. Renumbers in preorder and labels leaves left to right.
  /// Throws std::invalid_argument unless the result is a full binary tree
  /// with at least two leaves.
  static FullBinaryTree from_children(const std::vector<int>& left, const std::vector<int>& right);

  int size() const { return static_cast<int>(nodes_.size()); }
  int n_leaves() const { return static_cast<int>(leaf_nodes_.size()); }
  int root() const { return 0; }
  const TreeNode& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  bool is_leaf(int id) const { return node(id).leaf >= 0; }
  int leaf_node(int label) const { return leaf_nodes_.at(static_cast<std::size_t>(label)); }
  std::vector<int> internal_nodes() const;
  int height() const;

  /// Leaf labels covered by the subtree of u: [first, last].
  std::pair<int, int> leaf_range(int u) const { return ranges_.at(static_cast<std::size_t>(u)); }
  /// Label of the rightmost leaf in the left subtree of internal node v.
  int split_leaf(int v) const;
  /// Internal nodes from the root to the parent of the given leaf.
  std::vector<int> path_to_leaf(int label) const;
  /// (leaf label, depth below u) for every leaf of u's subtree.
  std::vector<std::pair<int, int>> subtree_leaves(int u) const;
  /// True if u roots a complete subtree; sets its height (edges to leaves).
  bool complete_subtree(int u, int* height) const;

 private:
  std::vector<TreeNode> nodes_;
  std::vector<int> leaf_nodes_;
  std::vector<std::pair<int, int>> ranges_;
};

/// Complete tree with 2^h leaves.
FullBinaryTree complete_tree(int h);

/// Balanced tree: the left part of every node takes ceil(n/2) leaves.
FullBinaryTree balanced_tree(int n);

/// Complete subtrees of the given heights, left to right, under a balanced
/// top tree (the left part takes ceil(m/2) of m blocks). A single block is
/// the whole tree.
FullBinaryTree join_complete_blocks(const std::vector<int>& block_heights);

}  // namespace qlab
