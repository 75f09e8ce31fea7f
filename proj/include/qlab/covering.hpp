// Colored pebble coverings of full binary trees: parameters, a constructor
// for fair and tight coverings, an independent validator, an exhaustive
// minimum-pebble oracle and the certificate format.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qlab/oracles.hpp"
#include "qlab/tree.hpp"

namespace qlab {

class CoveringError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SearchCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// floor(n/3 + log2(n)) computed exactly, for any n >= 1.
std::int64_t n_prime_floor(std::int64_t n);
/// floor(log4(n/2)) for even n >= 2.
int s_param(std::int64_t n);

struct CoveringParams {
  int n = 0;
  int s = 0;
  int n_prime = 0;

  int colors() const { return 1 << s; }
  friend bool operator==(const CoveringParams&, const CoveringParams&) = default;
};

/// Requires even n >= 2, else std::invalid_argument.
CoveringParams covering_params(int n);

/// Pebble total of a tight block of height k+1 with 2^s colors.
std::int64_t block_cost(int s, int k);

/// Block heights (k+1 for each block) of a least-cost tight decomposition
/// of n leaves whose pebble total is a multiple of 2^s, in descending order.
std::vector<int> block_decomposition(int n);

/// For even n the blocks of block_decomposition(n) joined under a balanced
/// top; balanced_tree(n) for odd n. Throws std::invalid_argument for n < 2.
FullBinaryTree build_tree(int n);

struct PebbledTree {
  FullBinaryTree tree;
  int colors = 1;
  /// Sorted color ids per node id (empty for leaves and pebble-free nodes).
  std::vector<std::vector<int>> pebbles;

  int count(int v) const { return static_cast<int>(pebbles.at(static_cast<std::size_t>(v)).size()); }
};

struct CoveringReport {
  bool well_formed = false;  // pebbles only on internal nodes, colors in range, no repeats
  bool cond_a = false;
  bool cond_b = false;
  bool fair = false;
  bool tight = false;
  std::vector<int> per_color;
  int max_per_color = 0;
  int path_sum = -1;  // common path total, -1 if paths disagree
  std::string violation;  // first failed check, empty when all pass

  bool all() const { return well_formed && cond_a && cond_b && fair && tight; }
};

/// Checks every flag by direct definition; never throws.
CoveringReport validate_covering(const PebbledTree& pt);

struct CoveringLimits {
  std::size_t recipes_per_block = 4096;
  std::int64_t search_nodes = 2'000'000;
};

/// Fair, tight covering of `tree` with params.colors() colors and at most
/// params.n_prime pebbles per color. Throws CoveringError naming the failed
/// condition when no such covering is produced.
PebbledTree construct_covering(const FullBinaryTree& tree, const CoveringParams& params,
                               const CoveringLimits& limits = {});

/// Minimum over all coverings satisfying (A) and (B) of the largest
/// per-color count. Throws SearchCapError when more than `cap` color
/// assignments would have to be examined.
int brute_force_min_pebbles(const FullBinaryTree& tree, int colors, std::int64_t cap = 20'000'000);

/// Nodes carrying color c, left to right.
std::vector<int> vertex_set(const PebbledTree& pt, int color);

/// The unique node of color c on the path to leaf f(x).
int locate_vc(const PebbledTree& pt, int color, const OrderedOracle& x);

/// Internal nodes from the root to the parent of the leaf.
std::vector<int> path_to_leaf(const FullBinaryTree& tree, int leaf);

nlohmann::json certificate_to_json(const PebbledTree& pt, const CoveringParams& params);
/// Inverse of certificate_to_json; does not validate the covering.
PebbledTree certificate_from_json(const nlohmann::json& j, CoveringParams* params = nullptr);
/// FNV-1a over the compact dump.
std::uint64_t certificate_hash(const nlohmann::json& certificate);

}  // namespace qlab
