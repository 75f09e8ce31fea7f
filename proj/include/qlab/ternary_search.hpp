// Exact quantum ordered search on pebbled trees: the coloring, tree-query and
// spreading operators, the recursive plan and the simulated driver.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qlab/adversary.hpp"
#include "qlab/covering.hpp"
#include "qlab/oracles.hpp"
#include "qlab/state.hpp"

namespace qlab {

/// Values of the kind register in tree-search labels.
enum class Kind : Register { Start = 0, Vertex = 1, Leaf = 2, SpareLeaf = 3, SpareColor = 4 };

/// Register layout of a tree-search label: `depth` color registers (one per
/// recursive level, -1 = unset), then kind, id and aux (-1 = none).
struct LabelLayout {
  int depth = 0;

  int schema() const { return schemas::kTreeBase + depth; }
  std::size_t kind() const { return static_cast<std::size_t>(depth); }
  std::size_t id() const { return static_cast<std::size_t>(depth) + 1; }
  std::size_t aux() const { return static_cast<std::size_t>(depth) + 2; }
  Registers make(Kind kind, Register id, Register aux = -1) const;
};

class ExactnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Single-level labels (no color registers): |v> , |v; c>, |v; b>, |leaf>.
PureState vertex_state(int v, Register aux = -1);
PureState leaf_state(int label);

/// |v; none> -> p_v^{-1/2} sum_{c on v} |v; c>. The other p_v - 1 vectors of
/// the Hadamard (power-of-two p_v) or Fourier basis are the spare slots.
LinearOp u1(const PebbledTree& pt);
LinearOp u1_inverse(const PebbledTree& pt);
PureState u1_apply(const PebbledTree& pt, const PureState& s);
PureState u1_inverse_apply(const PebbledTree& pt, const PureState& s);

/// Queries bit i = split leaf of v: writes it into aux when v's parent is
/// pebble-free (or v is the root), applies (-1)^{x_i} otherwise.
LinearOp oracle_prime(const PebbledTree& pt, const OrderedOracle& x);
PureState oracle_prime_apply(const PebbledTree& pt, const OrderedOracle& x, const PureState& s);

/// sum over leaves l of u's subtree of 2^{-d(u,l)/2} |l>.
PureState phi_state(const FullBinaryTree& tree, int u);

/// |v;0> -> Phi_right(v), |v;1> -> Phi_left(v) below pebble-free parents,
/// |v> -> (Phi_right(v) - Phi_left(v))/sqrt(2) below pebbled parents.
LinearOp u2(const PebbledTree& pt);
PureState u2_apply(const PebbledTree& pt, const PureState& s);

/// 2^{-s/2} sum_{v on the path to leaf f(x)} sqrt(p_v) |v>.
PureState path_superposition(const PebbledTree& pt, const OrderedOracle& x);

/// N'(n) + 1 for even n.
int recursion_size(int n);

/// Band-membership oracle of color c: bit j is x at the rightmost leaf under
/// the j-th vertex of V_c, padded with 1 bits to recursion_size(n).
OrderedOracle subinstance_oracle(const PebbledTree& pt, int color, const OrderedOracle& x);

/// The recursion 1 for n <= 8, else f_tilde(floor(n/3 + log2 n + 1)) + 1.
int f_tilde(std::int64_t n);

struct LevelPlan {
  int size = 0;
  FullBinaryTree tree;
  // Recursive levels only.
  CoveringParams params;
  PebbledTree cover;
  std::vector<std::vector<int>> vertex_sets;  // V_c left to right
  std::vector<std::vector<int>> band_right;   // rightmost leaf under V_c[j]
};

struct SearchPlan {
  int n = 0;                      // requested input length
  std::vector<LevelPlan> levels;  // recursive levels, level 0 on top
  LevelPlan base;                 // bisection level
  std::string base_strategy = "bisection";
  std::uint64_t hash = 0;         // FNV-1a over the level certificates

  int depth() const { return static_cast<int>(levels.size()); }
  int queries() const { return depth() + base.tree.height(); }
  LabelLayout layout() const { return {depth()}; }
  std::vector<int> level_sizes() const;
};

/// Cached, immutable plan for inputs of length n >= 1.
std::shared_ptr<const SearchPlan> search_plan(int n);

/// Uncached plan whose top level uses `top` as given, without validation.
/// Throws CoveringError if the padded size has no recursive level or the
/// leaf count differs.
std::shared_ptr<const SearchPlan> search_plan_with_cover(int n, const PebbledTree& top);

/// Implemented query count F(n): the base bisection height for padded sizes
/// up to 8, else F(even(N'+1)) + 1.
int implemented_queries(int n);

struct RunOptions {
  bool snapshots = false;  // psi^0 and the state after every query
  bool trace = false;      // JSON line per operator
};

struct SearchResult {
  int index = -1;
  int queries = 0;
  double probability = 0.0;
  MeasurementResult distribution;  // over leaf labels; -1 collects spare labels
  PureState final_state;
  std::vector<PureState> snapshots;    // psi^0 .. psi^T
  std::vector<PureState> pre_query;    // state entering each query
  std::vector<QueryIndexFn> query_maps;
  std::vector<std::string> trace;
};

/// Simulates the algorithm on x. Throws ExactnessError if no outcome has
/// probability >= 1 - kCheckTolerance.
SearchResult run_search(const OrderedOracle& x, const RunOptions& options = {});
SearchResult run_search(const SearchPlan& plan, const OrderedOracle& x, const RunOptions& options = {});

}  // namespace qlab
