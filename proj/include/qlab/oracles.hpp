// Input families for the query model: ordered bit strings with the phase
// oracle, permutations with the comparison oracle, annotated permutations,
// and the cyclic shift sigma^(k,d).
#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qlab/state.hpp"

namespace qlab {

/// A monotone bit string 0^f 1^(n-f) with f < n.
class OrderedOracle {
 public:
  /// Throws std::invalid_argument for non-monotone or all-zero strings.
  explicit OrderedOracle(std::vector<std::uint8_t> bits);
  /// The unique oracle of length n whose first 1 is at index f.
  static OrderedOracle with_answer(int n, int f);

  int n() const { return static_cast<int>(bits_.size()); }
  int f() const { return f_; }
  int bit(std::int64_t i) const { return bits_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  friend bool operator==(const OrderedOracle&, const OrderedOracle&) = default;

 private:
  std::vector<std::uint8_t> bits_;
  int f_ = 0;
};

int f_of(const OrderedOracle& x);

/// All n oracles of length n ordered by f-value.
std::vector<OrderedOracle> all_inputs(int n);

nlohmann::json oracle_to_json(const OrderedOracle& x);
OrderedOracle oracle_from_json(const nlohmann::json& j);

/// |z; i> -> (-1)^{x_i} |z; i> for i < n, identity for i >= n.
LinearOp phase_oracle(const OrderedOracle& x);
PureState phase_oracle_apply(const OrderedOracle& x, const PureState& s);

class Permutation {
 public:
  /// Throws std::invalid_argument unless images is a bijection on 0..n-1.
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);

  int n() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_.at(static_cast<std::size_t>(i)); }
  int inverse(int v) const { return inverse_.at(static_cast<std::size_t>(v)); }
  const std::vector<int>& images() const { return images_; }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.images_ == b.images_;
  }
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

 private:
  std::vector<int> images_;
  std::vector<int> inverse_;
};

/// Lexicographic enumeration of all n! permutations.
std::vector<Permutation> all_permutations(int n);

struct ComparisonMatrix {
  int n = 0;
  std::vector<std::vector<std::uint8_t>> m;

  int operator()(int i, int j) const { return m.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j)); }
};

/// m[i][j] = 1 iff sigma(i) < sigma(j).
ComparisonMatrix comparison_matrix(const Permutation& sigma);

/// |z; i, i'> -> (-1)^{m_{ii'}} |z; i, i'>.
LinearOp comparison_oracle(const Permutation& sigma);
PureState comparison_oracle_apply(const Permutation& sigma, const PureState& s);

/// The cycle k -> k+1 -> ... -> k+d -> k applied after sigma. Requires
/// 0 <= k <= n-2 and 1 <= d <= n-1-k, else std::out_of_range.
Permutation sigma_kd(const Permutation& sigma, int k, int d);

using IndexPair = std::pair<int, int>;  // stored with first < second

/// {{sigma^-1(k+d), sigma^-1(k+i)} : 0 <= i < d}.
std::set<IndexPair> diff_entries(const Permutation& sigma, int k, int d);

/// The exact set of unordered pairs where the two comparison matrices differ.
std::set<IndexPair> matrix_difference(const ComparisonMatrix& a, const ComparisonMatrix& b);

struct AnnotatedPermutation {
  Permutation perm;
  int marker = 0;

  friend bool operator==(const AnnotatedPermutation&, const AnnotatedPermutation&) = default;
};

/// Requires 0 <= r < n-1, else std::out_of_range.
AnnotatedPermutation annotate(const Permutation& tau, int r);

std::vector<AnnotatedPermutation> all_annotated(int n);

}  // namespace qlab
