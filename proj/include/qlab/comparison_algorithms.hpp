// Small comparison-query algorithms on the |z; i, i'> schema, used to produce
// instrumented state sequences for the sorting and element-distinctness
// progress traces.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qlab/oracles.hpp"
#include "qlab/state.hpp"

namespace qlab {

/// Replays binary insertion sort on a transcript of comparison outcomes.
/// Either the next comparison (i, i') is required, or the transcript already
/// determines the order (indices listed by increasing sigma value).
struct InsertionReplay {
  std::optional<std::pair<int, int>> next;
  std::vector<int> order;
};

InsertionReplay replay_insertion_sort(int n, const std::vector<int>& outcomes);

/// Worst-case comparison count of binary insertion sort:
/// sum_{k=1}^{n-1} ceil(log2(k+1)).
int insertion_sort_queries(int n);

/// Workspace value z for a transcript; the leading 1 bit fixes its length.
Register encode_transcript(const std::vector<int>& outcomes);
std::vector<int> decode_transcript(Register z);

struct ComparisonRun {
  std::vector<PureState> snapshots;  // psi^0 .. psi^T
  std::vector<PureState> pre_query;  // state entering each query
  PureState final_state;
};

/// Binary insertion sort as an exact query algorithm: each comparison is
/// read out by querying (|t; i, i'> + |t; 0, 0>)/sqrt(2). Runs are padded to
/// insertion_sort_queries(n) queries.
ComparisonRun run_insertion_sort(const Permutation& sigma);

/// Order read from the final state of run_insertion_sort; throws
/// std::runtime_error if the state is not a single transcript.
std::vector<int> insertion_sort_result(const PureState& final_state, int n);

/// `queries` rounds of seeded random real orthogonal maps on the span of
/// |z; i, i'> with z < workspace, interleaved with comparison queries. The
/// maps depend only on (n, queries, workspace, seed).
ComparisonRun run_random_comparison(const Permutation& sigma, int queries, std::uint64_t seed,
                                    int workspace = 2);

/// run(sigma).snapshots for every permutation in lexicographic order.
template <typename Algorithm>
std::vector<std::vector<PureState>> permutation_snapshots(int n, Algorithm&& run) {
  std::vector<std::vector<PureState>> out;
  for (const Permutation& sigma : all_permutations(n)) out.push_back(run(sigma).snapshots);
  return out;
}

}  // namespace qlab
