#include "qlab/comparison_algorithms.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "qlab/dense.hpp"

namespace qlab {

InsertionReplay replay_insertion_sort(int n, const std::vector<int>& outcomes) {
  if (n < 1) throw std::invalid_argument("insertion sort needs n >= 1");
  std::vector<int> sorted{0};
  std::size_t used = 0;
  for (int e = 1; e < n; ++e) {
    std::size_t lo = 0;
    std::size_t hi = sorted.size();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (used == outcomes.size()) return {std::pair{sorted[mid], e}, {}};
      // outcome 1: sigma(sorted[mid]) < sigma(e)
      if (outcomes[used++]) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    sorted.insert(sorted.begin() + static_cast<std::ptrdiff_t>(lo), e);
  }
  return {std::nullopt, sorted};
}

int insertion_sort_queries(int n) {
  int total = 0;
  for (int k = 1; k < n; ++k) total += static_cast<int>(std::bit_width(static_cast<unsigned>(k)));
  return total;
}

Register encode_transcript(const std::vector<int>& outcomes) {
  if (outcomes.size() > 60) throw std::length_error("transcript too long");
  Register z = Register{1} << outcomes.size();
  for (std::size_t k = 0; k < outcomes.size(); ++k)
    if (outcomes[k]) z |= Register{1} << k;
  return z;
}

std::vector<int> decode_transcript(Register z) {
  if (z < 1) throw std::invalid_argument("transcript value must be positive");
  const int len = static_cast<int>(std::bit_width(static_cast<std::uint64_t>(z))) - 1;
  std::vector<int> out(static_cast<std::size_t>(len));
  for (int k = 0; k < len; ++k) out[static_cast<std::size_t>(k)] = static_cast<int>((z >> k) & 1);
  return out;
}

namespace {

std::pair<int, int> comparison_at(int n, const std::vector<int>& outcomes) {
  const InsertionReplay r = replay_insertion_sort(n, outcomes);
  return r.next.value_or(std::pair{0, 1});
}

bool has_length(Register z, std::size_t len) {
  return z >= 1 && static_cast<std::size_t>(std::bit_width(static_cast<std::uint64_t>(z))) == len + 1;
}

LinearOp prepare(int n, std::size_t step) {
  return LinearOp(
      "prepare[" + std::to_string(step) + "]",
      [step](std::span<const Register> l) { return l.size() == 3 && has_length(l[0], step) && l[1] == 0 && l[2] == 0; },
      [n](std::span<const Register> l) {
        const auto [i, j] = comparison_at(n, decode_transcript(l[0]));
        const double a = std::numbers::sqrt2 / 2.0;
        return LinearOp::Image{{{l[0], i, j}, Complex{a}}, {{l[0], 0, 0}, Complex{a}}};
      });
}

LinearOp read_out(int n, std::size_t step) {
  return LinearOp(
      "read[" + std::to_string(step) + "]",
      [n, step](std::span<const Register> l) {
        if (l.size() != 3 || !has_length(l[0], step)) return false;
        if (l[1] == 0 && l[2] == 0) return true;
        const auto [i, j] = comparison_at(n, decode_transcript(l[0]));
        return l[1] == i && l[2] == j;
      },
      [](std::span<const Register> l) {
        std::vector<int> t = decode_transcript(l[0]);
        t.push_back(0);
        const Register z0 = encode_transcript(t);
        t.back() = 1;
        const Register z1 = encode_transcript(t);
        const double a = std::numbers::sqrt2 / 2.0;
        const double sign = (l[1] == 0 && l[2] == 0) ? 1.0 : -1.0;
        return LinearOp::Image{{{z0, 0, 0}, Complex{a}}, {{z1, 0, 0}, Complex{sign * a}}};
      });
}

}  // namespace

ComparisonRun run_insertion_sort(const Permutation& sigma) {
  const int n = sigma.n();
  if (n < 2) throw std::invalid_argument("insertion sort trace needs n >= 2");
  const LinearOp oracle = comparison_oracle(sigma);
  ComparisonRun run;
  PureState state = make_basis_state(schemas::kComparison, {1, 0, 0});
  run.snapshots.push_back(state);
  const int queries = insertion_sort_queries(n);
  for (int j = 0; j < queries; ++j) {
    state = apply_op(prepare(n, static_cast<std::size_t>(j)), state);
    run.pre_query.push_back(state);
    state = apply_op(oracle, state);
    run.snapshots.push_back(state);
    state = apply_op(read_out(n, static_cast<std::size_t>(j)), state);
  }
  run.final_state = std::move(state);
  return run;
}

std::vector<int> insertion_sort_result(const PureState& final_state, int n) {
  if (final_state.size() != 1 || std::abs(std::abs(final_state.terms().begin()->second) - 1.0) > kCheckTolerance) {
    throw std::runtime_error("insertion sort final state is not a single transcript");
  }
  const InsertionReplay r = replay_insertion_sort(n, decode_transcript(final_state.terms().begin()->first[0]));
  if (r.next) throw std::runtime_error("insertion sort transcript is incomplete");
  return r.order;
}

ComparisonRun run_random_comparison(const Permutation& sigma, int queries, std::uint64_t seed, int workspace) {
  const int n = sigma.n();
  if (queries < 1 || workspace < 1) throw std::invalid_argument("random comparison algorithm needs queries, workspace >= 1");
  std::vector<Registers> basis;
  for (int z = 0; z < workspace; ++z)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) basis.push_back({z, i, j});
  const auto dim = static_cast<Eigen::Index>(basis.size());
  std::mt19937_64 rng(seed ^ (static_cast<std::uint64_t>(n) << 32) ^ static_cast<std::uint64_t>(workspace << 8));

  const LinearOp oracle = comparison_oracle(sigma);
  ComparisonRun run;
  PureState state = make_basis_state(schemas::kComparison, {0, 0, 0});
  run.snapshots.push_back(state);
  for (int j = 0; j < queries; ++j) {
    const DenseMatrix<Complex> u = random_unitary<double>(dim, rng).cast<Complex>();
    state = apply_op(dense_op("U" + std::to_string(j), basis, u), state);
    run.pre_query.push_back(state);
    state = apply_op(oracle, state);
    run.snapshots.push_back(state);
  }
  run.final_state = state;
  return run;
}

}  // namespace qlab
