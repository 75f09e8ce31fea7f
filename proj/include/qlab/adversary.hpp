// Weighted adversary machinery: weight schemes, the progress measure W_j,
// per-query progress bounds, the truncated Hilbert matrices B_N and the
// resulting query lower bounds.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "qlab/dense.hpp"
#include "qlab/oracles.hpp"
#include "qlab/state.hpp"

namespace qlab {

using Rational = boost::multiprecision::cpp_rational;

enum class Problem { Search, Sort, ElementDistinctness };

std::string to_string(Problem p);
/// Accepts "search", "sort", "ed" / "element-distinctness".
Problem parse_problem(const std::string& name);

class ProgressError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IncompleteEnsembleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double eps_prime(double eps);

/// H_N as an exact rational.
Rational harmonic(int n);
double to_double(const Rational& q);
/// Exact rational value of a finite double.
Rational exact_rational(double v);

Rational weight_search(const OrderedOracle& x, const OrderedOracle& y);

/// The unique (k, d) with tau = sigma^(k,d), if any.
std::optional<std::pair<int, int>> find_kd(const Permutation& sigma, const Permutation& tau);

Rational weight_sort(const Permutation& sigma, const Permutation& tau);
Rational weight_ed(const Permutation& sigma, const AnnotatedPermutation& tau);

/// Closed forms: N H_N - N for search, N!(N H_N - N) for sort and ED.
Rational total_weight(Problem p, int n);

struct WeightedPair {
  std::size_t left = 0;
  std::size_t right = 0;
  Rational weight;
};

/// Nonzero weights of a family, built by exhaustive pair enumeration through
/// the weight functions. Left inputs: oracles by f (search) or permutations in
/// lexicographic order; right inputs: the same, or all_annotated(n) for ED.
struct WeightScheme {
  Problem problem = Problem::Search;
  int n = 0;
  std::size_t left_size = 0;
  std::size_t right_size = 0;
  std::vector<WeightedPair> pairs;

  Rational total() const;
};

WeightScheme make_weight_scheme(Problem p, int n);

/// Per-input right-ensemble index -> left-ensemble index whose state it
/// shares (identity except for ED, where annotated inputs use the state of
/// their underlying permutation).
std::vector<std::size_t> right_state_source(const WeightScheme& scheme);

/// Sum of w(a,b) <psi_a|psi_b> in fixed pair order. Throws
/// IncompleteEnsembleError if the ensembles do not cover the family.
Complex progress_W(const WeightScheme& scheme, const std::vector<PureState>& left,
                   const std::vector<PureState>& right);
/// Same with the right ensemble derived through right_state_source.
Complex progress_W(const WeightScheme& scheme, const std::vector<PureState>& left);

/// The same sum with every inner product converted exactly to a rational
/// (real parts only); exact whenever the inner products are exact doubles.
Rational progress_W_exact(const WeightScheme& scheme, const std::vector<PureState>& left);

/// Per-step Lemma bounds: pi N, 2 pi N!, 2 pi N! sqrt(N).
double step_bound(Problem p, int n);

/// Maps a basis label to the oracle index it queries (negative = none).
using QueryIndexFn = std::function<Register(std::span<const Register>)>;

/// Query index of generic-schema labels (register 1).
Register generic_query_index(std::span<const Register> label);

/// 2 sum_{i in differing} ||P_i a|| ||P_i b||, with P_i selected by qi.
double step_delta_bound(const PureState& a, const PureState& b,
                        const std::vector<Register>& differing, const QueryIndexFn& qi);
double step_delta_bound(const PureState& a, const PureState& b,
                        const std::vector<Register>& differing);
/// Comparison-schema variant over unordered index pairs.
double step_delta_bound(const PureState& a, const PureState& b,
                        const std::set<IndexPair>& differing);

struct ProgressTrace {
  Problem problem = Problem::Search;
  int n = 0;
  int queries = 0;
  double eps = 0.0;
  double eps_prime = 0.0;
  double bound = 0.0;          // per-step bound
  std::vector<Complex> w;      // W_0 .. W_T
  std::vector<double> delta;   // |W_j - W_{j+1}|

  bool steps_within_bound(double slack = kCheckTolerance) const;
  /// "step,W,delta,bound_pi_N" rows; the last row carries no delta.
  std::string to_csv() const;
};

/// snapshots[input][j] is psi_input^j for j = 0..T (left ensemble order).
/// Throws ProgressError if some W_j has an imaginary part beyond
/// kCheckTolerance * max(1, |W_0|).
ProgressTrace make_progress_trace(const WeightScheme& scheme,
                                  const std::vector<std::vector<PureState>>& snapshots,
                                  double eps = 0.0);

enum class SpectralRule { Hilbert, Truncated };

struct SpectralMatrix {
  int n = 0;
  SpectralRule rule = SpectralRule::Truncated;

  DenseMatrix<double> dense() const;
};

/// 1/(k+l-1), 1-based.
Rational hilbert_entry(int k, int l);
/// beta_{k,l} of B_N.
Rational b_entry(int n, int k, int l);
SpectralMatrix b_matrix(int n);

struct SpectralResult {
  double norm = 0.0;
  /// Collatz-Wielandt bound max_i (M v)_i / v_i at the final iterate; an
  /// upper bound on the norm of a nonnegative symmetric irreducible matrix.
  double upper_bound = 0.0;
  std::int64_t iterations = 0;
  double residual = 0.0;
};

inline constexpr std::int64_t kPowerIterationCap = 1'000'000;

/// Power iteration on M^T M from a seeded positive random start; stops when
/// successive Rayleigh quotients differ by less than tol. Throws
/// ConvergenceError after kPowerIterationCap iterations.
SpectralResult spectral_norm(const SpectralMatrix& m, double tol, std::uint64_t seed = 1);

struct BoundReport {
  Problem problem = Problem::Search;
  int n = 0;
  double eps = 0.0;
  double bound = 0.0;
  std::string formula;

  nlohmann::json to_json() const;
  static BoundReport from_json(const nlohmann::json& j);
  friend bool operator==(const BoundReport&, const BoundReport&) = default;
};

BoundReport theorem_bound(Problem p, int n, double eps);

struct Lemma2Outcome {
  int trials = 0;
  int violations = 0;
  double worst_slack = 0.0;  // max of lhs - bound
};

/// Random small query algorithms (dimension <= max_dim) on pairs of ordered
/// oracles; checks the per-query inner-product change against
/// step_delta_bound.
Lemma2Outcome run_lemma2_trials(int trials, std::uint64_t seed, int max_dim = 16);

}  // namespace qlab
