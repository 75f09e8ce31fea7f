#include "qlab/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

namespace qlab {

std::string to_string(Problem p) {
  switch (p) {
    case Problem::Search:
      return "search";
    case Problem::Sort:
      return "sort";
    case Problem::ElementDistinctness:
      return "ed";
  }
  return "unknown";
}

Problem parse_problem(const std::string& name) {
  if (name == "search") return Problem::Search;
  if (name == "sort") return Problem::Sort;
  if (name == "ed" || name == "element-distinctness") return Problem::ElementDistinctness;
  throw std::invalid_argument("unknown problem '" + name + "' (expected search, sort or ed)");
}

double eps_prime(double eps) {
  if (!(eps >= 0.0 && eps <= 0.5)) throw std::out_of_range("eps must lie in [0, 1/2]");
  return 2.0 * std::sqrt(eps * (1.0 - eps));
}

Rational harmonic(int n) {
  if (n < 1) throw std::invalid_argument("harmonic number needs N >= 1");
  Rational h = 0;
  for (int k = 1; k <= n; ++k) h += Rational(1, k);
  return h;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational exact_rational(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("exact_rational: non-finite value");
  if (v == 0.0) return 0;
  int exp = 0;
  const double mant = std::frexp(v, &exp);  // v = mant * 2^exp, 0.5 <= |mant| < 1
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  boost::multiprecision::cpp_int num = scaled;
  boost::multiprecision::cpp_int den = 1;
  if (exp >= 0) {
    num <<= exp;
  } else {
    den <<= -exp;
  }
  return Rational(num, den);
}

Rational weight_search(const OrderedOracle& x, const OrderedOracle& y) {
  if (x.n() != y.n()) throw std::invalid_argument("weight_search: oracle lengths differ");
  if (x.f() < y.f()) return Rational(1, y.f() - x.f());
  return 0;
}

std::optional<std::pair<int, int>> find_kd(const Permutation& sigma, const Permutation& tau) {
  if (sigma.n() != tau.n()) return std::nullopt;
  const int n = sigma.n();
  // c = tau o sigma^-1 must be the cycle k -> k+1 -> ... -> k+d -> k.
  std::vector<int> c(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) c[static_cast<std::size_t>(v)] = tau(sigma.inverse(v));
  int lo = -1;
  int hi = -1;
  for (int v = 0; v < n; ++v) {
    if (c[static_cast<std::size_t>(v)] != v) {
      if (lo < 0) lo = v;
      hi = v;
    }
  }
  if (lo < 0) return std::nullopt;
  for (int v = lo; v < hi; ++v)
    if (c[static_cast<std::size_t>(v)] != v + 1) return std::nullopt;
  if (c[static_cast<std::size_t>(hi)] != lo) return std::nullopt;
  return std::pair{lo, hi - lo};
}

Rational weight_sort(const Permutation& sigma, const Permutation& tau) {
  if (auto kd = find_kd(sigma, tau)) return Rational(1, kd->second);
  return 0;
}

Rational weight_ed(const Permutation& sigma, const AnnotatedPermutation& tau) {
  if (auto kd = find_kd(sigma, tau.perm); kd && kd->first == tau.marker) {
    return Rational(1, kd->second);
  }
  return 0;
}

namespace {

Rational factorial(int n) {
  Rational f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double harmonic_double(int n) {
  double h = 0.0;
  for (int k = n; k >= 1; --k) h += 1.0 / k;
  return h;
}

}  // namespace

Rational total_weight(Problem p, int n) {
  if (n < 2) throw std::invalid_argument("total_weight needs N >= 2");
  const Rational base = Rational(n) * harmonic(n) - n;
  return p == Problem::Search ? base : factorial(n) * base;
}

Rational WeightScheme::total() const {
  Rational sum = 0;
  for (const auto& pr : pairs) sum += pr.weight;
  return sum;
}

WeightScheme make_weight_scheme(Problem p, int n) {
  WeightScheme scheme{p, n, 0, 0, {}};
  if (p == Problem::Search) {
    const auto inputs = all_inputs(n);
    scheme.left_size = scheme.right_size = inputs.size();
    for (std::size_t a = 0; a < inputs.size(); ++a)
      for (std::size_t b = 0; b < inputs.size(); ++b)
        if (Rational w = weight_search(inputs[a], inputs[b]); w != 0) scheme.pairs.push_back({a, b, w});
    return scheme;
  }
  const auto perms = all_permutations(n);
  scheme.left_size = perms.size();
  if (p == Problem::Sort) {
    scheme.right_size = perms.size();
    for (std::size_t a = 0; a < perms.size(); ++a)
      for (std::size_t b = 0; b < perms.size(); ++b)
        if (Rational w = weight_sort(perms[a], perms[b]); w != 0) scheme.pairs.push_back({a, b, w});
    return scheme;
  }
  const auto annotated = all_annotated(n);
  scheme.right_size = annotated.size();
  for (std::size_t a = 0; a < perms.size(); ++a)
    for (std::size_t b = 0; b < annotated.size(); ++b)
      if (Rational w = weight_ed(perms[a], annotated[b]); w != 0) scheme.pairs.push_back({a, b, w});
  return scheme;
}

std::vector<std::size_t> right_state_source(const WeightScheme& scheme) {
  std::vector<std::size_t> source(scheme.right_size);
  if (scheme.problem != Problem::ElementDistinctness) {
    for (std::size_t b = 0; b < source.size(); ++b) source[b] = b;
    return source;
  }
  // all_annotated lists the n-1 markers of each permutation consecutively,
  // permutations in the same lexicographic order as the left ensemble.
  const std::size_t markers = static_cast<std::size_t>(scheme.n - 1);
  for (std::size_t b = 0; b < source.size(); ++b) source[b] = b / markers;
  return source;
}

namespace {

void check_ensembles(const WeightScheme& scheme, const std::vector<PureState>& left,
                     const std::vector<PureState>& right) {
  if (left.size() != scheme.left_size || right.size() != scheme.right_size) {
    throw IncompleteEnsembleError("ensemble covers " + std::to_string(left.size()) + "/" +
                                  std::to_string(right.size()) + " inputs, family has " +
                                  std::to_string(scheme.left_size) + "/" +
                                  std::to_string(scheme.right_size));
  }
  const auto missing = [](const PureState& s) { return s.empty(); };
  if (std::any_of(left.begin(), left.end(), missing) ||
      std::any_of(right.begin(), right.end(), missing)) {
    throw IncompleteEnsembleError("ensemble contains an empty state");
  }
}

std::vector<PureState> derive_right(const WeightScheme& scheme, const std::vector<PureState>& left) {
  if (left.size() != scheme.left_size) {
    throw IncompleteEnsembleError("left ensemble covers " + std::to_string(left.size()) +
                                  " inputs, family has " + std::to_string(scheme.left_size));
  }
  std::vector<PureState> right;
  right.reserve(scheme.right_size);
  for (std::size_t src : right_state_source(scheme)) right.push_back(left[src]);
  return right;
}

}  // namespace

Complex progress_W(const WeightScheme& scheme, const std::vector<PureState>& left,
                   const std::vector<PureState>& right) {
  check_ensembles(scheme, left, right);
  Complex sum{};
  for (const auto& pr : scheme.pairs) {
    sum += to_double(pr.weight) * inner_product(left[pr.left], right[pr.right]);
  }
  return sum;
}

Complex progress_W(const WeightScheme& scheme, const std::vector<PureState>& left) {
  return progress_W(scheme, left, derive_right(scheme, left));
}

Rational progress_W_exact(const WeightScheme& scheme, const std::vector<PureState>& left) {
  const auto right = derive_right(scheme, left);
  check_ensembles(scheme, left, right);
  Rational sum = 0;
  for (const auto& pr : scheme.pairs) {
    sum += pr.weight * exact_rational(inner_product(left[pr.left], right[pr.right]).real());
  }
  return sum;
}

double step_bound(Problem p, int n) {
  const double pi = std::numbers::pi;
  if (p == Problem::Search) return pi * n;
  const double fact = to_double(factorial(n));
  if (p == Problem::Sort) return 2.0 * pi * fact;
  return 2.0 * pi * fact * std::sqrt(static_cast<double>(n));
}

Register generic_query_index(std::span<const Register> label) {
  return label.size() >= 2 ? label[1] : -1;
}

double step_delta_bound(const PureState& a, const PureState& b,
                        const std::vector<Register>& differing, const QueryIndexFn& qi) {
  if (a.schema() != b.schema()) throw SchemaError("step_delta_bound: schema mismatch");
  std::map<Register, double> na;
  std::map<Register, double> nb;
  for (const auto& [label, amp] : a.terms()) na[qi(label)] += std::norm(amp);
  for (const auto& [label, amp] : b.terms()) nb[qi(label)] += std::norm(amp);
  double sum = 0.0;
  for (Register i : differing) {
    if (i < 0) continue;
    const auto ia = na.find(i);
    const auto ib = nb.find(i);
    if (ia == na.end() || ib == nb.end()) continue;
    sum += std::sqrt(ia->second) * std::sqrt(ib->second);
  }
  return 2.0 * sum;
}

double step_delta_bound(const PureState& a, const PureState& b,
                        const std::vector<Register>& differing) {
  if (a.schema() != schemas::kGeneric || b.schema() != schemas::kGeneric) {
    throw SchemaError("step_delta_bound: generic schema expected");
  }
  return step_delta_bound(a, b, differing, generic_query_index);
}

double step_delta_bound(const PureState& a, const PureState& b,
                        const std::set<IndexPair>& differing) {
  if (a.schema() != schemas::kComparison || b.schema() != schemas::kComparison) {
    throw SchemaError("step_delta_bound: comparison schema expected");
  }
  double sum = 0.0;
  for (const auto& [i, j] : differing) {
    sum += project_comparison_pair(a, i, j).norm() * project_comparison_pair(b, i, j).norm();
  }
  return 2.0 * sum;
}

bool ProgressTrace::steps_within_bound(double slack) const {
  return std::all_of(delta.begin(), delta.end(), [&](double d) { return d <= bound + slack; });
}

std::string ProgressTrace::to_csv() const {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "step,W,delta,bound_pi_N\n";
  for (std::size_t j = 0; j < w.size(); ++j) {
    out << j << ',' << w[j].real() << ',';
    if (j < delta.size()) out << delta[j];
    out << ',' << bound << '\n';
  }
  return out.str();
}

ProgressTrace make_progress_trace(const WeightScheme& scheme,
                                  const std::vector<std::vector<PureState>>& snapshots,
                                  double eps) {
  if (snapshots.size() != scheme.left_size) {
    throw IncompleteEnsembleError("trace covers " + std::to_string(snapshots.size()) +
                                  " inputs, family has " + std::to_string(scheme.left_size));
  }
  const std::size_t steps = snapshots.empty() ? 0 : snapshots.front().size();
  for (const auto& s : snapshots) {
    if (s.size() != steps) throw IncompleteEnsembleError("snapshot sequences differ in length");
  }
  if (steps == 0) throw IncompleteEnsembleError("trace has no snapshots");
  ProgressTrace trace;
  trace.problem = scheme.problem;
  trace.n = scheme.n;
  trace.queries = static_cast<int>(steps) - 1;
  trace.eps = eps;
  trace.eps_prime = eps_prime(eps);
  trace.bound = step_bound(scheme.problem, scheme.n);
  std::vector<PureState> ensemble(snapshots.size());
  for (std::size_t j = 0; j < steps; ++j) {
    for (std::size_t a = 0; a < snapshots.size(); ++a) ensemble[a] = snapshots[a][j];
    trace.w.push_back(progress_W(scheme, ensemble));
  }
  const double scale = std::max(1.0, std::abs(trace.w.front()));
  for (std::size_t j = 0; j < trace.w.size(); ++j) {
    if (std::abs(trace.w[j].imag()) > kCheckTolerance * scale) {
      std::ostringstream msg;
      msg << "W_" << j << " has imaginary part " << trace.w[j].imag();
      throw ProgressError(msg.str());
    }
  }
  for (std::size_t j = 0; j + 1 < trace.w.size(); ++j) {
    trace.delta.push_back(std::abs(trace.w[j] - trace.w[j + 1]));
  }
  return trace;
}

DenseMatrix<double> SpectralMatrix::dense() const {
  DenseMatrix<double> m = DenseMatrix<double>::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    for (int l = 1; l <= n; ++l) {
      if (rule == SpectralRule::Truncated && k + l > n + 1) continue;
      m(k - 1, l - 1) = 1.0 / (k + l - 1);
    }
  }
  return m;
}

Rational hilbert_entry(int k, int l) {
  if (k < 1 || l < 1) throw std::invalid_argument("Hilbert indices are 1-based");
  return Rational(1, k + l - 1);
}

Rational b_entry(int n, int k, int l) {
  if (k > n || l > n) throw std::invalid_argument("index outside B_N");
  return k + l <= n + 1 ? hilbert_entry(k, l) : Rational(0);
}

SpectralMatrix b_matrix(int n) {
  if (n < 1) throw std::invalid_argument("B_N needs N >= 1");
  return {n, SpectralRule::Truncated};
}

SpectralResult spectral_norm(const SpectralMatrix& m, double tol, std::uint64_t seed) {
  if (m.n < 1) throw std::invalid_argument("spectral_norm needs dimension >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("spectral_norm needs tol > 0");
  const DenseMatrix<double> a = m.dense();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.5, 1.5);
  DenseVector<double> v(m.n);
  for (int k = 0; k < m.n; ++k) v(k) = unit(rng);
  v.normalize();

  SpectralResult result;
  double previous = -1.0;
  for (std::int64_t it = 1; it <= kPowerIterationCap; ++it) {
    const DenseVector<double> u = a.transpose() * (a * v);
    const double rayleigh = v.dot(u);
    const double estimate = std::sqrt(std::max(0.0, rayleigh));
    result.residual = (u - rayleigh * v).norm();
    v = u / u.norm();
    result.iterations = it;
    if (previous >= 0.0 && std::abs(estimate - previous) < tol) {
      result.norm = estimate;
      const DenseVector<double> mv = a * v;
      double cw = 0.0;
      for (int k = 0; k < m.n; ++k) {
        cw = v(k) > 0.0 ? std::max(cw, mv(k) / v(k)) : std::numeric_limits<double>::infinity();
        if (std::isinf(cw)) break;
      }
      result.upper_bound = cw;
      return result;
    }
    previous = estimate;
  }
  std::ostringstream msg;
  msg << "power iteration did not converge within " << kPowerIterationCap
      << " iterations (residual " << result.residual << ")";
  throw ConvergenceError(msg.str());
}

nlohmann::json BoundReport::to_json() const {
  return {{"v", 1}, {"problem", to_string(problem)}, {"n", n}, {"eps", eps},
          {"bound", bound}, {"formula", formula}};
}

BoundReport BoundReport::from_json(const nlohmann::json& j) {
  return {parse_problem(j.at("problem").get<std::string>()), j.at("n").get<int>(),
          j.at("eps").get<double>(), j.at("bound").get<double>(),
          j.at("formula").get<std::string>()};
}

BoundReport theorem_bound(Problem p, int n, double eps) {
  if (n < 2) throw std::invalid_argument("theorem_bound needs N >= 2");
  const double scale = 1.0 - eps_prime(eps);
  const double h = harmonic_double(n) - 1.0;
  const double pi = std::numbers::pi;
  BoundReport r{p, n, eps, 0.0, {}};
  switch (p) {
    case Problem::Search:
      r.bound = scale * h / pi;
      r.formula = "(1-eps')(H_N-1)/pi";
      break;
    case Problem::Sort:
      r.bound = scale * n * h / (2.0 * pi);
      r.formula = "(1-eps')N(H_N-1)/(2pi)";
      break;
    case Problem::ElementDistinctness:
      r.bound = scale * std::sqrt(static_cast<double>(n)) * h / (2.0 * pi);
      r.formula = "(1-eps')sqrt(N)(H_N-1)/(2pi)";
      break;
  }
  r.bound = std::max(0.0, r.bound);
  return r;
}

Lemma2Outcome run_lemma2_trials(int trials, std::uint64_t seed, int max_dim) {
  if (max_dim < 2) throw std::invalid_argument("lemma 2 trials need max_dim >= 2");
  std::mt19937_64 rng(seed);
  Lemma2Outcome out;
  for (int t = 0; t < trials; ++t) {
    const int n = std::uniform_int_distribution<int>(2, std::min(4, max_dim))(rng);
    const int workspace = std::uniform_int_distribution<int>(1, max_dim / n)(rng);
    std::vector<Registers> basis;
    for (int z = 0; z < workspace; ++z)
      for (int i = 0; i < n; ++i) basis.push_back({z, i});
    const auto dim = static_cast<Eigen::Index>(basis.size());
    const LinearOp u0 = dense_op("U0", basis, random_unitary<Complex>(dim, rng));
    const LinearOp u1 = dense_op("U1", basis, random_unitary<Complex>(dim, rng));

    std::uniform_int_distribution<int> pick(0, n - 1);
    const int fx = pick(rng);
    int fy = pick(rng);
    while (fy == fx) fy = pick(rng);
    const auto x = OrderedOracle::with_answer(n, fx);
    const auto y = OrderedOracle::with_answer(n, fy);

    const PureState start = make_basis_state(schemas::kGeneric, {0, 0});
    const PureState px = apply_op(u1, phase_oracle_apply(x, apply_op(u0, start)));
    const PureState py = apply_op(u1, phase_oracle_apply(y, apply_op(u0, start)));
    const PureState qx = phase_oracle_apply(x, px);
    const PureState qy = phase_oracle_apply(y, py);

    std::vector<Register> differing;
    for (int i = 0; i < n; ++i)
      if (x.bit(i) != y.bit(i)) differing.push_back(i);
    const double lhs = std::abs(inner_product(px, py) - inner_product(qx, qy));
    const double bound = step_delta_bound(px, py, differing);
    const double slack = lhs - bound;
    if (t == 0 || slack > out.worst_slack) out.worst_slack = slack;
    if (slack > kCheckTolerance) ++out.violations;
    ++out.trials;
  }
  return out;
}

}  // namespace qlab
