#include "qlab/oracles.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qlab {

OrderedOracle::OrderedOracle(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw std::invalid_argument("ordered oracle needs n >= 1");
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] > 1) throw std::invalid_argument("ordered oracle bits must be 0 or 1");
    if (i > 0 && bits_[i] < bits_[i - 1]) {
      throw std::invalid_argument("ordered oracle bits must be non-decreasing");
    }
  }
  if (bits_.back() != 1) throw std::invalid_argument("ordered oracle must have a 1 bit");
  f_ = static_cast<int>(std::find(bits_.begin(), bits_.end(), 1) - bits_.begin());
}

OrderedOracle OrderedOracle::with_answer(int n, int f) {
  if (n < 1 || f < 0 || f >= n) {
    throw std::invalid_argument("no ordered oracle with n=" + std::to_string(n) +
                                " and f=" + std::to_string(f));
  }
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n), 0);
  std::fill(bits.begin() + f, bits.end(), 1);
  return OrderedOracle(std::move(bits));
}

int f_of(const OrderedOracle& x) { return x.f(); }

std::vector<OrderedOracle> all_inputs(int n) {
  std::vector<OrderedOracle> out;
  for (int f = 0; f < n; ++f) out.push_back(OrderedOracle::with_answer(n, f));
  return out;
}

nlohmann::json oracle_to_json(const OrderedOracle& x) { return {{"n", x.n()}, {"f", x.f()}}; }

OrderedOracle oracle_from_json(const nlohmann::json& j) {
  return OrderedOracle::with_answer(j.at("n").get<int>(), j.at("f").get<int>());
}

LinearOp phase_oracle(const OrderedOracle& x) {
  return LinearOp(
      "O_x", [](std::span<const Register> label) { return label.size() == 2 && label[1] >= 0; },
      [x](std::span<const Register> label) {
        const Register i = label[1];
        const double sign = (i < x.n() && x.bit(i)) ? -1.0 : 1.0;
        return LinearOp::Image{{Registers(label.begin(), label.end()), Complex{sign}}};
      });
}

PureState phase_oracle_apply(const OrderedOracle& x, const PureState& s) {
  if (s.schema() != schemas::kGeneric) throw SchemaError("phase oracle requires the generic schema");
  return apply_op(phase_oracle(x), s);
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  inverse_.assign(images_.size(), -1);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    const int v = images_[i];
    if (v < 0 || v >= n() || inverse_[static_cast<std::size_t>(v)] != -1) {
      throw std::invalid_argument("not a permutation of 0.." + std::to_string(n() - 1));
    }
    inverse_[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  return Permutation(std::move(images));
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

ComparisonMatrix comparison_matrix(const Permutation& sigma) {
  ComparisonMatrix cm{sigma.n(), {}};
  cm.m.assign(static_cast<std::size_t>(sigma.n()), std::vector<std::uint8_t>(static_cast<std::size_t>(sigma.n()), 0));
  for (int i = 0; i < sigma.n(); ++i)
    for (int j = 0; j < sigma.n(); ++j)
      cm.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = sigma(i) < sigma(j) ? 1 : 0;
  return cm;
}

LinearOp comparison_oracle(const Permutation& sigma) {
  const ComparisonMatrix cm = comparison_matrix(sigma);
  const int n = sigma.n();
  return LinearOp(
      "O_sigma",
      [n](std::span<const Register> label) {
        return label.size() == 3 && label[1] >= 0 && label[1] < n && label[2] >= 0 && label[2] < n;
      },
      [cm](std::span<const Register> label) {
        const double sign = cm(static_cast<int>(label[1]), static_cast<int>(label[2])) ? -1.0 : 1.0;
        return LinearOp::Image{{Registers(label.begin(), label.end()), Complex{sign}}};
      });
}

PureState comparison_oracle_apply(const Permutation& sigma, const PureState& s) {
  if (s.schema() != schemas::kComparison) {
    throw SchemaError("comparison oracle requires the comparison schema");
  }
  return apply_op(comparison_oracle(sigma), s);
}

namespace {

void check_kd(int n, int k, int d) {
  if (k < 0 || k > n - 2 || d < 1 || d > n - 1 - k) {
    throw std::out_of_range("sigma^(k,d) needs 0 <= k <= n-2 and 1 <= d <= n-1-k (n=" +
                            std::to_string(n) + ", k=" + std::to_string(k) +
                            ", d=" + std::to_string(d) + ")");
  }
}

IndexPair unordered(int a, int b) { return a < b ? IndexPair{a, b} : IndexPair{b, a}; }

}  // namespace

Permutation sigma_kd(const Permutation& sigma, int k, int d) {
  check_kd(sigma.n(), k, d);
  std::vector<int> images = sigma.images();
  for (int& v : images) {
    if (v == k + d) {
      v = k;
    } else if (v >= k && v < k + d) {
      ++v;
    }
  }
  return Permutation(std::move(images));
}

std::set<IndexPair> diff_entries(const Permutation& sigma, int k, int d) {
  check_kd(sigma.n(), k, d);
  std::set<IndexPair> out;
  for (int i = 0; i < d; ++i) out.insert(unordered(sigma.inverse(k + d), sigma.inverse(k + i)));
  return out;
}

std::set<IndexPair> matrix_difference(const ComparisonMatrix& a, const ComparisonMatrix& b) {
  if (a.n != b.n) throw std::invalid_argument("comparison matrices differ in size");
  std::set<IndexPair> out;
  for (int i = 0; i < a.n; ++i)
    for (int j = i + 1; j < a.n; ++j)
      if (a(i, j) != b(i, j) || a(j, i) != b(j, i)) out.insert({i, j});
  return out;
}

AnnotatedPermutation annotate(const Permutation& tau, int r) {
  if (r < 0 || r >= tau.n() - 1) {
    throw std::out_of_range("marker " + std::to_string(r) + " outside 0 <= r < " +
                            std::to_string(tau.n() - 1));
  }
  return {tau, r};
}

std::vector<AnnotatedPermutation> all_annotated(int n) {
  std::vector<AnnotatedPermutation> out;
  for (const auto& tau : all_permutations(n))
    for (int r = 0; r + 1 < n; ++r) out.push_back(annotate(tau, r));
  return out;
}

}  // namespace qlab
