#include "qlab/ternary_search.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace qlab {

Registers LabelLayout::make(Kind kind, Register id, Register aux) const {
  Registers r(static_cast<std::size_t>(depth) + 3, -1);
  r[this->kind()] = static_cast<Register>(kind);
  r[this->id()] = id;
  r[this->aux()] = aux;
  return r;
}

namespace {

constexpr LabelLayout kFlat{0};

bool is_spare(Register kind) {
  return kind == static_cast<Register>(Kind::SpareLeaf) || kind == static_cast<Register>(Kind::SpareColor);
}

/// Entry (j, s) of the color basis change for p colors; column 0 is uniform.
Complex color_basis(int p, int j, int s) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(p));
  if (std::has_single_bit(static_cast<unsigned>(p))) {
    return std::popcount(static_cast<unsigned>(j & s)) % 2 ? -scale : scale;
  }
  const double angle = 2.0 * std::numbers::pi * j * s / p;
  return std::polar(scale, angle);
}

using Resolver = std::function<Register(Register, std::span<const Register>)>;

/// Everything an operator at one tree level needs. `level` is the color
/// register owned by this level; registers from `level` on must be unset.
struct LevelContext {
  LabelLayout layout;
  int level = 0;
  const FullBinaryTree* tree = nullptr;
  const PebbledTree* cover = nullptr;
  const std::vector<std::vector<int>>* vertex_sets = nullptr;
  Resolver resolve;
  bool pass_spares = false;
  std::shared_ptr<const void> keep;  // owner of the pointed-to data

  bool clear_from(std::span<const Register> label, int from) const {
    for (int j = from; j < layout.depth; ++j)
      if (label[static_cast<std::size_t>(j)] != -1) return false;
    return true;
  }
  Register kind(std::span<const Register> l) const { return l[layout.kind()]; }
  Register id(std::span<const Register> l) const { return l[layout.id()]; }
  Register aux(std::span<const Register> l) const { return l[layout.aux()]; }
  bool internal(Register v) const { return v >= 0 && v < tree->size() && !tree->is_leaf(static_cast<int>(v)); }
  bool parent_free(int v) const {
    const int parent = tree->node(v).parent;
    return parent < 0 || cover->count(parent) == 0;
  }
  Registers relabeled(std::span<const Register> label, Kind kind, Register id, Register aux) const {
    Registers r(label.begin(), label.end());
    r[layout.kind()] = static_cast<Register>(kind);
    r[layout.id()] = id;
    r[layout.aux()] = aux;
    return r;
  }
  /// Labels of this level's query step, mapped to the physical index.
  Register query_index(std::span<const Register> label) const {
    if (kind(label) != static_cast<Register>(Kind::Vertex) || aux(label) != -1 || !internal(id(label))) return -1;
    return resolve(tree->split_leaf(static_cast<int>(id(label))), label);
  }
};

using CoreDomain = std::function<bool(const LevelContext&, std::span<const Register>)>;
using CoreRule = std::function<LinearOp::Image(const LevelContext&, std::span<const Register>)>;

LinearOp level_op(std::string name, LevelContext ctx, CoreDomain domain, CoreRule rule) {
  auto shared = std::make_shared<const LevelContext>(std::move(ctx));
  return LinearOp(
      std::move(name),
      [shared, domain](std::span<const Register> label) {
        if (label.size() != static_cast<std::size_t>(shared->layout.depth) + 3) return false;
        if (shared->pass_spares && is_spare(shared->kind(label))) return true;
        return domain(*shared, label);
      },
      [shared, rule](std::span<const Register> label) {
        if (shared->pass_spares && is_spare(shared->kind(label))) {
          return LinearOp::Image{{Registers(label.begin(), label.end()), Complex{1.0}}};
        }
        return rule(*shared, label);
      });
}

LinearOp::Image phi_image(const LevelContext& ctx, std::span<const Register> label, int u, Complex scale) {
  LinearOp::Image out;
  for (const auto& [leaf, d] : ctx.tree->subtree_leaves(u)) {
    out.emplace_back(ctx.relabeled(label, Kind::Leaf, leaf, -1), scale * std::pow(2.0, -0.5 * d));
  }
  return out;
}

LinearOp make_u1(LevelContext ctx) {
  return level_op(
      "U1", std::move(ctx),
      [](const LevelContext& c, std::span<const Register> l) {
        if (!c.clear_from(l, c.level)) return false;
        const Register v = c.id(l);
        if (!c.internal(v) || c.cover->count(static_cast<int>(v)) == 0) return false;
        if (c.kind(l) == static_cast<Register>(Kind::Vertex)) return c.aux(l) == -1;
        return c.kind(l) == static_cast<Register>(Kind::SpareColor) && c.aux(l) >= 1 &&
               c.aux(l) < c.cover->count(static_cast<int>(v));
      },
      [](const LevelContext& c, std::span<const Register> l) {
        const int v = static_cast<int>(c.id(l));
        const auto& cols = c.cover->pebbles[static_cast<std::size_t>(v)];
        const int p = static_cast<int>(cols.size());
        const int slot = c.kind(l) == static_cast<Register>(Kind::Vertex) ? 0 : static_cast<int>(c.aux(l));
        LinearOp::Image out;
        for (int j = 0; j < p; ++j) {
          out.emplace_back(c.relabeled(l, Kind::Vertex, v, cols[static_cast<std::size_t>(j)]), color_basis(p, j, slot));
        }
        return out;
      });
}

LinearOp make_u1_inverse(LevelContext ctx) {
  return level_op(
      "U1^-1", std::move(ctx),
      [](const LevelContext& c, std::span<const Register> l) {
        if (!c.clear_from(l, c.level) || c.kind(l) != static_cast<Register>(Kind::Vertex)) return false;
        const Register v = c.id(l);
        if (!c.internal(v)) return false;
        const auto& cols = c.cover->pebbles[static_cast<std::size_t>(v)];
        return std::binary_search(cols.begin(), cols.end(), static_cast<int>(c.aux(l)));
      },
      [](const LevelContext& c, std::span<const Register> l) {
        const int v = static_cast<int>(c.id(l));
        const auto& cols = c.cover->pebbles[static_cast<std::size_t>(v)];
        const int p = static_cast<int>(cols.size());
        const int j = static_cast<int>(std::lower_bound(cols.begin(), cols.end(), static_cast<int>(c.aux(l))) - cols.begin());
        LinearOp::Image out;
        out.emplace_back(c.relabeled(l, Kind::Vertex, v, -1), std::conj(color_basis(p, j, 0)));
        for (int s = 1; s < p; ++s) {
          out.emplace_back(c.relabeled(l, Kind::SpareColor, v, s), std::conj(color_basis(p, j, s)));
        }
        return out;
      });
}

LinearOp make_oracle_prime(LevelContext ctx, const OrderedOracle& x) {
  return level_op(
      "O'_x", std::move(ctx),
      [](const LevelContext& c, std::span<const Register> l) {
        return c.clear_from(l, c.level) && c.kind(l) == static_cast<Register>(Kind::Vertex) && c.aux(l) == -1 &&
               c.internal(c.id(l));
      },
      [x](const LevelContext& c, std::span<const Register> l) {
        const int v = static_cast<int>(c.id(l));
        const int bit = x.bit(c.query_index(l));
        if (c.parent_free(v)) return LinearOp::Image{{c.relabeled(l, Kind::Vertex, v, bit), Complex{1.0}}};
        return LinearOp::Image{{Registers(l.begin(), l.end()), Complex{bit ? -1.0 : 1.0}}};
      });
}

LinearOp make_u2(LevelContext ctx) {
  return level_op(
      "U2", std::move(ctx),
      [](const LevelContext& c, std::span<const Register> l) {
        if (!c.clear_from(l, c.level) || c.kind(l) != static_cast<Register>(Kind::Vertex) || !c.internal(c.id(l))) {
          return false;
        }
        const Register a = c.aux(l);
        return c.parent_free(static_cast<int>(c.id(l))) ? (a == 0 || a == 1) : a == -1;
      },
      [](const LevelContext& c, std::span<const Register> l) {
        const int v = static_cast<int>(c.id(l));
        const TreeNode& node = c.tree->node(v);
        if (c.aux(l) == 0) return phi_image(c, l, node.right, 1.0);
        if (c.aux(l) == 1) return phi_image(c, l, node.left, 1.0);
        auto out = phi_image(c, l, node.right, std::numbers::sqrt2 / 2.0);
        for (auto& term : phi_image(c, l, node.left, -std::numbers::sqrt2 / 2.0)) out.push_back(std::move(term));
        return out;
      });
}

LevelContext flat_context(const PebbledTree& pt) {
  auto owned = std::make_shared<const PebbledTree>(pt);
  LevelContext ctx;
  ctx.layout = kFlat;
  ctx.level = 0;
  ctx.tree = &owned->tree;
  ctx.cover = owned.get();
  const int n = owned->tree.n_leaves();
  ctx.resolve = [n](Register i, std::span<const Register>) { return std::min<Register>(i, n - 1); };
  ctx.keep = owned;
  return ctx;
}

}  // namespace

PureState vertex_state(int v, Register aux) { return make_basis_state(kFlat.schema(), kFlat.make(Kind::Vertex, v, aux)); }

PureState leaf_state(int label) { return make_basis_state(kFlat.schema(), kFlat.make(Kind::Leaf, label)); }

LinearOp u1(const PebbledTree& pt) { return make_u1(flat_context(pt)); }
LinearOp u1_inverse(const PebbledTree& pt) { return make_u1_inverse(flat_context(pt)); }
PureState u1_apply(const PebbledTree& pt, const PureState& s) { return apply_op(u1(pt), s); }
PureState u1_inverse_apply(const PebbledTree& pt, const PureState& s) { return apply_op(u1_inverse(pt), s); }

LinearOp oracle_prime(const PebbledTree& pt, const OrderedOracle& x) {
  if (x.n() != pt.tree.n_leaves()) throw std::invalid_argument("oracle_prime: oracle length differs from tree");
  return make_oracle_prime(flat_context(pt), x);
}

PureState oracle_prime_apply(const PebbledTree& pt, const OrderedOracle& x, const PureState& s) {
  return apply_op(oracle_prime(pt, x), s);
}

PureState phi_state(const FullBinaryTree& tree, int u) {
  std::vector<std::pair<Registers, Complex>> terms;
  for (const auto& [leaf, d] : tree.subtree_leaves(u)) {
    terms.emplace_back(kFlat.make(Kind::Leaf, leaf), std::pow(2.0, -0.5 * d));
  }
  return superposition(kFlat.schema(), terms);
}

LinearOp u2(const PebbledTree& pt) { return make_u2(flat_context(pt)); }
PureState u2_apply(const PebbledTree& pt, const PureState& s) { return apply_op(u2(pt), s); }

PureState path_superposition(const PebbledTree& pt, const OrderedOracle& x) {
  std::vector<std::pair<Registers, Complex>> terms;
  const double scale = 1.0 / std::sqrt(static_cast<double>(pt.colors));
  for (int v : pt.tree.path_to_leaf(x.f())) {
    if (pt.count(v) > 0) terms.emplace_back(kFlat.make(Kind::Vertex, v), scale * std::sqrt(static_cast<double>(pt.count(v))));
  }
  return superposition(kFlat.schema(), terms);
}

int recursion_size(int n) { return covering_params(n).n_prime + 1; }

OrderedOracle subinstance_oracle(const PebbledTree& pt, int color, const OrderedOracle& x) {
  const int n = pt.tree.n_leaves();
  if (x.n() != n) throw std::invalid_argument("subinstance_oracle: oracle length differs from tree");
  const std::vector<int> bands = vertex_set(pt, color);
  const int size = recursion_size(n);
  if (static_cast<int>(bands.size()) >= size) {
    throw CoveringError("color " + std::to_string(color) + " has more than N' vertices");
  }
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(size), 1);
  for (std::size_t j = 0; j < bands.size(); ++j) {
    bits[j] = static_cast<std::uint8_t>(x.bit(pt.tree.leaf_range(bands[j]).second));
  }
  return OrderedOracle(std::move(bits));
}

int f_tilde(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("f_tilde needs N >= 1");
  int count = 1;
  while (n > 8) {
    n = n_prime_floor(n) + 1;
    ++count;
  }
  return count;
}

namespace {

int even_size(int n) { return n < 2 ? 2 : n + (n % 2); }

}  // namespace

int implemented_queries(int n) {
  if (n < 1) throw std::invalid_argument("implemented_queries needs N >= 1");
  int size = even_size(n);
  int count = 0;
  while (size > 8) {
    size = even_size(recursion_size(size));
    ++count;
  }
  return count + static_cast<int>(std::bit_width(static_cast<unsigned>(size - 1)));
}

std::vector<int> SearchPlan::level_sizes() const {
  std::vector<int> out;
  for (const auto& level : levels) out.push_back(level.size);
  out.push_back(base.size);
  return out;
}

namespace {

std::shared_ptr<const SearchPlan> build_plan(int n, const PebbledTree* top) {
  auto plan = std::make_shared<SearchPlan>();
  plan->n = n;
  int size = even_size(n);
  nlohmann::json certificates = nlohmann::json::array();
  while (size > 8) {
    LevelPlan level;
    level.size = size;
    level.tree = build_tree(size);
    level.params = covering_params(size);
    if (top && plan->levels.empty()) {
      if (top->tree.n_leaves() != size) throw CoveringError("supplied covering has the wrong number of leaves");
      level.tree = top->tree;
      level.cover = *top;
    } else {
      level.cover = construct_covering(level.tree, level.params);
    }
    for (int c = 0; c < level.cover.colors; ++c) {
      level.vertex_sets.push_back(vertex_set(level.cover, c));
      std::vector<int> right;
      for (int v : level.vertex_sets.back()) right.push_back(level.tree.leaf_range(v).second);
      level.band_right.push_back(std::move(right));
    }
    certificates.push_back(certificate_to_json(level.cover, level.params));
    plan->levels.push_back(std::move(level));
    size = even_size(recursion_size(size));
  }
  if (top && plan->levels.empty()) {
    throw CoveringError("N=" + std::to_string(n) + " has no recursive level to take a covering");
  }
  plan->base.size = size;
  plan->base.tree = balanced_tree(size);
  certificates.push_back({{"base", plan->base_strategy}, {"n_leaves", size}});
  plan->hash = certificate_hash(certificates);
  return plan;
}

struct Step {
  LinearOp op;
  bool query = false;
  QueryIndexFn query_index;
};

class ProgramBuilder {
 public:
  ProgramBuilder(std::shared_ptr<const SearchPlan> plan, const OrderedOracle& x)
      : plan_(std::move(plan)), x_(x), layout_(plan_->layout()) {}

  std::vector<Step> build() {
    emit(0);
    return std::move(steps_);
  }

 private:
  LevelContext context(int k) const {
    LevelContext ctx;
    ctx.layout = layout_;
    ctx.level = k;
    const bool base = k == plan_->depth();
    const LevelPlan& lp = base ? plan_->base : plan_->levels[static_cast<std::size_t>(k)];
    ctx.tree = &lp.tree;
    ctx.cover = base ? nullptr : &lp.cover;
    ctx.vertex_sets = base ? nullptr : &lp.vertex_sets;
    ctx.pass_spares = true;
    ctx.keep = plan_;
    const SearchPlan* plan = plan_.get();
    ctx.resolve = [plan, k](Register i, std::span<const Register> label) {
      for (int l = k - 1; l >= 0; --l) {
        const LevelPlan& up = plan->levels[static_cast<std::size_t>(l)];
        const Register c = label[static_cast<std::size_t>(l)];
        if (c < 0 || c >= static_cast<Register>(up.band_right.size())) {
          throw std::logic_error("query resolution: color register " + std::to_string(l) + " is unset");
        }
        const auto& bands = up.band_right[static_cast<std::size_t>(c)];
        i = i < static_cast<Register>(bands.size()) ? bands[static_cast<std::size_t>(i)] : up.size - 1;
      }
      return std::min<Register>(i, plan->n - 1);
    };
    return ctx;
  }

  void push(LinearOp op) { steps_.push_back({std::move(op), false, {}}); }

  void push_query(LinearOp op, const LevelContext& ctx) {
    auto shared = std::make_shared<const LevelContext>(ctx);
    steps_.push_back({std::move(op), true, [shared](std::span<const Register> l) { return shared->query_index(l); }});
  }

  void emit(int k) {
    if (k == plan_->depth()) {
      emit_base();
      return;
    }
    const LevelPlan& lp = plan_->levels[static_cast<std::size_t>(k)];
    const LevelContext ctx = context(k);
    const int colors = lp.cover.colors;

    push(level_op(
        "split[" + std::to_string(k) + "]", ctx,
        [](const LevelContext& c, std::span<const Register> l) {
          return c.clear_from(l, c.level) && c.kind(l) == static_cast<Register>(Kind::Start);
        },
        [colors](const LevelContext& c, std::span<const Register> l) {
          LinearOp::Image out;
          const double amp = 1.0 / std::sqrt(static_cast<double>(colors));
          for (int col = 0; col < colors; ++col) {
            Registers r(l.begin(), l.end());
            r[static_cast<std::size_t>(c.level)] = col;
            out.emplace_back(std::move(r), Complex{amp});
          }
          return out;
        }));

    emit(k + 1);

    push(level_op(
        "relabel[" + std::to_string(k) + "]", ctx,
        [](const LevelContext& c, std::span<const Register> l) {
          const Register col = l[static_cast<std::size_t>(c.level)];
          return col >= 0 && col < static_cast<Register>(c.vertex_sets->size()) && c.clear_from(l, c.level + 1) &&
                 c.kind(l) == static_cast<Register>(Kind::Leaf);
        },
        [](const LevelContext& c, std::span<const Register> l) {
          const Register col = l[static_cast<std::size_t>(c.level)];
          const Register j = c.id(l);
          const auto& vs = (*c.vertex_sets)[static_cast<std::size_t>(col)];
          Registers r(l.begin(), l.end());
          r[static_cast<std::size_t>(c.level)] = -1;
          if (j < static_cast<Register>(vs.size())) {
            r[c.layout.kind()] = static_cast<Register>(Kind::Vertex);
            r[c.layout.id()] = vs[static_cast<std::size_t>(j)];
            r[c.layout.aux()] = col;
          } else {
            r[c.layout.kind()] = static_cast<Register>(Kind::SpareLeaf);
            r[c.layout.id()] = col;
            r[c.layout.aux()] = j;
          }
          return LinearOp::Image{{std::move(r), Complex{1.0}}};
        }));

    push(make_u1_inverse(ctx));
    push_query(make_oracle_prime(ctx, x_), ctx);
    push(make_u2(ctx));
  }

  void emit_base() {
    const int k = plan_->depth();
    const LevelContext ctx = context(k);
    const int root = ctx.tree->root();
    push(level_op(
        "enter-base", ctx,
        [](const LevelContext& c, std::span<const Register> l) {
          return c.clear_from(l, c.level) && c.kind(l) == static_cast<Register>(Kind::Start);
        },
        [root](const LevelContext& c, std::span<const Register> l) {
          return LinearOp::Image{{c.relabeled(l, Kind::Vertex, root, -1), Complex{1.0}}};
        }));
    const OrderedOracle x = x_;
    for (int round = 0; round < ctx.tree->height(); ++round) {
      push_query(level_op(
                     "bisect-query", ctx,
                     [](const LevelContext& c, std::span<const Register> l) {
                       if (!c.clear_from(l, c.level)) return false;
                       if (c.kind(l) == static_cast<Register>(Kind::Leaf)) return true;
                       return c.kind(l) == static_cast<Register>(Kind::Vertex) && c.aux(l) == -1 && c.internal(c.id(l));
                     },
                     [x](const LevelContext& c, std::span<const Register> l) {
                       if (c.kind(l) == static_cast<Register>(Kind::Leaf)) {
                         return LinearOp::Image{{Registers(l.begin(), l.end()), Complex{1.0}}};
                       }
                       const int bit = x.bit(c.query_index(l));
                       return LinearOp::Image{{c.relabeled(l, Kind::Vertex, c.id(l), bit), Complex{1.0}}};
                     }),
                 ctx);
      push(level_op(
          "bisect-descend", ctx,
          [](const LevelContext& c, std::span<const Register> l) {
            if (!c.clear_from(l, c.level)) return false;
            if (c.kind(l) == static_cast<Register>(Kind::Leaf)) return true;
            return c.kind(l) == static_cast<Register>(Kind::Vertex) && (c.aux(l) == 0 || c.aux(l) == 1) &&
                   c.internal(c.id(l));
          },
          [](const LevelContext& c, std::span<const Register> l) {
            if (c.kind(l) == static_cast<Register>(Kind::Leaf)) {
              return LinearOp::Image{{Registers(l.begin(), l.end()), Complex{1.0}}};
            }
            const TreeNode& node = c.tree->node(static_cast<int>(c.id(l)));
            const int child = c.aux(l) == 1 ? node.left : node.right;
            if (c.tree->is_leaf(child)) {
              return LinearOp::Image{{c.relabeled(l, Kind::Leaf, c.tree->node(child).leaf, -1), Complex{1.0}}};
            }
            return LinearOp::Image{{c.relabeled(l, Kind::Vertex, child, -1), Complex{1.0}}};
          }));
    }
  }

  std::shared_ptr<const SearchPlan> plan_;
  OrderedOracle x_;
  LabelLayout layout_;
  std::vector<Step> steps_;
};

std::string hex(std::uint64_t h) {
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

}  // namespace

std::shared_ptr<const SearchPlan> search_plan(int n) {
  if (n < 1) throw std::invalid_argument("search plan needs N >= 1");
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const SearchPlan>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = build_plan(n, nullptr);
  return slot;
}

std::shared_ptr<const SearchPlan> search_plan_with_cover(int n, const PebbledTree& top) {
  if (n < 1) throw std::invalid_argument("search plan needs N >= 1");
  return build_plan(n, &top);
}

SearchResult run_search(const OrderedOracle& x, const RunOptions& options) {
  return run_search(*search_plan(x.n()), x, options);
}

SearchResult run_search(const SearchPlan& plan, const OrderedOracle& x, const RunOptions& options) {
  if (x.n() != plan.n) throw std::invalid_argument("run_search: oracle length differs from plan");
  // The builder shares ownership of the plan; a non-owning alias is enough here.
  std::shared_ptr<const SearchPlan> alias(std::shared_ptr<const SearchPlan>{}, &plan);
  const std::vector<Step> program = ProgramBuilder(alias, x).build();
  const LabelLayout layout = plan.layout();

  SearchResult result;
  PureState state = make_basis_state(layout.schema(), layout.make(Kind::Start, 0));
  if (options.snapshots) result.snapshots.push_back(state);
  for (std::size_t step = 0; step < program.size(); ++step) {
    const Step& s = program[step];
    if (s.query && options.snapshots) {
      result.pre_query.push_back(state);
      result.query_maps.push_back(s.query_index);
    }
    state = apply_op(s.op, state);
    if (s.query) {
      ++result.queries;
      if (options.snapshots) result.snapshots.push_back(state);
    }
    if (options.trace) {
      nlohmann::json line{{"v", 1},       {"step", step},  {"op", s.op.name()},      {"query", s.query},
                          {"queries", result.queries}, {"covering", hex(plan.hash)}, {"state", state_to_json(state)}};
      result.trace.push_back(line.dump());
    }
  }

  for (const auto& [label, amp] : state.terms()) {
    bool clean = label[layout.kind()] == static_cast<Register>(Kind::Leaf);
    for (int j = 0; j < layout.depth && clean; ++j) clean = label[static_cast<std::size_t>(j)] == -1;
    result.distribution.distribution[clean ? label[layout.id()] : -1] += std::norm(amp);
  }
  double best = -1.0;
  for (const auto& [outcome, p] : result.distribution.distribution) {
    if (outcome >= 0 && p > best) {
      best = p;
      result.index = static_cast<int>(outcome);
    }
  }
  result.probability = std::max(best, 0.0);
  result.final_state = std::move(state);
  if (result.probability < 1.0 - kCheckTolerance) {
    std::ostringstream msg;
    msg << "measurement not concentrated for n=" << plan.n << ", f=" << x.f() << ":";
    for (const auto& [outcome, p] : result.distribution.distribution) msg << ' ' << outcome << ':' << p;
    throw ExactnessError(msg.str());
  }
  return result;
}

}  // namespace qlab
