#include "qlab/covering.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

namespace qlab {

namespace {
__extension__ typedef __int128 Wide;
}  // namespace

std::int64_t n_prime_floor(std::int64_t n) {
  if (n < 1 || n >= (std::int64_t{1} << 42)) throw std::out_of_range("n_prime_floor: n out of range");
  const std::int64_t q = n / 3;
  const int r = static_cast<int>(n % 3);
  const int l = static_cast<int>(std::bit_width(static_cast<std::uint64_t>(n))) - 1;
  // floor(r/3 + frac(log2 n)) is 1 iff n^3 >= 2^(3l + 3 - r).
  const Wide cube = static_cast<Wide>(n) * n * n;
  const Wide threshold = static_cast<Wide>(1) << (3 * l + 3 - r);
  return q + l + (cube >= threshold ? 1 : 0);
}

int s_param(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("s_param needs n >= 2");
  return (static_cast<int>(std::bit_width(static_cast<std::uint64_t>(n / 2))) - 1) / 2;
}

CoveringParams covering_params(int n) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("covering parameters need an even N >= 2 (got " + std::to_string(n) + ")");
  }
  return {n, s_param(n), static_cast<int>(n_prime_floor(n))};
}

std::int64_t block_cost(int s, int k) {
  if (k < 0 || k > s) throw std::invalid_argument("block_cost needs 0 <= k <= s");
  return (std::int64_t{1} << (s - k)) * (2 * (std::int64_t{1} << (2 * k)) + 1) / 3;
}

std::vector<int> block_decomposition(int n) {
  const CoveringParams params = covering_params(n);
  const int s = params.s;
  const int colors = params.colors();
  const int units = n / 2;
  constexpr std::int32_t kNone = -1;
  const auto idx = [colors](int x, int r) {
    return static_cast<std::size_t>(x) * static_cast<std::size_t>(colors) + static_cast<std::size_t>(r);
  };
  const std::size_t cells = static_cast<std::size_t>(units + 1) * static_cast<std::size_t>(colors);
  std::vector<std::int32_t> cost(cells, kNone);
  std::vector<std::int32_t> blocks(cells, 0);
  std::vector<std::int8_t> last(cells, -1);
  cost[idx(0, 0)] = 0;
  for (int x = 1; x <= units; ++x) {
    for (int k = 0; k <= s && (1 << k) <= x; ++k) {
      const auto c = static_cast<std::int32_t>(block_cost(s, k));
      for (int r = 0; r < colors; ++r) {
        const std::size_t from = idx(x - (1 << k), r);
        if (cost[from] == kNone) continue;
        const std::size_t to = idx(x, (r + c) % colors);
        const std::int32_t cand = cost[from] + c;
        const std::int32_t cand_blocks = blocks[from] + 1;
        if (cost[to] == kNone || cand < cost[to] || (cand == cost[to] && cand_blocks < blocks[to])) {
          cost[to] = cand;
          blocks[to] = cand_blocks;
          last[to] = static_cast<std::int8_t>(k);
        }
      }
    }
  }
  if (cost[idx(units, 0)] == kNone) {
    throw CoveringError("no block decomposition of " + std::to_string(n) + " leaves");
  }
  std::vector<int> heights;
  int x = units;
  int r = 0;
  while (x > 0) {
    const int k = last[idx(x, r)];
    heights.push_back(k + 1);
    x -= 1 << k;
    r = static_cast<int>(((r - block_cost(s, k)) % colors + colors) % colors);
  }
  std::sort(heights.begin(), heights.end(), std::greater<>());
  return heights;
}

FullBinaryTree build_tree(int n) {
  if (n < 2) throw std::invalid_argument("build_tree needs N >= 2");
  if (n % 2 != 0) return balanced_tree(n);
  return join_complete_blocks(block_decomposition(n));
}

CoveringReport validate_covering(const PebbledTree& pt) {
  CoveringReport rep;
  const FullBinaryTree& tree = pt.tree;
  const auto fail = [&rep](const std::string& what) {
    if (rep.violation.empty()) rep.violation = what;
  };
  if (pt.colors < 1 || pt.pebbles.size() != static_cast<std::size_t>(tree.size())) {
    fail("malformed covering: pebble table does not match the tree");
    return rep;
  }
  rep.well_formed = true;
  rep.per_color.assign(static_cast<std::size_t>(pt.colors), 0);
  for (int v = 0; v < tree.size(); ++v) {
    const auto& cols = pt.pebbles[static_cast<std::size_t>(v)];
    if (tree.is_leaf(v) && !cols.empty()) {
      rep.well_formed = false;
      fail("malformed covering: leaf node " + std::to_string(v) + " holds pebbles");
    }
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j] < 0 || cols[j] >= pt.colors || (j > 0 && cols[j] <= cols[j - 1])) {
        rep.well_formed = false;
        fail("malformed covering: node " + std::to_string(v) + " has an invalid color list");
        continue;
      }
      ++rep.per_color[static_cast<std::size_t>(cols[j])];
    }
  }
  if (!rep.well_formed) return rep;
  rep.max_per_color = *std::max_element(rep.per_color.begin(), rep.per_color.end());

  rep.cond_a = true;
  rep.cond_b = true;
  rep.tight = true;
  bool sums_agree = true;
  for (int label = 0; label < tree.n_leaves(); ++label) {
    std::vector<int> seen(static_cast<std::size_t>(pt.colors), 0);
    int total = 0;
    for (int v : tree.path_to_leaf(label)) {
      for (int c : pt.pebbles[static_cast<std::size_t>(v)]) ++seen[static_cast<std::size_t>(c)];
      total += pt.count(v);
    }
    for (int c = 0; c < pt.colors; ++c) {
      if (seen[static_cast<std::size_t>(c)] != 1 && rep.cond_a) {
        rep.cond_a = false;
        fail("condition (A) fails: path to leaf " + std::to_string(label) + " carries " +
             std::to_string(seen[static_cast<std::size_t>(c)]) + " pebbles of color " + std::to_string(c));
      }
    }
    if (label == 0) {
      rep.path_sum = total;
    } else if (total != rep.path_sum) {
      sums_agree = false;
    }
  }
  if (!sums_agree) rep.path_sum = -1;

  for (int v : tree.internal_nodes()) {
    int above = 0;
    for (int u = tree.node(v).parent; u >= 0; u = tree.node(u).parent) above += pt.count(u);
    if (pt.count(v) < above && rep.cond_b) {
      rep.cond_b = false;
      fail("condition (B) fails at node " + std::to_string(v) + ": " + std::to_string(pt.count(v)) +
           " < " + std::to_string(above));
    }
    if (pt.count(v) != above && above != 0 && rep.tight) {
      rep.tight = false;
      fail("tightness fails at node " + std::to_string(v) + ": " + std::to_string(pt.count(v)) +
           " pebbles, " + std::to_string(above) + " above");
    }
  }
  rep.fair = std::adjacent_find(rep.per_color.begin(), rep.per_color.end(),
                                std::not_equal_to<>()) == rep.per_color.end();
  if (!rep.fair) {
    std::ostringstream msg;
    msg << "fairness fails: per-color counts";
    for (int c : rep.per_color) msg << ' ' << c;
    fail(msg.str());
  }
  return rep;
}

namespace {

// A color assignment for the internal vertices of one complete block, in
// preorder, together with its per-color pebble counts.
struct Recipe {
  std::vector<int> counts;
  std::vector<std::vector<int>> vertex_colors;
};

class RecipeBook {
 public:
  RecipeBook(int s, int k, std::size_t cap) : s_(s), k_(k), colors_(1 << s), cap_(cap) {}

  const std::vector<Recipe>& all() {
    std::vector<int> avail(static_cast<std::size_t>(colors_));
    std::iota(avail.begin(), avail.end(), 0);
    return build(0, avail);
  }

 private:
  int pebbles_at(int t) const { return t == 0 ? 1 << (s_ - k_) : 1 << (s_ - k_ + t - 1); }

  const std::vector<Recipe>& build(int t, const std::vector<int>& avail) {
    auto key = std::make_pair(t, avail);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Recipe> out;
    std::set<std::vector<int>> seen;
    const int p = pebbles_at(t);
    const int m = static_cast<int>(avail.size());
    std::size_t budget = 64 * cap_;
    if (p <= m) {
      // Lexicographic p-combinations of avail.
      std::vector<int> pick(static_cast<std::size_t>(p));
      std::iota(pick.begin(), pick.end(), 0);
      while (out.size() < cap_ && budget > 0) {
        std::vector<int> here;
        std::vector<int> rest;
        std::size_t j = 0;
        for (int q = 0; q < m; ++q) {
          if (j < pick.size() && pick[j] == q) {
            here.push_back(avail[static_cast<std::size_t>(q)]);
            ++j;
          } else {
            rest.push_back(avail[static_cast<std::size_t>(q)]);
          }
        }
        std::vector<int> base(static_cast<std::size_t>(colors_), 0);
        for (int c : here) base[static_cast<std::size_t>(c)] = 1;
        if (t == k_) {
          if (rest.empty() && seen.insert(base).second) out.push_back({base, {here}});
          --budget;
        } else {
          const std::vector<Recipe>& subs = build(t + 1, rest);
          for (std::size_t a = 0; a < subs.size() && out.size() < cap_ && budget > 0; ++a) {
            for (std::size_t b = 0; b < subs.size() && out.size() < cap_ && budget > 0; ++b, --budget) {
              std::vector<int> counts = base;
              for (int c = 0; c < colors_; ++c) {
                counts[static_cast<std::size_t>(c)] += subs[a].counts[static_cast<std::size_t>(c)] +
                                                       subs[b].counts[static_cast<std::size_t>(c)];
              }
              if (!seen.insert(counts).second) continue;
              Recipe r{std::move(counts), {here}};
              r.vertex_colors.insert(r.vertex_colors.end(), subs[a].vertex_colors.begin(), subs[a].vertex_colors.end());
              r.vertex_colors.insert(r.vertex_colors.end(), subs[b].vertex_colors.begin(), subs[b].vertex_colors.end());
              out.push_back(std::move(r));
            }
          }
        }
        // Advance to the next combination.
        int i = p - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == m - p + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int q = i + 1; q < p; ++q) pick[static_cast<std::size_t>(q)] = pick[static_cast<std::size_t>(q - 1)] + 1;
      }
    }
    return memo_.emplace(std::move(key), std::move(out)).first->second;
  }

  int s_;
  int k_;
  int colors_;
  std::size_t cap_;
  std::map<std::pair<int, std::vector<int>>, std::vector<Recipe>> memo_;
};

struct Block {
  int root = 0;
  int k = 0;
};

// Least-cost block cover of the tree with total cost divisible by the color
// count, by dynamic programming over residues.
std::vector<Block> choose_blocks(const FullBinaryTree& tree, int s) {
  const int colors = 1 << s;
  struct Entry {
    std::int64_t cost = 0;
    std::int64_t blocks = 0;
    int k = -1;        // >= 0: node is a block root of height k+1
    int left_res = 0;  // split: residue taken from the left child
  };
  std::vector<std::map<int, Entry>> table(static_cast<std::size_t>(tree.size()));
  const auto better = [](const Entry& a, const Entry& b) {
    return a.cost < b.cost || (a.cost == b.cost && a.blocks < b.blocks);
  };
  for (int u = tree.size() - 1; u >= 0; --u) {
    if (tree.is_leaf(u)) continue;
    auto& here = table[static_cast<std::size_t>(u)];
    int h = 0;
    if (tree.complete_subtree(u, &h) && h >= 1 && h <= s + 1) {
      const Entry e{block_cost(s, h - 1), 1, h - 1, 0};
      here[static_cast<int>(e.cost % colors)] = e;
    }
    const auto& l = table[static_cast<std::size_t>(tree.node(u).left)];
    const auto& r = table[static_cast<std::size_t>(tree.node(u).right)];
    for (const auto& [rl, el] : l) {
      for (const auto& [rr, er] : r) {
        const Entry e{el.cost + er.cost, el.blocks + er.blocks, -1, rl};
        const int res = (rl + rr) % colors;
        auto it = here.find(res);
        if (it == here.end() || better(e, it->second)) here[res] = e;
      }
    }
  }
  if (!table[0].contains(0)) {
    throw CoveringError("no tight block cover with a pebble total divisible by " + std::to_string(colors));
  }
  std::vector<Block> out;
  std::vector<std::pair<int, int>> stack{{0, 0}};
  while (!stack.empty()) {
    const auto [u, res] = stack.back();
    stack.pop_back();
    const Entry& e = table[static_cast<std::size_t>(u)].at(res);
    if (e.k >= 0) {
      out.push_back({u, e.k});
      continue;
    }
    const int rr = ((res - e.left_res) % colors + colors) % colors;
    stack.push_back({tree.node(u).right, rr});
    stack.push_back({tree.node(u).left, e.left_res});
  }
  return out;  // left to right
}

// Assigns a recipe to each block so that all colors receive the same total.
class FairnessSearch {
 public:
  FairnessSearch(int colors, std::int64_t target, std::int64_t node_cap)
      : colors_(colors), target_(target), node_cap_(node_cap) {}

  // blocks[i] -> candidate recipes; returns chosen indices or empty on failure.
  std::optional<std::vector<std::size_t>> run(const std::vector<const std::vector<Recipe>*>& options,
                                              std::vector<std::int64_t> start) {
    options_ = &options;
    failed_.clear();
    nodes_ = 0;
    choice_.assign(options.size(), 0);
    if (dfs(0, start)) return choice_;
    return std::nullopt;
  }

  bool exhausted() const { return nodes_ > node_cap_; }

 private:
  bool dfs(std::size_t i, const std::vector<std::int64_t>& totals) {
    if (++nodes_ > node_cap_) return false;
    if (i == options_->size()) {
      return std::all_of(totals.begin(), totals.end(), [&](std::int64_t t) { return t == target_; });
    }
    std::vector<std::int64_t> key = totals;
    std::sort(key.begin(), key.end());
    if (failed_.contains({i, key})) return false;
    std::set<std::vector<std::int64_t>> tried;
    const auto& recipes = *(*options_)[i];
    for (std::size_t r = 0; r < recipes.size(); ++r) {
      std::vector<std::int64_t> next = totals;
      bool ok = true;
      for (int c = 0; c < colors_ && ok; ++c) {
        next[static_cast<std::size_t>(c)] += recipes[r].counts[static_cast<std::size_t>(c)];
        ok = next[static_cast<std::size_t>(c)] <= target_;
      }
      if (!ok || !tried.insert(next).second) continue;
      choice_[i] = r;
      if (dfs(i + 1, next)) return true;
      if (exhausted()) return false;
    }
    failed_.insert({i, std::move(key)});
    return false;
  }

  int colors_;
  std::int64_t target_;
  std::int64_t node_cap_;
  std::int64_t nodes_ = 0;
  const std::vector<const std::vector<Recipe>*>* options_ = nullptr;
  std::vector<std::size_t> choice_;
  std::set<std::pair<std::size_t, std::vector<std::int64_t>>> failed_;
};

std::vector<std::vector<int>> rotate_colors(const std::vector<std::vector<int>>& vertex_colors, int shift,
                                            int colors) {
  auto out = vertex_colors;
  for (auto& cols : out) {
    for (int& c : cols) c = (c + shift) % colors;
    std::sort(cols.begin(), cols.end());
  }
  return out;
}

}  // namespace

PebbledTree construct_covering(const FullBinaryTree& tree, const CoveringParams& params,
                               const CoveringLimits& limits) {
  if (tree.n_leaves() != params.n) {
    throw CoveringError("tree has " + std::to_string(tree.n_leaves()) + " leaves, parameters are for " +
                        std::to_string(params.n));
  }
  const int s = params.s;
  const int colors = params.colors();
  const std::vector<Block> blocks = choose_blocks(tree, s);

  std::int64_t total = 0;
  for (const Block& b : blocks) total += block_cost(s, b.k);
  const std::int64_t target = total / colors;
  if (target > params.n_prime) {
    throw CoveringError("budget fails: least block cover needs " + std::to_string(target) +
                        " pebbles per color, N' = " + std::to_string(params.n_prime));
  }

  std::map<int, RecipeBook> books;
  std::map<int, const std::vector<Recipe>*> recipes;
  for (const Block& b : blocks) {
    if (!recipes.contains(b.k)) {
      auto& book = books.try_emplace(b.k, s, b.k, limits.recipes_per_block).first->second;
      recipes[b.k] = &book.all();
      if (recipes[b.k]->empty()) throw CoveringError("no tight coloring of a height " + std::to_string(b.k + 1) + " block");
    }
  }

  // Per block: recipe index and color shift.
  std::vector<std::pair<std::size_t, int>> assignment(blocks.size(), {0, 0});
  FairnessSearch search(colors, target, limits.search_nodes);
  bool solved = false;
  {
    // Full rounds of C equal blocks take every rotation of the first recipe,
    // which gives each color the block cost; the remainder is searched.
    std::map<int, std::vector<std::size_t>> by_k;
    for (std::size_t i = 0; i < blocks.size(); ++i) by_k[blocks[i].k].push_back(i);
    std::vector<std::int64_t> start(static_cast<std::size_t>(colors), 0);
    std::vector<std::size_t> residual;
    for (auto it = by_k.rbegin(); it != by_k.rend(); ++it) {
      const auto& ids = it->second;
      const std::size_t full = ids.size() / static_cast<std::size_t>(colors) * static_cast<std::size_t>(colors);
      for (std::size_t j = 0; j < ids.size(); ++j) {
        if (j < full) {
          assignment[ids[j]] = {0, static_cast<int>(j % static_cast<std::size_t>(colors))};
        } else {
          residual.push_back(ids[j]);
        }
      }
      for (auto& t : start) t += static_cast<std::int64_t>(full / static_cast<std::size_t>(colors)) * block_cost(s, it->first);
    }
    std::vector<const std::vector<Recipe>*> options;
    for (std::size_t i : residual) options.push_back(recipes[blocks[i].k]);
    if (auto found = search.run(options, start)) {
      for (std::size_t j = 0; j < residual.size(); ++j) assignment[residual[j]] = {(*found)[j], 0};
      solved = true;
    }
  }
  if (!solved) {
    std::vector<std::size_t> order(blocks.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return blocks[a].k > blocks[b].k; });
    std::vector<const std::vector<Recipe>*> options;
    for (std::size_t i : order) options.push_back(recipes[blocks[i].k]);
    if (auto found = search.run(options, std::vector<std::int64_t>(static_cast<std::size_t>(colors), 0))) {
      for (std::size_t j = 0; j < order.size(); ++j) assignment[order[j]] = {(*found)[j], 0};
      solved = true;
    }
  }
  if (!solved) {
    throw CoveringError(std::string("fairness fails: no balanced block coloring found") +
                        (search.exhausted() ? " within the search limit" : ""));
  }

  PebbledTree pt{tree, colors, std::vector<std::vector<int>>(static_cast<std::size_t>(tree.size()))};
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Block& b = blocks[i];
    const Recipe& recipe = (*recipes[b.k])[assignment[i].first];
    const auto cols = rotate_colors(recipe.vertex_colors, assignment[i].second, colors);
    const auto [first, last] = tree.leaf_range(b.root);
    std::size_t j = 0;
    const int end = b.root + 2 * (last - first + 1) - 1;  // preorder id range of the subtree
    for (int v = b.root; v < end; ++v) {
      if (tree.is_leaf(v)) continue;
      pt.pebbles[static_cast<std::size_t>(v)] = cols.at(j++);
    }
  }

  const CoveringReport rep = validate_covering(pt);
  if (!rep.all()) throw CoveringError(rep.violation);
  if (rep.max_per_color > params.n_prime) {
    throw CoveringError("budget fails: " + std::to_string(rep.max_per_color) + " pebbles per color, N' = " +
                        std::to_string(params.n_prime));
  }
  return pt;
}

int brute_force_min_pebbles(const FullBinaryTree& tree, int colors, std::int64_t cap) {
  if (colors < 1) throw std::invalid_argument("brute force needs at least one color");
  const std::vector<int> internal = tree.internal_nodes();
  if (internal.size() > 64) throw SearchCapError("brute force supports at most 64 internal nodes");
  std::vector<int> bit(static_cast<std::size_t>(tree.size()), -1);
  for (std::size_t j = 0; j < internal.size(); ++j) bit[static_cast<std::size_t>(internal[j])] = static_cast<int>(j);

  // Cuts: sets of internal nodes meeting every root-leaf path exactly once.
  std::vector<std::vector<std::uint64_t>> cuts(static_cast<std::size_t>(tree.size()));
  for (int u = tree.size() - 1; u >= 0; --u) {
    if (tree.is_leaf(u)) continue;
    auto& here = cuts[static_cast<std::size_t>(u)];
    here.push_back(std::uint64_t{1} << bit[static_cast<std::size_t>(u)]);
    const auto& l = cuts[static_cast<std::size_t>(tree.node(u).left)];
    const auto& r = cuts[static_cast<std::size_t>(tree.node(u).right)];
    if (l.size() * r.size() > static_cast<std::size_t>(cap)) throw SearchCapError("too many cuts");
    for (auto a : l)
      for (auto b : r) here.push_back(a | b);
  }
  std::vector<std::uint64_t> all = cuts[0];
  std::sort(all.begin(), all.end(), [](auto a, auto b) {
    return std::popcount(a) < std::popcount(b) || (std::popcount(a) == std::popcount(b) && a < b);
  });

  // Multisets of size `colors` drawn from the cuts.
  double combos = 1.0;
  for (int j = 0; j < colors; ++j) combos = combos * static_cast<double>(all.size() + static_cast<std::size_t>(j)) / (j + 1);
  if (combos > static_cast<double>(cap)) {
    throw SearchCapError("brute force would examine about " + std::to_string(static_cast<std::int64_t>(combos)) +
                         " color assignments (cap " + std::to_string(cap) + ")");
  }

  std::vector<std::uint64_t> ancestors(internal.size(), 0);
  for (std::size_t j = 0; j < internal.size(); ++j)
    for (int u = tree.node(internal[j]).parent; u >= 0; u = tree.node(u).parent)
      ancestors[j] |= std::uint64_t{1} << bit[static_cast<std::size_t>(u)];

  std::vector<int> p(internal.size(), 0);
  int best = -1;
  std::vector<std::size_t> chosen;
  const auto check_b = [&]() {
    for (std::size_t j = 0; j < internal.size(); ++j) {
      int above = 0;
      for (std::uint64_t m = ancestors[j]; m; m &= m - 1) above += p[static_cast<std::size_t>(std::countr_zero(m))];
      if (p[j] < above) return false;
    }
    return true;
  };
  std::function<void(std::size_t, int)> rec = [&](std::size_t from, int worst) {
    if (best >= 0 && worst >= best) return;
    if (static_cast<int>(chosen.size()) == colors) {
      if (check_b()) best = worst;
      return;
    }
    for (std::size_t c = from; c < all.size(); ++c) {
      for (std::uint64_t m = all[c]; m; m &= m - 1) ++p[static_cast<std::size_t>(std::countr_zero(m))];
      chosen.push_back(c);
      rec(c, std::max(worst, std::popcount(all[c])));
      chosen.pop_back();
      for (std::uint64_t m = all[c]; m; m &= m - 1) --p[static_cast<std::size_t>(std::countr_zero(m))];
    }
  };
  rec(0, 0);
  if (best < 0) throw CoveringError("no covering satisfies conditions (A) and (B)");
  return best;
}

std::vector<int> vertex_set(const PebbledTree& pt, int color) {
  std::vector<int> out;
  for (int v = 0; v < pt.tree.size(); ++v) {
    const auto& cols = pt.pebbles[static_cast<std::size_t>(v)];
    if (std::binary_search(cols.begin(), cols.end(), color)) out.push_back(v);
  }
  return out;
}

std::vector<int> path_to_leaf(const FullBinaryTree& tree, int leaf) { return tree.path_to_leaf(leaf); }

int locate_vc(const PebbledTree& pt, int color, const OrderedOracle& x) {
  if (x.n() != pt.tree.n_leaves()) throw std::invalid_argument("locate_vc: oracle length differs from tree");
  int found = -1;
  for (int v : pt.tree.path_to_leaf(x.f())) {
    const auto& cols = pt.pebbles[static_cast<std::size_t>(v)];
    if (!std::binary_search(cols.begin(), cols.end(), color)) continue;
    if (found >= 0) throw CoveringError("condition (A) fails: color " + std::to_string(color) + " twice on the path");
    found = v;
  }
  if (found < 0) throw CoveringError("condition (A) fails: color " + std::to_string(color) + " missing on the path");
  return found;
}

nlohmann::json certificate_to_json(const PebbledTree& pt, const CoveringParams& params) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const TreeNode& node : pt.tree.nodes()) {
    nlohmann::json j{{"id", node.id}, {"left", node.left}, {"right", node.right},
                     {"pebbles", pt.pebbles[static_cast<std::size_t>(node.id)]}};
    if (node.leaf >= 0) j["leaf"] = node.leaf;
    nodes.push_back(std::move(j));
  }
  return {{"v", 1}, {"n_leaves", params.n}, {"s", params.s}, {"n_prime", params.n_prime},
          {"colors", pt.colors}, {"nodes", std::move(nodes)}};
}

PebbledTree certificate_from_json(const nlohmann::json& j, CoveringParams* params) {
  const auto& nodes = j.at("nodes");
  std::vector<int> left(nodes.size(), -1);
  std::vector<int> right(nodes.size(), -1);
  std::vector<std::vector<int>> pebbles(nodes.size());
  for (const auto& node : nodes) {
    const int id = node.at("id").get<int>();
    if (id < 0 || static_cast<std::size_t>(id) >= nodes.size()) throw std::invalid_argument("certificate: node id out of range");
    left[static_cast<std::size_t>(id)] = node.at("left").get<int>();
    right[static_cast<std::size_t>(id)] = node.at("right").get<int>();
    pebbles[static_cast<std::size_t>(id)] = node.at("pebbles").get<std::vector<int>>();
  }
  PebbledTree pt{FullBinaryTree::from_children(left, right), j.at("colors").get<int>(), std::move(pebbles)};
  for (const TreeNode& node : pt.tree.nodes()) {
    if (node.left != left[static_cast<std::size_t>(node.id)] || node.right != right[static_cast<std::size_t>(node.id)]) {
      throw std::invalid_argument("certificate: node ids are not in preorder");
    }
  }
  if (params) {
    *params = {j.at("n_leaves").get<int>(), j.at("s").get<int>(), j.at("n_prime").get<int>()};
  }
  return pt;
}

std::uint64_t certificate_hash(const nlohmann::json& certificate) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : certificate.dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace qlab
