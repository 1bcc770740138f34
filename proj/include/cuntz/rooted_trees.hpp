#ifndef CUNTZ_ROOTED_TREES_HPP
#define CUNTZ_ROOTED_TREES_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cuntz {

/// A rooted tree on vertices 0..N-1 as a functional graph: parent[v] is the
/// image of v, and the root is the unique vertex with parent[root] == root.
using ParentArray = std::vector<std::uint32_t>;

/// The root when the functional graph is a rooted tree (unique fixed point
/// reached from every vertex), nullopt otherwise.
inline std::optional<std::uint32_t> tree_root(const ParentArray& f) {
  const std::size_t n = f.size();
  std::optional<std::uint32_t> root;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (f[v] == v) {
      if (root) return std::nullopt;
      root = v;
    }
  }
  if (!root) return std::nullopt;
  // 0 = unknown, 1 = on current path, 2 = reaches the root
  std::vector<char> state(n, 0);
  state[*root] = 2;
  std::vector<std::uint32_t> path;
  for (std::uint32_t v = 0; v < n; ++v) {
    std::uint32_t x = v;
    path.clear();
    while (state[x] == 0) {
      state[x] = 1;
      path.push_back(x);
      x = f[x];
    }
    if (state[x] == 1) return std::nullopt;
    for (auto p : path) state[p] = 2;
  }
  return root;
}

inline std::vector<std::vector<std::uint32_t>> children_of(const ParentArray& f) {
  std::vector<std::vector<std::uint32_t>> kids(f.size());
  for (std::uint32_t v = 0; v < f.size(); ++v)
    if (f[v] != v) kids[f[v]].push_back(v);
  return kids;
}

/// AHU-style code of every subtree: "(" + sorted child codes + ")".
inline std::vector<std::string> subtree_codes(const ParentArray& f, std::uint32_t root) {
  const auto kids = children_of(f);
  std::vector<std::string> code(f.size());
  std::vector<std::uint32_t> order{root};
  for (std::size_t i = 0; i < order.size(); ++i)
    for (auto c : kids[order[i]]) order.push_back(c);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::vector<std::string> parts;
    for (auto c : kids[*it]) parts.push_back(code[c]);
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (auto& p : parts) s += p;
    s += ")";
    code[*it] = std::move(s);
  }
  return code;
}

/// Canonical unlabeled shape of a rooted tree.
inline std::string tree_shape(const ParentArray& f) {
  auto root = tree_root(f);
  if (!root) throw std::invalid_argument("functional graph is not a rooted tree");
  return subtree_codes(f, *root)[*root];
}

inline int shape_size(const std::string& code) { return static_cast<int>(std::count(code.begin(), code.end(), '(')); }

/// Vertices without children other than themselves.
inline int shape_leaves(const std::string& code) {
  int leaves = 0;
  for (std::size_t i = 0; i + 1 < code.size(); ++i)
    if (code[i] == '(' && code[i + 1] == ')') ++leaves;
  return leaves;
}

/// Edges on the longest path from a vertex down to the root.
inline int shape_height(const std::string& code) {
  int depth = 0, best = 0;
  for (char c : code) {
    if (c == '(') best = std::max(best, depth++);
    else --depth;
  }
  return best;
}

/// Labeled representative of a shape: vertices numbered in preorder, root 0.
inline ParentArray tree_from_shape(const std::string& code) {
  ParentArray parent;
  std::vector<std::uint32_t> stack;
  for (char c : code) {
    if (c == '(') {
      const auto v = static_cast<std::uint32_t>(parent.size());
      parent.push_back(stack.empty() ? v : stack.back());
      stack.push_back(v);
    } else if (c == ')') {
      if (stack.empty()) throw std::invalid_argument("unbalanced tree code");
      stack.pop_back();
    } else {
      throw std::invalid_argument("bad tree code");
    }
  }
  if (!stack.empty() || parent.empty()) throw std::invalid_argument("unbalanced tree code");
  return parent;
}

namespace detail {

struct ShapeTable {
  int max_children;
  std::map<int, std::vector<std::string>> by_size;  // subtrees whose root has <= max_children children

  const std::vector<std::string>& of_size(int s) {
    auto it = by_size.find(s);
    if (it != by_size.end()) return it->second;
    std::vector<std::string> out;
    forests(s - 1, max_children, "", [&](const std::vector<std::string>& parts) { out.push_back(join(parts)); });
    std::sort(out.begin(), out.end());
    return by_size.emplace(s, std::move(out)).first->second;
  }

  static std::string join(std::vector<std::string> parts) {
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (auto& p : parts) s += p;
    return s + ")";
  }

  // Multisets of subtrees with total size `total`, at most `slots` parts, in
  // non-decreasing (size, code) order starting after `floor`.
  template <class Emit>
  void forests(int total, int slots, const std::string& floor, Emit&& emit) {
    std::vector<std::string> acc;
    rec(total, slots, 1, floor, acc, emit);
  }

  template <class Emit>
  void rec(int total, int slots, int min_size, const std::string& floor, std::vector<std::string>& acc, Emit& emit) {
    if (total == 0) {
      emit(acc);
      return;
    }
    if (slots == 0) return;
    for (int s = min_size; s <= total; ++s) {
      const auto candidates = of_size(s);
      for (const auto& c : candidates) {
        if (s == min_size && c < floor) continue;
        acc.push_back(c);
        rec(total - s, slots - 1, s, c, acc, emit);
        acc.pop_back();
      }
    }
  }
};

}  // namespace detail

/// All unlabeled rooted trees on `size` vertices in which every vertex has
/// at most `max_children` children and the root at most `root_children`.
inline std::vector<std::string> enumerate_shapes(int size, int max_children, int root_children) {
  if (size < 1) throw std::invalid_argument("tree size must be >= 1");
  detail::ShapeTable table{max_children, {}};
  std::vector<std::string> out;
  table.forests(size - 1, root_children, "", [&](const std::vector<std::string>& parts) {
    out.push_back(detail::ShapeTable::join(parts));
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Shapes a reduced map f_i of an element of P_n^k can take: trees on n^{k-1}
/// vertices with in-degree at most n, the root's own loop counting once.
inline std::vector<std::string> feasible_shapes(int n, int vertices) { return enumerate_shapes(vertices, n, n - 1); }

/// Every automorphism of a labeled rooted tree, as vertex permutations g
/// with g(parent(v)) = parent(g(v)).
inline std::vector<std::vector<std::uint32_t>> tree_automorphisms(const ParentArray& f) {
  auto root = tree_root(f);
  if (!root) throw std::invalid_argument("functional graph is not a rooted tree");
  const auto kids = children_of(f);
  const auto code = subtree_codes(f, *root);

  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> g(f.size(), 0);
  // pending: vertex pairs (v, image) whose children still need matching
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pending{{*root, *root}};
  g[*root] = *root;

  auto rec = [&](auto&& self, std::size_t idx) -> void {
    if (idx == pending.size()) {
      out.push_back(g);
      return;
    }
    const auto [v, w] = pending[idx];
    const auto& a = kids[v];
    const auto& b = kids[w];
    std::vector<char> used(b.size(), 0);
    const std::size_t mark = pending.size();
    auto match = [&](auto&& me, std::size_t i) -> void {
      if (i == a.size()) {
        self(self, idx + 1);
        return;
      }
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (used[j] || code[a[i]] != code[b[j]]) continue;
        used[j] = 1;
        g[a[i]] = b[j];
        pending.emplace_back(a[i], b[j]);
        me(me, i + 1);
        pending.pop_back();
        used[j] = 0;
      }
    };
    match(match, 0);
    pending.resize(mark);
  };
  rec(rec, 0);
  return out;
}

}  // namespace cuntz

#endif  // CUNTZ_ROOTED_TREES_HPP
