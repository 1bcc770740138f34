#ifndef CUNTZ_PERMDECIDE_HPP
#define CUNTZ_PERMDECIDE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "algebra.hpp"
#include "endocalc.hpp"
#include "rooted_trees.hpp"
#include "word_perm.hpp"

namespace cuntz {

/// A permutation sigma of W_n^k (0-based word indices). Its unitary is
/// u_sigma = sum_alpha S_alpha S_{sigma(alpha)}^*, so u_sigma S_{sigma(alpha)} = S_alpha
/// and the reduced maps f_i^sigma are exactly the duals of the a_j.
struct PermUnitary {
  int n = 2;
  int k = 0;
  std::vector<std::uint32_t> map{0};

  PermUnitary() = default;
  PermUnitary(int n_, int k_, std::vector<std::uint32_t> m) : n(n_), k(k_), map(std::move(m)) {
    WordPerm check(n, k, map);  // validates size and bijectivity
  }

  static PermUnitary identity(int n, int k) { return from_word_perm(WordPerm::identity(n, k)); }

  /// The inverse of a word-permutation table, i.e. sigma with action table w.
  static PermUnitary from_word_perm(const WordPerm& w) {
    const WordPerm inv = w.inverse();
    PermUnitary p;
    p.n = w.alphabet();
    p.k = w.level();
    p.map = inv.image();
    return p;
  }

  /// Action table of u_sigma on words: u S_beta = S_{sigma^{-1}(beta)}.
  WordPerm word_perm() const { return WordPerm::unchecked(n, k, WordPerm::unchecked(n, k, map).inverse().image()); }

  /// The same unitary viewed in P_n^level.
  PermUnitary lifted(int level) const { return from_word_perm(word_perm().lifted(level)); }

  std::size_t size() const { return map.size(); }
  std::uint32_t operator()(std::uint32_t a) const { return map[a]; }

  friend bool operator==(const PermUnitary& a, const PermUnitary& b) { return a.word_perm() == b.word_perm(); }
};

inline PermUnitary compose_perm(const PermUnitary& a, const PermUnitary& b) {
  return PermUnitary::from_word_perm(fusion(a.word_perm(), b.word_perm()));
}

inline AlgebraElement perm_unitary(const PermUnitary& sigma) { return sigma.word_perm().to_element(); }

inline nlohmann::json perm_to_json(const PermUnitary& p) {
  return {{"schema", 1}, {"n", p.n}, {"k", p.k}, {"map", p.map}};
}

inline PermUnitary perm_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("permutation JSON must be an object");
  if (j.value("schema", 1) != 1) throw std::invalid_argument("unsupported permutation schema version");
  const int n = j.at("n").get<int>();
  const int k = j.at("k").get<int>();
  check_alphabet(n);
  if (k < 0 || k > max_word_length(n)) throw std::invalid_argument("bad level k");
  auto m = j.at("map").get<std::vector<std::uint32_t>>();
  return PermUnitary(n, k, std::move(m));
}

// ---------------------------------------------------------------------------
// Reduced maps and the tree condition

struct ReducedMapFamily {
  int n = 2;
  int k = 1;
  std::vector<ParentArray> f;    // f[i-1] on W_n^{k-1}
  std::vector<int> balance;      // sum_i |f_i^{-1}(beta)|
};

/// f_i(alpha) = beta iff (i, alpha) = sigma(beta, m) for some letter m.
inline ReducedMapFamily reduced_maps(const PermUnitary& sigma) {
  if (sigma.k < 1) throw std::invalid_argument("reduced maps need k >= 1");
  const int n = sigma.n;
  const std::uint64_t states = ipow(n, sigma.k - 1);
  ReducedMapFamily fam{n, sigma.k, std::vector<ParentArray>(n, ParentArray(states)), std::vector<int>(states, 0)};
  for (std::uint64_t beta = 0; beta < states; ++beta) {
    for (int m = 0; m < n; ++m) {
      const std::uint32_t img = sigma(static_cast<std::uint32_t>(beta * n + m));
      fam.f[img / states][img % states] = static_cast<std::uint32_t>(beta);
    }
  }
  for (const auto& fi : fam.f)
    for (auto b : fi) ++fam.balance[b];
  for (int b : fam.balance)
    if (b != n) throw std::logic_error("reduced maps are unbalanced");
  return fam;
}

struct TreeInfo {
  bool is_tree = false;
  std::uint32_t root = 0;
  int height = 0;
  int leaf_count = 0;
  std::string shape;  // canonical code, empty when not a tree
};

struct TreeDiagnostic {
  std::vector<TreeInfo> trees;

  bool all_trees() const {
    for (const auto& t : trees)
      if (!t.is_tree) return false;
    return true;
  }
};

inline TreeInfo tree_info(const ParentArray& f) {
  TreeInfo t;
  auto root = tree_root(f);
  if (!root) return t;
  t.is_tree = true;
  t.root = *root;
  t.shape = subtree_codes(f, *root)[*root];
  t.height = shape_height(t.shape);
  t.leaf_count = shape_leaves(t.shape);
  return t;
}

inline TreeDiagnostic tree_check(const ReducedMapFamily& fam) {
  TreeDiagnostic d;
  for (const auto& fi : fam.f) d.trees.push_back(tree_info(fi));
  return d;
}

// ---------------------------------------------------------------------------
// Pair graphs

/// Acyclicity of the graph on unordered pairs {x, y}, x != y, with edges
/// {x, y} -> {g(x), g(y)} for every g in maps (pairs collapsing to a point
/// are absorbed). Acyclic iff every long enough composite of the maps is
/// constant; then `height` is the least such length. Entries equal to
/// kUndefined mark a partial map; edges touching them are skipped, so a cycle
/// found in a partial graph persists in every completion.
inline constexpr std::uint32_t kUndefined = 0xFFFFFFFFu;

struct PairGraphResult {
  bool acyclic = true;
  int height = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> cycle;
  std::vector<int> letters;  // map index taking cycle[i] to cycle[i + 1]
};

inline PairGraphResult pair_graph(const std::vector<ParentArray>& maps, std::size_t points) {
  PairGraphResult out;
  // state per ordered-normalized pair: 0 new, 1 on stack, 2 done
  std::vector<char> state(points * points, 0);
  std::vector<int> height(points * points, 0);
  struct Frame {
    std::uint32_t x, y;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (std::uint32_t x0 = 0; x0 < points && out.acyclic; ++x0) {
    for (std::uint32_t y0 = x0 + 1; y0 < points && out.acyclic; ++y0) {
      if (state[x0 * points + y0] != 0) continue;
      state[x0 * points + y0] = 1;
      stack.push_back({x0, y0, 0});
      while (!stack.empty() && out.acyclic) {
        Frame& fr = stack.back();
        const std::size_t id = fr.x * points + fr.y;
        if (fr.next == maps.size()) {
          state[id] = 2;
          int h = 0;
          for (const auto& g : maps) {
            std::uint32_t a = g[fr.x], b = g[fr.y];
            if (a == b || a == kUndefined || b == kUndefined) continue;
            if (a > b) std::swap(a, b);
            h = std::max(h, height[a * points + b]);
          }
          height[id] = h + 1;
          out.height = std::max(out.height, h + 1);
          stack.pop_back();
          continue;
        }
        const int letter = static_cast<int>(fr.next++);
        std::uint32_t a = maps[letter][fr.x], b = maps[letter][fr.y];
        if (a == b || a == kUndefined || b == kUndefined) continue;
        if (a > b) std::swap(a, b);
        const std::size_t nid = a * points + b;
        if (state[nid] == 1) {
          out.acyclic = false;
          std::size_t start = 0;
          while (stack[start].x != a || stack[start].y != b) ++start;
          for (std::size_t i = start; i < stack.size(); ++i) {
            out.cycle.emplace_back(stack[i].x, stack[i].y);
            out.letters.push_back(static_cast<int>(stack[i].next) - 1);
          }
        } else if (state[nid] == 0) {
          state[nid] = 1;
          stack.push_back({a, b, 0});
        }
      }
    }
  }
  if (!out.acyclic) out.height = 0;
  return out;
}

// ---------------------------------------------------------------------------
// Diagonal decision

/// The duals of a_j for u_sigma on D_n^{k-1} are the f_j, so lambda_sigma
/// restricts to an automorphism of D_n iff all long composites of the f_j are
/// constant. Decided on the pair graph; No carries a cycle of distinct pairs.
inline DiagonalVerdict decide_diagonal(const PermUnitary& sigma) {
  DiagonalVerdict v;
  if (sigma.k <= 1) {
    v.outcome = DiagonalVerdict::Outcome::Yes;
    v.m = 0;
    return v;
  }
  const auto fam = reduced_maps(sigma);
  v.level = sigma.k - 1;
  const auto pg = pair_graph(fam.f, fam.f[0].size());
  if (pg.acyclic) {
    v.outcome = DiagonalVerdict::Outcome::Yes;
    v.m = pg.height;
  } else {
    v.outcome = DiagonalVerdict::Outcome::No;
    v.pair_cycle = pg.cycle;
    for (int l : pg.letters) v.cycle_letters.push_back(l + 1);
  }
  return v;
}

/// Transition maps of the cylinder transducer of sigma: delta_c(beta) = alpha
/// where sigma(beta c) = a alpha.
inline std::vector<ParentArray> transition_maps(const PermUnitary& sigma) {
  const int n = sigma.n;
  const std::uint64_t states = ipow(n, sigma.k - 1);
  std::vector<ParentArray> d(n, ParentArray(states));
  for (std::uint64_t beta = 0; beta < states; ++beta)
    for (int c = 0; c < n; ++c) d[c][beta] = static_cast<std::uint32_t>(sigma(static_cast<std::uint32_t>(beta * n + c)) % states);
  return d;
}

// ---------------------------------------------------------------------------
// Automorphism decision

struct AutVerdict {
  enum class Outcome { Aut, NotAut, Undecided };
  enum class Reason { None, TreeFailed, DiagonalFailed, SyncFailed, StabilizationRefuted, Budget, Capacity };
  Outcome outcome = Outcome::Undecided;
  Reason reason = Reason::None;
  std::optional<PermUnitary> inverse;
  int h = 0;  // level of the inverse
  int m = 0;  // stabilization index
  std::string note;

  bool is_aut() const { return outcome == Outcome::Aut; }
};

inline const char* to_string(AutVerdict::Outcome o) {
  switch (o) {
    case AutVerdict::Outcome::Aut: return "aut";
    case AutVerdict::Outcome::NotAut: return "not-aut";
    default: return "undecided";
  }
}

inline const char* to_string(AutVerdict::Reason r) {
  switch (r) {
    case AutVerdict::Reason::TreeFailed: return "tree-failed";
    case AutVerdict::Reason::DiagonalFailed: return "diagonal-failed";
    case AutVerdict::Reason::SyncFailed: return "sync-failed";
    case AutVerdict::Reason::StabilizationRefuted: return "stabilization-refuted";
    case AutVerdict::Reason::Budget: return "budget";
    case AutVerdict::Reason::Capacity: return "capacity";
    default: return "none";
  }
}

struct AutOptions {
  int budget_m = 12;
  // Refute diagonal-passing sigma whose transition pair graph has a cycle:
  // then lambda_sigma does not map the core F_n onto itself.
  bool use_sync = true;
  std::uint64_t table_cap = kDefaultTableCap;
};

/// n^{2(k-1)} + k - 1: past this stabilization index a localized inverse
/// would already have appeared.
inline int theoretical_bound(int n, int k) {
  if (k <= 1) return 1;
  const std::uint64_t b = ipow(n, 2 * (k - 1)) + static_cast<std::uint64_t>(k - 1);
  return b > 1000000 ? 1000000 : static_cast<int>(b);
}

/// True when w (level m + L - 1) acts on the first m letters only.
inline bool acts_on_prefix(const WordPerm& w, int m) {
  const int n = w.alphabet();
  if (m >= w.level()) return true;
  const std::uint64_t tail = ipow(n, w.level() - m);
  const std::uint64_t heads = ipow(n, m);
  for (std::uint64_t x = 0; x < heads; ++x) {
    const std::uint32_t base = w(static_cast<std::uint32_t>(x * tail));
    if (base % tail != 0) return false;
    for (std::uint64_t y = 1; y < tail; ++y)
      if (w(static_cast<std::uint32_t>(x * tail + y)) != base + y) return false;
  }
  return true;
}

/// Searches W_m = U_m^* u^* U_m in F_n^m for m = 1..max_m. On success W_m is
/// the localized inverse. Returns the index and inverse, or the reason the
/// search stopped.
struct StabilizationResult {
  std::optional<WordPerm> inverse;
  int m = 0;
  bool capacity_hit = false;
};

inline StabilizationResult stabilize(const WordPerm& u_in, int max_m, std::uint64_t cap = kDefaultTableCap) {
  StabilizationResult r;
  const WordPerm u = u_in.reduced();
  const int n = u.alphabet();
  if (u.level() == 0) {
    r.inverse = u;
    r.m = 1;
    return r;
  }
  const WordPerm uinv = u.inverse();
  WordPerm um = u;
  for (int m = 1; m <= max_m; ++m) {
    if (m > 1) {
      if (ipow(n, um.level() + 1) > cap || um.level() + 1 > max_word_length(n)) {
        r.capacity_hit = true;
        r.m = m;
        return r;
      }
      um = cocycle_step(um, u, cap);
    }
    const int level = um.level();
    const std::uint64_t tail = ipow(n, level - u.level());
    std::vector<std::uint32_t> inv_um(um.image().size());
    for (std::size_t x = 0; x < inv_um.size(); ++x) inv_um[um(static_cast<std::uint32_t>(x))] = static_cast<std::uint32_t>(x);
    std::vector<std::uint32_t> img(inv_um.size());
    for (std::size_t x = 0; x < img.size(); ++x) {
      const std::uint64_t y = um(static_cast<std::uint32_t>(x));
      const std::uint64_t z = uinv(static_cast<std::uint32_t>(y / tail)) * tail + y % tail;
      img[x] = inv_um[z];
    }
    WordPerm w = WordPerm::unchecked(n, level, std::move(img));
    if (acts_on_prefix(w, m)) {
      r.inverse = w.reduced();
      r.m = m;
      return r;
    }
  }
  r.m = max_m;
  return r;
}

/// Full decision: tree condition, diagonal criterion, optional synchronization
/// refutation, then stabilization with a verified two-sided inverse.
inline AutVerdict decide_automorphism(const PermUnitary& sigma, const AutOptions& opt = {}) {
  AutVerdict v;
  if (sigma.k >= 1) {
    const auto diag_trees = tree_check(reduced_maps(sigma));
    if (!diag_trees.all_trees()) {
      v.outcome = AutVerdict::Outcome::NotAut;
      v.reason = AutVerdict::Reason::TreeFailed;
      return v;
    }
  }
  if (!decide_diagonal(sigma).yes()) {
    v.outcome = AutVerdict::Outcome::NotAut;
    v.reason = AutVerdict::Reason::DiagonalFailed;
    return v;
  }
  if (opt.use_sync && sigma.k >= 2) {
    const auto pg = pair_graph(transition_maps(sigma), ipow(sigma.n, sigma.k - 1));
    if (!pg.acyclic) {
      v.outcome = AutVerdict::Outcome::NotAut;
      v.reason = AutVerdict::Reason::SyncFailed;
      return v;
    }
  }
  const int bound = theoretical_bound(sigma.n, sigma.k);
  const int limit = std::min(opt.budget_m, bound);
  const WordPerm u = sigma.word_perm();
  const auto st = stabilize(u, limit, opt.table_cap);
  if (st.inverse) {
    const WordPerm inv = *st.inverse;
    if (!fusion(u, inv, opt.table_cap).is_identity() || !fusion(inv, u, opt.table_cap).is_identity())
      throw std::logic_error("stabilized inverse failed verification");
    v.outcome = AutVerdict::Outcome::Aut;
    v.h = std::max(1, inv.level());
    v.m = st.m;
    v.inverse = PermUnitary::from_word_perm(inv.lifted(v.h));
    return v;
  }
  if (st.capacity_hit) {
    v.outcome = AutVerdict::Outcome::Undecided;
    v.reason = AutVerdict::Reason::Capacity;
    v.m = st.m;
    v.note = "permutation table cap reached at stabilization index " + std::to_string(st.m);
    return v;
  }
  if (limit >= bound) {
    v.outcome = AutVerdict::Outcome::NotAut;
    v.reason = AutVerdict::Reason::StabilizationRefuted;
    v.m = bound;
    return v;
  }
  v.outcome = AutVerdict::Outcome::Undecided;
  v.reason = AutVerdict::Reason::Budget;
  v.m = limit;
  v.note = "stabilization budget " + std::to_string(limit) + " below bound " + std::to_string(bound);
  return v;
}

/// lambda_u(S_i) = S_i for the permutative unitary with table u.
inline bool fixes_generator(const WordPerm& u, int i) {
  const WordPerm r = u.reduced();
  if (r.level() == 0) return true;
  const std::uint64_t block = ipow(r.alphabet(), r.level() - 1);
  for (std::uint64_t t = 0; t < block; ++t) {
    const auto w = static_cast<std::uint32_t>((i - 1) * block + t);
    if (r(w) != w) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Outer classes and orders

enum class OutRelation { Equal, Distinct, Unknown };

inline const char* to_string(OutRelation r) {
  switch (r) {
    case OutRelation::Equal: return "equal";
    case OutRelation::Distinct: return "distinct";
    default: return "unknown";
  }
}

/// Compares lambda_a and lambda_b modulo inner automorphisms, given both
/// inverses (as tables).
inline OutRelation out_relation(const WordPerm& a, const WordPerm& b_inverse, int search_cap, std::uint64_t cap = kDefaultTableCap) {
  try {
    const WordPerm w = fusion(a, b_inverse, cap);
    return inner_witness(w, search_cap, cap) ? OutRelation::Equal : OutRelation::Distinct;
  } catch (const CapacityError&) {
    return OutRelation::Unknown;
  }
}

inline OutRelation out_equivalent(const PermUnitary& sigma, const PermUnitary& tau, int search_cap, const AutOptions& opt = {}) {
  const auto vs = decide_automorphism(sigma, opt);
  const auto vt = decide_automorphism(tau, opt);
  if (!vs.is_aut() || !vt.is_aut()) throw std::invalid_argument("out_equivalent requires two automorphisms");
  return out_relation(sigma.word_perm(), vt.inverse->word_perm(), search_cap, opt.table_cap);
}

struct PowerOrders {
  std::optional<int> aut_order;  // nullopt: exceeds max_power
  std::optional<int> out_order;
  bool capacity_hit = false;
};

inline PowerOrders power_order(const PermUnitary& sigma, int max_power, const AutOptions& opt = {}, int search_cap = 16) {
  if (!decide_automorphism(sigma, opt).is_aut()) throw std::invalid_argument("power_order requires an automorphism");
  PowerOrders r;
  const WordPerm u = sigma.word_perm().reduced();
  WordPerm power = u;
  try {
    for (int p = 1; p <= max_power && !(r.aut_order && r.out_order); ++p) {
      if (p > 1) power = fusion(u, power, opt.table_cap);
      if (!r.aut_order && power.is_identity()) r.aut_order = p;
      if (!r.out_order && inner_witness(power, search_cap, opt.table_cap)) r.out_order = p;
    }
  } catch (const CapacityError&) {
    r.capacity_hit = true;
  }
  return r;
}

}  // namespace cuntz

#endif  // CUNTZ_PERMDECIDE_HPP
