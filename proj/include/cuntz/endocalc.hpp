#ifndef CUNTZ_ENDOCALC_HPP
#define CUNTZ_ENDOCALC_HPP

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "word_perm.hpp"

namespace cuntz {

/// phi^m(x) where phi(a) = sum_i S_i a S_i^*.
inline AlgebraElement phi_apply(const AlgebraElement& x, int m = 1) {
  if (m < 0) throw std::invalid_argument("phi power must be >= 0");
  const int n = x.alphabet();
  AlgebraElement r = x;
  for (int step = 0; step < m; ++step) {
    AlgebraElement::TermMap t;
    for (const auto& [term, c] : r.terms()) {
      for (int i = 1; i <= n; ++i) {
        const Word head = Word::letter_word(n, i);
        t.emplace(NormalTerm{head + term.alpha, head + term.beta}, c);
      }
    }
    r = AlgebraElement(n, std::move(t));
  }
  return r;
}

/// The endomorphism lambda_U (S_i -> U S_i) of a unitary U, with its
/// cocycles U_m = U phi(U) ... phi^{m-1}(U) cached on demand. Copies share
/// nothing; the cache is guarded so a single Endo may be used concurrently.
class Endo {
public:
  explicit Endo(AlgebraElement u) : u_(std::move(u)) {
    if (!is_unitary(u_)) throw std::invalid_argument("Endo requires a unitary");
    cocycles_.push_back(u_);
  }

  Endo(const Endo& o) : u_(o.u_) {
    std::lock_guard lock(o.mutex_);
    cocycles_ = o.cocycles_;
  }
  Endo& operator=(const Endo& o) {
    if (this != &o) {
      std::scoped_lock lock(mutex_, o.mutex_);
      u_ = o.u_;
      cocycles_ = o.cocycles_;
    }
    return *this;
  }

  const AlgebraElement& unitary() const { return u_; }
  int alphabet() const { return u_.alphabet(); }

  /// U_m for m >= 1.
  AlgebraElement cocycle(int m) const {
    if (m < 1) throw std::invalid_argument("cocycle index must be >= 1");
    std::lock_guard lock(mutex_);
    while (static_cast<int>(cocycles_.size()) < m) {
      const int j = static_cast<int>(cocycles_.size());
      cocycles_.push_back(cocycles_.back() * phi_apply(u_, j));
    }
    return cocycles_[m - 1];
  }

  /// lambda_U(x), substituting U S_i for every S_i.
  AlgebraElement apply(const AlgebraElement& x) const {
    const int n = alphabet();
    if (x.alphabet() != n) throw std::invalid_argument("alphabet mismatch");
    std::vector<AlgebraElement> images;
    images.reserve(n);
    for (int i = 1; i <= n; ++i) images.push_back(u_ * AlgebraElement::s(n, i));

    std::map<Word, AlgebraElement> memo;
    auto image_of = [&](const Word& w) -> const AlgebraElement& {
      auto it = memo.find(w);
      if (it != memo.end()) return it->second;
      AlgebraElement r = AlgebraElement::one(n);
      for (int a : w.letters()) r = r * images[a - 1];
      return memo.emplace(w, std::move(r)).first->second;
    };

    AlgebraElement out(n);
    for (const auto& [t, c] : x.terms()) out += c * (image_of(t.alpha) * adjoint(image_of(t.beta)));
    return out;
  }

  AlgebraElement operator()(const AlgebraElement& x) const { return apply(x); }

private:
  AlgebraElement u_;
  mutable std::mutex mutex_;
  mutable std::vector<AlgebraElement> cocycles_;
};

inline AlgebraElement lambda_apply(const Endo& u, const AlgebraElement& x) { return u.apply(x); }

inline AlgebraElement cocycle_unitary(const Endo& u, int m) { return u.cocycle(m); }

/// W = lambda_U(V) U, so that lambda_W = lambda_U o lambda_V.
inline Endo fusion_compose(const Endo& u, const Endo& v) { return Endo(u.apply(v.unitary()) * u.unitary()); }

/// a_j^u(x) = S_j^* u^* x u S_j.
inline AlgebraElement a_map(const AlgebraElement& u, int j, const AlgebraElement& x) {
  const AlgebraElement us = u * AlgebraElement::s(u.alphabet(), j);
  return adjoint(us) * x * us;
}

/// T_mu^u = a_{mu_k} ... a_{mu_1}: a_{mu_1} is applied first.
inline AlgebraElement t_map(const AlgebraElement& u, const Word& mu, const AlgebraElement& x) {
  if (mu.empty()) throw std::invalid_argument("t_map needs a non-empty word");
  AlgebraElement r = x;
  for (int j : mu.letters()) r = a_map(u, j, r);
  return r;
}

/// K_u = max ||alpha| - |beta|| over the words of u in S_n.
inline int k_weight(const AlgebraElement& u) {
  for (const auto& [t, c] : u.terms())
    if (!c.is_one()) throw std::invalid_argument("k_weight: element is not a sum of words");
  if (!is_unitary(u)) throw std::invalid_argument("k_weight: element is not unitary, so not in S_n");
  int k = 0;
  for (const auto& [t, c] : u.terms()) k = std::max(k, std::abs(t.grade()));
  return k;
}

// ---------------------------------------------------------------------------
// Innerness of permutative endomorphisms

/// z with w = z phi(z^*), or nullopt when lambda_w is outer. For w at level
/// L >= 2 any such z lies at level L - 1, and then w_{L-1} = z phi^{L-1}(z^*)
/// splits as (z on the first L-1 letters) x (z^* on the last L-1 letters);
/// the split is tested directly and the candidate verified.
inline std::optional<WordPerm> inner_witness(const WordPerm& w, int max_level, std::uint64_t cap = kDefaultTableCap) {
  const int n = w.alphabet();
  WordPerm wr = w.reduced();
  if (wr.level() == 0) return WordPerm::identity(n, 0);
  const int level = std::max(wr.level(), 2);
  if (level - 1 > max_level)
    throw CapacityError("inner witness search level " + std::to_string(level - 1) + " exceeds cap " + std::to_string(max_level));
  wr = wr.lifted(level, cap);
  const WordPerm big = cocycle(wr, level - 1, cap);  // level 2L - 2
  const std::uint64_t half = ipow(n, level - 1);
  std::vector<std::uint32_t> left(half), right(half);
  for (std::uint64_t x = 0; x < half; ++x) left[x] = static_cast<std::uint32_t>(big(static_cast<std::uint32_t>(x * half)) / half);
  for (std::uint64_t y = 0; y < half; ++y) right[y] = static_cast<std::uint32_t>(big(static_cast<std::uint32_t>(y)) % half);
  for (std::uint64_t x = 0; x < half; ++x) {
    if (right[left[x]] != x) return std::nullopt;
    for (std::uint64_t y = 0; y < half; ++y)
      if (big(static_cast<std::uint32_t>(x * half + y)) != left[x] * half + right[y]) return std::nullopt;
  }
  WordPerm z = WordPerm::unchecked(n, level - 1, std::move(left));
  if (!(compose(z, z.inverse().phi(cap), cap) == wr)) return std::nullopt;
  return z.reduced();
}

/// Symbolic front end: w must be permutative.
inline std::optional<AlgebraElement> inner_witness(const AlgebraElement& w, int max_level, std::uint64_t cap = kDefaultTableCap) {
  auto p = as_word_perm(w, cap);
  if (!p) throw std::invalid_argument("inner_witness: element is not a permutative unitary");
  auto z = inner_witness(*p, max_level, cap);
  if (!z) return std::nullopt;
  return z->to_element();
}

// ---------------------------------------------------------------------------
// Diagonal criterion for unitaries in S_n with K_u <= 1

/// Outcome of a diagonal-restriction decision.
struct DiagonalVerdict {
  enum class Outcome { Yes, No, Undecided };
  Outcome outcome = Outcome::Undecided;
  int m = 0;      // Yes: smallest level with all composites constant
  int level = 0;  // diagonal level the dual maps act on
  // No via level-set iteration: the two iteration indices with equal sets.
  std::optional<std::pair<int, int>> repeated;
  // No via the pair graph: a cycle of distinct pairs and the letters driving it.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pair_cycle;
  std::vector<int> cycle_letters;
  std::string note;

  bool yes() const { return outcome == Outcome::Yes; }
};

inline const char* to_string(DiagonalVerdict::Outcome o) {
  switch (o) {
    case DiagonalVerdict::Outcome::Yes: return "yes";
    case DiagonalVerdict::Outcome::No: return "no";
    default: return "undecided";
  }
}

/// table[j][rho] = gamma with P_rho <= a_j(P_gamma), one table per letter j.
struct DualMapTable {
  int n = 2;
  int level = 0;
  std::vector<std::vector<std::uint32_t>> table;
};

/// Builds the dual tables of the a_j on D_n^level, or nullopt when some
/// a_j(P_gamma) leaves D_n^level or the preimages fail to partition W_n^level.
inline std::optional<DualMapTable> dual_map_table(const AlgebraElement& u, int level) {
  const int n = u.alphabet();
  const std::uint64_t size = ipow(n, level);
  DualMapTable d{n, level, {}};
  for (int j = 1; j <= n; ++j) {
    const AlgebraElement us = u * AlgebraElement::s(n, j);
    const AlgebraElement usa = adjoint(us);
    std::vector<std::uint32_t> tab(size, 0xFFFFFFFFu);
    for (std::uint64_t g = 0; g < size; ++g) {
      const AlgebraElement img = usa * AlgebraElement::projection(Word::from_index(n, level, g)) * us;
      for (const auto& [t, c] : img.terms()) {
        if (t.alpha != t.beta || !c.is_one() || t.alpha.length() > level) return std::nullopt;
        const std::uint64_t tail = ipow(n, level - t.alpha.length());
        for (std::uint64_t r = 0; r < tail; ++r) {
          auto& slot = tab[t.alpha.index() * tail + r];
          if (slot != 0xFFFFFFFFu) return std::nullopt;
          slot = static_cast<std::uint32_t>(g);
        }
      }
    }
    for (auto v : tab)
      if (v == 0xFFFFFFFFu) return std::nullopt;
    d.table.push_back(std::move(tab));
  }
  return d;
}

struct DiagonalSnOptions {
  std::optional<int> start_level;  // default: max(1, longest term of u)
  int max_level = 6;               // closure search cap
  int budget = 64;                 // level-set iterations
  std::size_t max_set_size = 1u << 16;
};

/// Decides whether lambda_u restricts to an automorphism of D_n for u in S_n
/// with K_u <= 1. Finds the smallest closed diagonal level, then iterates the
/// sets of duals of T_mu, |mu| = m: Yes at the first all-constant set, No at
/// the first repeated set. No is relative to the closure level found.
inline DiagonalVerdict diagonal_aut_sn(const AlgebraElement& u, const DiagonalSnOptions& opt = {}) {
  if (k_weight(u) > 1) throw std::invalid_argument("diagonal_aut_sn requires K_u <= 1");
  const int start = opt.start_level.value_or(std::max(1, u.max_term_length()));
  std::optional<DualMapTable> duals;
  int level = start;
  for (; level <= opt.max_level; ++level) {
    duals = dual_map_table(u, level);
    if (duals) break;
  }
  if (!duals) throw std::runtime_error("no level <= " + std::to_string(opt.max_level) + " is closed under every a_j");

  using Fn = std::vector<std::uint32_t>;
  auto constant = [](const Fn& f) {
    for (auto v : f)
      if (v != f[0]) return false;
    return true;
  };
  DiagonalVerdict out;
  out.level = level;

  std::set<Fn> current(duals->table.begin(), duals->table.end());
  std::map<std::set<Fn>, int> seen;
  for (int m = 1; m <= opt.budget; ++m) {
    bool all_const = true;
    for (const Fn& f : current) all_const = all_const && constant(f);
    if (all_const) {
      out.outcome = DiagonalVerdict::Outcome::Yes;
      out.m = m;
      return out;
    }
    auto [it, inserted] = seen.emplace(current, m);
    if (!inserted) {
      out.outcome = DiagonalVerdict::Outcome::No;
      out.repeated = std::make_pair(it->second, m);
      out.note = "no (relative to closure level " + std::to_string(level) + ")";
      return out;
    }
    // dual(T_{mu j}) = dual(T_mu) o table_j
    std::set<Fn> next;
    for (const Fn& h : current) {
      for (const Fn& t : duals->table) {
        Fn g(t.size());
        for (std::size_t x = 0; x < t.size(); ++x) g[x] = h[t[x]];
        next.insert(std::move(g));
      }
    }
    if (next.size() > opt.max_set_size) break;
    current = std::move(next);
  }
  out.outcome = DiagonalVerdict::Outcome::Undecided;
  out.note = "level-set budget exhausted";
  return out;
}

}  // namespace cuntz

#endif  // CUNTZ_ENDOCALC_HPP
