#ifndef CUNTZ_ALGEBRA_HPP
#define CUNTZ_ALGEBRA_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "coefficient.hpp"
#include "words.hpp"

namespace cuntz {

/// The monomial S_alpha S_beta^*.
struct NormalTerm {
  Word alpha;
  Word beta;

  int grade() const { return alpha.length() - beta.length(); }
  bool balanced() const { return alpha.length() == beta.length(); }

  friend bool operator==(const NormalTerm&, const NormalTerm&) = default;
  friend auto operator<=>(const NormalTerm&, const NormalTerm&) = default;
};

/// Product of two monomials via S_b^* S_c = S_c' (c = b c'), S_b'^* (b = c b'), else 0.
inline std::optional<NormalTerm> multiply_terms(const NormalTerm& x, const NormalTerm& y) {
  const Word& b = x.beta;
  const Word& c = y.alpha;
  if (c.starts_with(b)) return NormalTerm{x.alpha + c.drop_prefix(b), y.beta};
  if (b.starts_with(c)) return NormalTerm{x.alpha, y.beta + b.drop_prefix(c)};
  return std::nullopt;
}

namespace detail {

// Two monomials overlap iff one is (alpha v, beta v) for the other (alpha, beta).
// Splitting off the longest common suffix gives the root of that refinement tree.
inline std::pair<NormalTerm, Word> split_common_suffix(const NormalTerm& t) {
  const int la = t.alpha.length();
  const int lb = t.beta.length();
  int common = 0;
  const int lim = std::min(la, lb);
  while (common < lim && t.alpha.letter(la - 1 - common) == t.beta.letter(lb - 1 - common)) ++common;
  NormalTerm root{t.alpha.prefix(la - common), t.beta.prefix(lb - common)};
  return {root, t.alpha.suffix(common)};
}

struct TrieNode {
  std::optional<Coefficient> own;
  std::vector<std::unique_ptr<TrieNode>> child;
};

struct Flattened {
  bool leaf = true;
  Coefficient value;
  std::vector<std::pair<Word, Coefficient>> parts;  // relative paths when !leaf
};

inline Flattened flatten(const TrieNode& node, const Coefficient& inherited, int n) {
  Coefficient value = inherited;
  if (node.own) value += *node.own;
  if (node.child.empty()) return {true, value, {}};

  std::vector<Flattened> kids;
  kids.reserve(n);
  for (int c = 0; c < n; ++c) {
    if (node.child[c]) {
      kids.push_back(flatten(*node.child[c], value, n));
    } else {
      kids.push_back({true, value, {}});
    }
  }
  bool merge = kids[0].leaf;
  for (int c = 1; c < n && merge; ++c) merge = kids[c].leaf && kids[c].value == kids[0].value;
  if (merge) return {true, kids[0].value, {}};

  Flattened out;
  out.leaf = false;
  for (int c = 0; c < n; ++c) {
    const Word head = Word::letter_word(n, c + 1);
    if (kids[c].leaf) {
      if (!kids[c].value.is_zero()) out.parts.emplace_back(head, kids[c].value);
    } else {
      for (auto& [p, v] : kids[c].parts) out.parts.emplace_back(head + p, std::move(v));
    }
  }
  return out;
}

}  // namespace detail

/// A finite linear combination of normal-ordered monomials with exact
/// complex-rational coefficients. Always kept in canonical form: the monomials
/// have pairwise disjoint supports, no coefficient is zero, and no complete
/// family {S_{alpha c} S_{beta c}^*}_c with equal coefficients survives unmerged.
/// Equal elements therefore have identical term maps.
class AlgebraElement {
public:
  using TermMap = std::map<NormalTerm, Coefficient>;

  explicit AlgebraElement(int n = 2) : n_(n) { check_alphabet(n); }

  AlgebraElement(int n, TermMap terms) : n_(n), terms_(std::move(terms)) {
    check_alphabet(n);
    canonicalize();
  }

  static AlgebraElement scalar(int n, const Coefficient& c) {
    TermMap t;
    t.emplace(NormalTerm{Word(n), Word(n)}, c);
    return {n, std::move(t)};
  }
  static AlgebraElement one(int n) { return scalar(n, 1); }
  static AlgebraElement zero(int n) { return AlgebraElement(n); }

  /// S_alpha S_beta^*.
  static AlgebraElement monomial(const Word& alpha, const Word& beta, const Coefficient& c = 1) {
    if (alpha.alphabet() != beta.alphabet()) throw std::invalid_argument("alphabet mismatch");
    TermMap t;
    t.emplace(NormalTerm{alpha, beta}, c);
    return {alpha.alphabet(), std::move(t)};
  }
  static AlgebraElement s(const Word& alpha) { return monomial(alpha, Word(alpha.alphabet())); }
  static AlgebraElement s_star(const Word& beta) { return monomial(Word(beta.alphabet()), beta); }
  static AlgebraElement s(int n, int i) { return s(Word::letter_word(n, i)); }
  static AlgebraElement s_star(int n, int i) { return s_star(Word::letter_word(n, i)); }
  /// Range projection P_alpha = S_alpha S_alpha^*.
  static AlgebraElement projection(const Word& alpha) { return monomial(alpha, alpha); }

  int alphabet() const { return n_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of S_alpha S_beta^* in the canonical form (zero if absent).
  Coefficient coefficient(const Word& alpha, const Word& beta) const {
    auto it = terms_.find(NormalTerm{alpha, beta});
    return it == terms_.end() ? Coefficient(0) : it->second;
  }

  AlgebraElement& operator+=(const AlgebraElement& o) {
    check_same(o);
    for (const auto& [t, c] : o.terms_) terms_[t] += c;
    canonicalize();
    return *this;
  }
  AlgebraElement& operator-=(const AlgebraElement& o) {
    check_same(o);
    for (const auto& [t, c] : o.terms_) terms_[t] -= c;
    canonicalize();
    return *this;
  }
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }

  friend AlgebraElement operator*(const Coefficient& z, const AlgebraElement& a) {
    if (z.is_zero()) return AlgebraElement(a.n_);
    AlgebraElement r = a;
    for (auto& [t, c] : r.terms_) c = z * c;
    return r;
  }

  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) { return multiply(a, b); }

  friend AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
    a.check_same(b);
    TermMap acc;
    for (const auto& [x, cx] : a.terms_) {
      for (const auto& [y, cy] : b.terms_) {
        if (auto t = multiply_terms(x, y)) acc[*t] += cx * cy;
      }
    }
    return {a.n_, std::move(acc)};
  }

  friend AlgebraElement adjoint(const AlgebraElement& a) {
    TermMap t;
    for (const auto& [x, c] : a.terms_) t.emplace(NormalTerm{x.beta, x.alpha}, c.conj());
    AlgebraElement r(a.n_);
    r.terms_ = std::move(t);  // adjoint preserves canonical form
    return r;
  }

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  /// Each monomial of the canonical form refined to balanced length k
  /// (terms already longer are kept). Only meaningful for display and
  /// level-wise inspection; the result is not canonical.
  TermMap padded_to(int k) const {
    TermMap out;
    for (const auto& [t, c] : terms_) {
      const int deficit = k - std::max(t.alpha.length(), t.beta.length());
      if (deficit <= 0) {
        out.emplace(t, c);
        continue;
      }
      for (const Word& g : enumerate_words(n_, deficit)) out.emplace(NormalTerm{t.alpha + g, t.beta + g}, c);
    }
    return out;
  }

  /// Largest max(|alpha|, |beta|) over the canonical terms.
  int max_term_length() const {
    int m = 0;
    for (const auto& [t, c] : terms_) m = std::max({m, t.alpha.length(), t.beta.length()});
    return m;
  }

private:
  void check_same(const AlgebraElement& o) const {
    if (o.n_ != n_) throw std::invalid_argument("alphabet mismatch: O_" + std::to_string(n_) + " vs O_" + std::to_string(o.n_));
  }

  void canonicalize() {
    std::map<NormalTerm, detail::TrieNode> roots;
    for (auto& [t, c] : terms_) {
      if (t.alpha.alphabet() != n_ || t.beta.alphabet() != n_) throw std::invalid_argument("alphabet mismatch in term");
      if (c.is_zero()) continue;
      auto [root, path] = detail::split_common_suffix(t);
      detail::TrieNode* node = &roots[root];
      for (int a : path.letters()) {
        if (node->child.empty()) node->child.resize(n_);
        auto& next = node->child[a - 1];
        if (!next) next = std::make_unique<detail::TrieNode>();
        node = next.get();
      }
      if (node->own) {
        *node->own += c;
      } else {
        node->own = c;
      }
    }
    TermMap out;
    for (const auto& [root, node] : roots) {
      detail::Flattened f = detail::flatten(node, Coefficient(0), n_);
      if (f.leaf) {
        if (!f.value.is_zero()) out.emplace(root, std::move(f.value));
      } else {
        for (auto& [p, v] : f.parts) out.emplace(NormalTerm{root.alpha + p, root.beta + p}, std::move(v));
      }
    }
    terms_ = std::move(out);
  }

  int n_;
  TermMap terms_;
};

/// theta = sum_{i,j} S_i S_j S_i^* S_j^*, the flip of H (x) H.
inline AlgebraElement flip_theta(int n) {
  AlgebraElement::TermMap t;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      t.emplace(NormalTerm{Word::from_letters(n, {i, j}), Word::from_letters(n, {j, i})}, 1);
  return {n, std::move(t)};
}

/// Archbold's flip-flop S_1 S_2^* + S_2 S_1^* in O_2.
inline AlgebraElement flip_flop() {
  return AlgebraElement::monomial(Word::parse(2, "1"), Word::parse(2, "2")) +
         AlgebraElement::monomial(Word::parse(2, "2"), Word::parse(2, "1"));
}

// ---------------------------------------------------------------------------
// Membership classification and conditional expectations

struct Classification {
  std::optional<int> grade;    // nullopt: mixed
  std::optional<int> f_level;  // smallest k with a in F_n^k
  std::optional<int> d_level;  // smallest k with a in D_n^k
  bool in_Sn = false;
  bool in_Pn = false;
  bool unitary = false;
};

inline bool is_unitary(const AlgebraElement& a) {
  const AlgebraElement one = AlgebraElement::one(a.alphabet());
  const AlgebraElement as = adjoint(a);
  return multiply(a, as) == one && multiply(as, a) == one;
}

inline Classification classify(const AlgebraElement& a) {
  Classification c;
  bool same_grade = true;
  bool balanced = true;
  bool diagonal = true;
  bool unit_coefs = true;
  std::optional<int> g;
  for (const auto& [t, coef] : a.terms()) {
    if (g && *g != t.grade()) same_grade = false;
    g = t.grade();
    balanced = balanced && t.balanced();
    diagonal = diagonal && t.alpha == t.beta;
    unit_coefs = unit_coefs && coef.is_one();
  }
  c.grade = same_grade ? std::optional<int>(g.value_or(0)) : std::nullopt;
  // The canonical form is the coarsest representation, so the longest
  // balanced term is the smallest embedding level.
  if (balanced) c.f_level = a.max_term_length();
  if (diagonal) c.d_level = a.max_term_length();
  c.unitary = is_unitary(a);
  c.in_Sn = c.unitary && unit_coefs;
  c.in_Pn = c.in_Sn && balanced;
  return c;
}

enum class ExpectTarget { F, D };

/// E onto F_n (drop unbalanced terms) or onto D_n (keep only alpha == beta).
inline AlgebraElement expect(const AlgebraElement& a, ExpectTarget target) {
  AlgebraElement::TermMap t;
  for (const auto& [x, c] : a.terms()) {
    if (!x.balanced()) continue;
    if (target == ExpectTarget::D && x.alpha != x.beta) continue;
    t.emplace(x, c);
  }
  return {a.alphabet(), std::move(t)};
}

/// Product of generators: each factor is (letter, starred).
inline AlgebraElement generator_product(int n, const std::vector<std::pair<int, bool>>& factors) {
  AlgebraElement r = AlgebraElement::one(n);
  for (auto [i, star] : factors) r = r * (star ? AlgebraElement::s_star(n, i) : AlgebraElement::s(n, i));
  return r;
}

}  // namespace cuntz

#endif  // CUNTZ_ALGEBRA_HPP
