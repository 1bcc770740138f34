#ifndef CUNTZ_WORD_PERM_HPP
#define CUNTZ_WORD_PERM_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "words.hpp"

namespace cuntz {

/// Thrown when a permutation table would exceed the configured size cap.
class CapacityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Default cap on materialized table entries (word length 24 at n = 2).
inline constexpr std::uint64_t kDefaultTableCap = std::uint64_t{1} << 24;

/// A permutative unitary w in P_n^L stored as its action on W_n^L:
/// w S_beta = S_{image[beta]}, i.e. w = sum_beta S_{image(beta)} S_beta^*.
/// Operator products compose the tables as functions.
class WordPerm {
public:
  WordPerm() = default;

  WordPerm(int n, int level, std::vector<std::uint32_t> image) : n_(n), level_(level), image_(std::move(image)) {
    check_alphabet(n);
    if (image_.size() != ipow(n, level)) throw std::invalid_argument("permutation table has wrong size");
    std::vector<char> seen(image_.size(), 0);
    for (auto v : image_) {
      if (v >= image_.size() || seen[v]) throw std::invalid_argument("table is not a bijection");
      seen[v] = 1;
    }
  }

  /// Skips the bijection check; for tables built from other permutations.
  static WordPerm unchecked(int n, int level, std::vector<std::uint32_t> image) {
    WordPerm w;
    w.n_ = n;
    w.level_ = level;
    w.image_ = std::move(image);
    return w;
  }

  static WordPerm identity(int n, int level = 0, std::uint64_t cap = kDefaultTableCap) {
    const std::uint64_t size = checked_size(n, level, cap);
    WordPerm w;
    w.n_ = n;
    w.level_ = level;
    w.image_.resize(size);
    std::iota(w.image_.begin(), w.image_.end(), 0u);
    return w;
  }

  int alphabet() const { return n_; }
  int level() const { return level_; }
  const std::vector<std::uint32_t>& image() const { return image_; }
  std::uint32_t operator()(std::uint32_t word) const { return image_[word]; }

  bool is_identity() const {
    for (std::size_t i = 0; i < image_.size(); ++i)
      if (image_[i] != i) return false;
    return true;
  }

  /// Same unitary viewed in P_n^L (L >= level): acts on the first letters only.
  WordPerm lifted(int level, std::uint64_t cap = kDefaultTableCap) const {
    if (level < level_) throw std::invalid_argument("cannot lift to a lower level");
    if (level == level_) return *this;
    const std::uint64_t size = checked_size(n_, level, cap);
    const std::uint64_t tail = ipow(n_, level - level_);
    WordPerm w;
    w.n_ = n_;
    w.level_ = level;
    w.image_.resize(size);
    for (std::uint64_t i = 0; i < size; ++i)
      w.image_[i] = static_cast<std::uint32_t>(image_[i / tail] * tail + i % tail);
    return w;
  }

  /// The smallest-level table representing the same unitary.
  WordPerm reduced() const {
    WordPerm w = *this;
    while (w.level_ > 0) {
      const std::uint32_t n = static_cast<std::uint32_t>(n_);
      std::vector<std::uint32_t> coarse(w.image_.size() / n);
      bool ok = true;
      for (std::size_t i = 0; i < coarse.size() && ok; ++i) {
        const std::uint32_t head = w.image_[i * n];
        if (head % n != 0) ok = false;
        coarse[i] = head / n;
        for (std::uint32_t c = 1; c < n && ok; ++c) ok = w.image_[i * n + c] == head + c;
      }
      if (!ok) break;
      w.image_ = std::move(coarse);
      --w.level_;
    }
    return w;
  }

  WordPerm inverse() const {
    WordPerm w = *this;
    for (std::size_t i = 0; i < image_.size(); ++i) w.image_[image_[i]] = static_cast<std::uint32_t>(i);
    return w;
  }

  /// phi(w) = sum_i S_i w S_i^*, one level up.
  WordPerm phi(std::uint64_t cap = kDefaultTableCap) const {
    const std::uint64_t size = checked_size(n_, level_ + 1, cap);
    const std::uint64_t block = image_.size();
    WordPerm w;
    w.n_ = n_;
    w.level_ = level_ + 1;
    w.image_.resize(size);
    for (std::uint64_t i = 0; i < size; ++i)
      w.image_[i] = static_cast<std::uint32_t>((i / block) * block + image_[i % block]);
    return w;
  }

  friend bool operator==(const WordPerm& a, const WordPerm& b) {
    if (a.n_ != b.n_) return false;
    const WordPerm ra = a.reduced();
    const WordPerm rb = b.reduced();
    return ra.level_ == rb.level_ && ra.image_ == rb.image_;
  }

  AlgebraElement to_element() const {
    AlgebraElement::TermMap t;
    for (std::size_t b = 0; b < image_.size(); ++b)
      t.emplace(NormalTerm{Word::from_index(n_, level_, image_[b]), Word::from_index(n_, level_, b)}, 1);
    return {n_, std::move(t)};
  }

  static std::uint64_t checked_size(int n, int level, std::uint64_t cap) {
    check_alphabet(n);
    if (level < 0) throw std::invalid_argument("negative level");
    if (level > max_word_length(n)) throw CapacityError("level " + std::to_string(level) + " too large");
    const std::uint64_t size = ipow(n, level);
    if (size > cap || size > 0xFFFFFFFFull)
      throw CapacityError("permutation table n^" + std::to_string(level) + " exceeds cap of " + std::to_string(cap) + " entries");
    return size;
  }

private:
  int n_ = 2;
  int level_ = 0;
  std::vector<std::uint32_t> image_{0};
};

/// Product a*b (apply b's table first) at the common level.
inline WordPerm compose(const WordPerm& a, const WordPerm& b, std::uint64_t cap = kDefaultTableCap) {
  if (a.alphabet() != b.alphabet()) throw std::invalid_argument("alphabet mismatch");
  const int level = std::max(a.level(), b.level());
  const WordPerm la = a.lifted(level, cap);
  const WordPerm lb = b.lifted(level, cap);
  std::vector<std::uint32_t> img(lb.image().size());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = la(lb(static_cast<std::uint32_t>(i)));
  return WordPerm::unchecked(a.alphabet(), level, std::move(img));
}

/// Reads a permutative unitary off its canonical form; nullopt if the element
/// is not a sum of balanced words with unit coefficients forming a bijection.
inline std::optional<WordPerm> as_word_perm(const AlgebraElement& a, std::uint64_t cap = kDefaultTableCap) {
  const int n = a.alphabet();
  int level = 0;
  for (const auto& [t, c] : a.terms()) {
    if (!t.balanced() || !c.is_one()) return std::nullopt;
    level = std::max(level, t.alpha.length());
  }
  const std::uint64_t size = WordPerm::checked_size(n, level, cap);
  std::vector<std::uint32_t> img(size, 0xFFFFFFFFu);
  std::vector<char> hit(size, 0);
  for (const auto& [t, c] : a.terms()) {
    const int deficit = level - t.alpha.length();
    const std::uint64_t tail = ipow(n, deficit);
    for (std::uint64_t g = 0; g < tail; ++g) {
      const std::uint64_t from = t.beta.index() * tail + g;
      const std::uint64_t to = t.alpha.index() * tail + g;
      if (img[from] != 0xFFFFFFFFu || hit[to]) return std::nullopt;
      img[from] = static_cast<std::uint32_t>(to);
      hit[to] = 1;
    }
  }
  for (auto v : img)
    if (v == 0xFFFFFFFFu) return std::nullopt;
  return WordPerm(n, level, std::move(img));
}

/// Given U_m for u (at level m + L - 1), returns U_{m+1} = U_m phi^m(u).
inline WordPerm cocycle_step(const WordPerm& um, const WordPerm& u, std::uint64_t cap = kDefaultTableCap) {
  const int n = u.alphabet();
  const int level = um.level() + 1;
  const std::uint64_t size = WordPerm::checked_size(n, level, cap);
  const std::uint64_t window = ipow(n, u.level());
  std::vector<std::uint32_t> img(size);
  for (std::uint64_t x = 0; x < size; ++x) {
    const std::uint64_t y = (x / window) * window + u(static_cast<std::uint32_t>(x % window));
    img[x] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(um(static_cast<std::uint32_t>(y / n))) * n + y % n);
  }
  return WordPerm::unchecked(n, level, std::move(img));
}

/// U_m = u phi(u) ... phi^{m-1}(u), at level m + L - 1 (m >= 1).
inline WordPerm cocycle(const WordPerm& u, int m, std::uint64_t cap = kDefaultTableCap) {
  if (m < 1) throw std::invalid_argument("cocycle index must be >= 1");
  if (u.level() == 0) return u;
  WordPerm um = u;
  for (int j = 1; j < m; ++j) um = cocycle_step(um, u, cap);
  return um;
}

/// lambda_u(v) = U_h v U_h^* for v at level h.
inline WordPerm lambda_apply(const WordPerm& u, const WordPerm& v, std::uint64_t cap = kDefaultTableCap) {
  if (u.alphabet() != v.alphabet()) throw std::invalid_argument("alphabet mismatch");
  if (v.level() == 0 || u.level() == 0) return v;
  const WordPerm uh = cocycle(u, v.level(), cap);
  const WordPerm vl = v.lifted(uh.level(), cap);
  const WordPerm uhi = uh.inverse();
  std::vector<std::uint32_t> img(uh.image().size());
  for (std::size_t x = 0; x < img.size(); ++x) img[x] = uh(vl(uhi(static_cast<std::uint32_t>(x))));
  return WordPerm::unchecked(u.alphabet(), uh.level(), std::move(img));
}

/// W with lambda_W = lambda_u o lambda_v, namely lambda_u(v) u, reduced.
inline WordPerm fusion(const WordPerm& u, const WordPerm& v, std::uint64_t cap = kDefaultTableCap) {
  return compose(lambda_apply(u, v, cap), u, cap).reduced();
}

}  // namespace cuntz

#endif  // CUNTZ_WORD_PERM_HPP
