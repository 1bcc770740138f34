#ifndef CUNTZ_WORDS_HPP
#define CUNTZ_WORDS_HPP

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cuntz {

/// Largest word length whose index space n^k fits below 2^63.
constexpr int max_word_length(int n) {
  int k = 0;
  unsigned __int128 p = 1;
  while (p * static_cast<unsigned>(n) <= (static_cast<unsigned __int128>(1) << 63)) {
    p *= static_cast<unsigned>(n);
    ++k;
  }
  return k;
}

/// n^k as an unsigned 64-bit integer; throws if the result would not fit.
inline std::uint64_t ipow(int n, int k) {
  if (k < 0) throw std::invalid_argument("ipow: negative exponent");
  if (k > max_word_length(n)) throw std::out_of_range("ipow: word space too large");
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r *= static_cast<std::uint64_t>(n);
  return r;
}

inline void check_alphabet(int n) {
  if (n < 2 || n > 255) throw std::invalid_argument("alphabet size must be in [2, 255]");
}

/// A multi-index over the alphabet {1..n}, packed as a big-endian base-n
/// integer (leftmost letter most significant, letter value minus one per digit).
class Word {
public:
  Word() = default;

  /// Empty word over alphabet n.
  explicit Word(int n) : n_(static_cast<std::uint8_t>(n)) { check_alphabet(n); }

  static Word from_index(int n, int length, std::uint64_t index) {
    check_alphabet(n);
    if (length < 0 || length > max_word_length(n))
      throw std::out_of_range("word length " + std::to_string(length) + " exceeds packed capacity");
    if (index >= ipow(n, length))
      throw std::out_of_range("word index " + std::to_string(index) + " >= n^k");
    Word w(n);
    w.len_ = static_cast<std::uint8_t>(length);
    w.code_ = index;
    return w;
  }

  static Word from_letters(int n, const std::vector<int>& letters) {
    check_alphabet(n);
    if (static_cast<int>(letters.size()) > max_word_length(n))
      throw std::out_of_range("word too long for packed encoding");
    Word w(n);
    for (int a : letters) {
      if (a < 1 || a > n)
        throw std::out_of_range("letter " + std::to_string(a) + " outside {1.." + std::to_string(n) + "}");
      w.code_ = w.code_ * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(a - 1);
    }
    w.len_ = static_cast<std::uint8_t>(letters.size());
    return w;
  }

  /// Parses a digit string such as "1112". Only alphabets n <= 9 have a
  /// digit-string form.
  static Word parse(int n, std::string_view digits) {
    if (n > 9) throw std::invalid_argument("digit-string words need n <= 9");
    std::vector<int> letters;
    letters.reserve(digits.size());
    for (char c : digits) {
      if (c < '0' || c > '9') throw std::invalid_argument(std::string("bad letter '") + c + "' in word");
      letters.push_back(c - '0');
    }
    return from_letters(n, letters);
  }

  static Word letter_word(int n, int a) { return from_letters(n, {a}); }

  int alphabet() const { return n_; }
  int length() const { return len_; }
  std::uint64_t index() const { return code_; }
  bool empty() const { return len_ == 0; }

  /// 1-based letter at 0-based position i.
  int letter(int i) const {
    if (i < 0 || i >= len_) throw std::out_of_range("letter position");
    std::uint64_t c = code_;
    for (int j = len_ - 1; j > i; --j) c /= n_;
    return static_cast<int>(c % n_) + 1;
  }

  std::vector<int> letters() const {
    std::vector<int> out(len_);
    std::uint64_t c = code_;
    for (int j = len_ - 1; j >= 0; --j) {
      out[j] = static_cast<int>(c % n_) + 1;
      c /= n_;
    }
    return out;
  }

  Word prefix(int k) const {
    if (k < 0 || k > len_) throw std::out_of_range("prefix length");
    Word w(n_);
    w.len_ = static_cast<std::uint8_t>(k);
    w.code_ = code_ / ipow(n_, len_ - k);
    return w;
  }

  Word suffix(int k) const {
    if (k < 0 || k > len_) throw std::out_of_range("suffix length");
    Word w(n_);
    w.len_ = static_cast<std::uint8_t>(k);
    w.code_ = code_ % ipow(n_, k);
    return w;
  }

  bool starts_with(const Word& p) const {
    return p.n_ == n_ && p.len_ <= len_ && prefix(p.len_).code_ == p.code_;
  }

  /// Removes the prefix p, which must be present.
  Word drop_prefix(const Word& p) const {
    if (!starts_with(p)) throw std::invalid_argument("drop_prefix: not a prefix");
    return suffix(len_ - p.len_);
  }

  std::string str() const {
    std::string s;
    for (int a : letters()) {
      if (n_ <= 9) {
        s.push_back(static_cast<char>('0' + a));
      } else {
        if (!s.empty()) s.push_back('.');
        s += std::to_string(a);
      }
    }
    return s;
  }

  friend Word operator+(const Word& a, const Word& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("concatenating words over different alphabets");
    if (a.len_ + b.len_ > max_word_length(a.n_)) throw std::out_of_range("concatenation too long");
    Word w(a.n_);
    w.len_ = static_cast<std::uint8_t>(a.len_ + b.len_);
    w.code_ = a.code_ * ipow(a.n_, b.len_) + b.code_;
    return w;
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    if (auto c = a.len_ <=> b.len_; c != 0) return c;
    return a.code_ <=> b.code_;
  }

private:
  std::uint8_t n_ = 2;
  std::uint8_t len_ = 0;
  std::uint64_t code_ = 0;
};

/// W_n^k in increasing index order.
inline std::vector<Word> enumerate_words(int n, int k) {
  check_alphabet(n);
  const std::uint64_t count = ipow(n, k);
  std::vector<Word> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(Word::from_index(n, k, i));
  return out;
}

}  // namespace cuntz

#endif  // CUNTZ_WORDS_HPP
