#ifndef CUNTZ_ALGEBRA_IO_HPP
#define CUNTZ_ALGEBRA_IO_HPP

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "algebra.hpp"

namespace cuntz {

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

private:
  std::size_t pos_;
};

namespace detail {

inline std::string coefficient_text(const Coefficient& c) {
  const std::string s = c.str();
  const bool plain = sgn(c.im()) == 0 && sgn(c.re()) >= 0 && c.re().get_den() == 1;
  return plain ? s : "(" + s + ")";
}

inline std::string word_text(const Word& w) {
  std::string s = w.str();
  return s;
}

}  // namespace detail

/// `coef*S(alpha)S*(beta) + ...`; the unit monomial prints as its coefficient
/// alone and the zero element as "0".
inline std::string to_text(const AlgebraElement& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [t, c] : a.terms()) {
    if (!out.empty()) out += " + ";
    out += detail::coefficient_text(c);
    if (t.alpha.empty() && t.beta.empty()) continue;
    out += "*";
    if (!t.alpha.empty()) out += "S(" + detail::word_text(t.alpha) + ")";
    if (!t.beta.empty()) out += "S*(" + detail::word_text(t.beta) + ")";
  }
  return out;
}

/// Recursive-descent parser for generator expressions:
///   expr   := term (('+' | '-') term)*
///   term   := ['-'] factor ('*'? factor)*
///   factor := rational | 'i' | 'S' digits ['*'] | 'S(' digits ')' | 'S*(' digits ')' | '(' expr ')'
/// Juxtaposition is the product; `S12` is S_1 S_2 and `S12*` its adjoint.
class ExpressionParser {
public:
  ExpressionParser(int n, std::string_view text) : n_(n), text_(text) { check_alphabet(n); }

  AlgebraElement parse() {
    AlgebraElement r = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return r;
  }

private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect_char(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  bool factor_starts() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == 'S' || c == '(' || c == 'i' || std::isdigit(static_cast<unsigned char>(c));
  }

  AlgebraElement expr() {
    AlgebraElement r = term();
    for (;;) {
      if (accept('+')) {
        r += term();
      } else if (peek('-')) {
        ++pos_;
        r -= term_body();
      } else {
        return r;
      }
    }
  }

  AlgebraElement term() {
    if (accept('-')) return Coefficient(-1) * term_body();
    return term_body();
  }

  AlgebraElement term_body() {
    AlgebraElement r = factor();
    for (;;) {
      if (accept('*')) {
        r = r * factor();
      } else if (factor_starts()) {
        r = r * factor();
      } else {
        return r;
      }
    }
  }

  Word digits_word() {
    const std::size_t start = pos_;
    std::vector<int> letters;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      letters.push_back(text_[pos_] - '0');
      ++pos_;
    }
    try {
      return Word::from_letters(n_, letters);
    } catch (const std::exception& e) {
      throw ParseError(e.what(), start);
    }
  }

  AlgebraElement factor() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      AlgebraElement r = expr();
      expect_char(')');
      // postfix adjoint: "(x)*" not followed by another factor
      if (pos_ < text_.size() && text_[pos_] == '*') {
        const std::size_t star = pos_++;
        if (!factor_starts()) return adjoint(r);
        pos_ = star;
      }
      return r;
    }
    if (c == 'i') {
      ++pos_;
      return AlgebraElement::scalar(n_, Coefficient::i());
    }
    if (c == 'S') {
      ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '(') {
        ++pos_;
        Word w = digits_word();
        expect_char(')');
        return AlgebraElement::s(w);
      }
      if (pos_ + 1 < text_.size() && text_[pos_] == '*' && text_[pos_ + 1] == '(') {
        pos_ += 2;
        Word w = digits_word();
        expect_char(')');
        return AlgebraElement::s_star(w);
      }
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw ParseError("expected letters after 'S'", pos_);
      Word w = digits_word();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        return AlgebraElement::s_star(w);
      }
      return AlgebraElement::s(w);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) ++pos_;
      try {
        return AlgebraElement::scalar(n_, Coefficient(parse_rational(text_.substr(start, pos_ - start))));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), start);
      }
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  int n_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

inline AlgebraElement parse_expression(int n, std::string_view text) { return ExpressionParser(n, text).parse(); }

/// Smallest alphabet able to hold every digit letter appearing after an 'S'.
inline int infer_alphabet(std::string_view text) {
  int n = 2;
  bool in_word = false;
  for (char c : text) {
    if (c == 'S') {
      in_word = true;
      continue;
    }
    if (in_word && std::isdigit(static_cast<unsigned char>(c))) {
      n = std::max(n, c - '0');
    } else if (c != '(' && c != '*') {
      in_word = false;
    }
  }
  return n;
}

// ---------------------------------------------------------------------------
// JSON: a list of {alpha, beta, re, im}, rationals as "p/q" strings.

inline nlohmann::json to_json_terms(const AlgebraElement& a) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& [t, c] : a.terms()) {
    list.push_back({{"alpha", t.alpha.str()}, {"beta", t.beta.str()}, {"re", c.re().get_str()}, {"im", c.im().get_str()}});
  }
  return list;
}

inline AlgebraElement from_json_terms(int n, const nlohmann::json& list) {
  if (!list.is_array()) throw std::invalid_argument("element JSON must be a list of terms");
  AlgebraElement::TermMap t;
  for (const auto& item : list) {
    const Word alpha = Word::parse(n, item.at("alpha").get<std::string>());
    const Word beta = Word::parse(n, item.at("beta").get<std::string>());
    Coefficient c(parse_rational(item.at("re").get<std::string>()),
                  item.contains("im") ? parse_rational(item.at("im").get<std::string>()) : mpq_class(0));
    t[NormalTerm{alpha, beta}] += c;
  }
  return {n, std::move(t)};
}

/// {"schema": 1, "n": n, "element": [...]}.
inline nlohmann::json element_document(const AlgebraElement& a) {
  return {{"schema", 1}, {"n", a.alphabet()}, {"element", to_json_terms(a)}};
}

inline AlgebraElement element_from_document(const nlohmann::json& doc) {
  if (doc.value("schema", 1) != 1) throw std::invalid_argument("unsupported element schema version");
  return from_json_terms(doc.at("n").get<int>(), doc.at("element"));
}

}  // namespace cuntz

#endif  // CUNTZ_ALGEBRA_IO_HPP
