#ifndef CUNTZ_COEFFICIENT_HPP
#define CUNTZ_COEFFICIENT_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace cuntz {

/// Parses "p", "-p" or "p/q" into a canonical GMP rational.
inline mpq_class parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  mpq_class q;
  if (q.set_str(std::string(text), 10) != 0) throw std::invalid_argument("bad rational '" + std::string(text) + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
  q.canonicalize();
  return q;
}

/// Exact complex rational re + i*im.
class Coefficient {
public:
  Coefficient() = default;
  Coefficient(long v) : re_(v) {}
  Coefficient(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {}

  static Coefficient i() { return {0, 1}; }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  Coefficient conj() const { return {re_, -im_}; }

  Coefficient& operator+=(const Coefficient& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Coefficient& operator-=(const Coefficient& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Coefficient& operator*=(const Coefficient& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
  friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
  friend Coefficient operator*(Coefficient a, const Coefficient& b) { return a *= b; }
  Coefficient operator-() const { return {-re_, -im_}; }

  /// Integer power; negative exponents divide (z must be non-zero).
  Coefficient pow(int e) const {
    Coefficient base = *this;
    if (e < 0) {
      mpq_class norm = re_ * re_ + im_ * im_;
      if (sgn(norm) == 0) throw std::domain_error("inverse of zero coefficient");
      base = Coefficient(re_ / norm, -im_ / norm);
      e = -e;
    }
    Coefficient r(1);
    for (int k = 0; k < e; ++k) r *= base;
    return r;
  }

  friend bool operator==(const Coefficient& a, const Coefficient& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

  /// "p/q" for real values, "(a)+(b)i" style otherwise.
  std::string str() const {
    if (sgn(im_) == 0) return re_.get_str();
    if (sgn(re_) == 0) {
      if (im_ == 1) return "i";
      if (im_ == -1) return "-i";
      return im_.get_str() + "i";
    }
    std::string s = re_.get_str();
    s += sgn(im_) > 0 ? "+" : "-";
    mpq_class a = abs(im_);
    if (a != 1) s += a.get_str();
    s += "i";
    return s;
  }

private:
  mpq_class re_ = 0;
  mpq_class im_ = 0;
};

}  // namespace cuntz

#endif  // CUNTZ_COEFFICIENT_HPP
