#include "anomint/scalar.hpp"

#include <cctype>

#include "anomint/errors.hpp"

namespace anomint {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational");
  Rational out;
  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    // Finite decimal: integer part and fraction are combined exactly.
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const auto frac_len = s.size() - dot - 1;
    if (frac_len == 0 || s.find('/') != std::string::npos) {
      throw ParseError("malformed rational '" + s + "'");
    }
    if (out.get_num().set_str(digits, 10) != 0) {
      throw ParseError("malformed rational '" + s + "'");
    }
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    out.get_den() = den;
  } else {
    for (char c : s) {
      if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/')) {
        throw ParseError("malformed rational '" + s + "'");
      }
    }
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    if (out.set_str(s, 10) != 0) throw ParseError("malformed rational '" + s + "'");
    if (out.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  }
  out.canonicalize();
  return out;
}

std::string to_string(const Rational& r) { return r.get_str(10); }

Scalar& Scalar::operator*=(const Scalar& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw InvalidArgument("division by zero scalar");
  const Rational norm = o.re_ * o.re_ + o.im_ * o.im_;
  Rational re = (re_ * o.re_ + im_ * o.im_) / norm;
  Rational im = (im_ * o.re_ - re_ * o.im_) / norm;
  re_ = std::move(re);
  im_ = std::move(im);
  re_.canonicalize();
  im_.canonicalize();
  return *this;
}

std::string Scalar::to_string() const {
  const bool has_re = sgn(re_) != 0;
  const bool has_im = sgn(im_) != 0;
  auto imag_part = [](const Rational& v) {
    if (v == 1) return std::string("i");
    if (v == -1) return std::string("-i");
    return anomint::to_string(v) + "i";
  };
  if (!has_im) return anomint::to_string(re_);
  if (!has_re) return imag_part(im_);
  std::string out = "(" + anomint::to_string(re_);
  if (sgn(im_) > 0) out += "+";
  out += imag_part(im_) + ")";
  return out;
}

}  // namespace anomint
