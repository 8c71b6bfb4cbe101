#pragma once

// Text syntax for path-algebra elements:
//   3*a*b - 1/2*e_v + z^2 + (w + 1)*X*Y^-1
// `^k` is repeated self-composition, `X^-k` is (X^-1)^k where X^-1 is the
// formal inverse arrow, `e_v` the idempotent at v, `e` the unit (sum of all
// idempotents) and a bare number c means c*e. Non-rational coefficients are
// printed in parentheses and `w` denotes the primitive root of unity.

#include <qlocal/ncpoly.hpp>

#include <cctype>
#include <string>
#include <string_view>

namespace qlocal {

/// Suffix naming the formal inverse of an arrow.
inline const std::string kInverseSuffix = "^-1";

inline std::string format_word(const Quiver& q, const Word& w) {
  if (w.is_vertex()) return "e_" + q.vertex_name(w.head());
  std::string out;
  std::size_t i = 0;
  while (i < w.length()) {
    std::size_t j = i;
    while (j < w.length() && w[j] == w[i]) ++j;
    std::size_t run = j - i;
    const std::string& id = q.arrow(w[i]).id;
    if (!out.empty()) out += '*';
    bool inverse = id.size() > kInverseSuffix.size() &&
                   id.compare(id.size() - kInverseSuffix.size(), kInverseSuffix.size(), kInverseSuffix) == 0;
    if (run == 1) {
      out += id;
    } else if (inverse) {
      out += id.substr(0, id.size() - 1) + std::to_string(run);
    } else {
      out += id + "^" + std::to_string(run);
    }
    i = j;
  }
  return out;
}

inline std::string format_poly(const NCPoly& p) {
  if (p.is_zero()) return "0";
  const Quiver& q = p.quiver();
  std::string out;
  for (auto& [w, c] : p.terms()) {
    bool negative = c.is_rational() && c.rational() < 0;
    Scalar mag = negative ? -c : c;
    std::string coef;
    if (!mag.is_one()) coef = mag.is_rational() ? mag.str() + "*" : "(" + mag.str() + ")*";
    std::string term = coef + format_word(q, w);
    if (out.empty())
      out = (negative ? "-" : "") + term;
    else
      out += (negative ? " - " : " + ") + term;
  }
  return out;
}

class PolyParser {
 public:
  PolyParser(QuiverPtr q, std::string_view text, int field_order = 1)
      : q_(std::move(q)), text_(text), order_(field_order) {}

  NCPoly parse() {
    NCPoly p = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error("polynomial syntax error at offset " + std::to_string(pos_) + " in '" +
                std::string(text_) + "': " + why);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  static bool id_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool id_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == kStarMarker;
  }

  std::string integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return std::string(text_.substr(start, pos_ - start));
  }

  NCPoly constant(const Scalar& c) {
    NCPoly one = NCPoly::one(q_);
    return c * one;
  }

  NCPoly expr() {
    NCPoly acc(q_);
    bool first = true;
    while (true) {
      skip();
      bool neg = false;
      if (accept('-'))
        neg = true;
      else if (!accept('+') && !first)
        break;
      NCPoly t = term();
      if (neg)
        acc -= t;
      else
        acc += t;
      first = false;
      if (!peek('+') && !peek('-')) break;
    }
    return acc;
  }

  NCPoly term() {
    NCPoly acc = power();
    while (accept('*')) acc = acc * power();
    return acc;
  }

  NCPoly power() {
    skip();
    std::string arrow_id;
    NCPoly base = atom(&arrow_id);
    if (!accept('^')) return base;
    bool negative = accept('-');
    long k = std::stol(integer());
    if (negative) {
      if (arrow_id.empty()) fail("negative powers only apply to arrows");
      auto inv = q_->find_arrow(arrow_id + kInverseSuffix);
      if (!inv) fail("arrow '" + arrow_id + "' has no inverse");
      base = NCPoly::arrow(q_, *inv);
    }
    NCPoly r = k == 0 ? NCPoly::one(q_) : base;
    for (long i = 1; i < k; ++i) r = r * base;
    return r;
  }

  NCPoly atom(std::string* arrow_id) {
    skip();
    if (pos_ == text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NCPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = integer(), den = "1";
      if (accept('/')) den = integer();
      if (mpz_class(den) == 0) fail("zero denominator");
      mpq_class v{mpz_class(num), mpz_class(den)};
      v.canonicalize();
      return constant(Scalar(v));
    }
    if (!id_start(c)) fail("unexpected '" + std::string(1, c) + "'");
    std::size_t start = pos_;
    while (pos_ < text_.size() && id_char(text_[pos_])) ++pos_;
    std::string id(text_.substr(start, pos_ - start));
    if (auto a = q_->find_arrow(id)) {
      *arrow_id = id;
      return NCPoly::arrow(q_, *a);
    }
    if (id == "e") return NCPoly::one(q_);
    if (id.size() > 2 && id.compare(0, 2, "e_") == 0) {
      if (auto v = q_->find_vertex(id.substr(2))) return NCPoly::vertex(q_, *v);
    }
    if (id == "w") {
      if (order_ == 1) fail("'w' needs a cyclotomic field");
      return constant(Scalar::root_of_unity(order_, 1));
    }
    fail("unknown arrow or vertex '" + id + "'");
  }

  QuiverPtr q_;
  std::string_view text_;
  int order_;
  std::size_t pos_ = 0;
};

inline NCPoly parse_poly(const QuiverPtr& q, std::string_view text, int field_order = 1) {
  return PolyParser(q, text, field_order).parse();
}

}  // namespace qlocal
