#pragma once

// Exact scalars: rationals, or elements of a cyclotomic field Q(w) with w a
// primitive m-th root of unity, stored as coefficient vectors reduced modulo
// the m-th cyclotomic polynomial.

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qlocal {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

namespace detail {

using QPoly = std::vector<mpq_class>;  // coefficient of x^i at index i

inline void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Integer coefficients of the m-th cyclotomic polynomial (monic).
inline const std::vector<mpz_class>& cyclotomic_poly(int m) {
  static std::mutex mu;
  static std::map<int, std::vector<mpz_class>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(m); it != cache.end()) return it->second;

  // x^m - 1 divided by Phi_d for every proper divisor d of m.
  std::vector<mpz_class> num(static_cast<std::size_t>(m) + 1, 0);
  num[0] = -1;
  num[static_cast<std::size_t>(m)] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    std::vector<mpz_class> den;
    if (auto it = cache.find(d); it != cache.end()) {
      den = it->second;
    } else {
      throw Error("cyclotomic divisors must be cached first");  // see phi_poly
    }
    // exact division by a monic polynomial
    std::vector<mpz_class> quot(num.size() - den.size() + 1, 0);
    for (std::size_t i = quot.size(); i-- > 0;) {
      mpz_class c = num[i + den.size() - 1];
      quot[i] = c;
      for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
    num = std::move(quot);
  }
  return cache.emplace(m, std::move(num)).first->second;
}

inline const std::vector<mpz_class>& phi_poly(int m) {
  for (int d = 1; d < m; ++d)
    if (m % d == 0) cyclotomic_poly(d);
  return cyclotomic_poly(m);
}

inline void reduce_mod(QPoly& p, const std::vector<mpz_class>& modulus) {
  const std::size_t deg = modulus.size() - 1;
  for (std::size_t i = p.size(); i-- > deg;) {
    if (p[i] == 0) continue;
    mpq_class c = p[i];
    for (std::size_t j = 0; j <= deg; ++j) p[i - deg + j] -= c * mpq_class(modulus[j]);
  }
  if (p.size() > deg) p.resize(deg);
}

// (q, r) with a = q*b + r
inline std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  trim(a);
  QPoly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
  while (!a.empty() && a.size() >= b.size()) {
    std::size_t shift = a.size() - b.size();
    mpq_class c = a.back() / b.back();
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline QPoly poly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

inline QPoly poly_sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

}  // namespace detail

inline int euler_phi(int m) {
  int result = m;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

/// An exact field element. Order 1 is the plain rational field; any other
/// order m is Q(w) with w = exp(2*pi*i/m). Orders 1 and 2 coincide and are
/// normalized to 1. Arithmetic between two different nontrivial orders throws
/// FieldMismatch; rationals embed into every cyclotomic field.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  Scalar(mpq_class v) : q_(std::move(v)) { q_.canonicalize(); }  // NOLINT
  Scalar(long num, long den) : q_(num, den) {
    if (den == 0) throw Error("zero denominator");
    q_.canonicalize();
  }

  /// w^k in Q(w), w a primitive m-th root of unity.
  static Scalar root_of_unity(int m, long k) {
    if (m <= 0) throw Error("cyclotomic order must be positive");
    long e = ((k % m) + m) % m;
    if (m <= 2) return Scalar(e == 0 || m == 1 ? 1 : -1);
    detail::QPoly p(static_cast<std::size_t>(e) + 1, 0);
    p[static_cast<std::size_t>(e)] = 1;
    return from_poly(m, std::move(p));
  }

  /// Element of Q(w) given by coefficients of 1, w, w^2, ... (not yet reduced).
  static Scalar from_poly(int m, detail::QPoly p) {
    if (m <= 2) {
      mpq_class v = 0, sign = 1;
      for (auto& c : p) {
        v += c * sign;
        if (m == 2) sign = -sign;
      }
      return Scalar(v);
    }
    Scalar s;
    s.order_ = m;
    detail::reduce_mod(p, detail::phi_poly(m));
    p.resize(static_cast<std::size_t>(euler_phi(m)), 0);
    s.c_ = std::move(p);
    s.collapse();
    return s;
  }

  int order() const { return order_; }
  bool is_rational() const { return order_ == 1; }
  const mpq_class& rational() const {
    if (!is_rational()) throw Error("scalar is not rational");
    return q_;
  }

  bool is_zero() const { return is_rational() && q_ == 0; }
  bool is_one() const { return is_rational() && q_ == 1; }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_rational() && b.is_rational()) return Scalar(mpq_class(a.q_ + b.q_));
    int m = common_order(a, b);
    auto pa = a.as_poly(m), pb = b.as_poly(m);
    if (pa.size() < pb.size()) pa.resize(pb.size(), 0);
    for (std::size_t i = 0; i < pb.size(); ++i) pa[i] += pb[i];
    return from_poly(m, std::move(pa));
  }
  friend Scalar operator-(const Scalar& a) {
    Scalar r = a;
    r.q_ = -r.q_;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_rational() && b.is_rational()) return Scalar(mpq_class(a.q_ * b.q_));
    if (a.is_rational() || b.is_rational()) {
      const Scalar& r = a.is_rational() ? a : b;
      Scalar s = a.is_rational() ? b : a;
      for (auto& c : s.c_) c *= r.q_;
      s.collapse();
      return s;
    }
    int m = common_order(a, b);
    return from_poly(m, detail::poly_mul(a.c_, b.c_));
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  Scalar inverse() const {
    if (is_zero()) throw Error("division by zero");
    if (is_rational()) return Scalar(mpq_class(1 / q_));
    // extended Euclid: find u with u*self = 1 mod Phi_m
    const auto& phi = detail::phi_poly(order_);
    detail::QPoly r0(phi.begin(), phi.end()), r1 = c_;
    detail::trim(r1);
    detail::QPoly s0, s1{1};
    while (!r1.empty()) {
      auto [q, r] = detail::divmod(r0, r1);
      detail::QPoly s2 = detail::poly_sub(s0, detail::poly_mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    // r0 is a nonzero constant since Phi_m is irreducible
    mpq_class inv = 1 / r0[0];
    for (auto& c : s0) c *= inv;
    return from_poly(order_, std::move(s0));
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.order_ != b.order_) return false;
    return a.is_rational() ? a.q_ == b.q_ : a.c_ == b.c_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Total order used only for canonical output (not a field order).
  friend bool canonical_less(const Scalar& a, const Scalar& b) {
    if (a.order_ != b.order_) return a.order_ < b.order_;
    if (a.is_rational()) return a.q_ < b.q_;
    return a.c_ < b.c_;
  }

  /// "3/2", "-1", or for cyclotomic values a sum like "w^2 - 1/2".
  std::string str() const {
    if (is_rational()) return q_.get_str();
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      const mpq_class& c = c_[i];
      if (c == 0) continue;
      mpq_class mag = abs(c);
      std::string mono = i == 0 ? "" : (i == 1 ? "w" : "w^" + std::to_string(i));
      std::string term;
      if (mono.empty())
        term = mag.get_str();
      else if (mag == 1)
        term = mono;
      else
        term = mag.get_str() + "*" + mono;
      if (out.empty())
        out = (c < 0 ? "-" : "") + term;
      else
        out += (c < 0 ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
  }

  /// True when str() is a single signed term, so it needs no parentheses as a
  /// coefficient.
  bool is_monomial() const {
    if (is_rational()) return true;
    int n = 0;
    for (auto& c : c_) n += c != 0;
    return n <= 1;
  }

  /// Parse a rational "p/q" or a polynomial in w such as "2*w^3 - 1/2".
  /// The symbol w is only legal when order > 2.
  static Scalar parse(std::string_view text, int order = 1);

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

 private:
  static int common_order(const Scalar& a, const Scalar& b) {
    if (a.is_rational()) return b.order_;
    if (b.is_rational()) return a.order_;
    if (a.order_ != b.order_)
      throw FieldMismatch("mixed cyclotomic orders " + std::to_string(a.order_) + " and " +
                          std::to_string(b.order_));
    return a.order_;
  }

  detail::QPoly as_poly(int m) const {
    if (is_rational()) {
      detail::QPoly p(static_cast<std::size_t>(euler_phi(m)), 0);
      p[0] = q_;
      return p;
    }
    (void)m;
    return c_;
  }

  // keep genuinely rational values in rational form so equality is canonical
  void collapse() {
    if (is_rational()) return;
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return;
    q_ = c_.empty() ? mpq_class(0) : c_[0];
    c_.clear();
    order_ = 1;
  }

  int order_ = 1;
  mpq_class q_ = 0;
  detail::QPoly c_;
};

inline Scalar Scalar::parse(std::string_view text, int order) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) -> Scalar {
    throw Error("bad scalar '" + std::string(text) + "': " + why);
  };
  auto read_int = [&]() -> std::string {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    return std::string(text.substr(start, pos - start));
  };

  Scalar total = 0;
  bool first = true;
  skip();
  if (pos == text.size()) fail("empty");
  while (true) {
    skip();
    if (pos == text.size()) break;
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    Scalar term = 1;
    bool any = false;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      std::string num = read_int();
      std::string den = "1";
      if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den = read_int();
        if (den.empty()) fail("missing denominator");
      }
      mpq_class q{mpz_class(num), mpz_class(den)};
      if (mpz_class(den) == 0) fail("zero denominator");
      q.canonicalize();
      term = Scalar(q);
      any = true;
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        skip();
        if (pos == text.size() || text[pos] != 'w') fail("expected 'w' after '*'");
      }
    }
    if (pos < text.size() && text[pos] == 'w') {
      ++pos;
      long e = 1;
      skip();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        skip();
        std::string ex = read_int();
        if (ex.empty()) fail("missing exponent");
        e = std::stol(ex);
      }
      if (order == 1) fail("'w' requires a cyclotomic field");
      term *= Scalar::root_of_unity(order, e);
      any = true;
    }
    if (!any) fail("expected a number or 'w'");
    total += sign == 1 ? term : -term;
  }
  return total;
}

}  // namespace qlocal
