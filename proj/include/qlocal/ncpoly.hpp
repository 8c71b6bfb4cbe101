#pragma once

// Path words, elements of path algebras, and superpotential calculus.
//
// Paths compose like functions: in a word a1 a2 ... ak we have
// t(a_i) = h(a_{i+1}), so the word starts at t(ak) and ends at h(a1).
//
// Word order: a word precedes another when it is shorter, or equally long and
// lexicographically smaller in arrow declaration index (vertex index for
// idempotents). The first term of a polynomial in this order is its leading
// term, so leading terms live in the lowest degree and, within a degree,
// earlier-declared arrows dominate.

#include <qlocal/field.hpp>
#include <qlocal/quiver.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qlocal {

class Word {
 public:
  Word() = default;

  static Word vertex(std::size_t v) {
    Word w;
    w.head_ = w.tail_ = static_cast<std::uint32_t>(v);
    return w;
  }

  static Word arrow(const Quiver& q, std::size_t a) {
    Word w;
    w.arrows_.push_back(static_cast<std::uint32_t>(a));
    w.head_ = static_cast<std::uint32_t>(q.arrow(a).head);
    w.tail_ = static_cast<std::uint32_t>(q.arrow(a).tail);
    return w;
  }

  /// Nonempty arrow sequence; throws if two neighbours do not compose.
  static Word path(const Quiver& q, const std::vector<std::size_t>& arrows) {
    if (arrows.empty()) throw Error("empty path needs a vertex");
    Word w = arrow(q, arrows[0]);
    for (std::size_t i = 1; i < arrows.size(); ++i) {
      auto next = compose(w, arrow(q, arrows[i]));
      if (!next)
        throw Error("arrows '" + q.arrow(arrows[i - 1]).id + "' and '" + q.arrow(arrows[i]).id +
                    "' do not compose");
      w = std::move(*next);
    }
    return w;
  }

  /// u * v, or nothing when t(u) != h(v).
  static std::optional<Word> compose(const Word& u, const Word& v) {
    if (u.tail_ != v.head_) return std::nullopt;
    if (u.arrows_.empty()) return v;
    if (v.arrows_.empty()) return u;
    Word w;
    w.arrows_.reserve(u.arrows_.size() + v.arrows_.size());
    w.arrows_ = u.arrows_;
    w.arrows_.insert(w.arrows_.end(), v.arrows_.begin(), v.arrows_.end());
    w.head_ = u.head_;
    w.tail_ = v.tail_;
    return w;
  }

  std::size_t length() const { return arrows_.size(); }
  bool is_vertex() const { return arrows_.empty(); }
  std::size_t head() const { return head_; }
  std::size_t tail() const { return tail_; }
  bool is_cycle() const { return head_ == tail_ && !arrows_.empty(); }
  const std::vector<std::uint32_t>& arrows() const { return arrows_; }
  std::size_t operator[](std::size_t i) const { return arrows_[i]; }

  /// Contiguous piece [pos, pos+len); a zero-length piece is the idempotent
  /// at the vertex reached just before position pos.
  Word sub(const Quiver& q, std::size_t pos, std::size_t len) const {
    if (len == 0) {
      std::size_t v = pos == 0 ? head_ : q.arrow(arrows_[pos - 1]).tail;
      return vertex(v);
    }
    Word w;
    w.arrows_.assign(arrows_.begin() + static_cast<std::ptrdiff_t>(pos),
                     arrows_.begin() + static_cast<std::ptrdiff_t>(pos + len));
    w.head_ = static_cast<std::uint32_t>(q.arrow(w.arrows_.front()).head);
    w.tail_ = static_cast<std::uint32_t>(q.arrow(w.arrows_.back()).tail);
    return w;
  }

  /// Vertices visited, from the start of the path (t of the last arrow) to
  /// its end (h of the first arrow), in word position order: entry k is the
  /// vertex between arrow k-1 and arrow k, entry 0 the head.
  std::vector<std::size_t> junctions(const Quiver& q) const {
    std::vector<std::size_t> out;
    out.push_back(head_);
    for (auto a : arrows_) out.push_back(q.arrow(a).tail);
    return out;
  }

  friend bool operator==(const Word& a, const Word& b) {
    return a.arrows_ == b.arrows_ && a.head_ == b.head_ && a.tail_ == b.tail_;
  }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }

  /// The word order described at the top of this header.
  friend bool operator<(const Word& a, const Word& b) {
    if (a.arrows_.size() != b.arrows_.size()) return a.arrows_.size() < b.arrows_.size();
    if (a.arrows_ != b.arrows_) return a.arrows_ < b.arrows_;
    if (a.head_ != b.head_) return a.head_ < b.head_;
    return a.tail_ < b.tail_;
  }

 private:
  std::vector<std::uint32_t> arrows_;
  std::uint32_t head_ = 0, tail_ = 0;
  friend Word rotate_cycle(const Quiver& q, const Word& w, std::size_t i);
};

/// Rotation of a cycle with correctly recomputed end vertex.
inline Word rotate_cycle(const Quiver& q, const Word& w, std::size_t i) {
  if (!w.is_cycle()) throw Error("only cycles can be rotated");
  Word r = w;
  std::rotate(r.arrows_.begin(), r.arrows_.begin() + static_cast<std::ptrdiff_t>(i), r.arrows_.end());
  r.head_ = static_cast<std::uint32_t>(q.arrow(r.arrows_.front()).head);
  r.tail_ = static_cast<std::uint32_t>(q.arrow(r.arrows_.back()).tail);
  return r;
}

/// Lexicographically least rotation (by arrow index) of a cycle.
inline Word canonical_rotation(const Quiver& q, const Word& w) {
  Word best = w;
  for (std::size_t i = 1; i < w.length(); ++i) {
    Word r = rotate_cycle(q, w, i);
    if (r.arrows() < best.arrows()) best = std::move(r);
  }
  return best;
}

/// Finite linear combination of words over one quiver.
class NCPoly {
 public:
  using Terms = std::map<Word, Scalar>;

  NCPoly() = default;
  explicit NCPoly(QuiverPtr q) : q_(std::move(q)) {}

  static NCPoly zero(QuiverPtr q) { return NCPoly(std::move(q)); }
  static NCPoly word(QuiverPtr q, Word w, Scalar c = 1) {
    NCPoly p(std::move(q));
    p.add_term(std::move(w), c);
    return p;
  }
  static NCPoly vertex(QuiverPtr q, std::size_t v) { return word(q, Word::vertex(v)); }
  static NCPoly arrow(QuiverPtr q, std::size_t a) {
    auto w = Word::arrow(*q, a);
    return word(std::move(q), std::move(w));
  }
  /// Sum of all vertex idempotents.
  static NCPoly one(QuiverPtr q) {
    NCPoly p(q);
    for (std::size_t v = 0; v < q->num_vertices(); ++v) p.add_term(Word::vertex(v), 1);
    return p;
  }

  const QuiverPtr& quiver_ptr() const { return q_; }
  const Quiver& quiver() const {
    if (!q_) throw Error("polynomial has no quiver");
    return *q_;
  }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Scalar coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add_term(const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  const Word& leading_word() const {
    if (is_zero()) throw Error("zero polynomial has no leading word");
    return terms_.begin()->first;
  }
  const Scalar& leading_coeff() const {
    if (is_zero()) throw Error("zero polynomial has no leading coefficient");
    return terms_.begin()->second;
  }

  /// Lowest word length present (the graded "order" of f).
  std::size_t min_degree() const {
    if (is_zero()) throw Error("degree of the zero polynomial");
    return terms_.begin()->first.length();
  }
  /// Highest word length present.
  std::size_t max_degree() const {
    if (is_zero()) throw Error("degree of the zero polynomial");
    return terms_.rbegin()->first.length();
  }
  bool is_homogeneous() const { return is_zero() || min_degree() == max_degree(); }

  NCPoly homogeneous_part(std::size_t d) const {
    NCPoly r(q_);
    for (auto& [w, c] : terms_)
      if (w.length() == d) r.terms_.emplace_hint(r.terms_.end(), w, c);
    return r;
  }

  /// Homogeneous component of lowest degree.
  NCPoly min_part() const {
    if (is_zero()) throw Error("min_part of the zero polynomial");
    return homogeneous_part(min_degree());
  }

  /// Drops every term longer than d.
  NCPoly truncated(std::size_t d) const {
    NCPoly r(q_);
    for (auto& [w, c] : terms_) {
      if (w.length() > d) break;
      r.terms_.emplace_hint(r.terms_.end(), w, c);
    }
    return r;
  }

  /// Single (head, tail) pair shared by every term, if there is one.
  std::optional<std::pair<std::size_t, std::size_t>> endpoints() const {
    if (is_zero()) return std::nullopt;
    auto e = std::make_pair(terms_.begin()->first.head(), terms_.begin()->first.tail());
    for (auto& [w, c] : terms_)
      if (w.head() != e.first || w.tail() != e.second) return std::nullopt;
    return e;
  }

  /// e_h f e_t for every (h, t) pair occurring in f.
  std::map<std::pair<std::size_t, std::size_t>, NCPoly> split_by_endpoints() const {
    std::map<std::pair<std::size_t, std::size_t>, NCPoly> out;
    for (auto& [w, c] : terms_) {
      auto key = std::make_pair(w.head(), w.tail());
      auto it = out.find(key);
      if (it == out.end()) it = out.emplace(key, NCPoly(q_)).first;
      it->second.terms_.emplace_hint(it->second.terms_.end(), w, c);
    }
    return out;
  }

  NCPoly& operator+=(const NCPoly& o) {
    check_compatible(o);
    if (!q_) q_ = o.q_;
    for (auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  NCPoly& operator-=(const NCPoly& o) {
    check_compatible(o);
    if (!q_) q_ = o.q_;
    for (auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  NCPoly& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [w, c] : terms_) c *= s;
    return *this;
  }

  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator-(NCPoly a) { return a *= Scalar(-1); }
  friend NCPoly operator*(const Scalar& s, NCPoly a) { return a *= s; }
  friend NCPoly operator*(NCPoly a, const Scalar& s) { return a *= s; }

  /// Bilinear extension of path concatenation; incomposable pairs vanish.
  friend NCPoly operator*(const NCPoly& f, const NCPoly& g) {
    f.check_compatible(g);
    NCPoly r(f.q_ ? f.q_ : g.q_);
    for (auto& [u, a] : f.terms_)
      for (auto& [v, b] : g.terms_)
        if (auto w = Word::compose(u, v)) r.add_term(*w, a * b);
    return r;
  }

  /// Word-level product with truncation at degree bound: terms longer than
  /// bound are not formed.
  static NCPoly multiply_truncated(const Word& left, const NCPoly& f, const Word& right,
                                   std::size_t bound, const Scalar& scale = 1) {
    NCPoly r(f.q_);
    for (auto& [w, c] : f.terms_) {
      if (left.length() + w.length() + right.length() > bound) break;
      auto lw = Word::compose(left, w);
      if (!lw) continue;
      auto full = Word::compose(*lw, right);
      if (!full) continue;
      r.add_term(*full, c * scale);
    }
    return r;
  }

  friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const NCPoly& a, const NCPoly& b) { return !(a == b); }

  void check_compatible(const NCPoly& o) const {
    if (q_ && o.q_ && q_ != o.q_ && !(*q_ == *o.q_)) throw Error("polynomials over different quivers");
  }

 private:
  QuiverPtr q_;
  Terms terms_;
};

/// Linear combination of cycles up to rotation; each class is stored under its
/// lexicographically least rotation.
class Superpotential {
 public:
  explicit Superpotential(QuiverPtr q) : q_(std::move(q)) {}

  /// Every word of p must be a cycle of positive length.
  static Superpotential from_poly(const NCPoly& p) {
    Superpotential w(p.quiver_ptr());
    for (auto& [word, c] : p.terms()) w.add_cycle(word, c);
    return w;
  }

  void add_cycle(const Word& w, const Scalar& c) {
    if (!w.is_cycle()) throw Error("superpotential terms must be cycles of positive length");
    if (c.is_zero()) return;
    Word key = canonical_rotation(*q_, w);
    auto [it, inserted] = classes_.emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) classes_.erase(it);
    }
  }

  const QuiverPtr& quiver_ptr() const { return q_; }
  const Quiver& quiver() const { return *q_; }
  const std::map<Word, Scalar>& classes() const { return classes_; }
  bool is_zero() const { return classes_.empty(); }

  NCPoly as_poly() const {
    NCPoly p(q_);
    for (auto& [w, c] : classes_) p.add_term(w, c);
    return p;
  }

  friend bool operator==(const Superpotential& a, const Superpotential& b) {
    return a.classes_ == b.classes_;
  }

 private:
  QuiverPtr q_;
  std::map<Word, Scalar> classes_;
};

/// Sum over each class of all rotations of its representative (with
/// repetition, so XYXY gives 2XYXY + 2YXYX).
inline NCPoly cyclic_symmetrize(const Superpotential& w) {
  NCPoly out(w.quiver_ptr());
  for (auto& [word, c] : w.classes())
    for (std::size_t i = 0; i < word.length(); ++i) out.add_term(rotate_cycle(w.quiver(), word, i), c);
  return out;
}

/// p b^{-1}: strip b from the right of every word ending in b.
inline NCPoly right_strip(const NCPoly& p, std::size_t b) {
  const Quiver& q = p.quiver();
  NCPoly out(p.quiver_ptr());
  for (auto& [w, c] : p.terms()) {
    if (w.is_vertex() || w[w.length() - 1] != b) continue;
    out.add_term(w.length() > 1 ? w.sub(q, 0, w.length() - 1) : Word::vertex(q.arrow(b).head), c);
  }
  return out;
}

/// b^{-1} p: strip b from the left of every word starting with b.
inline NCPoly left_strip(std::size_t b, const NCPoly& p) {
  const Quiver& q = p.quiver();
  NCPoly out(p.quiver_ptr());
  for (auto& [w, c] : p.terms()) {
    if (w.is_vertex() || w[0] != b) continue;
    out.add_term(w.length() > 1 ? w.sub(q, 1, w.length() - 1) : Word::vertex(q.arrow(b).tail), c);
  }
  return out;
}

/// Cyclic derivative with respect to arrow a.
inline NCPoly cyclic_derivative(const Superpotential& w, std::size_t a) {
  return right_strip(cyclic_symmetrize(w), a);
}

}  // namespace qlocal
