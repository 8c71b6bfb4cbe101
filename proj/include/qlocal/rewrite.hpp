#pragma once

// Degree-truncated noncommutative rewriting for quotients CQ / I.
//
// All computations take place in CQ / (I + W^{D+1}), W the arrow ideal, which
// is finite dimensional. Leading words follow the word order of ncpoly.hpp
// (lowest degree first), so leading terms of reduced elements are the leading
// words of their minimal parts and the irreducible words of degree d count
// the d-th graded piece of the associated graded algebra. Completion is the
// usual overlap (diamond lemma) procedure; a relation whose leading word is an
// idempotent e_v forces e_v into the ideal modulo W^{D+1}, so the vertex is
// marked dead and every word through it vanishes.

#include <qlocal/ncpoly.hpp>
#include <qlocal/presentation.hpp>
#include <qlocal/text.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qlocal {

namespace detail {

/// One summand coeff * left * r_relation * right of a lifted combination.
struct LiftTerm {
  Scalar coeff;
  Word left;
  std::size_t relation;
  Word right;
};

/// A polynomial together with (optionally) its expression in the input
/// relations.
struct Tracked {
  NCPoly value;
  std::vector<LiftTerm> lift;
};

inline bool contains_at(const Word& w, const Word& piece, std::size_t pos) {
  for (std::size_t k = 0; k < piece.length(); ++k)
    if (w[pos + k] != piece[k]) return false;
  return true;
}

/// First position where `piece` (nonempty) occurs inside `w`.
inline std::optional<std::size_t> find_subword(const Word& w, const Word& piece) {
  if (piece.length() > w.length()) return std::nullopt;
  for (std::size_t pos = 0; pos + piece.length() <= w.length(); ++pos)
    if (contains_at(w, piece, pos)) return pos;
  return std::nullopt;
}

class Completion {
 public:
  Completion(QuiverPtr q, std::size_t bound, bool track)
      : q_(std::move(q)), bound_(bound), track_(track), dead_(q_->num_vertices(), false) {}

  void run(const std::vector<NCPoly>& relations) {
    for (std::size_t i = 0; i < relations.size(); ++i) {
      Tracked t{relations[i].truncated(bound_), {}};
      if (track_ && !relations[i].is_zero()) {
        auto [h, tl] = *relations[i].endpoints();
        t.lift.push_back({1, Word::vertex(h), i, Word::vertex(tl)});
      }
      pending_.push_back(std::move(t));
    }
    while (!pending_.empty()) {
      Tracked next = pop_smallest();
      Tracked r = reduce(std::move(next));
      if (r.value.is_zero()) {
        if (track_ && !r.lift.empty()) syzygies_.push_back(std::move(r.lift));
        continue;
      }
      const Word lead = r.value.leading_word();
      if (lead.is_vertex()) {
        if (track_) throw Error("tracked completion met an invertible idempotent");
        dead_[lead.head()] = true;
        for (auto& g : rules_) pending_.push_back(std::move(g));
        rules_.clear();
        continue;
      }
      Scalar inv = r.value.leading_coeff().inverse();
      scale(r, inv);
      // existing rules whose leading word contains the new one go back to the queue
      std::vector<Tracked> keep;
      for (auto& g : rules_) {
        if (find_subword(g.value.leading_word(), lead))
          pending_.push_back(std::move(g));
        else
          keep.push_back(std::move(g));
      }
      rules_ = std::move(keep);
      rules_.push_back(std::move(r));
      const std::size_t fresh = rules_.size() - 1;
      for (std::size_t k = 0; k < rules_.size(); ++k) {
        add_overlaps(fresh, k);
        if (k != fresh) add_overlaps(k, fresh);
      }
    }
    // tails fully reduced, rules sorted by leading word
    for (std::size_t k = 0; k < rules_.size(); ++k) {
      Tracked g = rules_[k];
      const Word lead = g.value.leading_word();
      // the lift of g stays attached while only its tail is reduced
      Tracked tail{std::move(g.value), std::move(g.lift)};
      tail.value.add_term(lead, Scalar(-1));
      Tracked reduced = reduce(std::move(tail));
      reduced.value.add_term(lead, Scalar(1));
      rules_[k] = std::move(reduced);
    }
    std::sort(rules_.begin(), rules_.end(), [](const Tracked& a, const Tracked& b) {
      return a.value.leading_word() < b.value.leading_word();
    });
  }

  /// Full normal form of f in the truncated quotient.
  NCPoly normal_form(const NCPoly& f) const {
    Tracked t{f.truncated(bound_), {}};
    return reduce_impl(std::move(t), false).value;
  }

  bool visits_dead(const Word& w) const {
    if (w.is_vertex()) return dead_[w.head()];
    if (dead_[w.head()]) return true;
    for (std::size_t k = 0; k < w.length(); ++k)
      if (dead_[q_->arrow(w[k]).tail]) return true;
    return false;
  }

  /// Some rule's leading word occurs in w.
  bool reducible(const Word& w) const {
    if (visits_dead(w)) return true;
    for (const auto& g : rules_)
      if (find_subword(w, g.value.leading_word())) return true;
    return false;
  }

  /// Some rule's leading word is a suffix of w.
  bool reducible_at_end(const Word& w) const {
    for (const auto& g : rules_) {
      const Word& l = g.value.leading_word();
      if (l.length() <= w.length() && contains_at(w, l, w.length() - l.length())) return true;
    }
    return false;
  }

  const std::vector<Tracked>& rules() const { return rules_; }
  const std::vector<bool>& dead() const { return dead_; }
  const std::vector<std::vector<LiftTerm>>& syzygies() const { return syzygies_; }

 private:
  Tracked pop_smallest() {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pending_.size(); ++k) {
      const auto& a = pending_[k].value;
      const auto& b = pending_[best].value;
      if (b.is_zero()) break;
      if (a.is_zero() || a.leading_word() < b.leading_word()) best = k;
    }
    Tracked t = std::move(pending_[best]);
    pending_.erase(pending_.begin() + static_cast<std::ptrdiff_t>(best));
    return t;
  }

  void scale(Tracked& t, const Scalar& c) const {
    t.value *= c;
    for (auto& l : t.lift) l.coeff *= c;
  }

  /// target += c * left * src * right
  void add_multiple(Tracked& target, const Scalar& c, const Word& left, const Tracked& src,
                    const Word& right) const {
    target.value += NCPoly::multiply_truncated(left, src.value, right, bound_, c);
    if (!track_) return;
    for (const auto& l : src.lift) {
      auto nl = Word::compose(left, l.left);
      auto nr = Word::compose(l.right, right);
      if (!nl || !nr) continue;
      target.lift.push_back({c * l.coeff, *nl, l.relation, *nr});
    }
  }

  void add_overlaps(std::size_t i, std::size_t j) {
    const Word a = rules_[i].value.leading_word();
    const Word b = rules_[j].value.leading_word();
    const std::size_t la = a.length(), lb = b.length();
    for (std::size_t k = 1; k < std::min(la, lb); ++k) {
      if (la + lb - k > bound_) continue;
      // suffix of a of length k equals prefix of b
      bool match = true;
      for (std::size_t t = 0; t < k && match; ++t) match = a[la - k + t] == b[t];
      if (!match) continue;
      Word right = b.sub(*q_, k, lb - k);
      Word left = a.sub(*q_, 0, la - k);
      Tracked s{NCPoly(q_), {}};
      add_multiple(s, 1, Word::vertex(a.head()), rules_[i], right);
      add_multiple(s, -1, left, rules_[j], Word::vertex(b.tail()));
      pending_.push_back(std::move(s));
    }
  }

  Tracked reduce(Tracked t) const { return reduce_impl(std::move(t), track_); }

  Tracked reduce_impl(Tracked t, bool track) const {
    NCPoly work = t.value.truncated(bound_);
    Tracked out{NCPoly(q_), std::move(t.lift)};
    if (!track) out.lift.clear();
    while (!work.is_zero()) {
      const Word w = work.leading_word();
      const Scalar c = work.leading_coeff();
      if (visits_dead(w)) {
        work.add_term(w, -c);
        continue;
      }
      bool done = false;
      for (std::size_t k = 0; k < rules_.size() && !done; ++k) {
        const Tracked& g = rules_[k];
        const Word& l = g.value.leading_word();
        auto pos = find_subword(w, l);
        if (!pos) continue;
        Word left = w.sub(*q_, 0, *pos);
        Word right = w.sub(*q_, *pos + l.length(), w.length() - *pos - l.length());
        // rules are monic
        Tracked delta{NCPoly(q_), {}};
        add_multiple(delta, -c, left, g, right);
        work += delta.value;
        if (track)
          for (auto& lt : delta.lift) out.lift.push_back(std::move(lt));
        done = true;
      }
      if (!done) {
        out.value.add_term(w, c);
        work.add_term(w, -c);
      }
    }
    return out;
  }

  QuiverPtr q_;
  std::size_t bound_;
  bool track_;
  std::vector<bool> dead_;
  std::vector<Tracked> rules_;
  std::vector<Tracked> pending_;
  std::vector<std::vector<LiftTerm>> syzygies_;
};

}  // namespace detail

struct Rule {
  Word lead;
  NCPoly tail;  // lead -> tail
};

class RewriteSystem {
 public:
  RewriteSystem(QuiverPtr q, std::vector<NCPoly> relations, std::size_t bound)
      : q_(q), relations_(std::move(relations)), bound_(bound),
        engine_(std::make_shared<detail::Completion>(q, bound, false)) {
    engine_->run(relations_);
  }

  const Quiver& quiver() const { return *q_; }
  const QuiverPtr& quiver_ptr() const { return q_; }
  std::size_t degree_bound() const { return bound_; }
  /// Normal forms and ideal membership are exact modulo W^{D+1} up to here.
  std::size_t complete_up_to() const { return bound_; }

  std::vector<Rule> rules() const {
    std::vector<Rule> out;
    for (const auto& g : engine_->rules()) {
      NCPoly tail = -g.value;
      tail.add_term(g.value.leading_word(), 1);
      out.push_back({g.value.leading_word(), std::move(tail)});
    }
    return out;
  }
  /// Reduced Groebner-style basis elements (monic, leading word first).
  std::vector<NCPoly> basis() const {
    std::vector<NCPoly> out;
    for (const auto& g : engine_->rules()) out.push_back(g.value);
    return out;
  }
  /// Vertices whose idempotent lies in the ideal modulo W^{D+1}.
  std::vector<std::size_t> dead_vertices() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < engine_->dead().size(); ++v)
      if (engine_->dead()[v]) out.push_back(v);
    return out;
  }

  bool reducible(const Word& w) const { return engine_->reducible(w); }

  NCPoly normal_form(const NCPoly& f) const {
    if (!f.is_zero() && f.max_degree() > complete_up_to())
      throw Error("degree " + std::to_string(f.max_degree()) + " exceeds completion bound " +
                  std::to_string(complete_up_to()));
    f.check_compatible(NCPoly(q_));
    return engine_->normal_form(f);
  }

  /// Entry d is the number of irreducible words of length d, 0 <= d <= D.
  std::vector<std::size_t> graded_dims() const {
    std::vector<std::size_t> dims(bound_ + 1, 0);
    std::vector<Word> frontier;
    for (std::size_t v = 0; v < q_->num_vertices(); ++v) {
      Word e = Word::vertex(v);
      if (engine_->visits_dead(e)) continue;
      ++dims[0];
      frontier.push_back(e);
    }
    for (std::size_t d = 1; d <= bound_; ++d) {
      std::vector<Word> next;
      for (const auto& w : frontier)
        for (std::size_t a = 0; a < q_->num_arrows(); ++a) {
          if (q_->arrow(a).head != w.tail()) continue;
          Word x = *Word::compose(w, Word::arrow(*q_, a));
          if (engine_->visits_dead(x) || engine_->reducible_at_end(x)) continue;
          next.push_back(std::move(x));
        }
      dims[d] = next.size();
      frontier = std::move(next);
    }
    return dims;
  }

 private:
  QuiverPtr q_;
  std::vector<NCPoly> relations_;
  std::size_t bound_;
  std::shared_ptr<detail::Completion> engine_;
};

/// Truncated completion of the presentation's relations (unit relations
/// included) in CQ / W^{D+1}.
inline RewriteSystem complete(const Presentation& p, std::size_t bound) {
  if (bound < p.max_relation_degree())
    throw Error("degree bound " + std::to_string(bound) + " below maximal relation degree " +
                std::to_string(p.max_relation_degree()));
  return RewriteSystem(p.quiver_ptr(), p.all_relations(), bound);
}

inline NCPoly normal_form(const RewriteSystem& rs, const NCPoly& f) { return rs.normal_form(f); }

inline std::vector<std::size_t> graded_dims(const RewriteSystem& rs) { return rs.graded_dims(); }

struct GrIdealReport {
  std::vector<NCPoly> generators;
  std::size_t degree_bound = 0;
  bool gradable = false;
};

namespace detail {

/// Row-reduces homogeneous polynomials of one degree: distinct monic leading
/// words, no leading word occurring in another element.
inline std::vector<NCPoly> echelonize(const std::vector<NCPoly>& polys) {
  std::vector<NCPoly> basis;
  for (NCPoly p : polys) {
    for (const auto& b : basis) {
      Scalar c = p.coeff(b.leading_word());
      if (!c.is_zero()) p -= c * b;
    }
    if (p.is_zero()) continue;
    p *= p.leading_coeff().inverse();
    for (auto& b : basis) {
      Scalar c = b.coeff(p.leading_word());
      if (!c.is_zero()) b -= c * p;
    }
    basis.push_back(std::move(p));
  }
  std::sort(basis.begin(), basis.end(),
            [](const NCPoly& a, const NCPoly& b) { return a.leading_word() < b.leading_word(); });
  return basis;
}

inline void check_gr_input(const Presentation& p, std::size_t bound) {
  for (const auto& r : p.all_relations())
    if (r.min_degree() < 2)
      throw Error("relation " + format_poly(r) + " is not in the square of the arrow ideal");
  if (bound < p.max_relation_degree())
    throw Error("degree bound " + std::to_string(bound) + " below maximal relation degree " +
                std::to_string(p.max_relation_degree()));
}

inline std::vector<NCPoly> min_parts(const std::vector<NCPoly>& rels) {
  std::vector<NCPoly> out;
  for (const auto& r : rels) out.push_back(r.min_part());
  return out;
}

/// Minimal homogeneous generators, degree by degree, of the ideal generated
/// by homogeneous `candidates` in degrees <= bound.
inline std::vector<NCPoly> minimal_generators(const QuiverPtr& q, std::vector<NCPoly> candidates,
                                              std::size_t bound) {
  std::map<std::size_t, std::vector<NCPoly>> by_degree;
  for (auto& c : candidates)
    if (!c.is_zero()) by_degree[c.min_degree()].push_back(std::move(c));
  std::vector<NCPoly> selected;
  for (auto& [d, cands] : by_degree) {
    if (d > bound) break;
    std::vector<NCPoly> reduced;
    if (selected.empty()) {
      reduced = cands;
    } else {
      RewriteSystem lower(q, selected, d);
      for (const auto& c : cands) reduced.push_back(lower.normal_form(c));
    }
    for (auto& g : echelonize(reduced)) selected.push_back(std::move(g));
  }
  return selected;
}

}  // namespace detail

/// Minimal homogeneous generators of gr I in degrees <= bound, taken from the
/// minimal parts of the truncated completion of I, plus the verdict whether
/// the minimal parts of the given relations already generate gr I there.
inline GrIdealReport gr_ideal(const Presentation& p, std::size_t bound) {
  detail::check_gr_input(p, bound);
  RewriteSystem rs(p.quiver_ptr(), p.all_relations(), bound);
  std::vector<NCPoly> cands;
  for (const auto& g : rs.basis()) cands.push_back(g.min_part());
  GrIdealReport report;
  report.degree_bound = bound;
  report.generators = detail::minimal_generators(p.quiver_ptr(), cands, bound);
  RewriteSystem naive(p.quiver_ptr(), detail::min_parts(p.all_relations()), bound);
  report.gradable = std::all_of(report.generators.begin(), report.generators.end(),
                                [&](const NCPoly& g) { return naive.normal_form(g).is_zero(); });
  return report;
}

struct GradabilityCheck {
  bool gradable = false;       // gr I equals <r_min> in degrees <= bound
  bool syzygy_check = false;   // lifted syzygies have minimal parts in <r_min>
  std::size_t syzygies_checked = 0;
  std::size_t certified_degree = 0;
  std::vector<NCPoly> gr_generators;
};

/// Gradability certified up to the degree bound, by comparing gr I with the
/// ideal of minimal parts and, independently, by lifting every syzygy of the
/// minimal parts found during their completion.
inline GradabilityCheck check_gradability(const Presentation& p, std::size_t bound) {
  GrIdealReport gr = gr_ideal(p, bound);
  GradabilityCheck out;
  out.gradable = gr.gradable;
  out.gr_generators = gr.generators;
  out.certified_degree = bound;

  const auto rels = p.all_relations();
  const auto mins = detail::min_parts(rels);
  detail::Completion naive(p.quiver_ptr(), bound, true);
  naive.run(mins);
  out.syzygy_check = true;
  for (const auto& syz : naive.syzygies()) {
    NCPoly lifted(p.quiver_ptr());
    for (const auto& t : syz)
      lifted += NCPoly::multiply_truncated(t.left, rels[t.relation], t.right, bound, t.coeff);
    ++out.syzygies_checked;
    if (lifted.is_zero()) continue;
    if (!naive.normal_form(lifted.min_part()).is_zero()) out.syzygy_check = false;
  }
  return out;
}

inline bool is_gradable(const Presentation& p, std::size_t bound) { return gr_ideal(p, bound).gradable; }

/// Number of minimal homogeneous relations per (head, tail) vertex pair,
/// computed from the generators of gr I.
inline std::map<std::pair<std::string, std::string>, std::size_t> minimal_relation_counts(
    const Presentation& p, std::size_t bound) {
  GrIdealReport gr = gr_ideal(p, bound);
  std::map<std::pair<std::string, std::string>, std::size_t> counts;
  for (const auto& g : gr.generators) {
    auto [h, t] = *g.endpoints();
    ++counts[{p.quiver().vertex_name(h), p.quiver().vertex_name(t)}];
  }
  return counts;
}

}  // namespace qlocal
