#pragma once

// Finitely presented path algebras: quiver + relations + formal inverses, and
// the standard families (preprojective, superpotential, group algebras).

#include <qlocal/ncpoly.hpp>
#include <qlocal/text.hpp>

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qlocal {

enum class Flavor { graded, complete };

inline std::string flavor_name(Flavor f) { return f == Flavor::graded ? "graded" : "complete"; }

struct InversePair {
  std::size_t arrow;
  std::size_t inverse;
};

/// A = CQ / <relations>. Every stored relation has a single (head, tail)
/// pair; inputs are split accordingly. Formal inverses are extra arrows named
/// `a^-1` together with unit relations a*a^-1 - e_h(a) and a^-1*a - e_t(a).
class Presentation {
 public:
  Presentation() = default;

  /// `relations` are split by endpoints; zero pieces are dropped. The quiver
  /// must already contain the inverse arrows listed in `inverses`.
  Presentation(QuiverPtr q, const std::vector<NCPoly>& relations, Flavor flavor,
               std::vector<InversePair> inverses = {})
      : q_(std::move(q)), inverses_(std::move(inverses)), flavor_(flavor) {
    for (const auto& r : relations) {
      r.check_compatible(NCPoly(q_));
      for (auto& [key, piece] : r.split_by_endpoints()) relations_.push_back(piece);
    }
    for (const auto& inv : inverses_) {
      const Arrow& a = q_->arrow(inv.arrow);
      units_.push_back(NCPoly::word(q_, *Word::compose(Word::arrow(*q_, inv.arrow), Word::arrow(*q_, inv.inverse))) -
                       NCPoly::vertex(q_, a.head));
      units_.push_back(NCPoly::word(q_, *Word::compose(Word::arrow(*q_, inv.inverse), Word::arrow(*q_, inv.arrow))) -
                       NCPoly::vertex(q_, a.tail));
    }
    if (flavor_ == Flavor::graded) {
      for (const auto& r : all_relations())
        if (!r.is_homogeneous())
          throw Error("graded presentation has inhomogeneous relation " + format_poly(r));
    }
  }

  const QuiverPtr& quiver_ptr() const { return q_; }
  const Quiver& quiver() const { return *q_; }
  Flavor flavor() const { return flavor_; }
  const std::vector<InversePair>& inverses() const { return inverses_; }

  /// Relations as given (split), without the unit relations.
  const std::vector<NCPoly>& relations() const { return relations_; }
  const std::vector<NCPoly>& unit_relations() const { return units_; }
  std::vector<NCPoly> all_relations() const {
    std::vector<NCPoly> all = relations_;
    all.insert(all.end(), units_.begin(), units_.end());
    return all;
  }

  /// Every relation lies in the square of the arrow ideal.
  bool admissible() const {
    for (const auto& r : all_relations())
      if (r.min_degree() < 2) return false;
    return true;
  }

  std::size_t max_relation_degree() const {
    std::size_t d = 0;
    for (const auto& r : all_relations()) d = std::max(d, r.max_degree());
    return d;
  }

  /// The inverse arrow of a, or of which a is the inverse.
  std::optional<std::size_t> inverse_of(std::size_t a) const {
    for (const auto& p : inverses_) {
      if (p.arrow == a) return p.inverse;
      if (p.inverse == a) return p.arrow;
    }
    return std::nullopt;
  }
  bool is_inverse_arrow(std::size_t a) const {
    for (const auto& p : inverses_)
      if (p.inverse == a) return true;
    return false;
  }
  /// Arrows that are not formal inverses, in declaration order.
  std::vector<std::size_t> generator_arrows() const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < q_->num_arrows(); ++a)
      if (!is_inverse_arrow(a)) out.push_back(a);
    return out;
  }

 private:
  QuiverPtr q_;
  std::vector<NCPoly> relations_, units_;
  std::vector<InversePair> inverses_;
  Flavor flavor_ = Flavor::graded;
};

/// Copy of q with an inverse arrow `a^-1` adjoined for each listed arrow.
inline std::pair<QuiverPtr, std::vector<InversePair>> adjoin_inverses(
    const Quiver& q, const std::vector<std::string>& invertible) {
  Quiver out = q;
  std::vector<InversePair> pairs;
  std::set<std::string> seen;
  for (const auto& id : invertible) {
    if (!seen.insert(id).second) throw Error("arrow '" + id + "' listed as invertible twice");
    std::size_t a = q.arrow_index(id);
    std::size_t inv = out.add_arrow(id + kInverseSuffix, q.arrow(a).tail, q.arrow(a).head);
    pairs.push_back({a, inv});
  }
  return {make_quiver(std::move(out)), std::move(pairs)};
}

/// One relation per vertex i: sum_{h(a)=i} a a* - sum_{t(a)=i} a* a over the
/// unstarred arrows of a double quiver. Vertices with no incident arrows give
/// a zero relation, which is omitted.
inline std::vector<NCPoly> preprojective_relations(const QuiverPtr& qd) {
  const Quiver& q = *qd;
  for (std::size_t a = 0; a < q.num_arrows(); ++a)
    if (!q.partner(a)) throw Error("arrow '" + q.arrow(a).id + "' has no partner; double the quiver first");
  std::vector<NCPoly> rels(q.num_vertices(), NCPoly(qd));
  for (std::size_t a = 0; a < q.num_arrows(); ++a) {
    if (q.is_star(a)) continue;
    std::size_t s = *q.partner(a);
    Word as = *Word::compose(Word::arrow(q, a), Word::arrow(q, s));
    Word sa = *Word::compose(Word::arrow(q, s), Word::arrow(q, a));
    rels[q.arrow(a).head].add_term(as, 1);
    rels[q.arrow(a).tail].add_term(sa, -1);
  }
  std::vector<NCPoly> out;
  for (auto& r : rels)
    if (!r.is_zero()) out.push_back(std::move(r));
  return out;
}

inline Presentation preprojective_presentation(const QuiverPtr& qd) {
  return Presentation(qd, preprojective_relations(qd), Flavor::graded);
}

/// Relations d_a W for every arrow a with nonzero derivative.
inline Presentation superpotential_relations(const Superpotential& w) {
  std::vector<NCPoly> rels;
  bool homogeneous = true;
  for (std::size_t a = 0; a < w.quiver().num_arrows(); ++a) {
    NCPoly r = cyclic_derivative(w, a);
    if (r.is_zero()) continue;
    homogeneous = homogeneous && r.is_homogeneous();
    rels.push_back(std::move(r));
  }
  return Presentation(w.quiver_ptr(), rels, homogeneous ? Flavor::graded : Flavor::complete);
}

struct GroupKind {
  enum Kind { surface, heisenberg } kind;
  int genus = 1;
};

/// Group algebras as path algebras on one vertex with formal inverse loops.
/// surface(g): loops X1, Y1, ..., Xg, Yg, relation X1 Y1 X1^-1 Y1^-1 ... - e.
/// heisenberg: loops X, Y with the two relations saying both commute with
/// their commutator.
inline Presentation group_algebra_presentation(GroupKind kind) {
  std::vector<ArrowSpec> loops;
  std::vector<std::string> names;
  if (kind.kind == GroupKind::surface) {
    if (kind.genus < 1) throw Error("surface group genus must be at least 1");
    for (int i = 1; i <= kind.genus; ++i) {
      names.push_back("X" + std::to_string(i));
      names.push_back("Y" + std::to_string(i));
    }
  } else {
    names = {"X", "Y"};
  }
  for (const auto& n : names) loops.push_back({n, "v", "v"});
  Quiver base({"v"}, loops);
  auto [q, inverses] = adjoin_inverses(base, names);
  std::vector<NCPoly> rels;
  if (kind.kind == GroupKind::surface) {
    std::string word;
    for (int i = 1; i <= kind.genus; ++i) {
      std::string x = "X" + std::to_string(i), y = "Y" + std::to_string(i);
      if (!word.empty()) word += "*";
      word += x + "*" + y + "*" + x + "^-1*" + y + "^-1";
    }
    rels.push_back(parse_poly(q, word + " - e"));
  } else {
    rels.push_back(parse_poly(q, "X*Y*X^-1*Y^-1 - Y*X^-1*Y^-1*X"));
    rels.push_back(parse_poly(q, "X*Y*X^-1*Y^-1 - Y^-1*X*Y*X^-1"));
  }
  return Presentation(q, rels, Flavor::complete, inverses);
}

}  // namespace qlocal
