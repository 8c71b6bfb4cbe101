#pragma once

// Recognizing preprojective and superpotential shapes of relation systems.
//
// Quadratic part: for a relation r_i at vertex i, g_ab is the coefficient of
// the word b*a (so t(a) = i = h(b)). The relations are preprojective up to
// base change iff there are nonzero vertex scalars alpha with
// alpha_t(a) g_ab = -alpha_t(b) g_ba and the scaled form is nondegenerate.

#include <qlocal/presentation.hpp>
#include <qlocal/text.hpp>
#include <qlocal/matrix.hpp>

#include <json.hpp>

#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

namespace qlocal {

struct QuadraticPairing {
  QuiverPtr quiver;
  std::map<std::pair<std::size_t, std::size_t>, Scalar> g;  // (a, b) -> g_ab
  std::vector<Scalar> alpha;                                // per vertex; 1 until solved
  std::vector<NCPoly> higher;                               // r_i minus its quadratic part

  Scalar at(std::size_t a, std::size_t b) const {
    auto it = g.find({a, b});
    return it == g.end() ? Scalar(0) : it->second;
  }
  /// alpha_t(a) g_ab
  Scalar scaled(std::size_t a, std::size_t b) const { return alpha[quiver->arrow(a).tail] * at(a, b); }
};

/// Reads g off the degree-2 parts of relations sitting at single vertices.
inline QuadraticPairing extract_quadratic(const std::vector<NCPoly>& relations) {
  if (relations.empty()) throw Error("no relations given");
  QuadraticPairing out;
  out.quiver = relations.front().quiver_ptr();
  const Quiver& q = *out.quiver;
  out.alpha.assign(q.num_vertices(), Scalar(1));
  std::vector<bool> seen(q.num_vertices(), false);
  for (const auto& r : relations) {
    r.check_compatible(NCPoly(out.quiver));
    if (r.is_zero()) throw Error("zero relation");
    if (r.min_degree() != 2)
      throw Error("relation " + format_poly(r) + " has minimal degree " + std::to_string(r.min_degree()) +
                  ", expected 2");
    auto ends = r.endpoints();
    if (!ends || ends->first != ends->second)
      throw Error("relation " + format_poly(r) + " does not sit at a single vertex");
    if (seen[ends->first]) throw Error("two relations at vertex '" + q.vertex_name(ends->first) + "'");
    seen[ends->first] = true;
    const NCPoly quad = r.homogeneous_part(2);
    for (const auto& [w, c] : quad.terms()) out.g[{w[1], w[0]}] = c;
    NCPoly rest = r;
    rest -= r.homogeneous_part(2);
    out.higher.push_back(std::move(rest));
  }
  return out;
}

struct PreprojectiveVerdict {
  bool yes = false;
  std::string witness;                          // reason on "no"
  std::vector<Scalar> alpha;                    // vertex scalars
  Matrix base_change;                           // row k: new arrow k in terms of old arrows
  std::vector<std::pair<std::size_t, std::size_t>> pairing;  // (a, a*) in the new basis
};

namespace detail {

/// omega(x, y) = sum x_a y_b alpha_t(a) g_ab on arrow coordinate vectors.
inline Scalar omega(const QuadraticPairing& qp, const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
  Scalar s = 0;
  for (const auto& [ab, c] : qp.g) {
    const Scalar& xa = x[ab.first];
    const Scalar& yb = y[ab.second];
    if (xa.is_zero() || yb.is_zero()) continue;
    s += xa * yb * qp.alpha[qp.quiver->arrow(ab.first).tail] * c;
  }
  return s;
}

}  // namespace detail

/// Solves for vertex scalars (one fixed to 1 per connected component of the
/// constraint graph), checks nondegeneracy per vertex pair and builds a
/// symplectic basis by Gram-Schmidt in arrow declaration order.
inline PreprojectiveVerdict preprojective_form(const std::vector<NCPoly>& relations) {
  QuadraticPairing qp = extract_quadratic(relations);
  const Quiver& q = *qp.quiver;
  const std::size_t nv = q.num_vertices(), na = q.num_arrows();
  PreprojectiveVerdict out;
  auto fail = [&](std::string why) {
    out.yes = false;
    out.witness = std::move(why);
    return out;
  };
  auto name = [&](std::size_t a) { return q.arrow(a).id; };

  // alpha_t(a) g_ab + alpha_t(b) g_ba = 0 for all a, b
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> edges(nv);  // edge u -> (v, c): alpha_v = c alpha_u
  for (const auto& [ab, gab] : qp.g) {
    auto [a, b] = ab;
    if (a == b) return fail("g_" + name(a) + name(a) + " = " + gab.str() + " cannot be antisymmetric");
    Scalar gba = qp.at(b, a);
    if (gba.is_zero())
      return fail("g_" + name(a) + name(b) + " = " + gab.str() + " but g_" + name(b) + name(a) + " = 0");
    std::size_t u = q.arrow(a).tail, v = q.arrow(b).tail;
    // alpha_v = -alpha_u g_ab / g_ba
    edges[u].push_back({v, -(gab / gba)});
  }
  std::vector<std::optional<Scalar>> alpha(nv);
  for (std::size_t root = 0; root < nv; ++root) {
    if (alpha[root]) continue;
    alpha[root] = Scalar(1);
    std::queue<std::size_t> todo;
    todo.push(root);
    while (!todo.empty()) {
      std::size_t u = todo.front();
      todo.pop();
      for (const auto& [v, c] : edges[u]) {
        Scalar want = *alpha[u] * c;
        if (!alpha[v]) {
          alpha[v] = want;
          todo.push(v);
        } else if (*alpha[v] != want) {
          return fail("vertex scalars inconsistent at '" + q.vertex_name(v) + "'");
        }
      }
    }
  }
  for (std::size_t v = 0; v < nv; ++v) qp.alpha[v] = *alpha[v];
  out.alpha = qp.alpha;

  // nondegeneracy per unordered vertex pair
  for (std::size_t i = 0; i < nv; ++i)
    for (std::size_t j = i; j < nv; ++j) {
      std::vector<std::size_t> block;
      for (std::size_t a = 0; a < na; ++a) {
        const Arrow& ar = q.arrow(a);
        if ((ar.head == i && ar.tail == j) || (ar.head == j && ar.tail == i)) block.push_back(a);
      }
      if (block.empty()) continue;
      Matrix s(block.size(), block.size());
      for (std::size_t x = 0; x < block.size(); ++x)
        for (std::size_t y = 0; y < block.size(); ++y) s(x, y) = qp.scaled(block[x], block[y]);
      if (s.rank() != block.size())
        return fail("pairing degenerate between '" + q.vertex_name(i) + "' and '" + q.vertex_name(j) + "'");
    }

  // symplectic Gram-Schmidt
  std::vector<std::vector<Scalar>> vecs(na, std::vector<Scalar>(na, Scalar(0)));
  for (std::size_t a = 0; a < na; ++a) vecs[a][a] = 1;
  std::vector<bool> used(na, false);
  for (std::size_t e = 0; e < na; ++e) {
    if (used[e]) continue;
    std::optional<std::size_t> f;
    for (std::size_t c = e + 1; c < na && !f; ++c)
      if (!used[c] && !detail::omega(qp, vecs[c], vecs[e]).is_zero()) f = c;
    if (!f) return fail("arrow '" + name(e) + "' has no partner");
    Scalar w = detail::omega(qp, vecs[*f], vecs[e]);
    for (auto& x : vecs[*f]) x /= w;
    used[e] = used[*f] = true;
    out.pairing.push_back({e, *f});
    for (std::size_t x = 0; x < na; ++x) {
      if (used[x]) continue;
      Scalar mu = -detail::omega(qp, vecs[x], vecs[e]);
      Scalar lambda = detail::omega(qp, vecs[x], vecs[*f]);
      if (mu.is_zero() && lambda.is_zero()) continue;
      for (std::size_t k = 0; k < na; ++k) {
        if (!lambda.is_zero() && !vecs[e][k].is_zero()) vecs[x][k] += lambda * vecs[e][k];
        if (!mu.is_zero() && !vecs[*f][k].is_zero()) vecs[x][k] += mu * vecs[*f][k];
      }
    }
  }
  out.base_change = Matrix(na, na);
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t k = 0; k < na; ++k) out.base_change(a, k) = vecs[a][k];
  out.yes = true;
  return out;
}

struct SuperpotentialVerdict {
  bool yes = false;
  std::optional<Superpotential> w;
  std::string certificate;  // failing equation on "no"
};

namespace detail {

/// Canonical representatives of cyclic classes of cycles of the given length.
inline std::vector<Word> cyclic_classes(const QuiverPtr& qp, std::size_t length) {
  const Quiver& q = *qp;
  std::set<Word> out;
  std::vector<Word> frontier;
  for (std::size_t a = 0; a < q.num_arrows(); ++a) frontier.push_back(Word::arrow(q, a));
  for (std::size_t len = 1; len < length; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (std::size_t a = 0; a < q.num_arrows(); ++a)
        if (auto x = Word::compose(w, Word::arrow(q, a))) next.push_back(*x);
    frontier = std::move(next);
  }
  for (const auto& w : frontier)
    if (w.is_cycle()) out.insert(canonical_rotation(q, w));
  return {out.begin(), out.end()};
}

}  // namespace detail

/// Solves d_a W = r_a for every arrow a, degree by degree; arrows missing from
/// the map have r_a = 0.
inline SuperpotentialVerdict superpotential_form(const QuiverPtr& qp, const std::map<std::size_t, NCPoly>& rels) {
  const Quiver& q = *qp;
  for (const auto& [a, r] : rels) {
    if (a >= q.num_arrows()) throw Error("relation indexed by unknown arrow");
    r.check_compatible(NCPoly(qp));
    for (const auto& [w, c] : r.terms())
      if (w.head() != q.arrow(a).tail || w.tail() != q.arrow(a).head)
        throw Error("relation for '" + q.arrow(a).id + "' must run from h(" + q.arrow(a).id + ") to t(" +
                    q.arrow(a).id + ")");
  }
  std::set<std::size_t> degrees;
  for (const auto& [a, r] : rels)
    for (const auto& [w, c] : r.terms()) degrees.insert(w.length());
  SuperpotentialVerdict out;
  Superpotential total(qp);
  for (std::size_t d : degrees) {
    auto classes = detail::cyclic_classes(qp, d + 1);
    // equation index: (arrow, word)
    std::map<std::pair<std::size_t, Word>, std::size_t> eq;
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> cols(classes.size());
    auto eq_index = [&](std::size_t a, const Word& w) {
      auto [it, fresh] = eq.emplace(std::make_pair(a, w), eq.size());
      return it->second;
    };
    for (std::size_t c = 0; c < classes.size(); ++c) {
      Superpotential single(qp);
      single.add_cycle(classes[c], 1);
      for (std::size_t a = 0; a < q.num_arrows(); ++a) {
        const NCPoly der = cyclic_derivative(single, a);
        for (const auto& [w, coef] : der.terms()) cols[c].push_back({eq_index(a, w), coef});
      }
    }
    std::vector<std::pair<std::size_t, Scalar>> rhs;
    for (const auto& [a, r] : rels) {
      const NCPoly part = r.homogeneous_part(d);
      for (const auto& [w, c] : part.terms()) rhs.push_back({eq_index(a, w), c});
    }
    Matrix aug(eq.size(), classes.size() + 1);
    for (std::size_t c = 0; c < classes.size(); ++c)
      for (const auto& [row, coef] : cols[c]) aug(row, c) += coef;
    for (const auto& [row, coef] : rhs) aug(row, classes.size()) += coef;
    auto pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == classes.size()) {
      out.certificate = "no superpotential has these degree-" + std::to_string(d) + " derivatives";
      for (const auto& [key, idx] : eq) {
        bool in_image = false;
        for (std::size_t c = 0; c < classes.size() && !in_image; ++c)
          for (const auto& [r2, coef] : cols[c])
            if (r2 == idx) in_image = true;
        if (!in_image) {
          for (const auto& [r2, coef] : rhs)
            if (r2 == idx && !coef.is_zero()) {
              out.certificate = "term " + format_word(q, key.second) + " of the relation for '" + q.arrow(key.first).id +
                                "' is not the derivative of any cycle";
            }
        }
      }
      return out;
    }
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      const Scalar& v = aug(k, classes.size());
      if (!v.is_zero()) total.add_cycle(classes[pivots[k]], v);
    }
  }
  out.yes = true;
  out.w = std::move(total);
  return out;
}

/// W in text syntax, one representative per cyclic class.
inline std::string format_superpotential(const Superpotential& w) { return format_poly(w.as_poly()); }

inline nlohmann::json preprojective_verdict_json(const PreprojectiveVerdict& v, const Quiver& q) {
  nlohmann::json j;
  j["preprojective"] = v.yes;
  if (!v.yes) {
    j["witness"] = v.witness;
    return j;
  }
  nlohmann::json alpha = nlohmann::json::object();
  for (std::size_t i = 0; i < q.num_vertices(); ++i) alpha[q.vertex_name(i)] = v.alpha[i].str();
  j["alpha"] = alpha;
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [a, b] : v.pairing) pairs.push_back({q.arrow(a).id, q.arrow(b).id});
  j["pairing"] = pairs;
  bool identity = v.base_change == Matrix::identity(q.num_arrows());
  j["identity_base_change"] = identity;
  if (!identity) {
    nlohmann::json bc = nlohmann::json::object();
    for (std::size_t a = 0; a < q.num_arrows(); ++a) {
      std::string text;
      for (std::size_t k = 0; k < q.num_arrows(); ++k) {
        const Scalar& c = v.base_change(a, k);
        if (c.is_zero()) continue;
        if (!text.empty()) text += " + ";
        text += (c.is_one() ? "" : "(" + c.str() + ")*") + q.arrow(k).id;
      }
      bc[q.arrow(a).id] = text;
    }
    j["base_change"] = bc;
  }
  return j;
}

inline nlohmann::json superpotential_verdict_json(const SuperpotentialVerdict& v) {
  nlohmann::json j;
  j["superpotential"] = v.yes;
  if (v.yes)
    j["W"] = format_superpotential(*v.w);
  else
    j["certificate"] = v.certificate;
  return j;
}

}  // namespace qlocal
