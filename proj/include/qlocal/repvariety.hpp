#pragma once

// Coordinate ring data of Rep_alpha(A): entry functions f_p^{ij}, the ideal
// generated by the relation entries, Jacobian ranks and orbit dimensions.

#include <qlocal/extcalc.hpp>

#include <json.hpp>

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace qlocal {

/// Coordinate f_a^{ij}: entry (row, col) of the matrix of arrow a (0-based).
struct RepVar {
  std::size_t arrow;
  std::size_t row;
  std::size_t col;
  friend auto operator<=>(const RepVar&, const RepVar&) = default;
};

/// Sorted list of variables with repetition.
using Monomial = std::vector<RepVar>;

inline Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
  return m;
}

/// Variable name f_ARROW_i_j with 1-based indices. Characters outside
/// [A-Za-z0-9_] in arrow ids are spelled out so names stay identifiers.
inline std::string var_name(const Quiver& q, const RepVar& v) {
  std::string id;
  const std::string& raw = q.arrow(v.arrow).id;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (raw.compare(k, kInverseSuffix.size(), kInverseSuffix) == 0) {
      id += "_inv";
      k += kInverseSuffix.size() - 1;
    } else if (raw[k] == kStarMarker) {
      id += "_star";
    } else {
      id += raw[k];
    }
  }
  return "f_" + id + "_" + std::to_string(v.row + 1) + "_" + std::to_string(v.col + 1);
}

/// Commutative polynomial in the coordinates f_a^{ij}, ordered by degree then
/// variables.
class CommPoly {
 public:
  struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    }
  };
  using Terms = std::map<Monomial, Scalar, MonoLess>;

  CommPoly() = default;
  static CommPoly constant(const Scalar& c) {
    CommPoly p;
    p.add_term({}, c);
    return p;
  }
  static CommPoly variable(const RepVar& v) {
    CommPoly p;
    p.add_term({v}, 1);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.size(); }

  void add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  CommPoly& operator+=(const CommPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  CommPoly& operator-=(const CommPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend CommPoly operator+(CommPoly a, const CommPoly& b) { return a += b; }
  friend CommPoly operator-(CommPoly a, const CommPoly& b) { return a -= b; }
  friend CommPoly operator*(const Scalar& s, const CommPoly& p) {
    CommPoly r;
    for (const auto& [m, c] : p.terms_) r.add_term(m, s * c);
    return r;
  }
  friend CommPoly operator*(const CommPoly& a, const CommPoly& b) {
    CommPoly r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(monomial_product(ma, mb), ca * cb);
    return r;
  }
  friend bool operator==(const CommPoly& a, const CommPoly& b) { return a.terms_ == b.terms_; }

  /// Partial derivative with respect to v.
  CommPoly derivative(const RepVar& v) const {
    CommPoly r;
    for (const auto& [m, c] : terms_) {
      auto lo = std::lower_bound(m.begin(), m.end(), v);
      auto hi = std::upper_bound(m.begin(), m.end(), v);
      if (lo == hi) continue;
      Monomial rest(m.begin(), lo);
      rest.insert(rest.end(), std::next(lo), m.end());
      r.add_term(rest, Scalar(static_cast<long>(hi - lo)) * c);
    }
    return r;
  }

  /// Value at the point given by the representation's matrices.
  Scalar evaluate(const Representation& r) const {
    Scalar total = 0;
    for (const auto& [m, c] : terms_) {
      Scalar t = c;
      for (const auto& v : m) t *= r.matrix(v.arrow)(v.row, v.col);
      total += t;
    }
    return total;
  }

  std::string str(const Quiver& q) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      bool negative = c.is_rational() && c.rational() < 0;
      Scalar mag = negative ? -c : c;
      std::string mono;
      for (std::size_t k = 0; k < m.size();) {
        std::size_t e = k;
        while (e < m.size() && m[e] == m[k]) ++e;
        if (!mono.empty()) mono += '*';
        mono += var_name(q, m[k]);
        if (e - k > 1) mono += "^" + std::to_string(e - k);
        k = e;
      }
      std::string coef = mag.is_rational() ? mag.str() : "(" + mag.str() + ")";
      std::string term = mono.empty() ? coef : (mag.is_one() ? mono : coef + "*" + mono);
      if (out.empty())
        out = (negative ? "-" : "") + term;
      else
        out += (negative ? " - " : " + ") + term;
    }
    return out;
  }

 private:
  Terms terms_;
};

/// f_p^{ij} = sum over index chains of f_{a1}^{i i1} f_{a2}^{i1 i2} ... f_{ak}^{i(k-1) j};
/// a vertex idempotent gives the Kronecker delta.
inline CommPoly path_function(const Quiver& q, const Word& p, std::size_t i, std::size_t j, const DimVector& alpha) {
  check_dims(q, alpha);
  if (i >= static_cast<std::size_t>(alpha[p.head()]) || j >= static_cast<std::size_t>(alpha[p.tail()]))
    throw Error("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") out of range for " +
                format_word(q, p));
  if (p.is_vertex()) return i == j ? CommPoly::constant(1) : CommPoly();
  // row[k] = (f_{a1...am})^{i k}
  std::vector<CommPoly> row(static_cast<std::size_t>(alpha[q.arrow(p[0]).tail]));
  for (std::size_t k = 0; k < row.size(); ++k) row[k] = CommPoly::variable({p[0], i, k});
  for (std::size_t m = 1; m < p.length(); ++m) {
    const Arrow& a = q.arrow(p[m]);
    std::vector<CommPoly> next(static_cast<std::size_t>(alpha[a.tail]));
    for (std::size_t k = 0; k < next.size(); ++k)
      for (std::size_t l = 0; l < row.size(); ++l) next[k] += row[l] * CommPoly::variable({p[m], l, k});
    row = std::move(next);
  }
  return row[j];
}

/// Linear extension of path_function; f must have endpoints (h, t).
inline CommPoly poly_function(const NCPoly& f, std::size_t i, std::size_t j, const DimVector& alpha) {
  CommPoly out;
  for (const auto& [w, c] : f.terms()) out += c * path_function(f.quiver(), w, i, j, alpha);
  return out;
}

struct RepIdealGenerator {
  std::size_t relation;  // index into all_relations()
  std::size_t row;
  std::size_t col;
  CommPoly poly;
};

struct RepIdeal {
  QuiverPtr quiver;
  DimVector alpha;
  std::vector<RepIdealGenerator> generators;
  std::vector<std::string> relation_text;
};

/// One generator per relation (unit relations included) and matrix entry.
inline RepIdeal rep_ideal(const Presentation& p, const DimVector& alpha) {
  check_dims(p.quiver(), alpha);
  RepIdeal out{p.quiver_ptr(), alpha, {}, {}};
  const auto rels = p.all_relations();
  for (std::size_t k = 0; k < rels.size(); ++k) {
    out.relation_text.push_back(format_poly(rels[k]));
    auto [h, t] = *rels[k].endpoints();
    for (std::size_t i = 0; i < static_cast<std::size_t>(alpha[h]); ++i)
      for (std::size_t j = 0; j < static_cast<std::size_t>(alpha[t]); ++j)
        out.generators.push_back({k, i, j, poly_function(rels[k], i, j, alpha)});
  }
  return out;
}

/// All coordinates of Rep_alpha Q in arrow order, then row-major.
inline std::vector<RepVar> rep_variables(const Quiver& q, const DimVector& alpha) {
  std::vector<RepVar> vars;
  for (std::size_t a = 0; a < q.num_arrows(); ++a)
    for (std::size_t i = 0; i < static_cast<std::size_t>(alpha[q.arrow(a).head]); ++i)
      for (std::size_t j = 0; j < static_cast<std::size_t>(alpha[q.arrow(a).tail]); ++j) vars.push_back({a, i, j});
  return vars;
}

/// Jacobian of the ideal generators at M, one row per generator.
inline Matrix jacobian_at(const RepIdeal& ideal, const Representation& m) {
  auto vars = rep_variables(*ideal.quiver, ideal.alpha);
  Matrix j(ideal.generators.size(), vars.size());
  for (std::size_t g = 0; g < ideal.generators.size(); ++g)
    for (std::size_t v = 0; v < vars.size(); ++v) j(g, v) = ideal.generators[g].poly.derivative(vars[v]).evaluate(m);
  return j;
}

/// rep_space_dim - rank of the exact Jacobian of the ideal at M.
inline std::int64_t tangent_space_dim(const Presentation& p, const Representation& m) {
  auto check = check_representation(m);
  if (!check.ok) throw Error("not a representation: " + check.diagnostics.front());
  RepIdeal ideal = rep_ideal(p, m.alpha());
  Matrix j = jacobian_at(ideal, m);
  return rep_space_dim(p.quiver(), m.alpha()) - static_cast<std::int64_t>(j.rank_fraction_free());
}

/// dim GL_alpha - dim Stab(M), the stabilizer being the units of End(M).
inline std::int64_t orbit_dim(const Representation& m) {
  return gl_dim(m.alpha()) - static_cast<std::int64_t>(hom_dim(m, m));
}

/// dim GL_alpha - dim_M Rep_alpha A + dim_M iss_alpha A.
inline std::int64_t generic_stab_dim(std::int64_t gl, std::int64_t rep_dim_at_m, std::int64_t iss_dim_at_m) {
  return gl - rep_dim_at_m + iss_dim_at_m;
}

inline nlohmann::json rep_ideal_to_json(const RepIdeal& ideal) {
  const Quiver& q = *ideal.quiver;
  nlohmann::json j;
  nlohmann::json alpha = nlohmann::json::object();
  for (std::size_t v = 0; v < q.num_vertices(); ++v) alpha[q.vertex_name(v)] = ideal.alpha[v];
  j["alpha"] = alpha;
  nlohmann::json vars = nlohmann::json::array();
  for (const auto& v : rep_variables(q, ideal.alpha)) vars.push_back(var_name(q, v));
  j["variables"] = vars;
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : ideal.generators) {
    gens.push_back({{"relation", ideal.relation_text[g.relation]},
                    {"entry", {g.row + 1, g.col + 1}},
                    {"poly", g.poly.str(q)}});
  }
  j["generators"] = gens;
  return j;
}

/// One polynomial per line; zero generators are skipped.
inline std::string rep_ideal_to_text(const RepIdeal& ideal) {
  std::string out;
  for (const auto& g : ideal.generators)
    if (!g.poly.is_zero()) out += g.poly.str(*ideal.quiver) + "\n";
  return out;
}

}  // namespace qlocal
