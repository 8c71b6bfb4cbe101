#pragma once

// Finite-dimensional representations of finitely presented path algebras,
// Hom and Ext^1 by exact linear algebra, simplicity and local quivers.
//
// Ext^1(X, Y) = Z^1 / B^1 where Z^1 are the derivations d: A -> Hom(X, Y)
// (d(uv) = d(u) X(v) + Y(u) d(v)) vanishing on the relations and B^1 the
// inner ones d(a) = Y(a) phi - phi X(a). Derivations are determined by their
// values on the non-inverse arrows; on an inverse arrow d(a^-1) is forced to
// -Y(a^-1) d(a) X(a^-1).

#include <qlocal/matrix.hpp>
#include <qlocal/presentation.hpp>
#include <qlocal/rewrite.hpp>

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qlocal {

/// "q" -> 1, "cyclo:m" -> m.
inline int parse_field(const std::string& s) {
  if (s == "q" || s == "Q") return 1;
  if (s.rfind("cyclo:", 0) == 0) {
    std::size_t used = 0;
    int m = 0;
    try {
      m = std::stoi(s.substr(6), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() - 6 || m < 1) throw Error("bad field '" + s + "'");
    return m;
  }
  throw Error("unknown field '" + s + "'; expected q or cyclo:m");
}

inline std::string field_name(int order) { return order == 1 ? "q" : "cyclo:" + std::to_string(order); }

class Representation {
 public:
  /// Matrices keyed by arrow id. Missing inverse-arrow matrices are filled
  /// with the inverse of the arrow's matrix; every other arrow is required.
  Representation(Presentation p, DimVector alpha, const std::map<std::string, Matrix>& matrices,
                 int field_order = 1)
      : p_(std::move(p)), alpha_(std::move(alpha)), order_(field_order) {
    const Quiver& q = p_.quiver();
    check_dims(q, alpha_);
    for (const auto& [id, m] : matrices)
      if (!q.find_arrow(id)) throw Error("matrix given for unknown arrow '" + id + "'");
    mats_.resize(q.num_arrows());
    std::vector<bool> have(q.num_arrows(), false);
    for (std::size_t a = 0; a < q.num_arrows(); ++a) {
      auto it = matrices.find(q.arrow(a).id);
      if (it == matrices.end()) continue;
      check_shape(a, it->second);
      mats_[a] = it->second;
      have[a] = true;
    }
    for (std::size_t a = 0; a < q.num_arrows(); ++a) {
      if (have[a]) continue;
      if (!p_.is_inverse_arrow(a)) throw Error("no matrix for arrow '" + q.arrow(a).id + "'");
      std::size_t base = *p_.inverse_of(a);
      if (!have[base]) throw Error("no matrix for arrow '" + q.arrow(base).id + "'");
      const Matrix& m = mats_[base];
      if (!m.square() || m.rank() != m.rows())
        throw Error("matrix of invertible arrow '" + q.arrow(base).id + "' is singular");
      mats_[a] = m.inverse();
    }
  }

  const Presentation& presentation() const { return p_; }
  const Quiver& quiver() const { return p_.quiver(); }
  const DimVector& alpha() const { return alpha_; }
  int field_order() const { return order_; }
  const Matrix& matrix(std::size_t a) const { return mats_.at(a); }
  const Matrix& matrix(const std::string& id) const { return mats_.at(quiver().arrow_index(id)); }
  std::size_t total_dim() const { return static_cast<std::size_t>(alpha_.total()); }
  std::size_t dim_at(std::size_t v) const { return static_cast<std::size_t>(alpha_[v]); }

  /// Matrix of a path, alpha(h) x alpha(t).
  Matrix evaluate(const Word& w) const {
    if (w.is_vertex()) return Matrix::identity(dim_at(w.head()));
    Matrix r = mats_[w[0]];
    for (std::size_t k = 1; k < w.length(); ++k) r = r * mats_[w[k]];
    return r;
  }

  /// e_h f e_t as an alpha(h) x alpha(t) matrix.
  Matrix evaluate(const NCPoly& f, std::size_t h, std::size_t t) const {
    Matrix r(dim_at(h), dim_at(t));
    for (const auto& [w, c] : f.terms()) {
      if (w.head() != h || w.tail() != t) continue;
      r = r + c * evaluate(w);
    }
    return r;
  }

  friend bool operator==(const Representation& a, const Representation& b) {
    return a.alpha_ == b.alpha_ && a.mats_ == b.mats_;
  }

 private:
  void check_shape(std::size_t a, const Matrix& m) const {
    const Arrow& ar = quiver().arrow(a);
    if (m.rows() != dim_at(ar.head) || m.cols() != dim_at(ar.tail))
      throw Error("matrix for arrow '" + ar.id + "' has shape " + m.shape() + ", expected " +
                  std::to_string(dim_at(ar.head)) + "x" + std::to_string(dim_at(ar.tail)));
  }

  Presentation p_;
  DimVector alpha_;
  int order_ = 1;
  std::vector<Matrix> mats_;
};

struct RepresentationCheck {
  bool ok = true;
  std::vector<std::string> diagnostics;
};

/// Every relation, unit relations included, evaluates to zero.
inline RepresentationCheck check_representation(const Representation& r) {
  RepresentationCheck out;
  const auto rels = r.presentation().all_relations();
  for (std::size_t k = 0; k < rels.size(); ++k) {
    auto ends = rels[k].endpoints();
    if (!ends) continue;
    Matrix m = r.evaluate(rels[k], ends->first, ends->second);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!m(i, j).is_zero()) {
          out.ok = false;
          out.diagnostics.push_back("relation " + format_poly(rels[k]) + " is " + m(i, j).str() +
                                    " at entry (" + std::to_string(i + 1) + "," +
                                    std::to_string(j + 1) + ")");
          i = m.rows();
          break;
        }
  }
  return out;
}

inline void check_same_algebra(const Representation& x, const Representation& y) {
  if (!(x.quiver() == y.quiver()) ||
      x.presentation().all_relations().size() != y.presentation().all_relations().size())
    throw Error("representations of different algebras");
}

/// Adds the matrix of X -> L X R (X of shape L.cols x R.rows) scaled by c into
/// `sys` at (row0, col0), using row-major vectorization on both sides.
inline void add_sandwich(Matrix& sys, std::size_t row0, std::size_t col0, const Scalar& c,
                         const Matrix& left, const Matrix& right) {
  const std::size_t n = left.rows(), p = left.cols(), q = right.rows(), m = right.cols();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < p; ++k) {
      if (left(i, k).is_zero()) continue;
      Scalar lk = c * left(i, k);
      for (std::size_t l = 0; l < q; ++l)
        for (std::size_t j = 0; j < m; ++j) {
          if (right(l, j).is_zero()) continue;
          sys(row0 + i * m + j, col0 + k * q + l) += lk * right(l, j);
        }
    }
}

namespace detail {

/// Vertex offsets of phi in (+)_v Hom(X_v, Y_v).
inline std::vector<std::size_t> hom_offsets(const Representation& x, const Representation& y,
                                            std::size_t* total) {
  std::vector<std::size_t> off;
  std::size_t n = 0;
  for (std::size_t v = 0; v < x.quiver().num_vertices(); ++v) {
    off.push_back(n);
    n += y.dim_at(v) * x.dim_at(v);
  }
  *total = n;
  return off;
}

/// Linear map phi -> (Y(a) phi_t - phi_h X(a))_a over the given arrows.
inline Matrix intertwiner_system(const Representation& x, const Representation& y,
                                 const std::vector<std::size_t>& arrows) {
  const Quiver& q = x.quiver();
  std::size_t nvars = 0;
  auto off = hom_offsets(x, y, &nvars);
  std::size_t nrows = 0;
  std::vector<std::size_t> row_off;
  for (auto a : arrows) {
    row_off.push_back(nrows);
    nrows += y.dim_at(q.arrow(a).head) * x.dim_at(q.arrow(a).tail);
  }
  Matrix sys(nrows, nvars);
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    const Arrow& a = q.arrow(arrows[k]);
    add_sandwich(sys, row_off[k], off[a.tail], 1, y.matrix(arrows[k]), Matrix::identity(x.dim_at(a.tail)));
    add_sandwich(sys, row_off[k], off[a.head], -1, Matrix::identity(y.dim_at(a.head)), x.matrix(arrows[k]));
  }
  return sys;
}

}  // namespace detail

/// dim Hom_A(X, Y).
inline std::size_t hom_dim(const Representation& x, const Representation& y) {
  check_same_algebra(x, y);
  std::size_t nvars = 0;
  detail::hom_offsets(x, y, &nvars);
  if (nvars == 0) return 0;
  Matrix sys = detail::intertwiner_system(x, y, x.presentation().generator_arrows());
  return nvars - sys.rank();
}

/// The constraint matrix of Z^1(X, Y): unknowns are d(a) for the non-inverse
/// arrows, one row block per relation.
inline Matrix cocycle_system(const Representation& x, const Representation& y) {
  check_same_algebra(x, y);
  const Presentation& p = x.presentation();
  const Quiver& q = p.quiver();
  const auto gens = p.generator_arrows();
  std::vector<std::optional<std::size_t>> var_off(q.num_arrows());
  std::size_t nvars = 0;
  for (auto a : gens) {
    var_off[a] = nvars;
    nvars += y.dim_at(q.arrow(a).head) * x.dim_at(q.arrow(a).tail);
  }
  const auto& rels = p.relations();
  std::size_t nrows = 0;
  std::vector<std::size_t> row_off;
  for (const auto& r : rels) {
    row_off.push_back(nrows);
    auto [h, t] = *r.endpoints();
    nrows += y.dim_at(h) * x.dim_at(t);
  }
  Matrix sys(nrows, nvars);
  for (std::size_t k = 0; k < rels.size(); ++k) {
    for (const auto& [w, c] : rels[k].terms()) {
      for (std::size_t i = 0; i < w.length(); ++i) {
        Matrix left = y.evaluate(w.sub(q, 0, i));
        Matrix right = x.evaluate(w.sub(q, i + 1, w.length() - i - 1));
        std::size_t a = w[i];
        Scalar coef = c;
        if (p.is_inverse_arrow(a)) {
          // d(a^-1) = -Y(a^-1) d(a) X(a^-1)
          left = left * y.matrix(a);
          right = x.matrix(a) * right;
          coef = -c;
          a = *p.inverse_of(a);
        }
        add_sandwich(sys, row_off[k], *var_off[a], coef, left, right);
      }
    }
  }
  return sys;
}

/// dim Z^1(X, Y), the space of derivations vanishing on the relations.
inline std::size_t cocycle_dim(const Representation& x, const Representation& y) {
  Matrix sys = cocycle_system(x, y);
  return sys.cols() - sys.rank();
}

/// dim Ext^1_A(X, Y) = dim Z^1 - dim B^1.
inline std::size_t ext1_dim(const Representation& x, const Representation& y) {
  std::size_t z1 = cocycle_dim(x, y);
  std::size_t nvars = 0;
  detail::hom_offsets(x, y, &nvars);
  std::size_t b1 = nvars - hom_dim(x, y);
  return z1 - b1;
}

inline Representation direct_sum(const Representation& x, const Representation& y) {
  check_same_algebra(x, y);
  std::vector<std::int64_t> alpha;
  for (std::size_t v = 0; v < x.quiver().num_vertices(); ++v) alpha.push_back(x.alpha()[v] + y.alpha()[v]);
  std::map<std::string, Matrix> mats;
  for (std::size_t a = 0; a < x.quiver().num_arrows(); ++a)
    mats.emplace(x.quiver().arrow(a).id, direct_sum(x.matrix(a), y.matrix(a)));
  return Representation(x.presentation(), DimVector(alpha), mats, std::max(x.field_order(), y.field_order()));
}

inline Representation power(const Representation& x, int multiplicity) {
  if (multiplicity < 1) throw Error("multiplicity must be positive");
  Representation r = x;
  for (int k = 1; k < multiplicity; ++k) r = direct_sum(r, x);
  return r;
}

/// Dimension of the image of the path algebra in End(V), V the total space.
/// Burnside: the representation is absolutely simple iff this is (dim V)^2.
inline std::size_t image_algebra_dim(const Representation& r) {
  const Quiver& q = r.quiver();
  const std::size_t n = r.total_dim();
  std::vector<std::size_t> off;
  std::size_t acc = 0;
  for (std::size_t v = 0; v < q.num_vertices(); ++v) {
    off.push_back(acc);
    acc += r.dim_at(v);
  }
  auto embed = [&](const Matrix& m, std::size_t h, std::size_t t) {
    Matrix big(n, n);
    big.set_block(off[h], off[t], m);
    return big;
  };
  std::vector<Matrix> arrows;
  for (std::size_t a = 0; a < q.num_arrows(); ++a)
    arrows.push_back(embed(r.matrix(a), q.arrow(a).head, q.arrow(a).tail));
  EchelonBasis span(n * n);
  std::vector<Matrix> frontier;
  for (std::size_t v = 0; v < q.num_vertices(); ++v) {
    if (r.dim_at(v) == 0) continue;
    Matrix e = embed(Matrix::identity(r.dim_at(v)), v, v);
    if (span.insert(e.data())) frontier.push_back(std::move(e));
  }
  while (!frontier.empty() && span.size() < n * n) {
    std::vector<Matrix> next;
    for (const auto& m : frontier)
      for (const auto& a : arrows) {
        Matrix p = a * m;
        if (span.insert(p.data())) next.push_back(std::move(p));
      }
    frontier = std::move(next);
  }
  return span.size();
}

/// Nonzero, End = scalars and the path algebra acts by all of End(V).
inline bool is_simple(const Representation& r) {
  const std::size_t n = r.total_dim();
  if (n == 0) return false;
  if (hom_dim(r, r) != 1) return false;
  return image_algebra_dim(r) == n * n;
}

struct SemisimpleFactor {
  Representation simple;
  int multiplicity = 1;
};

/// S_1^e_1 + ... + S_k^e_k with simple, pairwise non-isomorphic S_i.
class SemisimpleModule {
 public:
  explicit SemisimpleModule(std::vector<SemisimpleFactor> factors) : factors_(std::move(factors)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const auto& f = factors_[i];
      if (f.multiplicity < 1) throw Error("factor " + std::to_string(i + 1) + " has multiplicity < 1");
      if (i > 0) check_same_algebra(factors_[0].simple, f.simple);
      auto check = check_representation(f.simple);
      if (!check.ok) throw Error("factor " + std::to_string(i + 1) + " is not a representation: " + check.diagnostics[0]);
      if (!is_simple(f.simple)) throw Error("factor " + std::to_string(i + 1) + " is not simple");
      for (std::size_t j = 0; j < i; ++j)
        if (hom_dim(factors_[j].simple, f.simple) != 0)
          throw Error("factors " + std::to_string(j + 1) + " and " + std::to_string(i + 1) + " are isomorphic");
    }
  }

  const std::vector<SemisimpleFactor>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }

  Representation total() const {
    if (factors_.empty()) throw Error("empty semisimple module");
    Representation r = power(factors_[0].simple, factors_[0].multiplicity);
    for (std::size_t i = 1; i < factors_.size(); ++i)
      r = direct_sum(r, power(factors_[i].simple, factors_[i].multiplicity));
    return r;
  }

 private:
  std::vector<SemisimpleFactor> factors_;
};

using IntMatrix = std::vector<std::vector<std::int64_t>>;

struct LocalQuiverResult {
  Quiver quiver;
  DimVector alpha;
  IntMatrix ext1;                     // ext1[i][j] = arrows from j to i
  std::optional<IntMatrix> ext2_lower;  // minimal relation counts [head][tail]
};

/// Local quiver of M: vertex s_i per simple factor, dim Ext^1(S_i, S_j)
/// arrows from s_j to s_i, alpha_M = multiplicities. When a presentation on
/// the local quiver's vertices is supplied, its minimal relation counts in
/// degrees <= bound give the lower bound for Ext^2.
inline LocalQuiverResult local_quiver(const SemisimpleModule& m,
                                      const std::optional<Presentation>& tangent_cone = std::nullopt,
                                      std::size_t bound = 0) {
  const std::size_t k = m.size();
  std::vector<std::string> verts;
  for (std::size_t i = 0; i < k; ++i) verts.push_back("s" + std::to_string(i + 1));
  Quiver q(verts, {});
  IntMatrix ext(k, std::vector<std::int64_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      ext[i][j] = static_cast<std::int64_t>(ext1_dim(m.factors()[i].simple, m.factors()[j].simple));
  for (std::size_t i = 0; i < k; ++i)
    for (std::int64_t n = 0; n < ext[i][i]; ++n)
      q.add_arrow("l" + std::to_string(i + 1) + "_" + std::to_string(n + 1), i, i);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < k; ++i) {
      if (i == j) continue;
      for (std::int64_t n = 0; n < ext[i][j]; ++n)
        q.add_arrow("c" + std::to_string(j + 1) + "_" + std::to_string(i + 1) + "_" + std::to_string(n + 1), i, j);
    }
  std::vector<std::int64_t> alpha;
  for (const auto& f : m.factors()) alpha.push_back(f.multiplicity);
  LocalQuiverResult out{std::move(q), DimVector(alpha), std::move(ext), std::nullopt};
  if (tangent_cone) {
    if (tangent_cone->quiver().num_vertices() != k)
      throw Error("tangent cone presentation has " + std::to_string(tangent_cone->quiver().num_vertices()) +
                  " vertices, local quiver has " + std::to_string(k));
    IntMatrix counts(k, std::vector<std::int64_t>(k, 0));
    for (const auto& [key, n] : minimal_relation_counts(*tangent_cone, bound)) {
      counts[tangent_cone->quiver().vertex(key.first)][tangent_cone->quiver().vertex(key.second)] =
          static_cast<std::int64_t>(n);
    }
    out.ext2_lower = std::move(counts);
  }
  return out;
}

/// Matrix rows of exact scalars from JSON strings or integers.
inline Matrix matrix_from_json(const nlohmann::json& j, int order, std::size_t rows, std::size_t cols) {
  if (!j.is_array()) throw Error("matrix must be a list of rows");
  if (j.size() != rows) throw Error("matrix has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw Error("matrix row " + std::to_string(i + 1) + " must have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& e = j[i][c];
      if (e.is_string())
        m(i, c) = Scalar::parse(e.get<std::string>(), order);
      else if (e.is_number_integer())
        m(i, c) = Scalar(e.get<long>());
      else
        throw Error("matrix entries must be strings or integers");
    }
  }
  return m;
}

/// {"alpha": {v: n} or [n, ...], "matrices": {arrow: [[...]]}, "field": "q" | "cyclo:m"}.
inline Representation representation_from_json(const Presentation& p, const nlohmann::json& j) {
  const Quiver& q = p.quiver();
  int order = j.contains("field") ? parse_field(j.at("field").get<std::string>()) : 1;
  DimVector alpha;
  const auto& a = j.at("alpha");
  if (a.is_object()) {
    std::map<std::string, std::int64_t> m;
    for (auto it = a.begin(); it != a.end(); ++it) m[it.key()] = it.value().get<std::int64_t>();
    alpha = DimVector::from_map(q, m);
  } else {
    alpha = DimVector(a.get<std::vector<std::int64_t>>());
  }
  check_dims(q, alpha);
  std::map<std::string, Matrix> mats;
  for (auto it = j.at("matrices").begin(); it != j.at("matrices").end(); ++it) {
    auto idx = q.find_arrow(it.key());
    if (!idx) throw Error("matrix given for unknown arrow '" + it.key() + "'");
    const Arrow& ar = q.arrow(*idx);
    mats.emplace(it.key(), matrix_from_json(it.value(), order, static_cast<std::size_t>(alpha[ar.head]),
                                            static_cast<std::size_t>(alpha[ar.tail])));
  }
  return Representation(p, alpha, mats, order);
}

inline nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline nlohmann::json representation_to_json(const Representation& r) {
  nlohmann::json j;
  j["field"] = field_name(r.field_order());
  nlohmann::json alpha = nlohmann::json::object();
  for (std::size_t v = 0; v < r.quiver().num_vertices(); ++v) alpha[r.quiver().vertex_name(v)] = r.alpha()[v];
  j["alpha"] = alpha;
  nlohmann::json mats = nlohmann::json::object();
  for (auto a : r.presentation().generator_arrows()) mats[r.quiver().arrow(a).id] = matrix_to_json(r.matrix(a));
  j["matrices"] = mats;
  return j;
}

}  // namespace qlocal
