#pragma once

// Expansion of relations along a parameterized family of representations.
//
// A family theta(T) = 1 (x) rho_M + T_i (x) theta_i + T_i T_j (x) theta_ij + ...
// assigns to every arrow a truncated power series in noncommuting symbols T_i
// with matrix coefficients, multiplied by (M (x) w)(N (x) v) = MN (x) wv.
// Substituting into a relation r gives r(theta(T)); its coefficients, read as
// noncommutative polynomials in the T_i, are the relations of the candidate
// local model, and their minimal parts give the tangent cone.

#include <qlocal/extcalc.hpp>
#include <qlocal/rewrite.hpp>

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qlocal {

/// Word in the deformation symbols, symbol indices 0..k-1.
using SymWord = std::vector<std::size_t>;

struct SymWordLess {
  bool operator()(const SymWord& a, const SymWord& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// Truncated series sum_w w (x) M_w with M_w of a fixed shape, |w| <= order.
class TensorSeries {
 public:
  using Terms = std::map<SymWord, Matrix, SymWordLess>;

  TensorSeries(std::size_t symbols, std::size_t order, std::size_t rows, std::size_t cols)
      : symbols_(symbols), order_(order), rows_(rows), cols_(cols) {}

  static TensorSeries constant(std::size_t symbols, std::size_t order, const Matrix& m) {
    return monomial(symbols, order, {}, m);
  }
  static TensorSeries monomial(std::size_t symbols, std::size_t order, const SymWord& w, const Matrix& m) {
    TensorSeries s(symbols, order, m.rows(), m.cols());
    s.add_term(w, m);
    return s;
  }

  std::size_t symbols() const { return symbols_; }
  std::size_t order() const { return order_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Matrix coeff(const SymWord& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Matrix(rows_, cols_) : it->second;
  }

  void add_term(const SymWord& w, const Matrix& m) {
    if (w.size() > order_) return;
    for (auto s : w)
      if (s >= symbols_) throw Error("symbol index " + std::to_string(s) + " out of range");
    if (m.rows() != rows_ || m.cols() != cols_)
      throw Error("series coefficient has shape " + m.shape() + ", expected " + std::to_string(rows_) + "x" +
                  std::to_string(cols_));
    if (m.is_zero()) return;
    auto [it, fresh] = terms_.emplace(w, m);
    if (fresh) return;
    it->second += m;
    if (it->second.is_zero()) terms_.erase(it);
  }

  /// Terms of word length d.
  TensorSeries homogeneous_part(std::size_t d) const {
    TensorSeries r(symbols_, order_, rows_, cols_);
    for (const auto& [w, m] : terms_)
      if (w.size() == d) r.terms_.emplace(w, m);
    return r;
  }

  /// Same coefficients under a smaller truncation order.
  TensorSeries truncated(std::size_t order) const {
    TensorSeries r(symbols_, std::min(order, order_), rows_, cols_);
    for (const auto& [w, m] : terms_)
      if (w.size() <= r.order_) r.terms_.emplace(w, m);
    return r;
  }

  TensorSeries& operator+=(const TensorSeries& o) {
    check_same(o);
    for (const auto& [w, m] : o.terms_) add_term(w, m);
    return *this;
  }
  TensorSeries& operator-=(const TensorSeries& o) {
    check_same(o);
    for (const auto& [w, m] : o.terms_) add_term(w, Scalar(-1) * m);
    return *this;
  }
  friend TensorSeries operator+(TensorSeries a, const TensorSeries& b) { return a += b; }
  friend TensorSeries operator-(TensorSeries a, const TensorSeries& b) { return a -= b; }
  friend TensorSeries operator*(const Scalar& c, const TensorSeries& s) {
    TensorSeries r(s.symbols_, s.order_, s.rows_, s.cols_);
    for (const auto& [w, m] : s.terms_) r.add_term(w, c * m);
    return r;
  }
  friend bool operator==(const TensorSeries& a, const TensorSeries& b) {
    return a.symbols_ == b.symbols_ && a.order_ == b.order_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.terms_ == b.terms_;
  }

 private:
  void check_same(const TensorSeries& o) const {
    if (o.symbols_ != symbols_) throw Error("tensor series over different symbol sets");
    if (o.rows_ != rows_ || o.cols_ != cols_) throw Error("tensor series of different shapes");
  }

  std::size_t symbols_;
  std::size_t order_;
  std::size_t rows_, cols_;
  Terms terms_;
};

/// Convolution over word concatenation, truncated at the smaller order.
inline TensorSeries ts_multiply(const TensorSeries& u, const TensorSeries& v) {
  if (u.symbols() != v.symbols()) throw Error("tensor series over different symbol sets");
  if (u.cols() != v.rows())
    throw Error("cannot multiply series of shapes " + std::to_string(u.rows()) + "x" + std::to_string(u.cols()) +
                " and " + std::to_string(v.rows()) + "x" + std::to_string(v.cols()));
  const std::size_t order = std::min(u.order(), v.order());
  TensorSeries r(u.symbols(), order, u.rows(), v.cols());
  for (const auto& [wu, mu] : u.terms()) {
    if (wu.size() > order) break;
    for (const auto& [wv, mv] : v.terms()) {
      if (wu.size() + wv.size() > order) break;
      SymWord w = wu;
      w.insert(w.end(), wv.begin(), wv.end());
      r.add_term(w, mu * mv);
    }
  }
  return r;
}

/// Two-sided inverse through the truncation order:
/// (C + N)^-1 = sum_m (-C^-1 N)^m C^-1 with C the constant coefficient.
inline TensorSeries geometric_inverse(const TensorSeries& s) {
  if (s.rows() != s.cols()) throw Error("only square series can be inverted");
  Matrix c = s.coeff({});
  if (c.rank() != c.rows()) throw Error("constant term of the series is singular");
  Matrix cinv = c.inverse();
  TensorSeries n = s;
  n.add_term({}, Scalar(-1) * c);
  TensorSeries step = ts_multiply(TensorSeries::constant(s.symbols(), s.order(), Scalar(-1) * cinv), n);
  TensorSeries acc = TensorSeries::constant(s.symbols(), s.order(), Matrix::identity(s.rows()));
  TensorSeries power = acc;
  for (std::size_t m = 1; m <= s.order(); ++m) {
    power = ts_multiply(power, step);
    if (power.is_zero()) break;
    acc += power;
  }
  return ts_multiply(acc, TensorSeries::constant(s.symbols(), s.order(), cinv));
}

inline std::string format_symword(const SymWord& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += '*';
    out += names.at(w[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

/// A family of representations through a base point, one series per arrow
/// that is not a formal inverse; inverse arrows are derived by inversion.
class FamilySpec {
 public:
  FamilySpec(Representation base, std::vector<std::string> symbols, std::map<std::size_t, TensorSeries> series,
             std::size_t order)
      : base_(std::move(base)), symbols_(std::move(symbols)), order_(order) {
    const Presentation& p = base_.presentation();
    const Quiver& q = p.quiver();
    series_.assign(q.num_arrows(), std::nullopt);
    for (auto& [a, s] : series) {
      if (a >= q.num_arrows()) throw Error("series given for unknown arrow");
      if (p.is_inverse_arrow(a))
        throw Error("series for inverse arrow '" + q.arrow(a).id + "' are derived, not given");
      if (s.symbols() != symbols_.size()) throw Error("series for '" + q.arrow(a).id + "' uses a different symbol set");
      TensorSeries t = s.truncated(order_);
      if (t.rows() != base_.matrix(a).rows() || t.cols() != base_.matrix(a).cols())
        throw Error("series for '" + q.arrow(a).id + "' has the wrong shape");
      if (!(t.coeff({}) == base_.matrix(a)))
        throw Error("series for '" + q.arrow(a).id + "' does not start at the base point");
      series_[a] = std::move(t);
    }
    for (auto a : p.generator_arrows())
      if (!series_[a]) throw Error("no series for arrow '" + q.arrow(a).id + "'");
    for (const auto& pair : p.inverses()) series_[pair.inverse] = geometric_inverse(*series_[pair.arrow]);
  }

  /// (1 + T_i) (x) rho(g_i) for the i-th non-inverse arrow g_i; symbols T1, T2, ...
  static FamilySpec unit_pattern(const Representation& base, std::size_t order) {
    const auto gens = base.presentation().generator_arrows();
    std::vector<std::string> names;
    for (std::size_t i = 0; i < gens.size(); ++i) names.push_back("T" + std::to_string(i + 1));
    std::map<std::size_t, TensorSeries> series;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Matrix& m = base.matrix(gens[i]);
      TensorSeries s = TensorSeries::constant(gens.size(), order, m);
      s.add_term({i}, m);
      series.emplace(gens[i], std::move(s));
    }
    return FamilySpec(base, names, std::move(series), order);
  }

  const Representation& base() const { return base_; }
  const Presentation& presentation() const { return base_.presentation(); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  std::size_t order() const { return order_; }
  const TensorSeries& series(std::size_t arrow) const { return *series_.at(arrow); }

  /// theta_i: the coefficient of T_i on every non-inverse arrow.
  std::vector<Matrix> first_order(std::size_t symbol) const {
    std::vector<Matrix> out;
    for (auto a : presentation().generator_arrows()) out.push_back(series_[a]->coeff({symbol}));
    return out;
  }

 private:
  Representation base_;
  std::vector<std::string> symbols_;
  std::size_t order_;
  std::vector<std::optional<TensorSeries>> series_;
};

/// theta(0) = M holds by construction. First-order transversality: the theta_i
/// are independent modulo the tangent space of the orbit, i.e. the span of the
/// theta_i meets {(rho(a) phi_t - phi_h rho(a))_a} only in 0 and has dimension k.
inline bool first_order_transversal(const FamilySpec& fs) {
  const Representation& m = fs.base();
  const auto gens = m.presentation().generator_arrows();
  Matrix orbit = detail::intertwiner_system(m, m, gens);  // columns span the orbit tangent
  const std::size_t n = orbit.rows(), k = fs.symbols().size();
  Matrix all(n, orbit.cols() + k);
  all.set_block(0, 0, orbit);
  for (std::size_t s = 0; s < k; ++s) {
    std::size_t row = 0;
    for (const auto& t : fs.first_order(s))
      for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j) all(row++, orbit.cols() + s) = t(i, j);
  }
  return all.rank() == orbit.rank() + k;
}

/// r(theta(T)) truncated at the family order; r must have a single (h, t) pair.
inline TensorSeries expand_relation(const FamilySpec& fs, const NCPoly& r) {
  const Representation& m = fs.base();
  const std::size_t k = fs.symbols().size(), order = fs.order();
  r.check_compatible(NCPoly(m.presentation().quiver_ptr()));
  auto ends = r.endpoints();
  if (!ends && !r.is_zero()) throw Error("relation " + format_poly(r) + " has several endpoint pairs");
  if (!ends) return TensorSeries(k, order, 0, 0);
  auto [h, t] = *ends;
  TensorSeries out(k, order, m.dim_at(h), m.dim_at(t));
  for (const auto& [w, c] : r.terms()) {
    TensorSeries term = TensorSeries::constant(k, order, Matrix::identity(m.dim_at(w.head())));
    for (std::size_t i = 0; i < w.length(); ++i) term = ts_multiply(term, fs.series(w[i]));
    out += c * term;
  }
  return out;
}

struct LocalModel {
  QuiverPtr quiver;                 // one vertex, one loop per symbol
  std::vector<NCPoly> relations;    // normalized: leading coefficient 1
  std::vector<std::string> names;   // r<k> or r<k>_<i>_<j>
  std::vector<Scalar> scales;       // leading coefficient divided out
  std::vector<bool> scalar_collapse;  // per source relation
  bool transversal = false;
  bool hypotheses_asserted = false;  // analytic covering conditions are the caller's claim
};

inline QuiverPtr symbol_quiver(const std::vector<std::string>& symbols) {
  std::vector<ArrowSpec> loops;
  for (const auto& s : symbols) loops.push_back({s, "o", "o"});
  return make_quiver(Quiver({"o"}, loops));
}

/// The coefficients of r(theta(T)) as noncommutative polynomials in T. When
/// every coefficient is c * identity one relation results, otherwise one per
/// matrix entry. Relations are scaled to leading coefficient 1 and zero ones
/// dropped.
inline LocalModel local_model_relations(const FamilySpec& fs) {
  LocalModel out;
  out.quiver = symbol_quiver(fs.symbols());
  out.transversal = first_order_transversal(fs);
  const auto& rels = fs.presentation().relations();
  auto to_poly = [&](const TensorSeries& s, std::size_t i, std::size_t j, bool scalar) {
    NCPoly p(out.quiver);
    for (const auto& [w, m] : s.terms()) {
      Scalar c = scalar ? Scalar(0) : m(i, j);
      if (scalar) m.is_scalar_multiple_of_identity(&c);
      std::vector<std::size_t> arrows(w.begin(), w.end());
      p.add_term(arrows.empty() ? Word::vertex(0) : Word::path(*out.quiver, arrows), c);
    }
    return p;
  };
  auto push = [&](NCPoly p, const std::string& name) {
    if (p.is_zero()) return;
    Scalar lead = p.leading_coeff();
    p *= lead.inverse();
    out.relations.push_back(std::move(p));
    out.names.push_back(name);
    out.scales.push_back(lead);
  };
  for (std::size_t k = 0; k < rels.size(); ++k) {
    TensorSeries s = expand_relation(fs, rels[k]);
    bool scalar = s.rows() == s.cols();
    for (const auto& [w, m] : s.terms()) scalar = scalar && m.is_scalar_multiple_of_identity();
    out.scalar_collapse.push_back(scalar);
    const std::string base = "r" + std::to_string(k + 1);
    if (scalar) {
      push(to_poly(s, 0, 0, true), base);
    } else {
      for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.cols(); ++j)
          push(to_poly(s, i, j, false), base + "_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    }
  }
  return out;
}

/// gr of the truncated local model at the family order.
inline GrIdealReport tangent_cone_relations(const FamilySpec& fs) {
  LocalModel lm = local_model_relations(fs);
  if (lm.relations.empty())
    throw Error("all relations vanish through order " + std::to_string(fs.order()) +
                "; increase K to see their minimal parts");
  for (std::size_t k = 0; k < lm.relations.size(); ++k)
    if (lm.relations[k].min_degree() < 2)
      throw Error("local model relation " + lm.names[k] + " has a term of degree " +
                  std::to_string(lm.relations[k].min_degree()) + "; the family is not a slice");
  Presentation p(lm.quiver, lm.relations, Flavor::complete);
  return gr_ideal(p, fs.order());
}

/// {"symbols": [...], "K": n, "pattern": "unit" | {arrow: [{"word": "T1*T2", "matrix": [[...]]}]}}
/// Explicit tables must include the constant term (word "1").
inline FamilySpec family_from_json(const Representation& base, const nlohmann::json& j) {
  std::size_t order = j.at("K").get<std::size_t>();
  const auto& pattern = j.at("pattern");
  if (pattern.is_string()) {
    if (pattern.get<std::string>() != "unit") throw Error("unknown family pattern '" + pattern.get<std::string>() + "'");
    return FamilySpec::unit_pattern(base, order);
  }
  std::vector<std::string> names = j.at("symbols").get<std::vector<std::string>>();
  auto symbol_index = [&](const std::string& s) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == s) return i;
    throw Error("unknown symbol '" + s + "'");
  };
  const Quiver& q = base.quiver();
  std::map<std::size_t, TensorSeries> series;
  for (auto it = pattern.begin(); it != pattern.end(); ++it) {
    std::size_t a = q.arrow_index(it.key());
    const Matrix& m0 = base.matrix(a);
    TensorSeries s(names.size(), order, m0.rows(), m0.cols());
    for (const auto& entry : it.value()) {
      SymWord w;
      std::string text = entry.at("word").get<std::string>();
      if (text != "1") {
        std::size_t pos = 0;
        while (pos <= text.size()) {
          std::size_t star = text.find('*', pos);
          std::string tok = text.substr(pos, star == std::string::npos ? std::string::npos : star - pos);
          std::size_t caret = tok.find('^');
          std::size_t times = 1;
          if (caret != std::string::npos) {
            times = std::stoul(tok.substr(caret + 1));
            tok = tok.substr(0, caret);
          }
          for (std::size_t t = 0; t < times; ++t) w.push_back(symbol_index(tok));
          if (star == std::string::npos) break;
          pos = star + 1;
        }
      }
      s.add_term(w, matrix_from_json(entry.at("matrix"), base.field_order(), m0.rows(), m0.cols()));
    }
    series.emplace(a, std::move(s));
  }
  return FamilySpec(base, names, std::move(series), order);
}

}  // namespace qlocal
