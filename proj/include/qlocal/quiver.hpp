#pragma once

// Quivers, dimension vectors and the closed-form counting formulas built on
// them.

#include <qlocal/field.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace qlocal {

/// Suffix appended to an arrow id to name its reversed partner in the double.
inline constexpr char kStarMarker = '\'';

struct Arrow {
  std::string id;
  std::size_t head;
  std::size_t tail;
};

/// Arrow description by vertex ids, used to build quivers.
struct ArrowSpec {
  std::string id;
  std::string head;
  std::string tail;
};

class Quiver {
 public:
  Quiver() = default;

  Quiver(std::vector<std::string> vertices, const std::vector<ArrowSpec>& arrows)
      : vertices_(std::move(vertices)) {
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      if (!vindex_.emplace(vertices_[v], v).second)
        throw Error("duplicate vertex id '" + vertices_[v] + "'");
    for (const auto& a : arrows) add_arrow(a.id, vertex(a.head), vertex(a.tail));
  }

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_arrows() const { return arrows_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(std::size_t a) const { return arrows_.at(a); }
  const std::string& vertex_name(std::size_t v) const { return vertices_.at(v); }

  std::size_t vertex(const std::string& id) const {
    auto it = vindex_.find(id);
    if (it == vindex_.end()) throw Error("unknown vertex '" + id + "'");
    return it->second;
  }
  std::optional<std::size_t> find_vertex(const std::string& id) const {
    auto it = vindex_.find(id);
    if (it == vindex_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t arrow_index(const std::string& id) const {
    auto it = aindex_.find(id);
    if (it == aindex_.end()) throw Error("unknown arrow '" + id + "'");
    return it->second;
  }
  std::optional<std::size_t> find_arrow(const std::string& id) const {
    auto it = aindex_.find(id);
    if (it == aindex_.end()) return std::nullopt;
    return it->second;
  }

  /// Partner of an arrow in a double quiver (a <-> a*), if recorded.
  std::optional<std::size_t> partner(std::size_t a) const { return partner_.at(a); }
  /// True for the reversed arrows a* added by doubling.
  bool is_star(std::size_t a) const { return star_.at(a); }
  bool is_double() const {
    if (arrows_.empty()) return true;
    for (auto& p : partner_)
      if (!p) return false;
    return true;
  }

  std::size_t add_arrow(const std::string& id, std::size_t head, std::size_t tail) {
    if (head >= vertices_.size() || tail >= vertices_.size())
      throw Error("arrow '" + id + "' has an undeclared endpoint");
    if (!aindex_.emplace(id, arrows_.size()).second)
      throw Error("duplicate arrow id '" + id + "'");
    arrows_.push_back({id, head, tail});
    partner_.emplace_back();
    star_.push_back(false);
    return arrows_.size() - 1;
  }

  void set_partner(std::size_t a, std::size_t b) {
    partner_.at(a) = b;
    partner_.at(b) = a;
  }
  void mark_star(std::size_t a) { star_.at(a) = true; }

  friend bool operator==(const Quiver& x, const Quiver& y) {
    if (x.vertices_ != y.vertices_ || x.arrows_.size() != y.arrows_.size()) return false;
    for (std::size_t a = 0; a < x.arrows_.size(); ++a) {
      const auto &p = x.arrows_[a], &q = y.arrows_[a];
      if (p.id != q.id || p.head != q.head || p.tail != q.tail) return false;
    }
    return x.partner_ == y.partner_;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::unordered_map<std::string, std::size_t> vindex_, aindex_;
  std::vector<std::optional<std::size_t>> partner_;
  std::vector<bool> star_;
};

using QuiverPtr = std::shared_ptr<const Quiver>;

inline QuiverPtr make_quiver(Quiver q) { return std::make_shared<const Quiver>(std::move(q)); }

/// Nonnegative integer per vertex, in the quiver's vertex order.
class DimVector {
 public:
  DimVector() = default;
  explicit DimVector(std::vector<std::int64_t> entries) : entries_(std::move(entries)) {
    for (auto e : entries_)
      if (e < 0) throw Error("dimension vector entries must be nonnegative");
  }

  /// Keys must be exactly the quiver's vertices.
  static DimVector from_map(const Quiver& q, const std::map<std::string, std::int64_t>& m) {
    std::vector<std::int64_t> e(q.num_vertices(), -1);
    for (auto& [k, v] : m) e[q.vertex(k)] = v;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] < 0) throw Error("dimension vector misses vertex '" + q.vertex_name(i) + "'");
    return DimVector(std::move(e));
  }

  std::size_t size() const { return entries_.size(); }
  std::int64_t operator[](std::size_t v) const { return entries_.at(v); }
  const std::vector<std::int64_t>& entries() const { return entries_; }
  std::int64_t total() const {
    std::int64_t s = 0;
    for (auto e : entries_) s += e;
    return s;
  }

  friend bool operator==(const DimVector&, const DimVector&) = default;

 private:
  std::vector<std::int64_t> entries_;
};

inline void check_dims(const Quiver& q, const DimVector& alpha) {
  if (alpha.size() != q.num_vertices())
    throw Error("dimension vector has " + std::to_string(alpha.size()) + " entries, quiver has " +
                std::to_string(q.num_vertices()) + " vertices");
}

/// Adds a reversed arrow a' for every arrow a; the pairing is recorded.
inline Quiver double_quiver(const Quiver& q) {
  Quiver d(q.vertices(), {});
  for (const auto& a : q.arrows()) d.add_arrow(a.id, a.head, a.tail);
  for (std::size_t a = 0; a < q.num_arrows(); ++a) {
    const auto& arr = q.arrow(a);
    std::string star = arr.id + kStarMarker;
    if (q.find_arrow(star)) throw Error("arrow id '" + star + "' collides with a star arrow");
    std::size_t s = d.add_arrow(star, arr.tail, arr.head);
    d.set_partner(a, s);
    d.mark_star(s);
  }
  return d;
}

/// Full subquiver on the kept vertices (in the original order).
inline Quiver restrict_quiver(const Quiver& q, const std::set<std::string>& keep) {
  for (const auto& k : keep) q.vertex(k);
  std::vector<std::string> verts;
  for (const auto& v : q.vertices())
    if (keep.count(v)) verts.push_back(v);
  Quiver r(verts, {});
  std::vector<std::optional<std::size_t>> image(q.num_arrows());
  for (std::size_t a = 0; a < q.num_arrows(); ++a) {
    const auto& arr = q.arrow(a);
    const auto &h = q.vertex_name(arr.head), &t = q.vertex_name(arr.tail);
    if (!keep.count(h) || !keep.count(t)) continue;
    image[a] = r.add_arrow(arr.id, r.vertex(h), r.vertex(t));
    if (q.is_star(a)) r.mark_star(*image[a]);
  }
  for (std::size_t a = 0; a < q.num_arrows(); ++a) {
    auto p = q.partner(a);
    if (image[a] && p && image[*p]) r.set_partner(*image[a], *image[*p]);
  }
  return r;
}

/// Dimension of GL_alpha: sum of squares.
inline std::int64_t gl_dim(const DimVector& alpha) {
  std::int64_t s = 0;
  for (auto e : alpha.entries()) s += e * e;
  return s;
}

/// Dimension of Rep_alpha Q: sum over arrows of alpha(h) * alpha(t).
inline std::int64_t rep_space_dim(const Quiver& q, const DimVector& alpha) {
  check_dims(q, alpha);
  std::int64_t s = 0;
  for (const auto& a : q.arrows()) s += alpha[a.head] * alpha[a.tail];
  return s;
}

/// Number of arrows between vertices i and j of the local quiver of a
/// semisimple representation of a preprojective algebra, given the
/// dimension vectors of its simple factors. The off-diagonal case uses the
/// symmetric bilinear form
///   sum_a a^i(h(a)) a^j(t(a)) - sum_v (a^i(v) a^j(v) + a^j(v) a^i(v)),
/// and the diagonal case adds 2. A negative count means the input is
/// inconsistent and is reported as an error.
inline std::int64_t cb_arrow_count(const Quiver& qd, const std::vector<DimVector>& local_dims,
                                   std::size_t i, std::size_t j) {
  if (!qd.is_double()) throw Error("cb_arrow_count needs a double quiver");
  if (i >= local_dims.size() || j >= local_dims.size()) throw Error("simple factor index out of range");
  const auto &ai = local_dims[i], &aj = local_dims[j];
  check_dims(qd, ai);
  check_dims(qd, aj);
  std::int64_t s = 0;
  for (const auto& a : qd.arrows()) s += ai[a.head] * aj[a.tail];
  for (std::size_t v = 0; v < qd.num_vertices(); ++v) s -= 2 * ai[v] * aj[v];
  if (i == j) s += 2;
  if (s < 0)
    throw Error("negative arrow count " + std::to_string(s) + " between factors " +
                std::to_string(i) + " and " + std::to_string(j));
  return s;
}

struct SurfaceLocalQuiver {
  Quiver quiver;
  DimVector alpha;  // multiplicities, all 1 until the caller fills them in
};

/// Local quiver of a semisimple representation of a genus-g surface group
/// whose simple factors have the given dimensions.
inline SurfaceLocalQuiver surface_local_quiver(int genus, const std::vector<std::int64_t>& dims) {
  if (genus < 1) throw Error("genus must be at least 1");
  std::vector<std::string> verts;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 1) throw Error("simple dimensions must be positive");
    verts.push_back("s" + std::to_string(i + 1));
  }
  Quiver q(verts, {});
  const std::int64_t g1 = genus - 1;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    std::int64_t loops = 2 * g1 * dims[i] * dims[i] + 2;
    for (std::int64_t k = 0; k < loops; ++k)
      q.add_arrow("l" + std::to_string(i + 1) + "_" + std::to_string(k + 1), i, i);
  }
  for (std::size_t i = 0; i < dims.size(); ++i)
    for (std::size_t j = 0; j < dims.size(); ++j) {
      if (i == j) continue;
      std::int64_t n = 2 * dims[i] * dims[j] * g1;
      for (std::int64_t k = 0; k < n; ++k)
        q.add_arrow("c" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + "_" +
                        std::to_string(k + 1),
                    j, i);
    }
  return {std::move(q), DimVector(std::vector<std::int64_t>(dims.size(), 1))};
}

/// Dimension of Rep_n of the preprojective algebra on one vertex with 2g loops.
inline std::int64_t dim_rep_preproj(int genus, std::int64_t n) {
  if (genus < 1 || n < 1) throw Error("dim_rep_preproj needs g >= 1 and n >= 1");
  if (genus == 1) return n * n + n;
  return (2 * genus - 1) * n * n + 1;
}

/// Arrows from vertex `from` to vertex `to`.
inline std::size_t count_arrows(const Quiver& q, std::size_t from, std::size_t to) {
  std::size_t n = 0;
  for (const auto& a : q.arrows()) n += a.tail == from && a.head == to;
  return n;
}

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

/// Graphviz rendering: one node per vertex, one edge per arrow (tail -> head).
inline std::string to_dot(const Quiver& q, const std::string& name = "Q") {
  std::ostringstream os;
  os << "digraph \"" << dot_escape(name) << "\" {\n";
  for (const auto& v : q.vertices()) os << "  \"" << dot_escape(v) << "\";\n";
  for (const auto& a : q.arrows())
    os << "  \"" << dot_escape(q.vertex_name(a.tail)) << "\" -> \"" << dot_escape(q.vertex_name(a.head))
       << "\" [label=\"" << dot_escape(a.id) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace qlocal
