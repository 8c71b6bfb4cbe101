#pragma once

// Session files: declarations of quivers, algebras, representations and
// families followed by commands, one per line.
//
//   field cyclo:2
//   quiver Q { vertices: v; arrows: X: v -> v, Y: v -> v }
//   algebra A over Q { relations: X*Y + X*Y*X; Y*X + X*Y*X; flavor: complete }
//   algebra H = heisenberg
//   algebra S = surface(2)
//   algebra P = preprojective(Q)
//   algebra J over Q { superpotential: X^2*Y^2 - X*Y*X*Y }
//   rep rho of H { dim: v=2; X = [[0, 1], [1, 0]]; Y = [[-1, 0], [0, 1]]; field: cyclo:2 }
//   family F at rho { pattern: unit; K: 3 }
//   gradable A 5
//
// Arrows are written `id: tail -> head`. `#` starts a comment.

#include <qlocal/deform.hpp>
#include <qlocal/extcalc.hpp>
#include <qlocal/repvariety.hpp>
#include <qlocal/rewrite.hpp>
#include <qlocal/structure.hpp>

#include <json.hpp>

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace qlocal {

/// 1-based source position. Positions do not take part in AST equality.
struct SourcePos {
  std::size_t line = 1;
  std::size_t col = 1;
  friend bool operator==(const SourcePos&, const SourcePos&) { return true; }
};

class ParseError : public Error {
 public:
  ParseError(SourcePos pos, const std::string& what)
      : Error(std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " + what), pos_(pos) {}
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

struct ArrowDecl {
  std::string id, tail, head;
  friend bool operator==(const ArrowDecl&, const ArrowDecl&) = default;
};

struct QuiverDecl {
  std::string name;
  std::vector<std::string> vertices;
  std::vector<ArrowDecl> arrows;
  SourcePos pos;
  friend bool operator==(const QuiverDecl&, const QuiverDecl&) = default;
};

struct AlgebraDecl {
  enum class Kind { relations, superpotential, heisenberg, surface, preprojective };
  std::string name;
  Kind kind = Kind::relations;
  std::string over;                      // quiver name (relations, superpotential, preprojective)
  std::vector<std::string> relations;    // polynomial texts
  std::vector<SourcePos> relation_pos;
  std::string superpotential;
  std::vector<std::string> invertible;
  std::optional<Flavor> flavor;
  int genus = 0;
  SourcePos pos;
  friend bool operator==(const AlgebraDecl& a, const AlgebraDecl& b) {
    return a.name == b.name && a.kind == b.kind && a.over == b.over && a.relations == b.relations &&
           a.superpotential == b.superpotential && a.invertible == b.invertible && a.flavor == b.flavor &&
           a.genus == b.genus;
  }
};

struct MatrixDecl {
  std::string arrow;
  std::vector<std::vector<std::string>> rows;
  friend bool operator==(const MatrixDecl&, const MatrixDecl&) = default;
};

struct RepDecl {
  std::string name, of;
  std::vector<std::pair<std::string, std::int64_t>> dims;
  std::vector<MatrixDecl> matrices;
  std::optional<std::string> field;
  SourcePos pos;
  friend bool operator==(const RepDecl&, const RepDecl&) = default;
};

struct FamilyDecl {
  std::string name, at;
  std::string pattern = "unit";
  std::size_t order = 0;
  SourcePos pos;
  friend bool operator==(const FamilyDecl&, const FamilyDecl&) = default;
};

struct FieldDecl {
  std::string field;
  SourcePos pos;
  friend bool operator==(const FieldDecl&, const FieldDecl&) = default;
};

struct CommandDecl {
  std::string name;
  std::vector<std::string> args;
  SourcePos pos;
  friend bool operator==(const CommandDecl&, const CommandDecl&) = default;
};

using SessionItem = std::variant<FieldDecl, QuiverDecl, AlgebraDecl, RepDecl, FamilyDecl, CommandDecl>;

struct Session {
  std::vector<SessionItem> items;
  friend bool operator==(const Session&, const Session&) = default;

  std::vector<CommandDecl> commands() const {
    std::vector<CommandDecl> out;
    for (const auto& it : items)
      if (auto c = std::get_if<CommandDecl>(&it)) out.push_back(*c);
    return out;
  }
};

inline const std::set<std::string>& command_names() {
  static const std::set<std::string> names = {"double",   "preproj", "ext1",    "localquiver",
                                              "grideal",  "gradable", "mincounts", "repideal",
                                              "tangent",  "deform",  "preprojform", "spform"};
  return names;
}

namespace detail {

struct Token {
  enum Kind { ident, number, punct, newline, end } kind;
  std::string text;
  std::size_t offset;  // into the source
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_blanks();
      SourcePos p{line_, col_};
      if (i_ >= src_.size()) {
        out.push_back({Token::end, "", i_, p});
        return out;
      }
      char c = src_[i_];
      if (c == '\n') {
        out.push_back({Token::newline, "\n", i_, p});
        advance();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t s = i_;
        while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_' ||
                                    src_[i_] == kStarMarker))
          advance();
        out.push_back({Token::ident, std::string(src_.substr(s, i_ - s)), s, p});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t s = i_;
        while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) advance();
        out.push_back({Token::number, std::string(src_.substr(s, i_ - s)), s, p});
      } else if (c == '-' && i_ + 1 < src_.size() && src_[i_ + 1] == '>') {
        out.push_back({Token::punct, "->", i_, p});
        advance();
        advance();
      } else if (std::string_view("{}[]():;,=+-*/^").find(c) != std::string_view::npos) {
        out.push_back({Token::punct, std::string(1, c), i_, p});
        advance();
      } else {
        throw ParseError(p, std::string("unexpected character '") + c + "'");
      }
    }
  }

 private:
  void advance() {
    if (src_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }
  void skip_blanks() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (c == '#') {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r') {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t i_ = 0, line_ = 1, col_ = 1;
};

class SessionParser {
 public:
  explicit SessionParser(std::string_view src) : src_(src), toks_(Lexer(src).run()) {}

  Session run() {
    Session s;
    while (true) {
      skip_newlines();
      if (peek().kind == Token::end) break;
      const Token& t = peek();
      if (t.kind != Token::ident) fail(t, "expected a declaration or command");
      if (t.text == "quiver")
        s.items.push_back(quiver());
      else if (t.text == "algebra")
        s.items.push_back(algebra());
      else if (t.text == "rep")
        s.items.push_back(rep());
      else if (t.text == "family")
        s.items.push_back(family());
      else if (t.text == "field")
        s.items.push_back(field());
      else if (command_names().count(t.text))
        s.items.push_back(command());
      else
        fail(t, "unknown command '" + t.text + "'");
    }
    return s;
  }

 private:
  [[noreturn]] void fail(const Token& t, const std::string& why) const { throw ParseError(t.pos, why); }

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(p_ + k, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = toks_[p_];
    if (p_ + 1 < toks_.size()) ++p_;
    return t;
  }
  void skip_newlines() {
    while (peek().kind == Token::newline) next();
  }
  bool at_punct(const std::string& s) const { return peek().kind == Token::punct && peek().text == s; }
  const Token& expect_punct(const std::string& s) {
    if (!at_punct(s)) fail(peek(), "expected '" + s + "'" + found());
    return next();
  }
  std::string found() const {
    const Token& t = peek();
    if (t.kind == Token::end) return ", found end of input";
    if (t.kind == Token::newline) return ", found end of line";
    return ", found '" + t.text + "'";
  }
  std::string expect_ident(const std::string& what) {
    if (peek().kind != Token::ident) fail(peek(), "expected " + what + found());
    return next().text;
  }
  std::int64_t expect_int(const std::string& what) {
    if (peek().kind != Token::number) fail(peek(), "expected " + what + found());
    return std::stoll(next().text);
  }
  void expect_keyword(const std::string& kw) {
    if (peek().kind != Token::ident || peek().text != kw) fail(peek(), "expected '" + kw + "'" + found());
    next();
  }
  /// `{` with newlines allowed inside blocks.
  void open_block() {
    skip_newlines();
    expect_punct("{");
    skip_newlines();
  }
  /// Separator between sections: ';' or newline, then possibly '}'.
  bool end_section() {
    bool sep = false;
    while (at_punct(";") || peek().kind == Token::newline) {
      next();
      sep = true;
    }
    if (at_punct("}")) {
      next();
      return true;
    }
    if (!sep) fail(peek(), "expected ';' or '}'" + found());
    return false;
  }
  void end_statement() {
    if (at_punct(";")) next();
    if (peek().kind != Token::newline && peek().kind != Token::end) fail(peek(), "expected end of line" + found());
  }
  std::string section_key() {
    std::string key = expect_ident("a section name");
    expect_punct(":");
    return key;
  }

  /// Raw source text of tokens up to a stop punctuation at nesting depth 0.
  std::pair<std::string, SourcePos> raw_until(const std::set<std::string>& stops, const std::string& what) {
    while (peek().kind == Token::newline) next();
    const Token& first = peek();
    int depth = 0;
    std::size_t start = first.offset, stop = first.offset;
    while (true) {
      const Token& t = peek();
      if (t.kind == Token::end) break;
      if (t.kind == Token::punct) {
        if (depth == 0 && stops.count(t.text)) break;
        if (t.text == "(" || t.text == "[") ++depth;
        if (t.text == ")" || t.text == "]") {
          if (depth == 0) break;
          --depth;
        }
      }
      if (t.kind == Token::newline && depth == 0) break;
      stop = t.offset + t.text.size();
      next();
    }
    if (stop == start) fail(first, "expected " + what + found());
    return {std::string(src_.substr(start, stop - start)), first.pos};
  }

  FieldDecl field() {
    FieldDecl f;
    f.pos = next().pos;
    f.field = field_text();
    end_statement();
    return f;
  }

  std::string field_text() {
    const Token& t = peek();
    std::string name = expect_ident("a field");
    if (name == "q") return name;
    if (name != "cyclo") fail(t, "unknown field '" + name + "'; expected q or cyclo:m");
    expect_punct(":");
    return "cyclo:" + std::to_string(expect_int("the cyclotomic order"));
  }

  QuiverDecl quiver() {
    QuiverDecl q;
    q.pos = next().pos;
    q.name = expect_ident("a quiver name");
    open_block();
    if (at_punct("}")) {
      next();
      return q;
    }
    while (true) {
      const Token& kt = peek();
      std::string key = section_key();
      if (key == "vertices") {
        while (peek().kind == Token::ident || at_punct(",")) {
          if (at_punct(",")) {
            next();
            continue;
          }
          q.vertices.push_back(next().text);
        }
      } else if (key == "arrows") {
        while (peek().kind == Token::ident || at_punct(",")) {
          if (at_punct(",")) {
            next();
            continue;
          }
          ArrowDecl a;
          a.id = next().text;
          expect_punct(":");
          a.tail = expect_ident("the tail vertex");
          expect_punct("->");
          a.head = expect_ident("the head vertex");
          q.arrows.push_back(a);
        }
      } else {
        fail(kt, "unknown quiver section '" + key + "'");
      }
      if (end_section()) break;
    }
    return q;
  }

  AlgebraDecl algebra() {
    AlgebraDecl a;
    a.pos = next().pos;
    a.name = expect_ident("an algebra name");
    if (at_punct("=")) {
      next();
      const Token& kt = peek();
      std::string kind = expect_ident("heisenberg, surface(g) or preprojective(Q)");
      if (kind == "heisenberg") {
        a.kind = AlgebraDecl::Kind::heisenberg;
      } else if (kind == "surface") {
        a.kind = AlgebraDecl::Kind::surface;
        expect_punct("(");
        a.genus = static_cast<int>(expect_int("the genus"));
        expect_punct(")");
      } else if (kind == "preprojective") {
        a.kind = AlgebraDecl::Kind::preprojective;
        expect_punct("(");
        a.over = expect_ident("a quiver name");
        expect_punct(")");
      } else {
        fail(kt, "unknown algebra family '" + kind + "'");
      }
      end_statement();
      return a;
    }
    expect_keyword("over");
    a.over = expect_ident("a quiver name");
    open_block();
    if (at_punct("}")) {
      next();
      return a;
    }
    while (true) {
      const Token& kt = peek();
      std::string key = section_key();
      bool closed = false;
      if (key == "relations") {
        // polynomials separated by ';' until the next section or '}'
        while (true) {
          auto [text, pos] = raw_until({";", "}"}, "a polynomial");
          a.relations.push_back(text);
          a.relation_pos.push_back(pos);
          while (at_punct(";") || peek().kind == Token::newline) next();
          if (at_punct("}")) {
            next();
            closed = true;
            break;
          }
          if (peek().kind == Token::ident && peek(1).kind == Token::punct && peek(1).text == ":") break;
        }
        if (closed) break;
        continue;
      } else if (key == "superpotential") {
        a.kind = AlgebraDecl::Kind::superpotential;
        auto [text, pos] = raw_until({";", "}"}, "a polynomial");
        a.superpotential = text;
        a.relation_pos.push_back(pos);
      } else if (key == "invertible") {
        while (peek().kind == Token::ident || at_punct(",")) {
          if (at_punct(",")) {
            next();
            continue;
          }
          a.invertible.push_back(next().text);
        }
      } else if (key == "flavor") {
        const Token& ft = peek();
        std::string f = expect_ident("graded or complete");
        if (f == "graded")
          a.flavor = Flavor::graded;
        else if (f == "complete")
          a.flavor = Flavor::complete;
        else
          fail(ft, "unknown flavor '" + f + "'");
      } else {
        fail(kt, "unknown algebra section '" + key + "'");
      }
      if (end_section()) break;
    }
    return a;
  }

  RepDecl rep() {
    RepDecl r;
    r.pos = next().pos;
    r.name = expect_ident("a representation name");
    expect_keyword("of");
    r.of = expect_ident("an algebra name");
    open_block();
    if (at_punct("}")) {
      next();
      return r;
    }
    while (true) {
      const Token& kt = peek();
      std::string key = expect_ident("a section name or arrow");
      if (key == "dim" && at_punct(":")) {
        next();
        while (peek().kind == Token::ident || at_punct(",")) {
          if (at_punct(",")) {
            next();
            continue;
          }
          std::string v = next().text;
          expect_punct("=");
          r.dims.push_back({v, expect_int("a dimension")});
        }
      } else if (key == "field" && at_punct(":")) {
        next();
        r.field = field_text();
      } else if (at_punct("=")) {
        next();
        r.matrices.push_back(matrix(key));
      } else {
        fail(kt, "expected 'dim:', 'field:' or 'ARROW = [[...]]'");
      }
      if (end_section()) break;
    }
    return r;
  }

  MatrixDecl matrix(const std::string& arrow) {
    MatrixDecl m{arrow, {}};
    const Token& open = expect_punct("[");
    skip_newlines();
    while (!at_punct("]")) {
      expect_punct("[");
      std::vector<std::string> row;
      while (true) {
        if (at_punct("]")) break;
        row.push_back(raw_until({",", "]"}, "a matrix entry").first);
        if (at_punct(",")) next();
      }
      expect_punct("]");
      if (!m.rows.empty() && row.size() != m.rows.front().size())
        fail(open, "ill-shaped matrix for '" + arrow + "': rows of different lengths");
      m.rows.push_back(std::move(row));
      skip_newlines();
      if (at_punct(",")) next();
      skip_newlines();
    }
    next();
    return m;
  }

  FamilyDecl family() {
    FamilyDecl f;
    f.pos = next().pos;
    f.name = expect_ident("a family name");
    expect_keyword("at");
    f.at = expect_ident("a representation name");
    open_block();
    bool have_order = false;
    if (!at_punct("}")) {
      while (true) {
        const Token& kt = peek();
        std::string key = section_key();
        if (key == "pattern") {
          const Token& pt = peek();
          f.pattern = expect_ident("a pattern");
          if (f.pattern != "unit") fail(pt, "unknown pattern '" + f.pattern + "'; only 'unit' is supported here");
        } else if (key == "K") {
          f.order = static_cast<std::size_t>(expect_int("the truncation order"));
          have_order = true;
        } else {
          fail(kt, "unknown family section '" + key + "'");
        }
        if (end_section()) break;
      }
    } else {
      next();
    }
    if (!have_order) throw ParseError(f.pos, "family '" + f.name + "' needs K");
    return f;
  }

  CommandDecl command() {
    CommandDecl c;
    const Token& t = next();
    c.pos = t.pos;
    c.name = t.text;
    // arguments are whitespace-separated raw chunks up to ';' or end of line
    std::size_t start = peek().offset;
    std::size_t stop = start;
    while (peek().kind != Token::newline && peek().kind != Token::end && !at_punct(";")) {
      stop = peek().offset + peek().text.size();
      next();
    }
    if (at_punct(";")) next();
    std::istringstream is(std::string(src_.substr(start, stop - start)));
    std::string arg;
    while (is >> arg) c.args.push_back(arg);
    return c;
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t p_ = 0;
};

}  // namespace detail

inline std::string print_session(const Session& s) {
  std::ostringstream os;
  auto join = [](const std::vector<std::string>& v, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
  };
  for (const auto& item : s.items) {
    if (auto f = std::get_if<FieldDecl>(&item)) {
      os << "field " << f->field << "\n";
    } else if (auto q = std::get_if<QuiverDecl>(&item)) {
      std::vector<std::string> arrows;
      for (const auto& a : q->arrows) arrows.push_back(a.id + ": " + a.tail + " -> " + a.head);
      os << "quiver " << q->name << " { vertices: " << join(q->vertices, " ");
      if (!arrows.empty()) os << "; arrows: " << join(arrows, ", ");
      os << " }\n";
    } else if (auto a = std::get_if<AlgebraDecl>(&item)) {
      using K = AlgebraDecl::Kind;
      if (a->kind == K::heisenberg) {
        os << "algebra " << a->name << " = heisenberg\n";
        continue;
      }
      if (a->kind == K::surface) {
        os << "algebra " << a->name << " = surface(" << a->genus << ")\n";
        continue;
      }
      if (a->kind == K::preprojective) {
        os << "algebra " << a->name << " = preprojective(" << a->over << ")\n";
        continue;
      }
      std::vector<std::string> sections;
      if (a->kind == K::superpotential) sections.push_back("superpotential: " + a->superpotential);
      if (!a->relations.empty()) sections.push_back("relations: " + join(a->relations, "; "));
      if (!a->invertible.empty()) sections.push_back("invertible: " + join(a->invertible, " "));
      if (a->flavor) sections.push_back("flavor: " + flavor_name(*a->flavor));
      os << "algebra " << a->name << " over " << a->over << " { " << join(sections, "; ") << " }\n";
    } else if (auto r = std::get_if<RepDecl>(&item)) {
      std::vector<std::string> sections;
      std::vector<std::string> dims;
      for (const auto& [v, n] : r->dims) dims.push_back(v + "=" + std::to_string(n));
      if (!dims.empty()) sections.push_back("dim: " + join(dims, " "));
      for (const auto& m : r->matrices) {
        std::vector<std::string> rows;
        for (const auto& row : m.rows) rows.push_back("[" + join(row, ", ") + "]");
        sections.push_back(m.arrow + " = [" + join(rows, ", ") + "]");
      }
      if (r->field) sections.push_back("field: " + *r->field);
      os << "rep " << r->name << " of " << r->of << " { " << join(sections, "; ") << " }\n";
    } else if (auto f = std::get_if<FamilyDecl>(&item)) {
      os << "family " << f->name << " at " << f->at << " { pattern: " << f->pattern << "; K: " << f->order << " }\n";
    } else if (auto c = std::get_if<CommandDecl>(&item)) {
      os << c->name;
      for (const auto& a : c->args) os << " " << a;
      os << "\n";
    }
  }
  return os.str();
}

struct RunOptions {
  std::size_t degree = 5;
  std::optional<std::string> field;  // default field for representations
  bool dot = false;
};

struct RunResult {
  nlohmann::json document;         // {"schema": 1, "reports": [...]}
  std::vector<std::string> dots;   // DOT graphs of quiver-valued results
  std::vector<std::string> texts;  // plain-text rendering per report
  bool ok = true;
};

inline nlohmann::json quiver_json(const Quiver& q) {
  nlohmann::json j;
  j["vertices"] = q.vertices();
  nlohmann::json arrows = nlohmann::json::array();
  for (const auto& a : q.arrows())
    arrows.push_back({{"id", a.id}, {"tail", q.vertex_name(a.tail)}, {"head", q.vertex_name(a.head)}});
  j["arrows"] = arrows;
  return j;
}

inline nlohmann::json polys_json(const std::vector<NCPoly>& ps) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& p : ps) j.push_back(format_poly(p));
  return j;
}

/// Resolved objects of a session.
class Environment {
 public:
  Environment(const Session& s, const RunOptions& opt) : opt_(opt) {
    for (const auto& item : s.items) {
      if (auto f = std::get_if<FieldDecl>(&item)) {
        wrap(f->pos, [&] {
          int order = parse_field(f->field);
          if (field_ && *field_ != order) throw Error("conflicting field declarations");
          if (opt_.field && parse_field(*opt_.field) != order)
            throw Error("session field " + f->field + " conflicts with --field " + *opt_.field);
          field_ = order;
        });
      } else if (auto q = std::get_if<QuiverDecl>(&item)) {
        wrap(q->pos, [&] { add_quiver(*q); });
      } else if (auto a = std::get_if<AlgebraDecl>(&item)) {
        wrap(a->pos, [&] { add_algebra(*a); });
      } else if (auto r = std::get_if<RepDecl>(&item)) {
        wrap(r->pos, [&] { add_rep(*r); });
      } else if (auto f = std::get_if<FamilyDecl>(&item)) {
        wrap(f->pos, [&] { add_family(*f); });
      }
    }
  }

  int default_field() const {
    if (field_) return *field_;
    if (opt_.field) return parse_field(*opt_.field);
    return 1;
  }

  const QuiverPtr& quiver(const std::string& n) const { return find(quivers_, n, "quiver"); }
  const Presentation& algebra(const std::string& n) const { return find(algebras_, n, "algebra"); }
  const std::vector<NCPoly>& raw_relations(const std::string& n) const { return find(raw_, n, "algebra"); }
  const Representation& rep(const std::string& n) const { return find(reps_, n, "representation"); }
  const FamilySpec& family(const std::string& n) const { return find(families_, n, "family"); }
  bool has_quiver(const std::string& n) const { return quivers_.count(n) > 0; }

 private:
  template <class F>
  void wrap(SourcePos pos, F&& f) {
    try {
      f();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(pos, e.what());
    }
  }

  template <class M>
  static const typename M::mapped_type& find(const M& m, const std::string& n, const std::string& what) {
    auto it = m.find(n);
    if (it == m.end()) throw Error("unknown " + what + " '" + n + "'");
    return it->second;
  }

  void declare(const std::string& n) {
    if (!names_.insert(n).second) throw Error("name '" + n + "' declared twice");
  }

  void add_quiver(const QuiverDecl& d) {
    declare(d.name);
    std::vector<ArrowSpec> arrows;
    for (const auto& a : d.arrows) {
      if (!std::count(d.vertices.begin(), d.vertices.end(), a.tail))
        throw Error("arrow '" + a.id + "' starts at unknown vertex '" + a.tail + "'");
      if (!std::count(d.vertices.begin(), d.vertices.end(), a.head))
        throw Error("arrow '" + a.id + "' ends at unknown vertex '" + a.head + "'");
      arrows.push_back({a.id, a.head, a.tail});
    }
    quivers_.emplace(d.name, make_quiver(Quiver(d.vertices, arrows)));
  }

  void add_algebra(const AlgebraDecl& d) {
    declare(d.name);
    using K = AlgebraDecl::Kind;
    const int order = default_field();
    switch (d.kind) {
      case K::heisenberg:
        put_algebra(d.name, group_algebra_presentation({GroupKind::heisenberg, 1}));
        return;
      case K::surface:
        put_algebra(d.name, group_algebra_presentation({GroupKind::surface, d.genus}));
        return;
      case K::preprojective: {
        QuiverPtr q = quiver(d.over);
        QuiverPtr qd = q->is_double() ? q : make_quiver(double_quiver(*q));
        put_algebra(d.name, preprojective_presentation(qd));
        return;
      }
      case K::superpotential: {
        QuiverPtr q = quiver(d.over);
        NCPoly w = parse_at(q, d.superpotential, d.relation_pos.at(0), order);
        Presentation p = superpotential_relations(Superpotential::from_poly(w));
        put_algebra(d.name, Presentation(p.quiver_ptr(), p.relations(), d.flavor.value_or(p.flavor())), p.relations());
        return;
      }
      case K::relations: {
        QuiverPtr base = quiver(d.over);
        auto [q, inverses] = adjoin_inverses(*base, d.invertible);
        std::vector<NCPoly> rels;
        for (std::size_t k = 0; k < d.relations.size(); ++k)
          rels.push_back(parse_at(q, d.relations[k], d.relation_pos[k], order));
        Flavor f = d.flavor.value_or(Flavor::graded);
        if (!d.flavor)
          for (const auto& r : rels)
            if (!r.is_homogeneous()) f = Flavor::complete;
        if (!d.flavor && !inverses.empty()) f = Flavor::complete;
        put_algebra(d.name, Presentation(q, rels, f, inverses), rels);
        return;
      }
    }
  }

  void put_algebra(const std::string& n, Presentation p, std::optional<std::vector<NCPoly>> raw = std::nullopt) {
    raw_.emplace(n, raw ? *raw : p.relations());
    algebras_.emplace(n, std::move(p));
  }

  static NCPoly parse_at(const QuiverPtr& q, const std::string& text, SourcePos pos, int order) {
    try {
      return parse_poly(q, text, order);
    } catch (const Error& e) {
      throw ParseError(pos, e.what());
    }
  }

  void add_rep(const RepDecl& d) {
    declare(d.name);
    const Presentation& p = algebra(d.of);
    const Quiver& q = p.quiver();
    int order = default_field();
    if (d.field) {
      int own = parse_field(*d.field);
      if ((field_ || opt_.field) && own != order)
        throw Error("representation field " + *d.field + " conflicts with the session field " + field_name(order));
      order = own;
    }
    std::map<std::string, std::int64_t> dims;
    for (const auto& [v, n] : d.dims) {
      if (!q.find_vertex(v)) throw Error("unknown vertex '" + v + "'");
      dims[v] = n;
    }
    DimVector alpha = DimVector::from_map(q, dims);
    std::map<std::string, Matrix> mats;
    for (const auto& m : d.matrices) {
      auto a = q.find_arrow(m.arrow);
      if (!a) throw Error("unknown arrow '" + m.arrow + "'");
      std::size_t rows = static_cast<std::size_t>(alpha[q.arrow(*a).head]);
      std::size_t cols = static_cast<std::size_t>(alpha[q.arrow(*a).tail]);
      if (m.rows.size() != rows || (rows && m.rows.front().size() != cols))
        throw Error("matrix for '" + m.arrow + "' must be " + std::to_string(rows) + "x" + std::to_string(cols));
      Matrix mat(rows, cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) mat(i, j) = Scalar::parse(m.rows[i][j], order);
      mats.emplace(m.arrow, std::move(mat));
    }
    reps_.emplace(d.name, Representation(p, alpha, mats, order));
  }

  void add_family(const FamilyDecl& d) {
    declare(d.name);
    families_.emplace(d.name, FamilySpec::unit_pattern(rep(d.at), d.order));
  }

  RunOptions opt_;
  std::optional<int> field_;
  std::set<std::string> names_;
  std::map<std::string, QuiverPtr> quivers_;
  std::map<std::string, Presentation> algebras_;
  std::map<std::string, std::vector<NCPoly>> raw_;
  std::map<std::string, Representation> reps_;
  std::map<std::string, FamilySpec> families_;
};

/// Syntax and reference checks; polynomials and matrix entries are checked
/// against their quivers and fields.
inline Session parse_session(std::string_view source, const RunOptions& opt = {}) {
  Session s = detail::SessionParser(source).run();
  Environment env(s, opt);
  for (const auto& c : s.commands()) {
    if (c.args.empty()) throw ParseError(c.pos, "'" + c.name + "' needs an argument");
    try {
      const std::string& n = c.name;
      if (n == "double" || n == "preproj") {
        env.quiver(c.args[0]);
      } else if (n == "ext1" || n == "tangent" || n == "localquiver") {
        for (const auto& a : c.args) env.rep(a.substr(0, a.find('^')));
      } else if (n == "deform") {
        env.family(c.args[0]);
      } else {
        env.algebra(c.args[0]);
      }
    } catch (const Error& e) {
      throw ParseError(c.pos, e.what());
    }
  }
  return s;
}

namespace detail {

inline std::size_t degree_arg(const CommandDecl& c, std::size_t k, std::size_t fallback) {
  if (c.args.size() <= k) return fallback;
  try {
    std::size_t used = 0;
    long v = std::stol(c.args[k], &used);
    if (used != c.args[k].size() || v < 0) throw Error("");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw Error("expected a degree bound, found '" + c.args[k] + "'");
  }
}

inline void need_args(const CommandDecl& c, std::size_t lo, std::size_t hi) {
  if (c.args.size() < lo || c.args.size() > hi)
    throw Error("'" + c.name + "' takes " + (lo == hi ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi)) +
                " arguments, got " + std::to_string(c.args.size()));
}

inline std::string int_matrix_text(const IntMatrix& m) {
  std::string out;
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) out += (j ? " " : "") + std::to_string(row[j]);
    out += "\n";
  }
  return out;
}

}  // namespace detail

/// Executes every command in order; each produces one report.
inline RunResult run_session(const Session& s, const RunOptions& opt) {
  RunResult out;
  out.document["schema"] = 1;
  out.document["reports"] = nlohmann::json::array();
  std::optional<Environment> env;
  try {
    env.emplace(s, opt);
  } catch (const Error& e) {
    out.ok = false;
    out.document["error"] = e.what();
    out.texts.push_back(std::string("error: ") + e.what() + "\n");
    return out;
  }
  const auto commands = s.commands();
  for (std::size_t k = 0; k < commands.size(); ++k) {
    const CommandDecl& c = commands[k];
    nlohmann::json rep;
    rep["index"] = k;
    rep["command"] = c.name;
    rep["args"] = c.args;
    std::string text;
    std::optional<std::string> dot;
    try {
      const std::string& n = c.name;
      if (n == "double") {
        detail::need_args(c, 1, 1);
        Quiver d = double_quiver(*env->quiver(c.args[0]));
        rep["quiver"] = quiver_json(d);
        dot = to_dot(d, c.args[0] + "_double");
        text = "double of " + c.args[0] + ": " + std::to_string(d.num_arrows()) + " arrows\n";
      } else if (n == "preproj") {
        detail::need_args(c, 1, 1);
        QuiverPtr q = env->quiver(c.args[0]);
        QuiverPtr qd = q->is_double() ? q : make_quiver(double_quiver(*q));
        auto rels = preprojective_relations(qd);
        rep["quiver"] = quiver_json(*qd);
        rep["relations"] = polys_json(rels);
        for (const auto& r : rels) text += format_poly(r) + "\n";
      } else if (n == "ext1") {
        detail::need_args(c, 2, 2);
        const auto &x = env->rep(c.args[0]), &y = env->rep(c.args[1]);
        rep["ext1"] = ext1_dim(x, y);
        rep["hom"] = hom_dim(x, y);
        text = "ext1 = " + std::to_string(ext1_dim(x, y)) + "\n";
      } else if (n == "localquiver") {
        if (c.args.empty()) throw Error("'localquiver' needs at least one representation");
        std::vector<SemisimpleFactor> factors;
        for (const auto& a : c.args) {
          auto caret = a.find('^');
          int mult = 1;
          std::string name = a.substr(0, caret);
          if (caret != std::string::npos) mult = std::stoi(a.substr(caret + 1));
          factors.push_back({env->rep(name), mult});
        }
        LocalQuiverResult lq = local_quiver(SemisimpleModule(factors));
        const std::size_t m = factors.size();
        nlohmann::json loops = nlohmann::json::array(), arrows = nlohmann::json::array();
        for (std::size_t i = 0; i < m; ++i) {
          loops.push_back(lq.ext1[i][i]);
          nlohmann::json row = nlohmann::json::array();
          for (std::size_t j = 0; j < m; ++j) row.push_back(i == j ? nlohmann::json(nullptr) : nlohmann::json(lq.ext1[i][j]));
          arrows.push_back(row);
        }
        rep["vertices"] = m;
        rep["loops"] = loops;
        rep["arrows"] = arrows;
        rep["alpha"] = lq.alpha.entries();
        rep["quiver"] = quiver_json(lq.quiver);
        dot = to_dot(lq.quiver, "local");
        text = "ext1 matrix (row i, column j: arrows j -> i)\n" + detail::int_matrix_text(lq.ext1);
      } else if (n == "grideal") {
        detail::need_args(c, 1, 2);
        auto gr = gr_ideal(env->algebra(c.args[0]), detail::degree_arg(c, 1, opt.degree));
        rep["generators"] = polys_json(gr.generators);
        rep["degree_bound"] = gr.degree_bound;
        rep["gradable"] = gr.gradable;
        for (const auto& g : gr.generators) text += format_poly(g) + "\n";
        text += std::string("gradable: ") + (gr.gradable ? "yes" : "no") + "\n";
      } else if (n == "gradable") {
        detail::need_args(c, 1, 2);
        auto chk = check_gradability(env->algebra(c.args[0]), detail::degree_arg(c, 1, opt.degree));
        rep["gradable"] = chk.gradable;
        rep["gr_generators"] = polys_json(chk.gr_generators);
        rep["syzygy_check"] = chk.syzygy_check;
        rep["syzygies_checked"] = chk.syzygies_checked;
        rep["certified_degree"] = chk.certified_degree;
        text = std::string("gradable: ") + (chk.gradable ? "yes" : "no") + " (certified to degree " +
               std::to_string(chk.certified_degree) + ")\n";
      } else if (n == "mincounts") {
        detail::need_args(c, 1, 2);
        auto counts = minimal_relation_counts(env->algebra(c.args[0]), detail::degree_arg(c, 1, opt.degree));
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [key, cnt] : counts) {
          arr.push_back({{"head", key.first}, {"tail", key.second}, {"count", cnt}});
          text += key.first + " <- " + key.second + ": " + std::to_string(cnt) + "\n";
        }
        rep["counts"] = arr;
      } else if (n == "repideal") {
        if (c.args.empty()) throw Error("'repideal' needs an algebra and dimensions v=n");
        const Presentation& p = env->algebra(c.args[0]);
        std::map<std::string, std::int64_t> dims;
        for (std::size_t i = 1; i < c.args.size(); ++i) {
          auto eq = c.args[i].find('=');
          if (eq == std::string::npos) throw Error("expected v=n, found '" + c.args[i] + "'");
          dims[c.args[i].substr(0, eq)] = std::stoll(c.args[i].substr(eq + 1));
        }
        RepIdeal ideal = rep_ideal(p, DimVector::from_map(p.quiver(), dims));
        rep["ideal"] = rep_ideal_to_json(ideal);
        text = rep_ideal_to_text(ideal);
      } else if (n == "tangent") {
        detail::need_args(c, 1, 1);
        const Representation& m = env->rep(c.args[0]);
        rep["tangent_space_dim"] = tangent_space_dim(m.presentation(), m);
        rep["cocycle_dim"] = cocycle_dim(m, m);
        rep["orbit_dim"] = orbit_dim(m);
        rep["rep_space_dim"] = rep_space_dim(m.quiver(), m.alpha());
        rep["gl_dim"] = gl_dim(m.alpha());
        text = "tangent space dimension " + std::to_string(tangent_space_dim(m.presentation(), m)) + "\n";
      } else if (n == "deform") {
        detail::need_args(c, 1, 1);
        const FamilySpec& fs = env->family(c.args[0]);
        LocalModel lm = local_model_relations(fs);
        nlohmann::json rels = nlohmann::json::array();
        for (std::size_t i = 0; i < lm.relations.size(); ++i) {
          rels.push_back({{"name", lm.names[i]}, {"relation", format_poly(lm.relations[i])}, {"scale", lm.scales[i].str()}});
          text += lm.names[i] + ": " + format_poly(lm.relations[i]) + "\n";
        }
        rep["symbols"] = fs.symbols();
        rep["K"] = fs.order();
        rep["local_model"] = rels;
        rep["scalar_collapse"] = lm.scalar_collapse;
        rep["first_order_transversal"] = lm.transversal;
        rep["label"] = "candidate local model";
        auto gr = tangent_cone_relations(fs);
        rep["tangent_cone"] = {{"generators", polys_json(gr.generators)},
                               {"degree_bound", gr.degree_bound},
                               {"gradable", gr.gradable}};
        text += std::string("tangent cone gradable: ") + (gr.gradable ? "yes" : "no") + "\n";
      } else if (n == "preprojform") {
        detail::need_args(c, 1, 1);
        const Presentation& p = env->algebra(c.args[0]);
        auto v = preprojective_form(p.relations());
        rep["verdict"] = preprojective_verdict_json(v, p.quiver());
        text = std::string("preprojective: ") + (v.yes ? "yes" : "no, " + v.witness) + "\n";
      } else if (n == "spform") {
        detail::need_args(c, 1, 1);
        const Presentation& p = env->algebra(c.args[0]);
        const auto& raw = env->raw_relations(c.args[0]);
        const auto gens = p.generator_arrows();
        std::map<std::size_t, NCPoly> by_arrow;
        if (raw.size() > gens.size())
          throw Error("'spform' pairs the i-th relation with the i-th arrow; there are more relations than arrows");
        for (std::size_t i = 0; i < raw.size(); ++i) by_arrow.emplace(gens[i], raw[i]);
        auto v = superpotential_form(p.quiver_ptr(), by_arrow);
        rep["verdict"] = superpotential_verdict_json(v);
        text = std::string("superpotential: ") + (v.yes ? format_superpotential(*v.w) : "no, " + v.certificate) + "\n";
      }
      rep["ok"] = true;
    } catch (const Error& e) {
      out.ok = false;
      rep["ok"] = false;
      rep["error"] = e.what();
      text = "error in command " + std::to_string(k) + " (" + c.name + ", line " + std::to_string(c.pos.line) +
             "): " + e.what() + "\n";
      dot.reset();
    }
    if (dot) {
      if (opt.dot) rep["dot"] = *dot;
      out.dots.push_back(*dot);
    }
    out.document["reports"].push_back(rep);
    out.texts.push_back("[" + std::to_string(k) + "] " + c.name + "\n" + text);
  }
  return out;
}

}  // namespace qlocal
