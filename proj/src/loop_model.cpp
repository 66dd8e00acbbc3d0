// DSL parser/printer and the loop transforms: homogenization and powering.

#include "linterm/loop_model.hpp"

#include <map>
#include <optional>
#include <sstream>

namespace linterm {

bool operator==(const AffineUpdate& a, const AffineUpdate& b) {
  if (a.matrix.rows() != b.matrix.rows() || a.matrix.cols() != b.matrix.cols() ||
      a.offset.size() != b.offset.size())
    return false;
  for (Eigen::Index i = 0; i < a.matrix.rows(); ++i)
    for (Eigen::Index j = 0; j < a.matrix.cols(); ++j)
      if (a.matrix(i, j) != b.matrix(i, j)) return false;
  for (Eigen::Index i = 0; i < a.offset.size(); ++i)
    if (a.offset(i) != b.offset(i)) return false;
  return true;
}

bool operator==(const Guard& a, const Guard& b) {
  if (a.normal.size() != b.normal.size() || a.constant != b.constant) return false;
  for (Eigen::Index i = 0; i < a.normal.size(); ++i)
    if (a.normal(i) != b.normal(i)) return false;
  return true;
}

bool operator==(const LoopProgram& a, const LoopProgram& b) {
  return a.dimension == b.dimension && a.guards == b.guards && a.update == b.update &&
         a.var_names == b.var_names;
}

ParseError::ParseError(const std::string& msg, int line_, int column_)
    : std::runtime_error(msg + " at line " + std::to_string(line_) + ", column " +
                         std::to_string(column_)),
      line(line_),
      column(column_) {}

namespace {

enum class Tok {
  Ident,
  Number,
  Comma,
  Semi,
  Assign,
  Gt,
  Ge,
  Lt,
  Le,
  AndAnd,
  Plus,
  Minus,
  Star,
  LParen,
  RParen,
  KwVars,
  KwWhile,
  KwDo,
  KwEnd,
  Eof
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Tok k, std::string text) {
    out.push_back({k, std::move(text), line, col});
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++col;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      std::string word = src.substr(i, j - i);
      Tok k = word == "vars"    ? Tok::KwVars
              : word == "while" ? Tok::KwWhile
              : word == "do"    ? Tok::KwDo
              : word == "end"   ? Tok::KwEnd
                                : Tok::Ident;
      push(k, std::move(word));
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() &&
          (src[j] == '.' || std::isalpha(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        throw ParseError("non-integer literal", line, col);
      push(Tok::Number, src.substr(i, j - i));
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    auto two = src.substr(i, 2);
    if (two == ":=") {
      push(Tok::Assign, two);
      i += 2;
      col += 2;
      continue;
    }
    if (two == ">=") {
      push(Tok::Ge, two);
      i += 2;
      col += 2;
      continue;
    }
    if (two == "<=") {
      push(Tok::Le, two);
      i += 2;
      col += 2;
      continue;
    }
    if (two == "&&") {
      push(Tok::AndAnd, two);
      i += 2;
      col += 2;
      continue;
    }
    if (src.compare(i, 3, "\xE2\x89\xA5") == 0) {  // >=, one UTF-8 glyph
      push(Tok::Ge, ">=");
      i += 3;
      ++col;
      continue;
    }
    if (src.compare(i, 3, "\xE2\x89\xA4") == 0) {  // <=
      push(Tok::Le, "<=");
      i += 3;
      ++col;
      continue;
    }
    Tok k;
    switch (c) {
      case ',': k = Tok::Comma; break;
      case ';': k = Tok::Semi; break;
      case '>': k = Tok::Gt; break;
      case '<': k = Tok::Lt; break;
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      default:
        throw ParseError("unexpected character '" + std::string(1, c) + "'", line, col);
    }
    push(k, std::string(1, c));
    ++i;
    ++col;
  }
  out.push_back({Tok::Eof, "", line, col});
  return out;
}

// Affine form over the declared variables.
struct Aff {
  IVec lin;
  Int c;
};

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(lex(src)) {}

  LoopProgram parse() {
    expect(Tok::KwVars, "expected 'vars'");
    do {
      Token name = expect(Tok::Ident, "expected variable name");
      if (index_.count(name.text))
        throw ParseError("duplicate variable '" + name.text + "'", name.line, name.col);
      index_[name.text] = static_cast<int>(names_.size());
      names_.push_back(name.text);
    } while (accept(Tok::Comma));
    expect(Tok::Semi, "expected ';' after variable list");
    d_ = static_cast<int>(names_.size());

    LoopProgram p;
    p.dimension = d_;
    p.var_names = names_;

    expect(Tok::KwWhile, "expected 'while'");
    p.guards.push_back(condition());
    while (accept(Tok::AndAnd)) p.guards.push_back(condition());
    expect(Tok::KwDo, "expected 'do'");

    std::map<int, Aff> assigned;
    while (!check(Tok::KwEnd)) {
      Token target = expect(Tok::Ident, "expected assignment or 'end'");
      auto it = index_.find(target.text);
      if (it == index_.end())
        throw ParseError("unknown variable '" + target.text + "'", target.line, target.col);
      if (assigned.count(it->second))
        throw ParseError("variable '" + target.text + "' assigned twice", target.line,
                         target.col);
      expect(Tok::Assign, "expected ':='");
      assigned[it->second] = expr();
      if (!accept(Tok::Semi) && !check(Tok::KwEnd))
        throw ParseError("expected ';' or 'end'", peek().line, peek().col);
    }
    expect(Tok::KwEnd, "expected 'end'");
    if (!check(Tok::Eof)) throw ParseError("trailing input after 'end'", peek().line, peek().col);

    p.update.matrix = IMat::Zero(d_, d_);
    p.update.offset = IVec::Zero(d_);
    for (int r = 0; r < d_; ++r) {
      auto it = assigned.find(r);
      if (it == assigned.end()) {
        p.update.matrix(r, r) = 1;  // unassigned variables keep their value
      } else {
        for (int cidx = 0; cidx < d_; ++cidx) p.update.matrix(r, cidx) = it->second.lin(cidx);
        p.update.offset(r) = it->second.c;
      }
    }
    return p;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool check(Tok k) const { return peek().kind == k; }
  bool accept(Tok k) {
    if (!check(k)) return false;
    ++pos_;
    return true;
  }
  Token expect(Tok k, const std::string& what) {
    if (!check(k)) throw ParseError(what, peek().line, peek().col);
    return toks_[pos_++];
  }

  Aff zero() const { return {IVec::Zero(d_), Int(0)}; }

  Guard condition() {
    Aff lhs = expr();
    Token op = peek();
    if (op.kind != Tok::Gt && op.kind != Tok::Ge && op.kind != Tok::Lt && op.kind != Tok::Le)
      throw ParseError("expected comparison operator", op.line, op.col);
    ++pos_;
    Aff rhs = expr();
    // Normalize to strict positivity over the integers.
    Aff g = zero();
    bool flip = op.kind == Tok::Lt || op.kind == Tok::Le;
    if (flip)
      g.lin = rhs.lin - lhs.lin;
    else
      g.lin = lhs.lin - rhs.lin;
    g.c = flip ? rhs.c - lhs.c : lhs.c - rhs.c;
    if (op.kind == Tok::Ge || op.kind == Tok::Le) g.c += 1;
    return {g.lin, g.c};
  }

  Aff expr() {
    Aff acc = term();
    for (;;) {
      if (accept(Tok::Plus)) {
        Aff t = term();
        acc.lin += t.lin;
        acc.c += t.c;
      } else if (accept(Tok::Minus)) {
        Aff t = term();
        acc.lin -= t.lin;
        acc.c -= t.c;
      } else {
        return acc;
      }
    }
  }

  Aff term() {
    Aff acc = factor();
    while (check(Tok::Star)) {
      Token star = peek();
      ++pos_;
      Aff f = factor();
      bool acc_const = acc.lin.isZero(0);
      bool f_const = f.lin.isZero(0);
      if (!acc_const && !f_const)
        throw ParseError("non-affine expression", star.line, star.col);
      if (acc_const) {
        Int s = acc.c;
        acc = f;
        acc.lin *= s;
        acc.c *= s;
      } else {
        acc.lin *= f.c;
        acc.c *= f.c;
      }
    }
    return acc;
  }

  Aff factor() {
    Token t = peek();
    if (accept(Tok::Number)) {
      Aff a = zero();
      a.c = Int(t.text);
      return a;
    }
    if (accept(Tok::Ident)) {
      auto it = index_.find(t.text);
      if (it == index_.end())
        throw ParseError("unknown variable '" + t.text + "'", t.line, t.col);
      Aff a = zero();
      a.lin(it->second) = 1;
      return a;
    }
    if (accept(Tok::Minus)) {
      Aff a = factor();
      a.lin = -a.lin;
      a.c = -a.c;
      return a;
    }
    if (accept(Tok::Plus)) return factor();
    if (accept(Tok::LParen)) {
      Aff a = expr();
      expect(Tok::RParen, "expected ')'");
      return a;
    }
    throw ParseError("expected expression", t.line, t.col);
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
  int d_ = 0;
};

void print_affine(std::ostringstream& os, const IVec& lin, const Int& c,
                  const std::vector<std::string>& names) {
  bool first = true;
  for (Eigen::Index i = 0; i < lin.size(); ++i) {
    if (lin(i) == 0) continue;
    Int v = lin(i);
    if (first) {
      if (v < 0) os << "-";
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    Int av = v < 0 ? Int(-v) : v;
    if (av != 1) os << av << "*";
    os << names[static_cast<size_t>(i)];
    first = false;
  }
  if (c != 0 || first) {
    if (first) {
      os << c;
    } else {
      os << (c < 0 ? " - " : " + ") << (c < 0 ? Int(-c) : c);
    }
  }
}

}  // namespace

LoopProgram parse_loop(const std::string& source) { return Parser(source).parse(); }

std::string print_loop(const LoopProgram& p) {
  std::ostringstream os;
  os << "vars ";
  for (size_t i = 0; i < p.var_names.size(); ++i)
    os << (i ? ", " : "") << p.var_names[i];
  os << ";\nwhile ";
  for (size_t g = 0; g < p.guards.size(); ++g) {
    if (g) os << " && ";
    print_affine(os, p.guards[g].normal, p.guards[g].constant, p.var_names);
    os << " > 0";
  }
  os << " do\n";
  IVec row;
  for (int r = 0; r < p.dimension; ++r) {
    os << "  " << p.var_names[static_cast<size_t>(r)] << " := ";
    row = p.update.matrix.row(r).transpose();
    print_affine(os, row, p.update.offset(r), p.var_names);
    os << (r + 1 < p.dimension ? ";\n" : "\n");
  }
  os << "end\n";
  return os.str();
}

HomogenizedSystem homogenize(const LoopProgram& p) {
  int d = p.dimension;
  HomogenizedSystem h;
  h.matrix = IMat::Zero(d + 1, d + 1);
  h.matrix.topLeftCorner(d, d) = p.update.matrix;
  h.matrix.topRightCorner(d, 1) = p.update.offset;
  h.matrix(d, d) = 1;
  h.guard_rows = IMat::Zero(static_cast<Eigen::Index>(p.guards.size()), d + 1);
  for (size_t g = 0; g < p.guards.size(); ++g) {
    h.guard_rows.row(static_cast<Eigen::Index>(g)).head(d) = p.guards[g].normal.transpose();
    h.guard_rows(static_cast<Eigen::Index>(g), d) = p.guards[g].constant;
  }
  return h;
}

LoopProgram power_transform(const LoopProgram& p, unsigned long l) {
  if (l == 0) throw std::domain_error("power_transform: L must be positive");
  if (l == 1) return p;
  int d = p.dimension;
  HomogenizedSystem h = homogenize(p);

  LoopProgram q;
  q.dimension = d;
  q.var_names = p.var_names;
  q.guards.reserve(p.guards.size() * l);

  IMat power = IMat::Identity(d + 1, d + 1);  // h.matrix^i
  IMat rows;
  IVec normal;
  for (unsigned long i = 0; i < l; ++i) {
    rows = h.guard_rows * power;  // guards of g_j(f^i(x)), i-major order
    for (Eigen::Index g = 0; g < rows.rows(); ++g) {
      normal = rows.row(g).head(d).transpose();
      q.guards.push_back({normal, rows(g, d)});
    }
    power = power * h.matrix;
  }
  q.update.matrix = power.topLeftCorner(d, d);
  q.update.offset = power.topRightCorner(d, 1);
  return q;
}

}  // namespace linterm
