#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "halfsph/dsl.hpp"

namespace halfsph {

ParseError::ParseError(int line, int column, const std::string& msg)
    : InvalidArgument(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line), column_(column) {}

namespace {

class Scanner {
 public:
  explicit Scanner(const std::string& text) : s_(text) {}

  struct Pos {
    int line;
    int column;
  };

  Pos pos() {
    skip();
    return {line_, col_};
  }
  bool done() {
    skip();
    return p_ >= s_.size();
  }

  [[noreturn]] void fail(const Pos& at, const std::string& msg) const { throw ParseError(at.line, at.column, msg); }
  [[noreturn]] void fail(const std::string& msg) { fail(pos(), msg); }

  void skip() {
    while (p_ < s_.size()) {
      char c = s_[p_];
      if (c == '#' || (c == '/' && p_ + 1 < s_.size() && s_[p_ + 1] == '/')) {
        while (p_ < s_.size() && s_[p_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool peek(char c) {
    skip();
    return p_ < s_.size() && s_[p_] == c;
  }

  void expect(char c) {
    skip();
    if (p_ >= s_.size() || s_[p_] != c) fail(std::string("expected '") + c + "'" + found());
    advance();
  }

  /// Letters, digits, underscores and the name punctuation `*#+()-.`.
  std::string word(const char* what) {
    skip();
    std::size_t start = p_;
    while (p_ < s_.size()) {
      char c = s_[p_];
      if (std::isalnum(static_cast<unsigned char>(c)) || std::string("_*#+()-.&").find(c) != std::string::npos) {
        advance();
      } else {
        break;
      }
    }
    if (p_ == start) fail(std::string("expected ") + what + found());
    return s_.substr(start, p_ - start);
  }

  std::string ident(const char* what) {
    skip();
    std::size_t start = p_;
    while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_')) advance();
    if (p_ == start || std::isdigit(static_cast<unsigned char>(s_[start]))) {
      fail(std::string("expected ") + what + found());
    }
    return s_.substr(start, p_ - start);
  }

  int integer(const char* what) {
    skip();
    std::size_t start = p_;
    while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) advance();
    if (p_ == start) fail(std::string("expected ") + what + found());
    return std::stoi(s_.substr(start, p_ - start));
  }

  void literal(const std::string& lit) {
    skip();
    if (s_.compare(p_, lit.size(), lit) != 0) fail("expected '" + lit + "'" + found());
    for (std::size_t k = 0; k < lit.size(); ++k) advance();
  }

  /// Raw text up to (not including) the next `;`.
  std::string until_semicolon() {
    skip();
    std::size_t start = p_;
    while (p_ < s_.size() && s_[p_] != ';') {
      if (s_[p_] == '}' || s_[p_] == '\n') break;
      advance();
    }
    if (p_ >= s_.size() || s_[p_] != ';') fail("expected ';'");
    return s_.substr(start, p_ - start);
  }

 private:
  void advance() {
    if (s_[p_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++p_;
  }

  std::string found() const {
    if (p_ >= s_.size()) return ", found end of input";
    return std::string(", found '") + s_[p_] + "'";
  }

  const std::string& s_;
  std::size_t p_ = 0;
  int line_ = 1;
  int col_ = 1;
};

std::vector<Letter> family_letters(const Alphabet& a, Family f) {
  std::vector<Letter> out;
  for (const auto& l : a.letters())
    if (l.family == f) out.push_back(l);
  return out;
}

// Unit block of the kind `unit` on top of an empty presentation over `g`.
std::vector<NCPolynomial> unit_block(const Alphabet& g, const std::string& kind) {
  Presentation p("unit", g);
  if (kind == "sphere") p.add_relations(unit_relations(family_letters(g, Family::Z)));
  else p.add_relations(biunitarity_relations(g.count(Family::U)));
  return p.relations();
}

bool starts_with(const std::vector<NCPolynomial>& all, const std::vector<NCPolynomial>& prefix) {
  if (prefix.empty() || prefix.size() > all.size()) return false;
  return std::equal(prefix.begin(), prefix.end(), all.begin());
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
  Scanner sc(text);
  sc.literal("presentation");
  std::string name = sc.word("presentation name");
  sc.expect('{');
  Presentation p(name, Alphabet());
  while (!sc.peek('}')) {
    if (sc.done()) sc.fail("expected '}'");
    const auto at = sc.pos();
    std::string kw = sc.ident("declaration");
    if (kw == "generators") {
      const auto fat = sc.pos();
      std::string fam = sc.ident("generator family");
      if (fam.size() != 1) sc.fail(fat, "generator family must be one of z, u, c, x, y");
      Family f;
      try {
        f = family_from_char(fam[0]);
      } catch (const InvalidArgument&) {
        sc.fail(fat, "unknown generator family '" + fam + "'");
      }
      if (f == Family::P || f == Family::Q) sc.fail(fat, "projective symbols are not generators");
      const auto rat = sc.pos();
      int lo = sc.integer("range start");
      if (lo != 1) sc.fail(rat, "ranges start at 1");
      sc.literal("..");
      int hi = sc.integer("range end");
      if (hi < 1) sc.fail(rat, "empty range");
      sc.expect(';');
      if (p.generators().declares(f)) sc.fail(at, "family '" + fam + "' declared twice");
      p.declare(f, hi);
    } else if (kw == "unit") {
      const auto kat = sc.pos();
      std::string kind = sc.ident("'sphere' or 'biunitary'");
      sc.expect(';');
      if (kind == "sphere") {
        if (!p.generators().declares(Family::Z)) sc.fail(kat, "unit sphere needs generators z");
        p.add_relations(unit_relations(family_letters(p.generators(), Family::Z)));
      } else if (kind == "biunitary") {
        if (!p.generators().declares(Family::U)) sc.fail(kat, "unit biunitary needs generators u");
        p.add_relations(biunitarity_relations(p.generators().count(Family::U)));
      } else {
        sc.fail(kat, "unknown unit kind '" + kind + "'");
      }
    } else if (kw == "relation") {
      std::vector<std::string> vars;
      std::vector<Letter> range;
      auto qat = sc.pos();
      bool quantified = false;
      {
        // lookahead for `forall`
        Scanner probe = sc;
        try {
          quantified = probe.ident("") == "forall";
        } catch (const ParseError&) {
        }
      }
      if (quantified) {
        sc.literal("forall");
        do {
          if (!vars.empty()) sc.expect(',');
          const auto vat = sc.pos();
          std::string v = sc.ident("bound variable");
          if (std::find(vars.begin(), vars.end(), v) != vars.end()) sc.fail(vat, "variable '" + v + "' bound twice");
          vars.push_back(v);
        } while (sc.peek(','));
        sc.literal("in");
        const auto fat = sc.pos();
        std::string fam = sc.ident("generator family");
        Family f = Family::Z;
        try {
          if (fam.size() != 1) throw InvalidArgument("");
          f = family_from_char(fam[0]);
        } catch (const InvalidArgument&) {
          sc.fail(fat, "unknown generator family '" + fam + "'");
        }
        if (!p.generators().declares(f)) sc.fail(fat, "undeclared generator family '" + fam + "'");
        range = family_letters(p.generators(), f);
        sc.expect(':');
      }
      qat = sc.pos();
      std::string eq = sc.until_semicolon();
      sc.expect(';');
      if (eq.find('=') == std::string::npos) sc.fail(qat, "relation needs '='");
      // each bound variable must occur in the relation
      for (const auto& v : vars) {
        bool used = false;
        for (std::size_t k = eq.find(v); k != std::string::npos; k = eq.find(v, k + 1)) {
          bool left = k == 0 || !(std::isalnum(static_cast<unsigned char>(eq[k - 1])) || eq[k - 1] == '_');
          std::size_t e = k + v.size();
          bool right = e >= eq.size() || !(std::isalnum(static_cast<unsigned char>(eq[e])) || eq[e] == '_');
          used = used || (left && right);
        }
        if (!used) sc.fail(qat, "arity mismatch: bound variable '" + v + "' does not occur in the relation");
      }
      std::vector<std::size_t> idx(vars.size(), 0);
      while (true) {
        Bindings b;
        for (std::size_t k = 0; k < vars.size(); ++k) b[vars[k]] = range[idx[k]];
        try {
          p.add_relation(parse_relation(eq, b));
        } catch (const ParseError&) {
          throw;
        } catch (const InvalidArgument& e) {
          sc.fail(qat, e.what());
        }
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == range.size()) idx[k++] = 0;
        if (k == idx.size()) break;
      }
    } else {
      sc.fail(at, "unknown declaration '" + kw + "'");
    }
  }
  sc.expect('}');
  if (!sc.done()) sc.fail("unexpected text after the presentation");
  return p;
}

Presentation load_presentation(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("cannot open presentation file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return parse_presentation(ss.str());
  } catch (const ParseError& e) {
    throw InvalidArgument(path + ":" + e.what());
  }
}

std::string render_presentation(const Presentation& p) {
  std::ostringstream os;
  os << "presentation " << (p.name().empty() ? "unnamed" : p.name()) << " {\n";
  for (const auto& [f, count] : p.generators().families()) {
    os << "  generators " << family_char(f) << " 1.." << count << ";\n";
  }
  const auto& rels = p.relations();
  std::size_t skip = 0;
  for (const char* kind : {"sphere", "biunitary"}) {
    const Family need = std::string(kind) == "sphere" ? Family::Z : Family::U;
    if (!p.generators().declares(need)) continue;
    auto block = unit_block(p.generators(), kind);
    if (starts_with(rels, block)) {
      os << "  unit " << kind << ";\n";
      skip = block.size();
      break;
    }
  }
  for (std::size_t k = skip; k < rels.size(); ++k) {
    const auto& r = rels[k];
    const auto& [lead, c] = r.leading();
    NCPolynomial rest = NCPolynomial(lead, c) - r;
    os << "  relation " << NCPolynomial(lead, c).str() << " = " << rest.str() << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace halfsph
