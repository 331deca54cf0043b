#include <algorithm>
#include <sstream>

#include "halfsph/error.hpp"
#include "halfsph/qisom.hpp"

namespace halfsph {

namespace {

constexpr char kRows[] = "ijk";
constexpr char kCols[] = "abc";

Partition kernel(const std::vector<int>& values) {
  Partition p{0, 1, 2};
  for (std::size_t x = 0; x < values.size(); ++x) {
    for (std::size_t y = 0; y < x; ++y) {
      if (values[y] == values[x]) {
        p[x] = std::uint8_t(y);
        break;
      }
    }
  }
  return p;
}

std::string partition_str(const Partition& p, int degree, const char* names) {
  std::string out;
  for (int x = 0; x < degree; ++x) {
    if (p[x] != x) continue;
    if (!out.empty()) out += '|';
    for (int y = x; y < degree; ++y)
      if (p[y] == x) out += names[y];
  }
  return out;
}

std::string partition_key(const Partition& p, int degree, const char* names) {
  std::string out;
  for (int x = 0; x < degree; ++x) out += names[p[x]];
  return out;
}

bool part_matches(const Partition& pattern, PatternMode mode, const Partition& exact, int degree) {
  if (mode == PatternMode::Exact) {
    for (int x = 0; x < degree; ++x)
      if (pattern[x] != exact[x]) return false;
    return true;
  }
  return coarser_or_equal(exact, pattern, degree);
}

// Image of a partition under a letter bijection, with canonical representatives.
Partition permute(const Partition& p, const std::array<int, 3>& perm, int degree) {
  Partition out{0, 1, 2};
  for (int x = 0; x < degree; ++x) {
    int rep = 3;
    for (int y = 0; y < degree; ++y)
      if (p[y] == p[x]) rep = std::min(rep, perm[y]);
    out[perm[x]] = std::uint8_t(rep);
  }
  return out;
}

AbstractMonomial reversed(const AbstractMonomial& m) { return {m.rbegin(), m.rend()}; }

// Partner of m in a bracket: letters reversed, star flags kept by position.
AbstractMonomial bracket_partner(const AbstractMonomial& m) {
  AbstractMonomial out(m.size());
  for (std::size_t p = 0; p < m.size(); ++p) {
    out[p] = m[m.size() - 1 - p];
    out[p].star = m[p].star;
  }
  return out;
}

void add_to(LinearForm& f, const AbstractMonomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = f.find(m);
  if (it == f.end()) {
    f.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) f.erase(it);
}

std::string bracket_text(const AbstractMonomial& m) {
  std::string out = "[";
  for (std::size_t p = 0; p < m.size(); ++p) {
    if (p) out += ", ";
    out += m[p].str();
  }
  return out + "]";
}

std::string monomial_str(const AbstractMonomial& m) {
  std::string out;
  for (const auto& g : m) {
    if (!out.empty()) out += ' ';
    out += g.str();
  }
  return out;
}

std::string coeff_prefix(const Scalar& c, bool first) {
  std::string s = c.str();
  bool neg = !s.empty() && s[0] == '-';
  if (neg) s = s.substr(1);
  std::string sign = first ? (neg ? "-" : "") : (neg ? " - " : " + ");
  return sign + (s == "1" ? "" : s + " ");
}

const char* mode_str(PatternMode m) { return m == PatternMode::Exact ? "exact" : "at_least"; }

PatternMode mode_from(const std::string& s) {
  if (s == "exact") return PatternMode::Exact;
  if (s == "at_least") return PatternMode::AtLeast;
  throw InvalidArgument("unknown pattern mode '" + s + "'");
}

}  // namespace

std::string AbstractGenerator::str() const {
  std::string s = "u_";
  s += kRows[row];
  s += kCols[col];
  if (star) s += '*';
  return s;
}

BracketTerm BracketTerm::triple(bool middle_star) {
  return {{{0, 0, false}, {1, 1, middle_star}, {2, 2, false}}};
}

BracketTerm BracketTerm::pair(bool first_star) {
  return {{{0, 0, first_star}, {1, 1, !first_star}}};
}

LinearForm BracketTerm::form() const {
  LinearForm f;
  add_to(f, factors, Scalar(1));
  add_to(f, bracket_partner(factors), Scalar(-1));
  return f;
}

std::string BracketTerm::str() const { return bracket_text(factors); }

std::vector<Partition> partitions(int degree) {
  if (degree == 3) return {{0, 1, 2}, {0, 0, 2}, {0, 1, 0}, {0, 1, 1}, {0, 0, 0}};
  if (degree == 2) return {{0, 1, 2}, {0, 0, 2}};
  throw InvalidArgument("partitions: degree must be 2 or 3");
}

std::vector<EqualityPattern> exact_classes(int degree) {
  std::vector<EqualityPattern> out;
  for (const auto& r : partitions(degree)) {
    for (const auto& c : partitions(degree)) {
      EqualityPattern p;
      p.degree = degree;
      p.rows = r;
      p.cols = c;
      out.push_back(p);
    }
  }
  return out;
}

bool coarser_or_equal(const Partition& p, const Partition& q, int degree) {
  for (int x = 0; x < degree; ++x)
    for (int y = 0; y < degree; ++y)
      if (q[x] == q[y] && p[x] != p[y]) return false;
  return true;
}

bool EqualityPattern::covers(const EqualityPattern& e) const {
  return e.degree == degree && part_matches(rows, row_mode, e.rows, degree) &&
         part_matches(cols, col_mode, e.cols, degree);
}

bool EqualityPattern::admits(const std::vector<int>& r, const std::vector<int>& c) const {
  if (int(r.size()) != degree || int(c.size()) != degree) return false;
  EqualityPattern e;
  e.degree = degree;
  e.rows = kernel(r);
  e.cols = kernel(c);
  return covers(e);
}

std::string EqualityPattern::str() const {
  std::string s = "rows " + partition_str(rows, degree, kRows);
  if (row_mode == PatternMode::AtLeast) s += " (or coarser)";
  s += ", cols " + partition_str(cols, degree, kCols);
  if (col_mode == PatternMode::AtLeast) s += " (or coarser)";
  return s;
}

std::string EqualityPattern::key() const {
  return partition_key(rows, degree, kRows) + "/" + partition_key(cols, degree, kCols);
}

std::string form_str(const LinearForm& f) {
  if (f.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : f) {
    out += coeff_prefix(c, first) + monomial_str(m);
    first = false;
  }
  return out;
}

std::string SchemaRelation::statement() const {
  if (form.empty()) return "0 = 0";
  // Pair every monomial with its bracket partner; fall back to the plain form.
  std::vector<std::pair<AbstractMonomial, Scalar>> brackets;
  for (const auto& [m, c] : form) {
    AbstractMonomial partner = bracket_partner(m);
    auto it = form.find(partner);
    if (partner == m || it == form.end() || !(it->second == -c)) return form_str(form) + " = 0";
    if (m < partner) brackets.emplace_back(m, c);
  }
  if (brackets.size() == 1) return bracket_text(brackets[0].first) + " = 0";
  if (brackets.size() == 2) {
    const auto& [m1, c1] = brackets[0];
    const auto& [m2, c2] = brackets[1];
    if (c1 == c2) return bracket_text(m1) + " = " + bracket_text(bracket_partner(m2));
    if (c1 == -c2) return bracket_text(m1) + " = " + bracket_text(m2);
  }
  std::string out;
  bool first = true;
  for (const auto& [m, c] : brackets) {
    out += coeff_prefix(c, first) + bracket_text(m);
    first = false;
  }
  return out + " = 0";
}

LinearForm canonical_form(const LinearForm& f, const EqualityPattern& p) {
  LinearForm out;
  for (const auto& [m, c] : f) {
    AbstractMonomial n = m;
    for (auto& g : n) {
      g.row = p.rows[g.row];
      g.col = p.cols[g.col];
    }
    add_to(out, n, c);
  }
  return out;
}

SchemaRelation antipode(const SchemaRelation& r) {
  SchemaRelation out;
  out.pattern = r.pattern;
  std::swap(out.pattern.rows, out.pattern.cols);
  std::swap(out.pattern.row_mode, out.pattern.col_mode);
  for (const auto& [m, c] : r.form) {
    AbstractMonomial n = reversed(m);
    for (auto& g : n) g = {g.col, g.row, !g.star};
    add_to(out.form, n, c);
  }
  out.origin = "antipode";
  return out;
}

SchemaRelation involution(const SchemaRelation& r) {
  SchemaRelation out;
  out.pattern = r.pattern;
  for (const auto& [m, c] : r.form) {
    AbstractMonomial n = reversed(m);
    for (auto& g : n) g.star = !g.star;
    add_to(out.form, n, c.conj());
  }
  out.origin = "involution";
  return out;
}

SchemaRelation relabel(const SchemaRelation& r, const std::array<int, 3>& row_perm,
                       const std::array<int, 3>& col_perm) {
  const int d = r.pattern.degree;
  for (const auto* perm : {&row_perm, &col_perm}) {
    std::array<int, 3> sorted = *perm;
    std::sort(sorted.begin(), sorted.begin() + d);
    for (int x = 0; x < d; ++x)
      if (sorted[x] != x) throw InvalidArgument("relabel: not a permutation of the letters");
  }
  SchemaRelation out;
  out.pattern = r.pattern;
  out.pattern.rows = permute(r.pattern.rows, row_perm, d);
  out.pattern.cols = permute(r.pattern.cols, col_perm, d);
  for (const auto& [m, c] : r.form) {
    AbstractMonomial n = m;
    for (auto& g : n) {
      g.row = out.pattern.rows[row_perm[g.row]];
      g.col = out.pattern.cols[col_perm[g.col]];
    }
    add_to(out.form, n, c);
  }
  out.origin = "relabel";
  return out;
}

SchemaRelation specialize(const SchemaRelation& r, const EqualityPattern& e) {
  if (!e.exact() || !r.pattern.covers(e)) {
    throw InvalidArgument("specialize: class " + e.key() + " is not covered by " + r.pattern.str());
  }
  SchemaRelation out;
  out.pattern = e;
  out.form = canonical_form(r.form, e);
  out.origin = "specialize";
  return out;
}

NCPolynomial instantiate(const LinearForm& f, const std::vector<int>& rows, const std::vector<int>& cols) {
  NCPolynomial out;
  for (const auto& [m, c] : f) {
    Word w;
    for (const auto& g : m) w.push_back(Letter::u(rows.at(g.row), cols.at(g.col), g.star));
    out.add_term(w, c);
  }
  return out;
}

std::vector<NCPolynomial> instantiate_all(const SchemaRelation& r, int n) {
  const int d = r.pattern.degree;
  std::vector<NCPolynomial> out;
  std::vector<int> rows(d, 1), cols(d, 1);
  auto next = [n](std::vector<int>& t) {
    for (auto& v : t) {
      if (++v <= n) return true;
      v = 1;
    }
    return false;
  };
  do {
    do {
      if (!r.pattern.admits(rows, cols)) continue;
      NCPolynomial p = instantiate(r.form, rows, cols);
      if (!p.is_zero()) out.push_back(std::move(p));
    } while (next(cols));
  } while (next(rows));
  return out;
}

NCPolynomial concrete_antipode(const NCPolynomial& p) {
  NCPolynomial out;
  for (const auto& [w, c] : p.terms()) {
    Word n;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      if (it->family != Family::U) throw InvalidArgument("concrete_antipode: non-group letter " + it->str());
      n.push_back(Letter::u(it->j, it->i, !it->starred));
    }
    out.add_term(n, c);
  }
  return out;
}

nlohmann::json to_json(const SchemaRelation& r) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : r.form) {
    nlohmann::json mono = nlohmann::json::array();
    for (const auto& g : m) mono.push_back({g.row, g.col, g.star});
    terms.push_back({{"monomial", mono}, {"coefficient", c.str()}});
  }
  const auto& p = r.pattern;
  return {{"id", r.id},
          {"statement", r.statement()},
          {"pattern",
           {{"degree", p.degree},
            {"rows", std::vector<int>(p.rows.begin(), p.rows.begin() + p.degree)},
            {"cols", std::vector<int>(p.cols.begin(), p.cols.begin() + p.degree)},
            {"row_mode", mode_str(p.row_mode)},
            {"col_mode", mode_str(p.col_mode)},
            {"text", p.str()}}},
          {"terms", terms},
          {"origin", r.origin}};
}

SchemaRelation schema_from_json(const nlohmann::json& j) {
  SchemaRelation r;
  r.id = j.at("id").get<int>();
  r.origin = j.value("origin", "");
  const auto& p = j.at("pattern");
  r.pattern.degree = p.at("degree").get<int>();
  if (r.pattern.degree != 2 && r.pattern.degree != 3) throw InvalidArgument("schema: degree must be 2 or 3");
  auto rows = p.at("rows").get<std::vector<int>>();
  auto cols = p.at("cols").get<std::vector<int>>();
  if (int(rows.size()) != r.pattern.degree || int(cols.size()) != r.pattern.degree) {
    throw InvalidArgument("schema: partition length mismatch");
  }
  for (int x = 0; x < r.pattern.degree; ++x) {
    r.pattern.rows[x] = std::uint8_t(rows[x]);
    r.pattern.cols[x] = std::uint8_t(cols[x]);
  }
  r.pattern.row_mode = mode_from(p.at("row_mode").get<std::string>());
  r.pattern.col_mode = mode_from(p.at("col_mode").get<std::string>());
  for (const auto& t : j.at("terms")) {
    AbstractMonomial m;
    for (const auto& g : t.at("monomial")) {
      int row = g.at(0).get<int>(), col = g.at(1).get<int>();
      if (row < 0 || row >= r.pattern.degree || col < 0 || col >= r.pattern.degree) {
        throw InvalidArgument("schema: letter out of range");
      }
      m.push_back({std::uint8_t(row), std::uint8_t(col), g.at(2).get<bool>()});
    }
    add_to(r.form, m, Scalar::parse(t.at("coefficient").get<std::string>()));
  }
  return r;
}

}  // namespace halfsph
