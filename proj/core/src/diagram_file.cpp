#include <cctype>
#include <fstream>
#include <sstream>

#include "halfsph/error.hpp"
#include "halfsph/lattice.hpp"

namespace halfsph {

namespace {

struct Token {
  std::string text;
  int column = 0;
  bool quoted = false;
};

[[noreturn]] void fail(int line, int column, const std::string& msg) {
  throw InvalidArgument(std::to_string(line) + ":" + std::to_string(column) + ": " + msg);
}

std::vector<Token> tokenize(const std::string& line, int lineno) {
  std::vector<Token> out;
  std::size_t p = 0;
  while (p < line.size()) {
    char ch = line[p];
    if (ch == '#') break;
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++p;
      continue;
    }
    Token t;
    t.column = int(p) + 1;
    if (ch == '"') {
      std::size_t end = line.find('"', p + 1);
      if (end == std::string::npos) fail(lineno, t.column, "unterminated string");
      t.text = line.substr(p + 1, end - p - 1);
      t.quoted = true;
      p = end + 1;
    } else {
      std::size_t end = p;
      while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
      t.text = line.substr(p, end - p);
      p = end;
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::string quote(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

Diagram parse_diagram(const std::string& text) {
  Diagram d;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool named = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = tokenize(line, lineno);
    if (tok.empty()) continue;
    const std::string& kw = tok[0].text;
    auto need = [&](std::size_t count, const char* usage) {
      if (tok.size() < count) fail(lineno, tok.back().column, std::string("expected ") + usage);
    };
    auto node_ref = [&](std::size_t k) -> const std::string& {
      if (!d.has_node(tok[k].text)) fail(lineno, tok[k].column, "unknown node '" + tok[k].text + "'");
      return tok[k].text;
    };
    if (kw == "diagram") {
      need(2, "diagram NAME");
      d.name = tok[1].text;
      named = true;
    } else if (kw == "n") {
      need(2, "n N");
      try {
        d.n = std::stoi(tok[1].text);
      } catch (const std::exception&) {
        fail(lineno, tok[1].column, "N must be an integer");
      }
      if (d.n < 1) fail(lineno, tok[1].column, "N must be positive");
    } else if (kw == "node") {
      need(4, "node ID sphere|group PRESET");
      DiagramNode nd;
      nd.id = tok[1].text;
      if (d.has_node(nd.id)) fail(lineno, tok[1].column, "duplicate node '" + nd.id + "'");
      if (tok[2].text == "sphere") nd.kind = NodeKind::Sphere;
      else if (tok[2].text == "group") nd.kind = NodeKind::Group;
      else fail(lineno, tok[2].column, "node kind must be sphere or group");
      nd.preset = tok[3].text;
      try {
        std::string base = nd.preset;
        if (nd.kind == NodeKind::Sphere && base.rfind("real(", 0) == 0 && base.back() == ')') {
          base = base.substr(5, base.size() - 6);
        }
        nd.kind == NodeKind::Sphere ? canonical_sphere(base) : canonical_group(base);
      } catch (const InvalidArgument& e) {
        fail(lineno, tok[3].column, e.what());
      }
      d.nodes.push_back(std::move(nd));
    } else if (kw == "edge") {
      need(3, "edge SMALLER LARGER");
      d.edges.push_back({node_ref(1), node_ref(2)});
    } else if (kw == "intersection") {
      need(6, "intersection X = A & B");
      if (tok[2].text != "=") fail(lineno, tok[2].column, "expected '='");
      if (tok[4].text != "&") fail(lineno, tok[4].column, "expected '&'");
      IntersectionClaim c{node_ref(1), node_ref(3), node_ref(5), "", ""};
      if (tok.size() > 6) {
        if (tok[6].text != "classical") fail(lineno, tok[6].column, "expected 'classical'");
        need(9, "classical MEET AMBIENT");
        c.meet_manifold = tok[7].text;
        c.ambient_manifold = tok[8].text;
      }
      d.intersections.push_back(std::move(c));
    } else if (kw == "proper") {
      need(5, "proper A B witness MODEL | proper A B indirect \"REASON\"");
      PropernessClaim c;
      c.smaller = node_ref(1);
      c.larger = node_ref(2);
      if (tok[3].text == "witness") {
        c.witness = tok[4].text;
        if (tok.size() > 5) {
          if (tok[5].text != "target") fail(lineno, tok[5].column, "expected 'target'");
          need(7, "target \"RELATION\"");
          c.target = tok[6].text;
          try {
            parse_relation(c.target);
          } catch (const Error& e) {
            fail(lineno, tok[6].column, e.what());
          }
        }
      } else if (tok[3].text == "indirect") {
        if (!tok[4].quoted) fail(lineno, tok[4].column, "indirect reason must be quoted");
        c.indirect = tok[4].text;
      } else {
        fail(lineno, tok[3].column, "expected 'witness' or 'indirect'");
      }
      d.properness.push_back(std::move(c));
    } else if (kw == "equivalent") {
      need(3, "equivalent A B");
      d.equivalences.push_back({node_ref(1), node_ref(2)});
    } else {
      fail(lineno, tok[0].column, "unknown directive '" + kw + "'");
    }
  }
  if (!named && !d.nodes.empty()) fail(lineno, 1, "missing 'diagram NAME' line");
  try {
    d.validate();
  } catch (const InvalidArgument& e) {
    fail(lineno, 1, e.what());
  }
  return d;
}

Diagram load_diagram(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("cannot open diagram file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return parse_diagram(ss.str());
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(path + ":" + e.what());
  }
}

std::string render_diagram(const Diagram& d) {
  std::ostringstream os;
  os << "diagram " << (d.name.empty() ? "unnamed" : d.name) << "\n";
  os << "n " << d.n << "\n";
  for (const auto& nd : d.nodes) {
    os << "node " << nd.id << " " << (nd.kind == NodeKind::Sphere ? "sphere" : "group") << " " << nd.preset << "\n";
  }
  for (const auto& e : d.edges) os << "edge " << e.smaller << " " << e.larger << "\n";
  for (const auto& c : d.intersections) {
    os << "intersection " << c.node << " = " << c.left << " & " << c.right;
    if (c.classical()) os << " classical " << c.meet_manifold << " " << c.ambient_manifold;
    os << "\n";
  }
  for (const auto& c : d.properness) {
    os << "proper " << c.smaller << " " << c.larger;
    if (!c.indirect.empty()) {
      os << " indirect " << quote(c.indirect);
    } else {
      os << " witness " << c.witness;
      if (!c.target.empty()) os << " target " << quote(c.target);
    }
    os << "\n";
  }
  for (const auto& c : d.equivalences) os << "equivalent " << c.left << " " << c.right << "\n";
  return os.str();
}

}  // namespace halfsph
