#include <algorithm>
#include <optional>

#include "halfsph/error.hpp"
#include "halfsph/qisom.hpp"
#include "span.hpp"

namespace halfsph {

namespace {

using FormSpan = detail::Span<AbstractMonomial>;

constexpr char kCols[] = "abc";

EqualityPattern finest_rows(int degree, const Partition& cols) {
  EqualityPattern p;
  p.degree = degree;
  p.cols = cols;
  return p;
}

bool one_block(const Partition& p, int degree) {
  for (int x = 0; x < degree; ++x)
    if (p[x] != 0) return false;
  return true;
}

bool spans(const std::vector<LinearForm>& generators, const std::vector<LinearForm>& targets) {
  FormSpan s;
  int id = 0;
  for (const auto& g : generators) s.add(g, ++id);
  return std::all_of(targets.begin(), targets.end(), [&](const LinearForm& t) { return s.contains(t); });
}

std::vector<std::array<int, 3>> permutations(int degree) {
  std::array<int, 3> p{0, 1, 2};
  std::vector<std::array<int, 3>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.begin() + degree));
  return out;
}

std::string abstract_right_word(const Word& w, const Partition& cols) {
  std::string s;
  for (std::size_t p = 0; p < w.size(); ++p) {
    if (p) s += ' ';
    s += "z_";
    s += kCols[cols[p]];
    if (w[p].starred) s += '*';
  }
  return s;
}

std::vector<bool> star_shape(const Word& w) {
  std::vector<bool> s;
  for (const auto& l : w) s.push_back(l.starred);
  return s;
}

const DeclaredBasis* find_basis(const std::vector<DeclaredBasis>& bases, const std::vector<bool>& shape) {
  for (const auto& b : bases)
    if (b.stars == shape) return &b;
  return nullptr;
}

}  // namespace

std::vector<DeclaredBasis> declared_bases(const std::string& sphere) {
  const std::string s = canonical_sphere(sphere);
  const DeclaredBasis triple{3, {false, false, false}, "z_a z_b z_c, a <= c",
                             "full Gram rank of family 2 over the (p, q) doubling model"};
  const DeclaredBasis star_triple{3, {false, true, false}, "z_a z_b* z_c, a <= c",
                                  "full Gram rank of family 3 over the dotS complex doubling model"};
  const DeclaredBasis pair{2, {false, true}, "z_a z_b*, a <= b", "full Gram rank of family 1"};
  const DeclaredBasis star_pair{2, {true, false}, "z_a* z_b, a <= b",
                                "family 1 moved by the automorphism z_i <-> z_i* of the sphere"};
  if (s == "Cstar") return {star_triple};
  if (s == "Cstarstar") return {triple, star_triple};
  if (s == "Ccirc") return {triple, star_triple, pair, star_pair};
  if (s == "Csharp") return {pair, star_pair};
  if (s == "Rstar") return {triple};
  return {};
}

NCPolynomial basis_relation(const DeclaredBasis& basis, const std::vector<int>& rows) {
  if (int(rows.size()) != basis.degree) throw InvalidArgument("basis_relation: row count mismatch");
  Word w1, w2;
  for (int p = 0; p < basis.degree; ++p) {
    w1.push_back(Letter::z(rows[p], basis.stars[p]));
    w2.push_back(Letter::z(rows[basis.degree - 1 - p], basis.stars[p]));
  }
  return NCPolynomial(w1) - NCPolynomial(w2);
}

Word basis_normal_form(const Word& w) {
  Word out = w;
  const std::size_t last = w.size() - 1;
  if ((w.size() == 2 || w.size() == 3) && w[0].i > w[last].i) std::swap(out[0].i, out[last].i);
  return out;
}

TensorPolynomial expand_coaction(const NCPolynomial& rel, int n) {
  if (rel.degree() > 3) throw InvalidArgument("expand_coaction: unsupported degree " + std::to_string(rel.degree()));
  TensorPolynomial out;
  for (const auto& [w, c] : rel.terms()) {
    TensorPolynomial t = TensorPolynomial::tensor(NCPolynomial(c), NCPolynomial(1));
    for (const auto& l : w) {
      if (l.family != Family::Z || l.i < 1 || l.i > n) {
        throw InvalidArgument("expand_coaction: " + l.str() + " is not a sphere coordinate at N=" + std::to_string(n));
      }
      TensorPolynomial z;
      for (int a = 1; a <= n; ++a) {
        z.add_term({Letter::u(l.i, a, l.starred)}, {Letter::z(a, l.starred)}, Scalar(1));
      }
      t = t * z;
    }
    out += t;
  }
  return out;
}

std::vector<SchemaRelation> collect_conditions(const TensorPolynomial& t, const std::string& sphere) {
  if (t.is_zero()) return {};
  const std::string canon = canonical_sphere(sphere);
  std::vector<DeclaredBasis> bases = declared_bases(canon);
  if (bases.empty()) throw InvalidArgument("collect_conditions: sphere " + canon + " has no declared basis");

  std::optional<std::vector<bool>> shape;
  for (const auto& [key, c] : t.terms()) {
    std::vector<bool> s = star_shape(key.second);
    if (shape && *shape != s) throw InvalidArgument("collect_conditions: right legs are not homogeneous");
    shape = s;
  }
  const DeclaredBasis* basis = find_basis(bases, *shape);
  if (!basis) {
    throw InvalidArgument("collect_conditions: sphere " + canon + " has no declared basis of degree " +
                          std::to_string(shape->size()) + " and this star shape");
  }
  const int d = basis->degree;

  auto normal = t.map_right([](const Word& w) { return NCPolynomial(basis_normal_form(w)); });

  // Abstract statements per column partition, in partition order.
  std::map<Partition, std::vector<LinearForm>> found;
  std::map<Partition, std::string> right_text;
  for (const auto& [w, left] : normal.by_right()) {
    if (left.is_zero()) continue;
    Partition cols = {0, 1, 2};
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < p; ++q)
        if (w[q].i == w[p].i) {
          cols[p] = cols[q];
          break;
        }
    LinearForm form;
    for (const auto& [lw, c] : left.terms()) {
      AbstractMonomial m;
      for (const auto& l : lw) {
        if (l.family != Family::U || l.i < 1 || l.i > d) {
          throw InvalidArgument("collect_conditions: left leg letter " + l.str() + " outside rows 1.." +
                                std::to_string(d));
        }
        int col = -1;
        for (int p = 0; p < d; ++p)
          if (w[p].i == l.j) col = cols[p];
        if (col < 0) throw InvalidArgument("collect_conditions: column of " + l.str() + " not in its right leg");
        m.push_back({std::uint8_t(l.i - 1), std::uint8_t(col), l.starred});
      }
      form[m] += c;
    }
    std::erase_if(form, [](const auto& kv) { return kv.second.is_zero(); });
    if (form.empty()) continue;
    FormSpan s;
    int id = 0;
    for (const auto& f : found[cols]) s.add(f, ++id);
    if (s.add(form, ++id)) found[cols].push_back(form);
    right_text.emplace(cols, abstract_right_word(w, cols));
  }

  std::vector<Partition> order;
  for (const auto& p : partitions(d))
    if (found.count(p)) order.push_back(p);

  std::map<Partition, std::string> dropped;
  std::vector<Partition> kept;
  const auto perms = permutations(d);
  for (const auto& p : order) {
    bool absorbed = false;
    for (const auto& q : kept) {
      for (const auto& rp : perms) {
        for (const auto& cp : perms) {
          std::vector<LinearForm> images;
          EqualityPattern target;
          for (const auto& f : found[q]) {
            SchemaRelation r{0, f, finest_rows(d, q), ""};
            SchemaRelation img = relabel(r, rp, cp);
            target = img.pattern;
            images.push_back(img.form);
          }
          if (target.rows != finest_rows(d, p).rows || target.cols != p) continue;
          if (spans(images, found[p])) {
            absorbed = true;
            dropped[p] = "relabel of " + right_text[q];
          }
          if (absorbed) break;
        }
        if (absorbed) break;
      }
      if (absorbed) break;
    }
    if (!absorbed) kept.push_back(p);
  }

  std::map<Partition, PatternMode> mode;
  for (const auto& p : kept) {
    mode[p] = PatternMode::Exact;
    // The all-distinct coefficient stays exact; merged boundary cases absorb the one-block case.
    if (one_block(p, d) || p == partitions(d).front()) continue;
    std::vector<Partition> coarser;
    for (const auto& q : kept)
      if (q != p && coarser_or_equal(q, p, d)) coarser.push_back(q);
    if (coarser.empty()) continue;
    bool promote = std::all_of(coarser.begin(), coarser.end(), [&](const Partition& q) {
      if (!one_block(q, d)) return false;
      std::vector<LinearForm> specialized;
      for (const auto& f : found[p]) specialized.push_back(canonical_form(f, finest_rows(d, q)));
      return spans(specialized, found[q]);
    });
    if (!promote) continue;
    mode[p] = PatternMode::AtLeast;
    for (const auto& q : coarser) dropped[q] = "specialization of " + right_text[p];
  }

  std::vector<SchemaRelation> out;
  for (const auto& p : kept) {
    if (dropped.count(p)) continue;
    for (const auto& f : found[p]) {
      SchemaRelation r;
      r.id = int(out.size()) + 1;
      r.form = f;
      r.pattern = finest_rows(d, p);
      r.pattern.row_mode = PatternMode::AtLeast;
      r.pattern.col_mode = mode[p];
      r.origin = "coefficient of " + right_text[p] + " in the declared basis " + basis->description + " of " +
                 canon + " (" + basis->justification + ")";
      for (const auto& [q, why] : dropped) {
        if (why.find(right_text[p]) != std::string::npos) {
          r.origin += "; covers the " + right_text[q] + " coefficient by " + why.substr(0, why.find(' '));
        }
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<NCPolynomial> coefficient_relations(const DeclaredBasis& basis, int n) {
  std::vector<NCPolynomial> out;
  std::vector<int> rows(basis.degree, 1);
  auto next = [n](std::vector<int>& t) {
    for (auto& v : t) {
      if (++v <= n) return true;
      v = 1;
    }
    return false;
  };
  do {
    NCPolynomial rel = basis_relation(basis, rows);
    if (rel.is_zero()) continue;
    auto normal = expand_coaction(rel, n).map_right([](const Word& w) { return NCPolynomial(basis_normal_form(w)); });
    for (auto& [w, left] : normal.by_right())
      if (!left.is_zero()) out.push_back(left);
  } while (next(rows));
  return out;
}

}  // namespace halfsph
