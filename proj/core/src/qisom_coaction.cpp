#include <functional>
#include <optional>

#include <unsupported/Eigen/KroneckerProduct>

#include "halfsph/error.hpp"
#include "halfsph/qisom.hpp"

namespace halfsph {

namespace {

bool has_constant(const NCPolynomial& p) { return !p.coefficient(Word{}).is_zero(); }

// w1 - w2 with unit coefficients.
bool binomial(const NCPolynomial& p, Word& w1, Word& w2) {
  if (p.size() != 2) return false;
  auto it = p.terms().begin();
  const auto& [a, ca] = *it++;
  const auto& [b, cb] = *it;
  if (!(ca == -cb) || !(ca.is_one() || cb.is_one())) return false;
  w1 = a;
  w2 = b;
  return true;
}

// Right-leg normal forms: the smallest word of each congruence class generated by the
// homogeneous binomial relations, then elimination of pivot words of the remaining
// (unit) relations. Falls back to rule-based reduction for non-binomial relations.
class RightNormalizer {
 public:
  RightNormalizer(const Presentation& sphere, const Budget& budget) : budget_(budget) {
    for (const auto& l : sphere.generators().letters()) {
      letters_.push_back(l);
      letters_.push_back(l.star());
    }
    Presentation homogeneous(sphere.name() + "-homogeneous", sphere.generators());
    for (const auto& r : sphere.relations()) {
      if (has_constant(r)) {
        units_.push_back(r);
        continue;
      }
      homogeneous.add_relation(r);
      Word a, b;
      if (binomial(r, a, b)) {
        pairs_.emplace_back(a, b);
      } else {
        all_binomial_ = false;
      }
    }
    if (!all_binomial_) rules_.emplace(homogeneous);
    // Unit relations in class representatives, reduced to echelon form by largest word.
    for (const auto& u : units_) {
      NCPolynomial r = to_reps(u);
      for (const auto& [pivot, row] : pivots_) {
        Scalar c = r.coefficient(pivot);
        if (!c.is_zero()) r -= row * c;
      }
      if (r.is_zero()) continue;
      NCPolynomial m = r.monic();
      Word pivot = m.leading().first;
      for (auto& [p, row] : pivots_) {
        Scalar c = row.coefficient(pivot);
        if (!c.is_zero()) row -= m * c;
      }
      pivots_.emplace(pivot, m);
    }
  }

  NCPolynomial homogeneous_form(const Word& w) {
    if (!all_binomial_) return reduce(NCPolynomial(w), *rules_, budget_.reduce_steps).value;
    return NCPolynomial(rep(w));
  }

  NCPolynomial full_form(const Word& w) {
    NCPolynomial r = homogeneous_form(w);
    NCPolynomial out;
    for (const auto& [v, c] : r.terms()) {
      auto it = pivots_.find(v);
      if (it == pivots_.end()) {
        out.add_term(v, c);
      } else {
        out += (NCPolynomial(v) - it->second) * c;
      }
    }
    return out;
  }

 private:
  NCPolynomial to_reps(const NCPolynomial& p) {
    NCPolynomial out;
    for (const auto& [w, c] : p.terms()) out += homogeneous_form(w) * c;
    return out;
  }

  const Word& rep(const Word& w) {
    auto it = rep_.find(w);
    if (it != rep_.end()) return it->second;
    build(w.size());
    return rep_.at(w);
  }

  // Union-find over all words of one length.
  void build(std::size_t len) {
    std::vector<Word> words{{}};
    for (std::size_t k = 0; k < len; ++k) {
      std::vector<Word> next;
      for (const auto& w : words)
        for (const auto& l : letters_) {
          Word x = w;
          x.push_back(l);
          next.push_back(std::move(x));
        }
      words = std::move(next);
    }
    std::map<Word, Word, GradedLex> parent;
    for (const auto& w : words) parent[w] = w;
    std::function<Word(const Word&)> find = [&](const Word& w) -> Word {
      Word& p = parent.at(w);
      if (p == w) return w;
      p = find(p);
      return p;
    };
    auto unite = [&](const Word& a, const Word& b) {
      Word ra = find(a), rb = find(b);
      if (ra == rb) return;
      if (GradedLex{}(ra, rb)) parent[rb] = ra;
      else parent[ra] = rb;
    };
    for (const auto& w : words) {
      for (const auto& [a, b] : pairs_) {
        for (const auto* from : {&a, &b}) {
          const Word& to = from == &a ? b : a;
          if (from->size() > w.size() || from->size() != to.size()) continue;
          for (std::size_t p = 0; p + from->size() <= w.size(); ++p) {
            if (!std::equal(from->begin(), from->end(), w.begin() + long(p))) continue;
            Word x = w;
            std::copy(to.begin(), to.end(), x.begin() + long(p));
            unite(w, x);
          }
        }
      }
    }
    for (const auto& w : words) rep_[w] = find(w);
  }

  Budget budget_;
  std::vector<Letter> letters_;
  std::vector<std::pair<Word, Word>> pairs_;
  std::vector<NCPolynomial> units_;
  bool all_binomial_ = true;
  std::optional<RuleSet> rules_;
  std::map<Word, Word, GradedLex> rep_;
  std::map<Word, NCPolynomial, GradedLex> pivots_;
};

}  // namespace

SampleReport verify_coaction_numeric(const ModelPoint& g, const ModelPoint& s, const Presentation& sphere,
                                     double tol) {
  const int n = sphere.n();
  for (int i = 1; i <= n; ++i) {
    if (!s.covers(Letter::z(i))) throw InvalidArgument("verify_coaction_numeric: sphere model misses z" + std::to_string(i));
    for (int a = 1; a <= n; ++a)
      if (!g.covers(Letter::u(i, a))) throw InvalidArgument("verify_coaction_numeric: dimension mismatch with the group model");
  }
  ModelPoint z;
  z.manifold = "coaction(" + g.manifold + ", " + s.manifold + ")";
  z.n = n;
  z.dim = g.dim * s.dim;
  z.seed = s.seed;
  for (int i = 1; i <= n; ++i) {
    Mat zi = Mat::Zero(z.dim, z.dim);
    for (int a = 1; a <= n; ++a) zi += Eigen::kroneckerProduct(g.matrix(Letter::u(i, a)), s.matrix(Letter::z(a))).eval();
    z.matrices[Letter::z(i)] = zi;
  }
  return check_relations(sphere, z, tol);
}

std::vector<std::pair<std::string, std::string>> isometry_pairs() {
  return {{"UN", "C"},          {"UNstarstar", "Cstarstar"}, {"UNstar", "Cstar"},
          {"TON", "TSR"},       {"UNcirc", "Ccirc"},         {"UNsharp", "Csharp"}};
}

CoactionVerdict verify_coaction_symbolic(const std::string& sphere, const std::string& group, int n,
                                         const Budget& budget) {
  if (n < 1 || n > 3) throw InvalidArgument("verify_coaction_symbolic: N must be 1, 2 or 3");
  CoactionVerdict out;
  out.sphere = canonical_sphere(sphere);
  out.group = canonical_group(group);
  out.n = n;
  const Presentation sph = make_sphere(out.sphere, n);
  const Presentation grp = make_group(out.group, n);
  const RuleSet group_rules(grp);
  RightNormalizer right(sph, budget);

  std::map<std::string, ImplicationResult> cache;
  for (const auto& rel : sph.relations()) {
    RelationCoaction rc;
    rc.relation = rel;
    const bool unit = has_constant(rel);
    TensorPolynomial t = expand_coaction(rel, n).map_right([&](const Word& w) {
      return unit ? right.full_form(w) : right.homogeneous_form(w);
    });
    rc.proved = true;
    for (const auto& [w, left] : t.by_right()) {
      if (left.is_zero()) continue;
      CoefficientCheck cc{w, left, {}};
      auto hit = cache.find(left.str());
      if (hit != cache.end()) {
        cc.result = hit->second;
      } else {
        ReduceResult red = reduce(left, group_rules, budget.reduce_steps);
        if (red.value.is_zero()) {
          cc.result.verdict = Verdict::Proved;
          cc.result.trace = red.trace;
        } else {
          cc.result = check_implication(grp, group_rules, left, budget);
        }
        cache.emplace(left.str(), cc.result);
      }
      if (!cc.result.proved()) {
        rc.proved = false;
        ++out.failures;
      }
      rc.coefficients.push_back(std::move(cc));
    }
    out.relations.push_back(std::move(rc));
  }
  out.verdict = out.failures == 0 ? Verdict::Proved : Verdict::Inconclusive;
  return out;
}

nlohmann::json to_json(const CoactionVerdict& v) {
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& r : v.relations) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : r.coefficients) {
      coeffs.push_back({{"right", word_str(c.right)},
                        {"left", c.left.str()},
                        {"verdict", verdict_str(c.result.verdict)},
                        {"trace", to_json(c.result.trace)}});
    }
    rels.push_back({{"relation", r.relation.str()}, {"proved", r.proved}, {"coefficients", coeffs}});
  }
  return {{"sphere", v.sphere},
          {"group", v.group},
          {"N", v.n},
          {"verdict", verdict_str(v.verdict)},
          {"failures", v.failures},
          {"relations", rels}};
}

}  // namespace halfsph
