#include "halfsph/rewrite.hpp"

#include <unordered_map>

#include "halfsph/error.hpp"

namespace halfsph {

std::string verdict_str(Verdict v) { return v == Verdict::Proved ? "proved" : "inconclusive"; }

RuleSet::RuleSet(const Presentation& p) : relations_(p.relations()) {
  for (std::size_t k = 0; k < relations_.size(); ++k) {
    const NCPolynomial& r = relations_[k];
    const int id = static_cast<int>(k);
    const Word& lead = r.leading().first;
    max_terms_ = std::max(max_terms_, r.size());
    if (!r.coefficient(Word{}).is_zero()) unit_rules_.push_back(id);
    if (!lead.empty()) leading_[lead.front().key()].push_back({id, &lead, r.leading().second, true});
    for (const auto& [w, c] : r.terms()) {
      if (w.empty()) continue;
      words_[w.front().key()].push_back({id, &w, c, w == lead});
    }
  }
}

namespace {

const std::vector<RuleSet::Occurrence> kNone;

bool matches_at(const Word& w, std::size_t pos, const Word& m) {
  if (pos + m.size() > w.size()) return false;
  return std::equal(m.begin(), m.end(), w.begin() + static_cast<std::ptrdiff_t>(pos));
}

Word slice(const Word& w, std::size_t from, std::size_t to) {
  return Word(w.begin() + static_cast<std::ptrdiff_t>(from), w.begin() + static_cast<std::ptrdiff_t>(to));
}

// f -= lambda * left * r * right
void apply(NCPolynomial& f, const Scalar& lambda, const Word& left, const NCPolynomial& r, const Word& right) {
  for (const auto& [m, c] : r.terms()) f.add_term(concat(concat(left, m), right), -(lambda * c));
}

void attach_relations(DerivationTrace& t, const std::vector<NCPolynomial>& rels) {
  for (auto& s : t.steps) t.relations.emplace(s.rule, rels[static_cast<std::size_t>(s.rule)]);
}

void check_alphabet(const Presentation& p, const NCPolynomial& target) {
  for (const auto& l : target.letters()) {
    if (!p.generators().contains(l)) {
      throw InvalidArgument("target uses letter " + l.str() + " outside the alphabet of " + p.name());
    }
  }
}

}  // namespace

const std::vector<RuleSet::Occurrence>& RuleSet::leading_by_first(const Letter& l) const {
  auto it = leading_.find(l.key());
  return it == leading_.end() ? kNone : it->second;
}

const std::vector<RuleSet::Occurrence>& RuleSet::words_by_first(const Letter& l) const {
  auto it = words_.find(l.key());
  return it == words_.end() ? kNone : it->second;
}

ReduceResult reduce(const NCPolynomial& p, const RuleSet& rules, std::size_t budget) {
  ReduceResult res;
  res.trace.start = p;
  res.trace.method = "normal-form";
  NCPolynomial f = p;
  std::size_t steps = 0;
  while (true) {
    const Word* hit_word = nullptr;
    Scalar hit_coeff;
    std::size_t hit_pos = 0;
    const RuleSet::Occurrence* hit = nullptr;
    for (auto it = f.terms().rbegin(); it != f.terms().rend() && !hit; ++it) {
      const Word& w = it->first;
      for (std::size_t pos = 0; pos < w.size() && !hit; ++pos) {
        for (const auto& occ : rules.leading_by_first(w[pos])) {
          if (matches_at(w, pos, *occ.word)) {
            hit = &occ;
            hit_word = &w;
            hit_coeff = it->second;
            hit_pos = pos;
            break;
          }
        }
      }
    }
    if (!hit) break;
    if (steps >= budget) {
      res.exhausted = true;
      break;
    }
    TraceStep s;
    s.step = static_cast<int>(++steps);
    s.position = hit_pos;
    s.rule = hit->rule;
    s.direction = Direction::Forward;
    s.term = *hit_word;
    s.left = slice(s.term, 0, hit_pos);
    s.right = slice(s.term, hit_pos + hit->word->size(), s.term.size());
    s.coefficient = hit_coeff / hit->coefficient;
    apply(f, s.coefficient, s.left, rules.relations()[static_cast<std::size_t>(hit->rule)], s.right);
    res.trace.steps.push_back(std::move(s));
  }
  res.value = f;
  res.trace.end = f;
  attach_relations(res.trace, rules.relations());
  return res;
}

ReduceResult reduce(const NCPolynomial& p, const Presentation& pres, std::size_t budget) {
  return reduce(p, RuleSet(pres), budget);
}

namespace {

struct BudgetExhausted {};

class Search {
 public:
  Search(const RuleSet& rules, std::size_t budget) : rules_(rules), budget_(budget) {}

  bool run(const NCPolynomial& start, int max_depth) {
    try {
      for (int d = 1; d <= max_depth; ++d) {
        path_.clear();
        if (dfs(start, d)) return true;
      }
    } catch (const BudgetExhausted&) {
      path_.clear();
    }
    return false;
  }

  std::vector<TraceStep>& path() { return path_; }
  std::size_t expansions() const { return expansions_; }

 private:
  bool dfs(const NCPolynomial& f, int rem) {
    if (f.is_zero()) return true;
    if (rem == 0) return false;
    // each step touches at most max_terms terms
    if (f.size() > static_cast<std::size_t>(rem) * rules_.max_terms()) return false;
    std::string key = f.monic().str();
    auto [it, fresh] = memo_.try_emplace(key, rem);
    if (!fresh) {
      if (it->second >= rem) return false;
      it->second = rem;
    }
    for (auto t = f.terms().rbegin(); t != f.terms().rend(); ++t) {
      const Word& w = t->first;
      for (std::size_t pos = 0; pos < w.size(); ++pos) {
        for (const auto& occ : rules_.words_by_first(w[pos])) {
          if (!matches_at(w, pos, *occ.word)) continue;
          if (expansions_ >= budget_) throw BudgetExhausted{};
          ++expansions_;
          TraceStep s;
          s.position = pos;
          s.rule = occ.rule;
          s.direction = occ.leading ? Direction::Forward : Direction::Backward;
          s.term = w;
          s.left = slice(w, 0, pos);
          s.right = slice(w, pos + occ.word->size(), w.size());
          s.coefficient = t->second / occ.coefficient;
          NCPolynomial g = f;
          apply(g, s.coefficient, s.left, rules_.relations()[static_cast<std::size_t>(occ.rule)], s.right);
          path_.push_back(std::move(s));
          if (dfs(g, rem - 1)) return true;
          path_.pop_back();
        }
      }
    }
    return false;
  }

  const RuleSet& rules_;
  std::size_t budget_;
  std::size_t expansions_ = 0;
  std::unordered_map<std::string, int> memo_;
  std::vector<TraceStep> path_;
};

void renumber(DerivationTrace& t) {
  for (std::size_t k = 0; k < t.steps.size(); ++k) t.steps[k].step = static_cast<int>(k + 1);
}

ImplicationResult proved(DerivationTrace t, const RuleSet& rules, std::size_t expansions) {
  ImplicationResult r;
  r.verdict = Verdict::Proved;
  renumber(t);
  t.end = NCPolynomial();
  attach_relations(t, rules.relations());
  r.trace = std::move(t);
  r.expansions = expansions;
  return r;
}

}  // namespace

ImplicationResult check_implication(const Presentation& p, const NCPolynomial& target, const Budget& budget) {
  return check_implication(p, RuleSet(p), target, budget);
}

ImplicationResult check_implication(const Presentation& p, const RuleSet& rules, const NCPolynomial& target,
                                    const Budget& budget) {
  check_alphabet(p, target);
  DerivationTrace base;
  base.start = target;
  if (target.is_zero()) {
    base.method = "trivial";
    return proved(base, rules, 0);
  }

  // syntactic membership: target is a scalar multiple of a stored relation
  const NCPolynomial mt = target.monic();
  for (std::size_t k = 0; k < rules.relations().size(); ++k) {
    if (rules.relations()[k] == mt) {
      TraceStep s;
      s.rule = static_cast<int>(k);
      s.term = mt.leading().first;
      s.coefficient = target.leading().second;
      base.steps.push_back(s);
      base.method = "membership";
      return proved(base, rules, 1);
    }
  }

  Search search(rules, budget.expansions);
  if (search.run(target, budget.max_depth)) {
    base.steps = search.path();
    base.method = "search";
    return proved(base, rules, search.expansions());
  }
  std::size_t spent = search.expansions();

  ReduceResult nf = reduce(target, rules, budget.reduce_steps);
  if (nf.value.is_zero()) {
    nf.trace.method = "normal-form";
    return proved(nf.trace, rules, spent);
  }

  // the remainder of a non-confluent reduction is often one relation multiple away;
  // it gets its own allowance since it starts from a much smaller polynomial
  {
    Search rest(rules, budget.expansions);
    const bool found = rest.run(nf.value, budget.max_depth);
    spent += rest.expansions();
    if (found) {
      DerivationTrace t = nf.trace;
      for (auto& s : rest.path()) t.steps.push_back(s);
      t.method = "normal-form-search";
      return proved(t, rules, spent);
    }
  }

  // unit insertion: multiply through by a relation with a constant term, then reduce
  for (int id : rules.unit_rules()) {
    const NCPolynomial& r = rules.relations()[static_cast<std::size_t>(id)];
    const Scalar c0 = r.coefficient(Word{});
    for (bool right_side : {true, false}) {
      DerivationTrace t = base;
      NCPolynomial f = target;
      for (auto it = target.terms().rbegin(); it != target.terms().rend(); ++it) {
        TraceStep s;
        s.rule = id;
        s.direction = Direction::Backward;
        s.term = it->first;
        s.coefficient = it->second / c0;
        if (right_side) {
          s.left = it->first;
          s.position = it->first.size();
        } else {
          s.right = it->first;
        }
        apply(f, s.coefficient, s.left, r, s.right);
        t.steps.push_back(std::move(s));
      }
      ReduceResult red = reduce(f, rules, budget.reduce_steps);
      if (red.value.is_zero()) {
        for (auto& s : red.trace.steps) t.steps.push_back(s);
        t.method = right_side ? "unit-insertion-right" : "unit-insertion-left";
        return proved(t, rules, spent);
      }
    }
  }

  ImplicationResult out;
  out.verdict = Verdict::Inconclusive;
  out.expansions = spent;
  out.trace = nf.trace;
  out.trace.method = "inconclusive";
  return out;
}

bool EquivalenceReport::all_forward() const {
  return std::all_of(forward.begin(), forward.end(), [](const auto& r) { return r.proved(); });
}

bool EquivalenceReport::all_backward() const {
  return std::all_of(backward.begin(), backward.end(), [](const auto& r) { return r.proved(); });
}

EquivalenceReport check_presentation_equivalence(const Presentation& p, const Presentation& q, const Budget& budget) {
  if (!(p.generators() == q.generators())) {
    throw InvalidArgument("check_presentation_equivalence: alphabet mismatch (" + p.generators().str() + " vs " +
                          q.generators().str() + ")");
  }
  EquivalenceReport rep;
  RuleSet rp(p), rq(q);
  for (const auto& r : q.relations()) rep.forward.push_back(check_implication(p, rp, r, budget));
  for (const auto& r : p.relations()) rep.backward.push_back(check_implication(q, rq, r, budget));
  return rep;
}

InclusionResult check_inclusion(const Presentation& smaller, const Presentation& larger, const Budget& budget) {
  if (!(smaller.generators() == larger.generators())) {
    throw InvalidArgument("check_inclusion: alphabet mismatch");
  }
  InclusionResult res;
  res.proved = true;
  RuleSet rules(smaller);
  for (const auto& r : larger.relations()) {
    res.per_relation.push_back(check_implication(smaller, rules, r, budget));
    res.proved = res.proved && res.per_relation.back().proved();
  }
  return res;
}

}  // namespace halfsph
