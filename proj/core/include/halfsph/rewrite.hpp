#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "halfsph/ncpoly.hpp"
#include "halfsph/presentations.hpp"
#include "halfsph/trace.hpp"

namespace halfsph {

struct Budget {
  std::size_t expansions = 10000;  ///< search nodes generated
  std::size_t reduce_steps = 10000;
  int max_depth = 6;
};

/// Oriented view of a presentation: rule k rewrites the leading word of relation k.
class RuleSet {
 public:
  explicit RuleSet(const Presentation& p);
  RuleSet(const RuleSet&) = delete;
  RuleSet& operator=(const RuleSet&) = delete;
  RuleSet(RuleSet&&) = default;

  struct Occurrence {
    int rule;
    const Word* word;  ///< word of the relation
    Scalar coefficient;  ///< its coefficient in the relation
    bool leading;
  };

  const std::vector<NCPolynomial>& relations() const { return relations_; }
  /// Rules whose leading word starts with the given letter, by rule id.
  const std::vector<Occurrence>& leading_by_first(const Letter& l) const;
  /// Every word of every relation starting with the given letter, ordered by rule id.
  const std::vector<Occurrence>& words_by_first(const Letter& l) const;
  /// Rules with a nonzero constant term.
  const std::vector<int>& unit_rules() const { return unit_rules_; }
  std::size_t max_terms() const { return max_terms_; }

 private:
  std::vector<NCPolynomial> relations_;
  std::unordered_map<std::uint32_t, std::vector<Occurrence>> leading_;
  std::unordered_map<std::uint32_t, std::vector<Occurrence>> words_;
  std::vector<int> unit_rules_;
  std::size_t max_terms_ = 0;
};

struct ReduceResult {
  NCPolynomial value;
  bool exhausted = false;
  DerivationTrace trace;
};

/// Deterministic reduction: repeatedly rewrite the largest reducible term at the
/// lowest (position, rule id). Stops when irreducible or after `budget` steps.
ReduceResult reduce(const NCPolynomial& p, const RuleSet& rules, std::size_t budget = 10000);
ReduceResult reduce(const NCPolynomial& p, const Presentation& pres, std::size_t budget = 10000);

enum class Verdict { Proved, Inconclusive };

struct ImplicationResult {
  Verdict verdict = Verdict::Inconclusive;
  DerivationTrace trace;
  std::size_t expansions = 0;
  bool proved() const { return verdict == Verdict::Proved; }
};

/// Semi-decision: Proved only with a trace whose replay annihilates the target.
/// Tries syntactic membership, iterative-deepening search, normal-form reduction,
/// then unit insertion followed by reduction.
ImplicationResult check_implication(const Presentation& p, const NCPolynomial& target, const Budget& budget = {});
ImplicationResult check_implication(const Presentation& p, const RuleSet& rules, const NCPolynomial& target,
                                    const Budget& budget = {});

struct EquivalenceReport {
  /// forward[k]: relation k of Q from P; backward[k]: relation k of P from Q.
  std::vector<ImplicationResult> forward;
  std::vector<ImplicationResult> backward;
  bool all_forward() const;
  bool all_backward() const;
};

/// Runs check_implication both ways on every relation. Throws on alphabet mismatch.
EquivalenceReport check_presentation_equivalence(const Presentation& p, const Presentation& q,
                                                 const Budget& budget = {});

/// Every relation of `larger` derivable from `smaller` (i.e. X_smaller ⊂ X_larger).
struct InclusionResult {
  bool proved = false;
  std::vector<ImplicationResult> per_relation;
};
InclusionResult check_inclusion(const Presentation& smaller, const Presentation& larger, const Budget& budget = {});

std::string verdict_str(Verdict v);

}  // namespace halfsph
