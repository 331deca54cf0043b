#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "halfsph/models.hpp"
#include "halfsph/ncpoly.hpp"
#include "halfsph/presentations.hpp"
#include "halfsph/rewrite.hpp"

namespace halfsph {

/// u_{row col}^star with row in {i, j, k} (0..2) and column in {a, b, c} (0..2).
struct AbstractGenerator {
  std::uint8_t row = 0;
  std::uint8_t col = 0;
  bool star = false;
  friend auto operator<=>(const AbstractGenerator&, const AbstractGenerator&) = default;
  std::string str() const;  ///< `u_ia`, `u_jb*`
};

using AbstractMonomial = std::vector<AbstractGenerator>;
using LinearForm = std::map<AbstractMonomial, Scalar>;

/// [x1, x2, x3] = x1 x2 x3 - x3 x2 x1 and [x1, x2] = x1 x2 - x2 x1, where the star
/// flags stay with the position: [u_ia, u_jb*] = u_ia u_jb* - u_jb u_ia*.
struct BracketTerm {
  std::vector<AbstractGenerator> factors;

  /// [u_ia, u_jb^x, u_kc] with x = * when middle_star.
  static BracketTerm triple(bool middle_star);
  /// [u_ia, u_jb*] (first = false) or [u_ia*, u_jb] (first = true).
  static BracketTerm pair(bool first_star);

  int degree() const { return int(factors.size()); }
  LinearForm form() const;
  std::string str() const;
};

/// Set partition of the first `degree` letters as canonical representatives:
/// block[x] is the smallest letter equivalent to x.
using Partition = std::array<std::uint8_t, 3>;

enum class PatternMode { Exact, AtLeast };

/// A class of index tuples by which row indices and which column indices coincide.
/// AtLeast covers the pattern and every coarsening of it.
struct EqualityPattern {
  int degree = 3;
  Partition rows{0, 1, 2};
  Partition cols{0, 1, 2};
  PatternMode row_mode = PatternMode::Exact;
  PatternMode col_mode = PatternMode::Exact;

  bool exact() const { return row_mode == PatternMode::Exact && col_mode == PatternMode::Exact; }
  /// Whether the exact class `e` lies in this pattern.
  bool covers(const EqualityPattern& e) const;
  /// Whether a concrete index tuple lies in this pattern.
  bool admits(const std::vector<int>& rows, const std::vector<int>& cols) const;
  std::string str() const;  ///< `rows i|j|k, cols ab|c (or coarser)`
  std::string key() const;  ///< exact-class key, e.g. `ijk/aac`
  friend bool operator==(const EqualityPattern&, const EqualityPattern&) = default;
};

/// All set partitions of a 2- or 3-set, finest first.
std::vector<Partition> partitions(int degree);
/// The 25 (degree 3) or 4 (degree 2) exact classes.
std::vector<EqualityPattern> exact_classes(int degree);
/// p is at least as coarse as q (every block of q lies in a block of p).
bool coarser_or_equal(const Partition& p, const Partition& q, int degree);

/// A linear statement sum c_m m = 0 over the abstract monomials m, valid on a pattern.
struct SchemaRelation {
  int id = 0;
  LinearForm form;
  EqualityPattern pattern;
  std::string origin;

  std::string statement() const;  ///< bracket form when possible, e.g. `[u_ia, u_jb*, u_kc] = [u_ka, u_jb*, u_ic]`
};

std::string form_str(const LinearForm& f);
/// Rewrites every letter to its block representative and merges terms.
LinearForm canonical_form(const LinearForm& f, const EqualityPattern& p);

// ---- schema transformations (all keep the statement valid) ----
/// Reverse the factors, transpose each index pair, flip stars; rows and columns swap roles.
SchemaRelation antipode(const SchemaRelation& r);
/// Reverse, flip all stars, conjugate coefficients.
SchemaRelation involution(const SchemaRelation& r);
/// Apply bijections of the row letters and of the column letters.
SchemaRelation relabel(const SchemaRelation& r, const std::array<int, 3>& row_perm, const std::array<int, 3>& col_perm);
/// Restrict to an exact class covered by r's pattern.
SchemaRelation specialize(const SchemaRelation& r, const EqualityPattern& exact_class);

// ---- concrete instances ----
/// The form at concrete 1-based indices; letter x takes rows[x] / cols[x].
NCPolynomial instantiate(const LinearForm& f, const std::vector<int>& rows, const std::vector<int>& cols);
/// Every concrete instance over indices 1..n admitted by the pattern, zeros dropped.
std::vector<NCPolynomial> instantiate_all(const SchemaRelation& r, int n);
/// Concrete antipode on group letters: u_ij -> u_ji*, u_ij* -> u_ji, order reversed.
NCPolynomial concrete_antipode(const NCPolynomial& p);

// ---- expansion and collection ----
/// z_i -> sum_a u_ia (x) z_a applied to a relation of degree <= 3 in sphere letters.
TensorPolynomial expand_coaction(const NCPolynomial& sphere_relation, int n);

/// Right-leg normal forms declared independent for a sphere, as index data.
struct DeclaredBasis {
  int degree = 0;
  std::vector<bool> stars;  ///< star shape of the monomials
  std::string description;  ///< e.g. `z_a z_b* z_c, a <= c`
  std::string justification;
};
/// Declared bases of a sphere (aliases accepted); empty when none.
std::vector<DeclaredBasis> declared_bases(const std::string& sphere);

/// Reads off the left-leg coefficient relations of an expansion (rows 1..d standing for
/// i, j, k) after moving right legs to the declared basis. Errors on a sphere without a
/// basis for the expansion's degree and star shape.
std::vector<SchemaRelation> collect_conditions(const TensorPolynomial& t, const std::string& sphere);

/// The sphere relation whose right legs the basis normalizes, at concrete rows:
/// z_i z_j^x z_k - z_k z_j^x z_i, or z_i^s z_j^t - z_j^s z_i^t.
NCPolynomial basis_relation(const DeclaredBasis& basis, const std::vector<int>& rows);
/// Moves a right-leg word to basis form (swaps the outer indices when out of order).
Word basis_normal_form(const Word& w);
/// Concrete left-leg coefficients of the expanded basis relation over all row tuples in
/// 1..n. The brute-force reference for collect_conditions.
std::vector<NCPolynomial> coefficient_relations(const DeclaredBasis& basis, int n);

// ---- saturation ----
struct SaturationStep {
  int id = 0;  ///< statement id produced (0 for a combine step)
  std::string op;  ///< axiom | specialize | antipode | involution | relabel | combine
  std::vector<int> inputs;
  std::vector<Scalar> coefficients;  ///< combine only
  std::string detail;  ///< relabel permutations, class names
  std::array<int, 3> row_perm{0, 1, 2};  ///< relabel only
  std::array<int, 3> col_perm{0, 1, 2};
  SchemaRelation output;
};

struct SaturationResult {
  BracketTerm goal;
  std::vector<SaturationStep> steps;
  /// Exact-class key -> goal derived on that class.
  std::map<std::string, bool> class_vanishes;
  bool global = false;
  bool exhausted = false;
  std::size_t derived = 0;
  std::size_t budget = 0;
  std::vector<std::string> notes;

  std::size_t classes_proved() const;
};

/// Breadth-first closure under antipode, involution and relabel of the exact-class
/// specializations of `initial`, with linear combination inside each class. `budget`
/// bounds the number of derived statements.
SaturationResult saturate(const std::vector<SchemaRelation>& initial, const BracketTerm& goal,
                          std::size_t budget = 10000);

struct SaturationReplay {
  bool ok = false;
  std::string message;
  std::size_t steps_checked = 0;
};
/// Re-derives every step from its inputs and re-checks every combine.
SaturationReplay replay_saturation(const SaturationResult& r);

nlohmann::json to_json(const SchemaRelation& r);
SchemaRelation schema_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SaturationResult& r);
SaturationResult saturation_from_json(const nlohmann::json& j);

/// One collect + saturate run for a single relation shape.
struct QisomStage {
  std::string relation;  ///< abstract sphere relation, e.g. `z_i z_j* z_k = z_k z_j* z_i`
  DeclaredBasis basis;
  std::vector<SchemaRelation> conditions;
  SaturationResult saturation;
};

struct QisomPipeline {
  std::string sphere;
  std::vector<QisomStage> stages;
  bool proved = false;
  std::string conclusion;  ///< relations derived for the quantum isometry group
  bool conditional_on_lemma44 = false;
  std::vector<std::string> notes;
};
/// Closure pipeline: Cstar, Cstarstar, Csharp, Ccirc, Rstar.
QisomPipeline qisom_closure(const std::string& sphere, std::size_t budget = 10000);
nlohmann::json to_json(const QisomPipeline& p);

// ---- coaction checks ----
/// Z_i = sum_a u_ia (x) z_a as Kronecker products; residuals of every sphere relation.
SampleReport verify_coaction_numeric(const ModelPoint& group_model, const ModelPoint& sphere_model,
                                     const Presentation& sphere, double tol = 1e-10);

struct CoefficientCheck {
  Word right;
  NCPolynomial left;
  ImplicationResult result;
};
struct RelationCoaction {
  NCPolynomial relation;
  std::vector<CoefficientCheck> coefficients;
  bool proved = false;
};
struct CoactionVerdict {
  std::string sphere;
  std::string group;
  int n = 0;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<RelationCoaction> relations;
  std::size_t failures = 0;
};
/// Each sphere relation on the Z_i: right legs rewritten by sphere relations, every
/// left coefficient derived from the group presentation.
CoactionVerdict verify_coaction_symbolic(const std::string& sphere, const std::string& group, int n = 2,
                                         const Budget& budget = {});
/// The six (group, sphere) pairs of the quantum isometry diagram.
std::vector<std::pair<std::string, std::string>> isometry_pairs();
nlohmann::json to_json(const CoactionVerdict& v);

}  // namespace halfsph
