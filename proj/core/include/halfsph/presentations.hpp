#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "halfsph/letter.hpp"
#include "halfsph/ncpoly.hpp"

namespace halfsph {

/// Generators plus relations (each asserted = 0). Relations are stored monic,
/// deduplicated, and closed under star.
class Presentation {
 public:
  Presentation() = default;
  Presentation(std::string name, Alphabet generators);

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  const Alphabet& generators() const { return generators_; }
  const std::vector<NCPolynomial>& relations() const { return relations_; }
  std::map<std::string, std::string>& metadata() { return metadata_; }
  const std::map<std::string, std::string>& metadata() const { return metadata_; }

  /// Extends the alphabet; existing relations are kept.
  void declare(Family f, int count);
  /// Appends r and star(r) (monic). Zero relations are ignored. Throws on undeclared letters.
  void add_relation(const NCPolynomial& r);
  void add_relations(const std::vector<NCPolynomial>& rs);
  bool has_relation(const NCPolynomial& r) const;

  /// Sphere size N (z count, or u row count for group-coordinate presentations).
  int n() const;

  friend bool operator==(const Presentation& a, const Presentation& b) {
    return a.generators_ == b.generators_ && a.relations_ == b.relations_;
  }

 private:
  std::string name_;
  Alphabet generators_;
  std::vector<NCPolynomial> relations_;
  std::set<std::string> index_;
  std::map<std::string, std::string> metadata_;
};

// ---- relation builders over arbitrary letter lists ----

/// Both letters and their stars, in letter order.
std::vector<Letter> with_stars(const std::vector<Letter>& base);
/// All instances of a e1 ... - a_sigma d1 ..., index tuples over `base`.
/// `sigma` is one-line notation with 1-based images; `e`, `d` are star flags.
std::vector<NCPolynomial> make_schema_relation(const std::vector<int>& sigma, const std::vector<bool>& e,
                                               const std::vector<bool>& d, const std::vector<Letter>& base);
/// The same over the sphere coordinates z_1..z_N.
std::vector<NCPolynomial> make_schema_relation(const std::vector<int>& sigma, const std::vector<bool>& e,
                                               const std::vector<bool>& d, int n);

std::vector<NCPolynomial> commutation_relations(const std::vector<Letter>& letters);
/// abc - cba over the given letters.
std::vector<NCPolynomial> triple_relations(const std::vector<Letter>& letters);
/// ab*c - cb*a over the given (unstarred) letters.
std::vector<NCPolynomial> star_triple_relations(const std::vector<Letter>& base);
/// ab* - ba* and a*b - b*a over the given (unstarred) letters.
std::vector<NCPolynomial> sharp_relations(const std::vector<Letter>& base);
/// sum_l l l* - scale and sum_l l* l - scale.
std::vector<NCPolynomial> unit_relations(const std::vector<Letter>& base, const Scalar& scale = Scalar(1));

// ---- catalog ----

/// Canonical preset id for a sphere name or alias (`C**` -> `Cstarstar`); throws on unknown names.
std::string canonical_sphere(const std::string& name);
std::string canonical_group(const std::string& name);
/// Canonical ids: C, Cstarstar, Cstar, Csharp, Ccirc, TSR, Cplus, R, Rstar, Rplus.
const std::vector<std::string>& sphere_names();
/// Canonical ids: UN, UNstarstar, UNstar, UNsharp, UNcirc, TON, UNplus, KN.
const std::vector<std::string>& group_names();
/// Display form used in reports (`C**`, `U_N#`, ...).
std::string display_name(const std::string& canonical);

Presentation make_sphere(const std::string& name, int n);
Presentation make_group(const std::string& name, int n);
/// Sphere relations of `name` on the N^2 coordinates u_ij with unit relations
/// sum u u* = N (the unrescaled form of z_ij = u_ij / sqrt N).
Presentation make_coordinate_sphere(const std::string& name, int n);
/// Biunitarity contractions at fixed N: 4N^2 relations.
std::vector<NCPolynomial> biunitarity_relations(int n);

// ---- transformers ----

/// P plus z_i - z_i* for every sphere coordinate.
Presentation real_version(const Presentation& p);

/// P plus the circle generator c with c c* = c* c = 1.
Presentation free_complexification(const Presentation& p);
/// w_i = c z_i as a polynomial.
NCPolynomial complexified_generator(int i, bool starred = false);
/// Rewrites a polynomial in letters z_i (read as w_i) into c, z letters.
NCPolynomial to_w_polynomial(const NCPolynomial& z_poly);

enum class LiftSide { P, Q, ConjugationStable };

/// Substitutes p_ab -> x_a x_b*, q_ab -> x_b* x_a, where x_a is the a-th coordinate
/// of the target (z_a, or u_ij with a = (i-1)N + j), and appends the results.
/// A conjugation-stable lift given only one of the two ideals is flagged one-sided.
Presentation lift_projective(const std::vector<NCPolynomial>& ideal, const Presentation& target, LiftSide side);
/// Flat coordinate index of u_ij.
int flat_index(int i, int j, int n);
/// Coordinate letter for a flat index in the given target.
Letter coordinate_letter(const Presentation& target, int a);

/// Optional axiom schema abc* = c*ba on group letters; flagged in metadata.
Presentation with_lemma44(const Presentation& p);

}  // namespace halfsph
