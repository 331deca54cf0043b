#include "halfsph/error.hpp"
#include "halfsph/presentations.hpp"

namespace halfsph {

Presentation real_version(const Presentation& p) {
  Presentation out = p;
  const int n = p.generators().count(Family::Z);
  for (int i = 1; i <= n; ++i) out.add_relation(NCPolynomial(Letter::z(i)) - NCPolynomial(Letter::z(i, true)));
  out.set_name(p.name() + "_real");
  out.metadata()["transform"] = "real_version";
  return out;
}

Presentation free_complexification(const Presentation& p) {
  Presentation out = p;
  out.declare(Family::C, 1);
  out.add_relation(NCPolynomial(Word{Letter::c(), Letter::c(true)}) - NCPolynomial(1));
  out.add_relation(NCPolynomial(Word{Letter::c(true), Letter::c()}) - NCPolynomial(1));
  out.set_name(p.name() + "_cplx");
  out.metadata()["transform"] = "free_complexification";
  out.metadata()["derived_generators"] = "w_i = c z_i";
  return out;
}

NCPolynomial complexified_generator(int i, bool starred) {
  if (starred) return NCPolynomial(Word{Letter::z(i, true), Letter::c(true)});
  return NCPolynomial(Word{Letter::c(), Letter::z(i)});
}

NCPolynomial to_w_polynomial(const NCPolynomial& z_poly) {
  LetterMap m;
  for (const auto& l : z_poly.letters()) {
    if (l.family != Family::Z) throw InvalidArgument("to_w_polynomial: expected z letters only");
    m[l] = complexified_generator(l.i, l.starred);
  }
  return substitute(z_poly, m);
}

int flat_index(int i, int j, int n) { return (i - 1) * n + j; }

Letter coordinate_letter(const Presentation& target, int a) {
  const auto& g = target.generators();
  if (g.declares(Family::Z)) {
    if (a < 1 || a > g.count(Family::Z)) throw InvalidArgument("projective index out of range");
    return Letter::z(a);
  }
  if (g.declares(Family::U)) {
    int n = g.count(Family::U);
    if (a < 1 || a > n * n) throw InvalidArgument("projective index out of range");
    return Letter::u((a - 1) / n + 1, (a - 1) % n + 1);
  }
  throw InvalidArgument("lift target has no coordinate family");
}

Presentation lift_projective(const std::vector<NCPolynomial>& ideal, const Presentation& target, LiftSide side) {
  bool has_p = false, has_q = false;
  LetterMap images;
  for (const auto& g : ideal) {
    for (const auto& l : g.letters()) {
      if (l.family != Family::P && l.family != Family::Q) {
        throw InvalidArgument("lift_projective: symbol " + l.str() + " is outside the p/q family");
      }
      Letter x = coordinate_letter(target, l.i), y = coordinate_letter(target, l.j);
      NCPolynomial img = l.family == Family::P ? NCPolynomial(Word{x, y.star()}) : NCPolynomial(Word{y.star(), x});
      // p_ab* = p_ba, q_ab* = q_ba
      images[l.plain()] = img;
      (l.family == Family::P ? has_p : has_q) = true;
    }
  }
  if (side == LiftSide::P && has_q) throw InvalidArgument("lift_projective: q symbols in a p-lift");
  if (side == LiftSide::Q && has_p) throw InvalidArgument("lift_projective: p symbols in a q-lift");
  Presentation out = target;
  for (const auto& g : ideal) out.add_relation(substitute(g, images));
  out.set_name(target.name() + "_lift");
  out.metadata()["transform"] = "lift_projective";
  std::string sides = has_p && has_q ? "p+q" : has_p ? "p" : has_q ? "q" : "none";
  out.metadata()["lift_sides"] = sides;
  if (side == LiftSide::ConjugationStable && !(has_p && has_q) && !ideal.empty()) {
    out.metadata()["one_sided"] = "true";
  }
  return out;
}

Presentation with_lemma44(const Presentation& p) {
  Presentation out = p;
  auto base = out.generators().letters();
  std::vector<Letter> group;
  for (const auto& l : base) {
    if (l.family == Family::U) group.push_back(l);
  }
  for (const auto& a : group) {
    for (const auto& b : group) {
      for (const auto& c : group) {
        out.add_relation(NCPolynomial(Word{a, b, c.star()}) - NCPolynomial(Word{c.star(), b, a}));
      }
    }
  }
  out.metadata()["axiom"] = "lemma44 (assumed, not derived): abc* = c*ba on group coordinates";
  return out;
}

}  // namespace halfsph
