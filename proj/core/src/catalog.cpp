#include <algorithm>

#include "halfsph/error.hpp"
#include "halfsph/presentations.hpp"

namespace halfsph {

namespace {

const std::map<std::string, std::string>& sphere_aliases() {
  static const std::map<std::string, std::string> m = {
      {"C", "C"},         {"Cstarstar", "Cstarstar"}, {"C**", "Cstarstar"}, {"Cstar", "Cstar"},
      {"C*", "Cstar"},    {"Csharp", "Csharp"},       {"C#", "Csharp"},     {"Ccirc", "Ccirc"},
      {"Co", "Ccirc"},    {"TSR", "TSR"},             {"Cplus", "Cplus"},   {"C+", "Cplus"},
      {"R", "R"},         {"Rstar", "Rstar"},         {"R*", "Rstar"},      {"Rplus", "Rplus"},
      {"R+", "Rplus"},
  };
  return m;
}

const std::map<std::string, std::string>& group_aliases() {
  static const std::map<std::string, std::string> m = {
      {"UN", "UN"},           {"UNstarstar", "UNstarstar"}, {"UN**", "UNstarstar"}, {"UNstar", "UNstar"},
      {"UN*", "UNstar"},      {"UNsharp", "UNsharp"},       {"UN#", "UNsharp"},     {"UNcirc", "UNcirc"},
      {"TON", "TON"},         {"UNplus", "UNplus"},         {"UN+", "UNplus"},      {"KN", "KN"},
      {"KN-family", "KN"},    {"KN+", "KN"},
  };
  return m;
}

std::vector<Letter> z_letters(int n) {
  std::vector<Letter> v;
  for (int i = 1; i <= n; ++i) v.push_back(Letter::z(i));
  return v;
}

std::vector<Letter> u_letters(int n) {
  std::vector<Letter> v;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) v.push_back(Letter::u(i, j));
  }
  return v;
}

// Half-liberation relations of a sphere preset, imposed on the given base letters.
void add_sphere_family(Presentation& p, const std::string& id, const std::vector<Letter>& base) {
  auto both = with_stars(base);
  if (id == "Cstar") p.add_relations(star_triple_relations(base));
  if (id == "Cstarstar" || id == "Ccirc" || id == "TSR") p.add_relations(triple_relations(both));
  if (id == "Csharp" || id == "Ccirc" || id == "TSR") p.add_relations(sharp_relations(base));
  if (id == "C" || id == "TSR") p.add_relations(commutation_relations(both));
}

void add_real(Presentation& p, const std::vector<Letter>& base) {
  for (const auto& l : base) p.add_relation(NCPolynomial(l) - NCPolynomial(l.star()));
}

}  // namespace

std::string canonical_sphere(const std::string& name) {
  auto it = sphere_aliases().find(name);
  if (it == sphere_aliases().end()) throw InvalidArgument("unknown sphere preset '" + name + "'");
  return it->second;
}

std::string canonical_group(const std::string& name) {
  auto it = group_aliases().find(name);
  if (it == group_aliases().end()) throw InvalidArgument("unknown quantum group preset '" + name + "'");
  return it->second;
}

const std::vector<std::string>& sphere_names() {
  static const std::vector<std::string> v = {"C", "Cstarstar", "Cstar", "Csharp", "Ccirc",
                                             "TSR", "Cplus", "R", "Rstar", "Rplus"};
  return v;
}

const std::vector<std::string>& group_names() {
  static const std::vector<std::string> v = {"UN", "UNstarstar", "UNstar", "UNsharp",
                                             "UNcirc", "TON", "UNplus", "KN"};
  return v;
}

std::string display_name(const std::string& id) {
  static const std::map<std::string, std::string> m = {
      {"C", "S_C"},          {"Cstarstar", "S_C**"}, {"Cstar", "S_C*"},   {"Csharp", "S_C#"},
      {"Ccirc", "S_Ccirc"},  {"TSR", "TS_R"},        {"Cplus", "S_C+"},   {"R", "S_R"},
      {"Rstar", "S_R*"},     {"Rplus", "S_R+"},      {"UN", "U_N"},       {"UNstarstar", "U_N**"},
      {"UNstar", "U_N*"},    {"UNsharp", "U_N#"},    {"UNcirc", "U_Ncirc"}, {"TON", "TO_N"},
      {"UNplus", "U_N+"},    {"KN", "K_N+"},
  };
  auto it = m.find(id);
  return it == m.end() ? id : it->second;
}

Presentation make_sphere(const std::string& name, int n) {
  if (n < 1) throw InvalidArgument("make_sphere: N must be positive");
  const std::string id = canonical_sphere(name);
  Presentation p(id, Alphabet().declare(Family::Z, n));
  auto base = z_letters(n);
  p.add_relations(unit_relations(base));
  if (id == "R" || id == "Rstar" || id == "Rplus") {
    add_real(p, base);
    if (id == "R") p.add_relations(commutation_relations(base));
    if (id == "Rstar") p.add_relations(triple_relations(base));
  } else {
    add_sphere_family(p, id, base);
  }
  if (id == "TSR") {
    p.metadata()["note"] = "symbolic stand-in: Ccirc relations plus commutativity; exact point set via membership";
  }
  p.metadata()["kind"] = "sphere";
  p.metadata()["preset"] = id;
  return p;
}

std::vector<NCPolynomial> biunitarity_relations(int n) {
  std::vector<NCPolynomial> out;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      Scalar delta(i == j ? 1 : 0);
      NCPolynomial r1 = -NCPolynomial(delta), r2 = r1, r3 = r1, r4 = r1;
      for (int k = 1; k <= n; ++k) {
        r1 += NCPolynomial(Word{Letter::u(i, k), Letter::u(j, k, true)});  // u u* = 1
        r2 += NCPolynomial(Word{Letter::u(k, i, true), Letter::u(k, j)});  // u* u = 1
        r3 += NCPolynomial(Word{Letter::u(k, i), Letter::u(k, j, true)});  // u^t conj(u) = 1
        r4 += NCPolynomial(Word{Letter::u(i, k, true), Letter::u(j, k)});  // conj(u) u^t = 1
      }
      out.push_back(r1);
      out.push_back(r2);
      out.push_back(r3);
      out.push_back(r4);
    }
  }
  return out;
}

Presentation make_group(const std::string& name, int n) {
  if (n < 1) throw InvalidArgument("make_group: N must be positive");
  const std::string id = canonical_group(name);
  Presentation p(id, Alphabet().declare(Family::U, n));
  p.add_relations(biunitarity_relations(n));
  auto base = u_letters(n);
  static const std::map<std::string, std::string> sphere_of = {
      {"UN", "C"},         {"UNstarstar", "Cstarstar"}, {"UNstar", "Cstar"}, {"UNsharp", "Csharp"},
      {"UNcirc", "Ccirc"}, {"TON", "TSR"},              {"UNplus", "Cplus"}, {"KN", "Cplus"},
  };
  add_sphere_family(p, sphere_of.at(id), base);
  if (id == "KN") {
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        for (int k = 1; k <= n; ++k) {
          if (j == k) continue;
          p.add_relation(NCPolynomial(Word{Letter::u(i, j), Letter::u(i, k, true)}));
          p.add_relation(NCPolynomial(Word{Letter::u(i, j, true), Letter::u(i, k)}));
          p.add_relation(NCPolynomial(Word{Letter::u(j, i), Letter::u(k, i, true)}));
          p.add_relation(NCPolynomial(Word{Letter::u(j, i, true), Letter::u(k, i)}));
        }
      }
    }
  }
  p.metadata()["kind"] = "group";
  p.metadata()["preset"] = id;
  return p;
}

Presentation make_coordinate_sphere(const std::string& name, int n) {
  if (n < 1) throw InvalidArgument("make_coordinate_sphere: N must be positive");
  const std::string id = canonical_sphere(name);
  if (id == "R" || id == "Rstar" || id == "Rplus") {
    throw InvalidArgument("coordinate spheres are built from complex presets only");
  }
  Presentation p(id + "_coords", Alphabet().declare(Family::U, n));
  auto base = u_letters(n);
  p.add_relations(unit_relations(base, Scalar(n)));
  add_sphere_family(p, id, base);
  p.metadata()["kind"] = "coordinate-sphere";
  p.metadata()["preset"] = id;
  p.metadata()["scaling"] = "unrescaled: sum u u* = N";
  return p;
}

}  // namespace halfsph
