#include <algorithm>

#include "halfsph/error.hpp"
#include "halfsph/presentations.hpp"

namespace halfsph {

Presentation::Presentation(std::string name, Alphabet generators)
    : name_(std::move(name)), generators_(std::move(generators)) {}

void Presentation::declare(Family f, int count) { generators_.declare(f, count); }

void Presentation::add_relation(const NCPolynomial& r) {
  if (r.is_zero()) return;
  for (const auto& l : r.letters()) {
    if (!generators_.contains(l)) {
      throw InvalidArgument("relation uses undeclared letter " + l.str() + " in presentation " + name_);
    }
  }
  for (const NCPolynomial& cand : {r.monic(), star(r).monic()}) {
    if (index_.insert(cand.str()).second) relations_.push_back(cand);
  }
}

void Presentation::add_relations(const std::vector<NCPolynomial>& rs) {
  for (const auto& r : rs) add_relation(r);
}

bool Presentation::has_relation(const NCPolynomial& r) const {
  if (r.is_zero()) return true;
  return index_.count(r.monic().str()) != 0;
}

int Presentation::n() const {
  if (generators_.declares(Family::Z)) return generators_.count(Family::Z);
  if (generators_.declares(Family::U)) return generators_.count(Family::U);
  return 0;
}

std::vector<Letter> with_stars(const std::vector<Letter>& base) {
  std::vector<Letter> out;
  for (const auto& l : base) {
    out.push_back(l.plain());
    out.push_back(l.plain().star());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<NCPolynomial> make_schema_relation(const std::vector<int>& sigma, const std::vector<bool>& e,
                                               const std::vector<bool>& d, const std::vector<Letter>& base) {
  const std::size_t k = sigma.size();
  if (e.size() != k || d.size() != k) {
    throw InvalidArgument("make_schema_relation: exponent vectors must match the permutation degree");
  }
  std::vector<bool> seen(k, false);
  for (int s : sigma) {
    if (s < 1 || s > static_cast<int>(k) || seen[s - 1]) {
      throw InvalidArgument("make_schema_relation: not a permutation in one-line notation");
    }
    seen[s - 1] = true;
  }
  std::vector<NCPolynomial> out;
  if (base.empty()) return out;
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    Word lhs, rhs;
    for (std::size_t t = 0; t < k; ++t) {
      Letter l = base[idx[t]].plain();
      lhs.push_back(e[t] ? l.star() : l);
      Letter m = base[idx[sigma[t] - 1]].plain();
      rhs.push_back(d[t] ? m.star() : m);
    }
    out.push_back(NCPolynomial(lhs) - NCPolynomial(rhs));
    std::size_t t = k;
    while (t > 0) {
      --t;
      if (++idx[t] < base.size()) break;
      idx[t] = 0;
      if (t == 0) return out;
    }
    if (k == 0) return out;
  }
}

std::vector<NCPolynomial> make_schema_relation(const std::vector<int>& sigma, const std::vector<bool>& e,
                                               const std::vector<bool>& d, int n) {
  if (n < 1) throw InvalidArgument("N must be positive");
  std::vector<Letter> base;
  for (int i = 1; i <= n; ++i) base.push_back(Letter::z(i));
  return make_schema_relation(sigma, e, d, base);
}

std::vector<NCPolynomial> commutation_relations(const std::vector<Letter>& letters) {
  std::vector<NCPolynomial> out;
  for (std::size_t x = 0; x < letters.size(); ++x) {
    for (std::size_t y = x + 1; y < letters.size(); ++y) {
      out.push_back(NCPolynomial(Word{letters[x], letters[y]}) - NCPolynomial(Word{letters[y], letters[x]}));
    }
  }
  return out;
}

std::vector<NCPolynomial> triple_relations(const std::vector<Letter>& letters) {
  std::vector<NCPolynomial> out;
  for (const auto& a : letters) {
    for (const auto& b : letters) {
      for (const auto& c : letters) {
        if (!(a < c)) continue;  // c b a - a b c is the same relation up to sign
        out.push_back(NCPolynomial(Word{a, b, c}) - NCPolynomial(Word{c, b, a}));
      }
    }
  }
  return out;
}

std::vector<NCPolynomial> star_triple_relations(const std::vector<Letter>& base) {
  std::vector<NCPolynomial> out;
  for (const auto& a : base) {
    for (const auto& b : base) {
      for (const auto& c : base) {
        if (!(a < c)) continue;
        out.push_back(NCPolynomial(Word{a, b.star(), c}) - NCPolynomial(Word{c, b.star(), a}));
      }
    }
  }
  return out;
}

std::vector<NCPolynomial> sharp_relations(const std::vector<Letter>& base) {
  std::vector<NCPolynomial> out;
  for (const auto& a : base) {
    for (const auto& b : base) {
      if (!(a < b)) continue;
      out.push_back(NCPolynomial(Word{a, b.star()}) - NCPolynomial(Word{b, a.star()}));
      out.push_back(NCPolynomial(Word{a.star(), b}) - NCPolynomial(Word{b.star(), a}));
    }
  }
  return out;
}

std::vector<NCPolynomial> unit_relations(const std::vector<Letter>& base, const Scalar& scale) {
  NCPolynomial r1 = -NCPolynomial(scale), r2 = -NCPolynomial(scale);
  for (const auto& l : base) {
    r1 += NCPolynomial(Word{l, l.star()});
    r2 += NCPolynomial(Word{l.star(), l});
  }
  return {r1, r2};
}

}  // namespace halfsph
