#pragma once

// Independent reference computations for the tests. Nothing here calls into the
// library's algorithms; only its value types are reused.

#include <complex>
#include <map>
#include <random>
#include <vector>

#include "halfsph/ncpoly.hpp"
#include "halfsph/scalar.hpp"

namespace oracle {

using halfsph::Letter;
using halfsph::NCPolynomial;
using halfsph::Scalar;
using halfsph::Word;

inline Scalar random_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  return Scalar(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
}

inline Word random_word(std::mt19937_64& rng, const std::vector<Letter>& alphabet, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), pick(0, int(alphabet.size()) - 1), coin(0, 1);
  Word w;
  for (int k = len(rng); k > 0; --k) {
    Letter l = alphabet[pick(rng)];
    w.push_back(coin(rng) ? l.star() : l);
  }
  return w;
}

inline NCPolynomial random_poly(std::mt19937_64& rng, const std::vector<Letter>& alphabet, int max_terms = 4,
                                int max_len = 3) {
  std::uniform_int_distribution<int> terms(0, max_terms);
  NCPolynomial p;
  for (int k = terms(rng); k > 0; --k) p += NCPolynomial(random_word(rng, alphabet, max_len), random_scalar(rng));
  return p;
}

/// Exact row echelon form over the Gaussian rationals. Rows are sparse word -> coefficient.
class Span {
 public:
  /// Adds a vector; returns false when it was already in the span.
  bool add(const NCPolynomial& p) {
    auto v = reduce(to_row(p));
    if (v.empty()) return false;
    const Word pivot = v.begin()->first;
    const Scalar inv = Scalar(1) / v.begin()->second;
    for (auto& [w, c] : v) c *= inv;
    // keep the basis fully reduced on its pivots
    for (auto& [pw, row] : basis_) {
      auto it = row.find(pivot);
      if (it == row.end()) continue;
      const Scalar f = it->second;
      for (const auto& [w, c] : v) {
        row[w] -= f * c;
        if (row[w].is_zero()) row.erase(w);
      }
    }
    basis_[pivot] = std::move(v);
    return true;
  }
  bool contains(const NCPolynomial& p) const { return reduce(to_row(p)).empty(); }
  std::size_t dimension() const { return basis_.size(); }

 private:
  using Row = std::map<Word, Scalar>;
  static Row to_row(const NCPolynomial& p) {
    Row r;
    for (const auto& [w, c] : p.terms()) r[w] = c;
    return r;
  }
  Row reduce(Row v) const {
    for (const auto& [pivot, row] : basis_) {
      auto it = v.find(pivot);
      if (it == v.end()) continue;
      const Scalar f = it->second;
      for (const auto& [w, c] : row) {
        v[w] -= f * c;
        if (v[w].is_zero()) v.erase(w);
      }
    }
    return v;
  }
  std::map<Word, Row> basis_;
};

/// Laplace expansion along the first row; fine for the 4 x 4 matrices in the tests.
inline Scalar laplace_det(const std::vector<std::vector<Scalar>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Scalar total(0);
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<std::vector<Scalar>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Scalar> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(row);
    }
    Scalar term = m[0][col] * laplace_det(minor);
    total += (col % 2 == 0) ? term : -term;
  }
  return total;
}

using C2 = std::complex<double>;
struct M2 {
  C2 a, b, c, d;  // [[a, b], [c, d]]
  M2 operator*(const M2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  M2 operator-(const M2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  M2 operator+(const M2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  M2 adjoint() const { return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)}; }
  /// Closed-form largest singular value of a 2 x 2 matrix.
  double norm() const {
    const double f = std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
    const double det = std::abs(a * d - b * c);
    return std::sqrt((f + std::sqrt(std::max(0.0, f * f - 4 * det * det))) / 2);
  }
};

/// Doubling [[0, w], [conj w, 0]] of a scalar.
inline M2 doubled(C2 w) { return {0, w, std::conj(w), 0}; }

}  // namespace oracle
