#pragma once

#include <map>
#include <optional>

#include "halfsph/scalar.hpp"

namespace halfsph::detail {

/// Exact row echelon form over Gaussian rationals that remembers how each row was
/// built from the inserted generators.
template <class Key, class Less = std::less<Key>>
class Span {
 public:
  using Vector = std::map<Key, Scalar, Less>;
  using Combination = std::map<int, Scalar>;

  /// Inserts v as generator `id`; false when v already lies in the span.
  bool add(const Vector& v, int id) {
    Vector r = v;
    Combination comb{{id, Scalar(1)}};
    eliminate(r, comb);
    if (r.empty()) return false;
    Scalar lead = r.begin()->second;
    Scalar inv = Scalar(1) / lead;
    for (auto& [k, c] : r) c *= inv;
    for (auto& [k, c] : comb) c *= inv;
    Key pivot = r.begin()->first;
    rows_.emplace(pivot, Row{std::move(r), std::move(comb)});
    return true;
  }

  bool contains(const Vector& v) const {
    Vector r = v;
    Combination comb;
    eliminate(r, comb);
    return r.empty();
  }

  /// Coefficients c_id with v = sum c_id generator_id, when v lies in the span.
  std::optional<Combination> express(const Vector& v) const {
    Vector r = v;
    Combination comb;
    eliminate(r, comb);
    if (!r.empty()) return std::nullopt;
    Combination out;
    for (auto& [id, c] : comb)
      if (!c.is_zero()) out.emplace(id, -c);
    return out;
  }

  std::size_t dimension() const { return rows_.size(); }

 private:
  struct Row {
    Vector vec;
    Combination comb;
  };

  template <class M>
  static void axpy(M& dst, const M& src, const Scalar& f) {
    for (const auto& [k, c] : src) {
      auto it = dst.find(k);
      Scalar add = c * f;
      if (it == dst.end()) {
        dst.emplace(k, add);
      } else {
        it->second += add;
        if (it->second.is_zero()) dst.erase(it);
      }
    }
  }

  // Pivots are the smallest key of each row, so clearing keys in increasing order
  // only ever introduces larger keys.
  void eliminate(Vector& r, Combination& comb) const {
    auto it = r.begin();
    while (it != r.end()) {
      auto row = rows_.find(it->first);
      if (row == rows_.end()) {
        ++it;
        continue;
      }
      Key k = it->first;
      Scalar f = -it->second;
      axpy(r, row->second.vec, f);
      axpy(comb, row->second.comb, f);
      it = r.upper_bound(k);
    }
  }

  std::map<Key, Row, Less> rows_;
};

}  // namespace halfsph::detail
