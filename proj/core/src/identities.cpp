#include <algorithm>
#include <cmath>

#include "halfsph/error.hpp"
#include "halfsph/models.hpp"

namespace halfsph {

Scalar determinant(ScalarMatrix m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw InvalidArgument("determinant: matrix is not square");
  }
  Scalar det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) return Scalar(0);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      Scalar f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

std::vector<SignChoice> prop23_sign_choices() {
  const Scalar i = Scalar::i();
  // (alpha, beta, gamma) in {i, -i}^3 with at most one -i
  return {{i, i, i}, {-i, i, i}, {i, -i, i}, {i, i, -i}};
}

Prop23Result prop23_matrices(const std::vector<SignChoice>& choices) {
  Prop23Result r;
  for (const auto& [a, b, g] : choices) {
    r.first.push_back({Scalar(1), a * b, b * g, a * g});
    r.second.push_back({a, b, g, a * b * g});
  }
  r.det_first = determinant(r.first);
  r.det_second = determinant(r.second);
  return r;
}

Prop23Result prop23_determinants() { return prop23_matrices(prop23_sign_choices()); }

namespace {

// Commutative polynomial in symbols a_ip, b_ip, c_pj, d_pj and their conjugates.
using Mono = std::vector<int>;
using CPoly = std::map<Mono, Scalar>;

int sym(int kind, int r, int c, bool conj) { return ((kind * 8 + r) * 8 + c) * 2 + (conj ? 1 : 0); }

CPoly var(int kind, int r, int c, bool conj = false) { return {{Mono{sym(kind, r, c, conj)}, Scalar(1)}}; }

void add_into(CPoly& acc, const CPoly& x, const Scalar& s = Scalar(1)) {
  for (const auto& [m, c] : x) {
    auto& slot = acc[m];
    slot += s * c;
    if (slot.is_zero()) acc.erase(m);
  }
}

CPoly operator+(CPoly a, const CPoly& b) {
  add_into(a, b);
  return a;
}

CPoly operator-(CPoly a, const CPoly& b) {
  add_into(a, b, Scalar(-1));
  return a;
}

CPoly operator*(const CPoly& a, const CPoly& b) {
  CPoly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      Mono m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      std::sort(m.begin(), m.end());
      auto& slot = out[m];
      slot += ca * cb;
      if (slot.is_zero()) out.erase(m);
    }
  }
  return out;
}

enum { A = 0, B = 1, C = 2, D = 3 };

// (XY)_ij = sum_p x_ip y_pj, optionally conjugated
CPoly prod_entry(int x, int y, int i, int j, int n, bool conj) {
  CPoly out;
  for (int p = 1; p <= n; ++p) add_into(out, var(x, i, p, conj) * var(y, p, j, conj));
  return out;
}

}  // namespace

double un_prime_defect(const Mat& a, const Mat& b) {
  double worst = 0;
  const auto n = a.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index l = 0; l < n; ++l) {
          cplx re_part = a(i, j) * std::conj(a(k, l)) + b(i, j) * std::conj(b(k, l));
          cplx im_part = a(i, j) * std::conj(b(k, l)) - b(i, j) * std::conj(a(k, l));
          worst = std::max({worst, std::abs(re_part.imag()), std::abs(im_part.real())});
        }
      }
    }
  }
  return worst;
}

namespace {

Mat blocks_a(const ModelPoint& p) {
  const int n = p.n;
  Mat a(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) a(i - 1, j - 1) = p.scalar(Letter::x(flat_index(i, j, n)));
  return a;
}

Mat blocks_b(const ModelPoint& p) {
  const int n = p.n;
  Mat b(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) b(i - 1, j - 1) = p.scalar(Letter::y(flat_index(i, j, n)));
  return b;
}

// Distance of (A, B) from a common phase times real matrices.
double phase_real_defect(const Mat& a, const Mat& b) {
  cplx lead = 0;
  for (const Mat* m : {&a, &b}) {
    for (Eigen::Index k = 0; k < m->size(); ++k) {
      if (std::abs((*m)(k)) > std::abs(lead)) lead = (*m)(k);
    }
  }
  if (std::abs(lead) == 0) return 0;
  cplx rot = std::conj(lead) / std::abs(lead);
  double worst = 0;
  for (const Mat* m : {&a, &b}) {
    for (Eigen::Index k = 0; k < m->size(); ++k) worst = std::max(worst, std::abs((rot * (*m)(k)).imag()));
  }
  return worst;
}

double unitarity_defect(const Mat& m) {
  return (m * m.adjoint() - Mat::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

}  // namespace

IdentityReport u2n_group_identities(std::size_t pairs, std::uint64_t seed, double tol) {
  IdentityReport rep;
  const int n = 2;
  rep.identity1 = true;
  rep.identity2 = true;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      for (int k = 1; k <= n; ++k) {
        for (int l = 1; l <= n; ++l) {
          ++rep.index_tuples;
          CPoly x_ij = prod_entry(A, C, i, j, n, false) - prod_entry(B, D, i, j, n, false);  // (AC - BD)_ij
          CPoly y_ij = prod_entry(A, D, i, j, n, false) + prod_entry(B, C, i, j, n, false);  // (AD + BC)_ij
          CPoly x_kl = prod_entry(A, C, k, l, n, true) - prod_entry(B, D, k, l, n, true);
          CPoly y_kl = prod_entry(A, D, k, l, n, true) + prod_entry(B, C, k, l, n, true);
          CPoly lhs1 = x_ij * x_kl + y_ij * y_kl;
          CPoly lhs2 = x_ij * y_kl - y_ij * x_kl;
          CPoly rhs1, rhs2;
          for (int p = 1; p <= n; ++p) {
            for (int q = 1; q <= n; ++q) {
              CPoly re_ab = var(A, i, p) * var(A, k, q, true) + var(B, i, p) * var(B, k, q, true);
              CPoly im_ab = var(A, i, p) * var(B, k, q, true) - var(B, i, p) * var(A, k, q, true);
              CPoly cc_dd = var(C, p, j) * var(C, q, l, true) + var(D, p, j) * var(D, q, l, true);
              CPoly dc_cd = var(D, p, j) * var(C, q, l, true) - var(C, p, j) * var(D, q, l, true);
              add_into(rhs1, re_ab * cc_dd + im_ab * dc_cd);
              add_into(rhs2, re_ab * (CPoly{} - dc_cd) + im_ab * cc_dd);
            }
          }
          rep.identity1 = rep.identity1 && lhs1 == rhs1;
          rep.identity2 = rep.identity2 && lhs2 == rhs2;
        }
      }
    }
  }

  rep.pairs = pairs;
  for (std::size_t t = 0; t < pairs; ++t) {
    for (const char* name : {"T2ON", "TO2N"}) {
      ModelPoint p1 = sample(name, n, seed + 2 * t), p2 = sample(name, n, seed + 2 * t + 1);
      Mat a = blocks_a(p1), b = blocks_b(p1), c = blocks_a(p2), d = blocks_b(p2);
      Mat pa = a * c - b * d, pb = a * d + b * c;  // product
      Mat sa = a.adjoint(), sb = -b.adjoint();      // adjoint
      Mat big(2 * n, 2 * n);
      big << pa, pb, -pb, pa;
      double unit = unitarity_defect(big);
      if (std::string(name) == "T2ON") {
        double defect = std::max({un_prime_defect(pa, pb), un_prime_defect(sa, sb), unit});
        rep.max_t2on_defect = std::max(rep.max_t2on_defect, defect);
      } else {
        double defect = std::max({phase_real_defect(pa, pb), phase_real_defect(sa, sb), unit});
        rep.max_to2n_defect = std::max(rep.max_to2n_defect, defect);
      }
    }
  }
  rep.t2on_closure = rep.max_t2on_defect < tol;
  rep.to2n_closure = rep.max_to2n_defect < tol;
  return rep;
}

}  // namespace halfsph
