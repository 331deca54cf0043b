#include <algorithm>
#include <cmath>

#include "halfsph/error.hpp"
#include "halfsph/models.hpp"

namespace halfsph {

namespace {

CVec coords(const ModelPoint& p, Family f) {
  CVec v(p.n);
  for (int i = 1; i <= p.n; ++i) {
    Letter l = f == Family::Z ? Letter::z(i) : f == Family::X ? Letter::x(i) : Letter::y(i);
    v(i - 1) = p.scalar(l);
  }
  return v;
}

Mat group_matrix(const ModelPoint& p) {
  Mat u(p.n, p.n);
  for (int i = 1; i <= p.n; ++i)
    for (int j = 1; j <= p.n; ++j) u(i - 1, j - 1) = p.scalar(Letter::u(i, j));
  return u;
}

Mat block(const ModelPoint& p, Family f) {
  const int n = p.n;
  Mat m(n, n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      int a = flat_index(i, j, n);
      m(i - 1, j - 1) = p.scalar(f == Family::X ? Letter::x(a) : Letter::y(a));
    }
  }
  return m;
}

// Rotates by the phase of the largest entry; returns the largest remaining imaginary part.
double real_after_phase(const CVec& v) {
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  if (std::abs(v(k)) == 0) return 0;
  cplx rot = std::conj(v(k)) / std::abs(v(k));
  return (rot * v).imag().cwiseAbs().maxCoeff();
}

bool unit_norm(const CVec& v, double tol) { return std::abs(v.squaredNorm() - 1.0) < tol; }

bool unitary(const Mat& m, double tol) {
  Mat id = Mat::Identity(m.rows(), m.cols());
  return (m * m.adjoint() - id).cwiseAbs().maxCoeff() < tol && (m.adjoint() * m - id).cwiseAbs().maxCoeff() < tol;
}

bool real_matrix(const Mat& m, double tol) { return m.imag().cwiseAbs().maxCoeff() < tol; }

bool dot_condition(const CVec& x, const CVec& y, double tol) {
  CVec both(x.size() + y.size());
  both << x, y;
  cplx s = (x.array() * y.conjugate().array()).sum();
  return unit_norm(both, tol) && std::abs(s.imag()) < tol;
}

bool ddot_condition(const CVec& x, const CVec& y, double tol) {
  if (!dot_condition(x, y, tol)) return false;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      cplx r = x(i) * std::conj(x(j)) + y(i) * std::conj(y(j));
      cplx m = x(i) * std::conj(y(j)) - y(i) * std::conj(x(j));
      if (std::abs(r.imag()) > tol || std::abs(m.real()) > tol) return false;
    }
  }
  return true;
}

bool phase_times_real(const Mat& a, const Mat& b, double tol) {
  CVec all(a.size() + b.size());
  for (Eigen::Index k = 0; k < a.size(); ++k) all(k) = a(k);
  for (Eigen::Index k = 0; k < b.size(); ++k) all(a.size() + k) = b(k);
  return real_after_phase(all) < tol;
}

}  // namespace

bool membership(const std::string& manifold, const ModelPoint& p, double tol) {
  if (p.dim != 1) throw InvalidArgument("membership: expected a scalar (dim 1) point");
  if (manifold == "S_C") return unit_norm(coords(p, Family::Z), tol);
  if (manifold == "S_R") {
    CVec z = coords(p, Family::Z);
    return unit_norm(z, tol) && z.imag().cwiseAbs().maxCoeff() < tol;
  }
  if (manifold == "TSR") {
    // z = u x with u on the circle and x real: one phase makes every coordinate real
    CVec z = coords(p, Family::Z);
    return unit_norm(z, tol) && real_after_phase(z) < tol;
  }
  if (manifold == "dotS") return dot_condition(coords(p, Family::X), coords(p, Family::Y), tol);
  if (manifold == "ddotS" || manifold == "ddotS-subfamily" || manifold == "preset-prop25") {
    return ddot_condition(coords(p, Family::X), coords(p, Family::Y), tol);
  }
  if (manifold == "T2SR") {
    CVec x = coords(p, Family::X), y = coords(p, Family::Y);
    CVec both(2 * p.n);
    both << x, y;
    if (!unit_norm(both, tol) || real_after_phase(both) > tol) return false;
    // x and y proportional: x_i y_j = x_j y_i
    for (int i = 0; i < p.n; ++i)
      for (int j = 0; j < p.n; ++j)
        if (std::abs(x(i) * y(j) - x(j) * y(i)) > tol) return false;
    return true;
  }
  if (manifold == "U_N") return unitary(group_matrix(p), tol);
  if (manifold == "O_N") {
    Mat u = group_matrix(p);
    return unitary(u, tol) && real_matrix(u, tol);
  }
  if (manifold == "TO_N") {
    Mat u = group_matrix(p);
    return unitary(u, tol) && phase_times_real(u, Mat(0, 0), tol);
  }
  if (manifold == "U2N") return unitary(u2n_matrix(p), tol);
  if (manifold == "UNprime") {
    return unitary(u2n_matrix(p), tol) && un_prime_defect(block(p, Family::X), block(p, Family::Y)) < tol;
  }
  if (manifold == "TO2N") {
    return unitary(u2n_matrix(p), tol) && phase_times_real(block(p, Family::X), block(p, Family::Y), tol);
  }
  if (manifold == "T2ON") {
    Mat a = block(p, Family::X), b = block(p, Family::Y);
    if (!unitary(u2n_matrix(p), tol) || !phase_times_real(a, b, tol)) return false;
    // after the phase, A = c O and B = s O: a_ij b_kl = b_ij a_kl
    for (Eigen::Index k = 0; k < a.size(); ++k)
      for (Eigen::Index m = 0; m < a.size(); ++m)
        if (std::abs(a(k) * b(m) - b(k) * a(m)) > tol) return false;
    return true;
  }
  throw InvalidArgument("membership: unsupported manifold '" + manifold + "'");
}

}  // namespace halfsph
