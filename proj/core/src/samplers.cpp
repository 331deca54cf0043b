#include <cmath>
#include <numbers>

#include "halfsph/error.hpp"
#include "halfsph/models.hpp"

namespace halfsph {

namespace {

const cplx I(0, 1);

double gauss(std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  return nd(rng);
}

cplx phase(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ud(0.0, 2 * std::numbers::pi);
  return std::polar(1.0, ud(rng));
}

Eigen::VectorXd real_unit(int n, std::mt19937_64& rng) {
  Eigen::VectorXd v(n);
  for (int k = 0; k < n; ++k) v(k) = gauss(rng);
  return v / v.norm();
}

CVec complex_unit(int n, std::mt19937_64& rng) {
  CVec v(n);
  for (int k = 0; k < n; ++k) v(k) = cplx(gauss(rng), gauss(rng));
  return v / v.norm();
}

Mat one(cplx v) { return Mat::Constant(1, 1, v); }

ModelPoint base(const std::string& manifold, int n, std::uint64_t seed) {
  ModelPoint p;
  p.manifold = manifold;
  p.n = n;
  p.dim = 1;
  p.seed = seed;
  return p;
}

void set_z(ModelPoint& p, const CVec& z) {
  for (int i = 0; i < z.size(); ++i) p.matrices[Letter::z(i + 1)] = one(z(i));
}

void set_xy(ModelPoint& p, const CVec& x, const CVec& y) {
  for (int i = 0; i < x.size(); ++i) {
    p.matrices[Letter::x(i + 1)] = one(x(i));
    p.matrices[Letter::y(i + 1)] = one(y(i));
  }
}

void set_u(ModelPoint& p, const Mat& u) {
  for (int i = 0; i < u.rows(); ++i) {
    for (int j = 0; j < u.cols(); ++j) p.matrices[Letter::u(i + 1, j + 1)] = one(u(i, j));
  }
}

// Blocks A, B of [[A, B], [-B, A]] as x / y letters with flat index.
void set_blocks(ModelPoint& p, const Mat& a, const Mat& b) {
  const int n = static_cast<int>(a.rows());
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      p.matrices[Letter::x(flat_index(i, j, n))] = one(a(i - 1, j - 1));
      p.matrices[Letter::y(flat_index(i, j, n))] = one(b(i - 1, j - 1));
    }
  }
}

}  // namespace

Mat haar_unitary(int n, std::mt19937_64& rng) {
  Mat g(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) g(r, c) = cplx(gauss(rng), gauss(rng)) / std::sqrt(2.0);
  }
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR();
  for (int k = 0; k < n; ++k) {
    cplx d = r(k, k);
    q.col(k) *= std::abs(d) > 0 ? d / std::abs(d) : cplx(1);
  }
  return q;
}

Eigen::MatrixXd haar_orthogonal(int n, std::mt19937_64& rng) {
  Eigen::MatrixXd g(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) g(r, c) = gauss(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR();
  for (int k = 0; k < n; ++k) {
    if (r(k, k) < 0) q.col(k) *= -1.0;
  }
  return q;
}

const std::vector<std::string>& manifold_names() {
  static const std::vector<std::string> v = {"S_R",  "S_C",  "TSR", "T2SR", "dotS",  "ddotS", "ddotS-subfamily",
                                             "U_N",  "O_N",  "TO_N", "U2N", "TO2N", "T2ON", "udiag",
                                             "preset-prop25"};
  return v;
}

ModelPoint preset_prop25(int n) {
  if (n < 2) throw InvalidArgument("preset-prop25 needs N >= 2");
  ModelPoint p = base("preset-prop25", n, 0);
  CVec x = CVec::Zero(n), y = CVec::Zero(n);
  x(0) = I / std::sqrt(2.0);
  y(1) = 1.0 / std::sqrt(2.0);
  set_xy(p, x, y);
  if (n > 2) p.params["padding"] = "x3..xN = y3..yN = 0";
  return p;
}

ModelPoint pq_point(const std::vector<double>& pv, const std::vector<double>& qv) {
  if (pv.size() != qv.size() || pv.empty()) throw InvalidArgument("pq_point: p and q must have equal positive length");
  const int n = static_cast<int>(pv.size());
  ModelPoint p = base("ddotS-subfamily", n, 0);
  CVec x(n), y(n);
  for (int k = 0; k < n; ++k) {
    x(k) = (pv[k] + qv[k]) / 2.0;
    y(k) = cplx(pv[k] - qv[k], 0) / (2.0 * I);
  }
  set_xy(p, x, y);
  return p;
}

ModelPoint sample(const std::string& manifold, int n, std::uint64_t seed, int dim) {
  if (n < 1) throw InvalidArgument("sample: N must be positive");
  std::mt19937_64 rng(seed);
  ModelPoint p = base(manifold, n, seed);
  if (manifold == "S_C") {
    set_z(p, complex_unit(n, rng));
  } else if (manifold == "S_R") {
    set_z(p, real_unit(n, rng).cast<cplx>());
  } else if (manifold == "TSR") {
    cplx u = phase(rng);
    set_z(p, u * real_unit(n, rng).cast<cplx>());
  } else if (manifold == "T2SR") {
    cplx u = phase(rng);
    Eigen::VectorXd pr = real_unit(n, rng);
    Eigen::VectorXd lm = real_unit(2, rng);
    set_xy(p, (u * lm(0)) * pr.cast<cplx>(), (u * lm(1)) * pr.cast<cplx>());
  } else if (manifold == "dotS") {
    CVec v = complex_unit(2 * n, rng);
    CVec x = v.head(n), y = v.tail(n);
    cplx s = (x.array() * y.conjugate().array()).sum();
    if (std::abs(s) > 0) y *= s / std::abs(s);
    set_xy(p, x, y);
  } else if (manifold == "ddotS" || manifold == "ddotS-subfamily") {
    Eigen::VectorXd pv = real_unit(n, rng), qv = real_unit(n, rng);
    CVec x = (pv + qv).cast<cplx>() / 2.0;
    CVec y = (pv - qv).cast<cplx>() / (2.0 * I);
    if (manifold == "ddotS") {
      cplx u = phase(rng);
      x *= u;
      y *= u;
    }
    set_xy(p, x, y);
  } else if (manifold == "U_N") {
    set_u(p, haar_unitary(n, rng));
  } else if (manifold == "O_N") {
    set_u(p, haar_orthogonal(n, rng).cast<cplx>());
  } else if (manifold == "TO_N") {
    cplx u = phase(rng);
    set_u(p, u * haar_orthogonal(n, rng).cast<cplx>());
  } else if (manifold == "U2N") {
    Mat v = haar_unitary(n, rng), w = haar_unitary(n, rng);
    set_blocks(p, (v + w) / 2.0, I * (w - v) / 2.0);
  } else if (manifold == "TO2N") {
    cplx z = phase(rng);
    Mat v = haar_unitary(n, rng);
    set_blocks(p, z * Mat(v.real().cast<cplx>()), z * Mat(v.imag().cast<cplx>()));
  } else if (manifold == "T2ON") {
    cplx z = phase(rng);
    std::uniform_real_distribution<double> ud(0.0, 2 * std::numbers::pi);
    double t = ud(rng);
    Mat o = haar_orthogonal(n, rng).cast<cplx>();
    set_blocks(p, (z * std::cos(t)) * o, (z * std::sin(t)) * o);
  } else if (manifold == "udiag") {
    if (dim < 1) throw InvalidArgument("udiag: dim must be positive");
    Mat v = haar_unitary(dim, rng);
    std::vector<Mat> d(static_cast<std::size_t>(n), Mat::Zero(dim, dim));
    for (int k = 0; k < dim; ++k) {
      Eigen::VectorXd col = real_unit(n, rng);
      for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)](k, k) = col(i);
    }
    p.dim = dim;
    for (int i = 0; i < n; ++i) p.matrices[Letter::z(i + 1)] = v * d[static_cast<std::size_t>(i)];
  } else if (manifold == "preset-prop25") {
    return preset_prop25(n);
  } else {
    throw InvalidArgument("unsupported manifold '" + manifold + "'");
  }
  return p;
}

const std::vector<std::string>& model_names() {
  static const std::vector<std::string> v = {"pq",     "pq-preset", "ddotS", "dotS", "T2SR", "udiag",
                                             "preset-prop25", "preset-1i", "S_C", "S_R", "TSR",
                                             "u2n-model", "U_N", "O_N", "TO_N", "S_C-doubling",
                                             "free-unitary", "free-reflection"};
  return v;
}

ModelPoint model(const std::string& name, int n, std::uint64_t seed) {
  if (name == "pq") return complex_doubling(sample("ddotS-subfamily", n, seed));
  if (name == "pq-preset") {
    if (n < 2) throw InvalidArgument("pq-preset needs N >= 2");
    std::vector<double> pv(static_cast<std::size_t>(n), 0.0), qv(static_cast<std::size_t>(n), 0.0);
    pv[0] = 1;
    qv[1] = 1;
    ModelPoint p = complex_doubling(pq_point(pv, qv));
    p.manifold = "[pq-preset]";
    return p;
  }
  if (name == "ddotS" || name == "dotS" || name == "T2SR") return complex_doubling(sample(name, n, seed));
  if (name == "udiag") return sample("udiag", n, seed, 2);
  if (name == "preset-prop25") return complex_doubling(preset_prop25(n));
  if (name == "preset-1i") {
    if (n < 2) throw InvalidArgument("preset-1i needs N >= 2");
    ModelPoint p = base("preset-1i", n, 0);
    CVec z = CVec::Zero(n);
    z(0) = 1.0 / std::sqrt(2.0);
    z(1) = I / std::sqrt(2.0);
    set_z(p, z);
    return p;
  }
  if (name == "S_C" || name == "S_R" || name == "TSR" || name == "U_N" || name == "O_N" || name == "TO_N") {
    return sample(name, n, seed);
  }
  if (name == "u2n-model") return group_model(sample("U2N", n, seed));
  if (name == "S_C-doubling") return doubling(sample("S_C", n, seed));
  if (name == "free-unitary" || name == "free-reflection") {
    // z_i = W_i / sqrt N with W_i unitary (resp. self-adjoint unitary): a point of S_C+ (resp. S_R+)
    std::mt19937_64 rng(seed);
    ModelPoint p = base(name, n, seed);
    p.dim = 2;
    for (int i = 1; i <= n; ++i) {
      Mat w = haar_unitary(2, rng);
      if (name == "free-reflection") {
        Mat d = Mat::Identity(2, 2);
        d(1, 1) = -1;
        w = Mat(w * d * w.adjoint());
      }
      p.matrices[Letter::z(i)] = w / std::sqrt(double(n));
    }
    return p;
  }
  throw InvalidArgument("unknown model '" + name + "'");
}

}  // namespace halfsph
