#include <cmath>

#include "halfsph/error.hpp"
#include "halfsph/models.hpp"

namespace halfsph {

std::string rng_name() { return "std::mt19937_64"; }

Mat ModelPoint::matrix(const Letter& l) const {
  auto it = matrices.find(l.plain());
  if (it == matrices.end()) throw InvalidArgument("model point '" + manifold + "' has no matrix for " + l.str());
  return l.starred ? Mat(it->second.adjoint()) : it->second;
}

cplx ModelPoint::scalar(const Letter& l) const {
  if (dim != 1) throw InvalidArgument("scalar coordinate requested from a non-scalar point");
  return matrix(l)(0, 0);
}

nlohmann::json to_json(const ModelPoint& p) {
  nlohmann::json mats = nlohmann::json::object();
  for (const auto& [l, m] : p.matrices) {
    nlohmann::json entries = nlohmann::json::array();
    for (int r = 0; r < m.rows(); ++r) {
      for (int c = 0; c < m.cols(); ++c) entries.push_back({m(r, c).real(), m(r, c).imag()});
    }
    mats[l.str()] = entries;
  }
  return {{"manifold", p.manifold}, {"N", p.n},       {"dim", p.dim},      {"seed", p.seed},
          {"rng", rng_name()},     {"params", p.params}, {"matrices", mats}};
}

ModelPoint point_from_json(const nlohmann::json& j) {
  ModelPoint p;
  try {
    p.manifold = j.at("manifold").get<std::string>();
    p.n = j.at("N").get<int>();
    p.dim = j.at("dim").get<int>();
    p.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("params")) p.params = j.at("params").get<std::map<std::string, std::string>>();
    for (const auto& [name, entries] : j.at("matrices").items()) {
      if (entries.size() != static_cast<std::size_t>(p.dim * p.dim)) throw InvalidArgument("matrix size mismatch for " + name);
      Mat m(p.dim, p.dim);
      for (int k = 0; k < p.dim * p.dim; ++k) m(k / p.dim, k % p.dim) = cplx(entries[k][0].get<double>(), entries[k][1].get<double>());
      p.matrices[Letter::parse(name)] = m;
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed model point JSON: ") + e.what());
  }
  return p;
}

namespace {

// w' = [[0, w], [w*, 0]]
Mat dbl(const Mat& w) {
  const auto d = w.rows();
  Mat out = Mat::Zero(2 * d, 2 * d);
  out.block(0, d, d, d) = w;
  out.block(d, 0, d, d) = w.adjoint();
  return out;
}

}  // namespace

ModelPoint complex_doubling(const ModelPoint& p) {
  ModelPoint out;
  out.manifold = "[" + p.manifold + "]";
  out.n = p.n;
  out.dim = 2 * p.dim;
  out.seed = p.seed;
  out.params = p.params;
  bool any = false;
  for (const auto& [l, m] : p.matrices) {
    if (l.family != Family::X) continue;
    auto y = p.matrices.find(Letter::y(l.i));
    if (y == p.matrices.end()) throw InvalidArgument("complex_doubling: x" + std::to_string(l.i) + " has no y partner");
    out.matrices[Letter::z(l.i)] = dbl(m) + cplx(0, 1) * dbl(y->second);
    any = true;
  }
  if (!any) throw InvalidArgument("complex_doubling: point '" + p.manifold + "' does not supply x, y coordinates");
  return out;
}

ModelPoint doubling(const ModelPoint& p) {
  ModelPoint out;
  out.manifold = "|" + p.manifold + "|";
  out.n = p.n;
  out.dim = 2 * p.dim;
  out.seed = p.seed;
  out.params = p.params;
  for (const auto& [l, m] : p.matrices) {
    if (l.family == Family::Z) out.matrices[l] = dbl(m);
  }
  if (out.matrices.empty()) throw InvalidArgument("doubling: point has no sphere coordinates");
  return out;
}

ModelPoint group_model(const ModelPoint& p) {
  const int n = p.n;
  ModelPoint out;
  out.manifold = "[[" + p.manifold + "]]";
  out.n = n;
  out.dim = 2 * p.dim;
  out.seed = p.seed;
  out.params = p.params;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      int a = flat_index(i, j, n);
      auto x = p.matrices.find(Letter::x(a));
      auto y = p.matrices.find(Letter::y(a));
      if (x == p.matrices.end() || y == p.matrices.end()) {
        throw InvalidArgument("group_model: point '" + p.manifold + "' is not of U2N type");
      }
      out.matrices[Letter::u(i, j)] = dbl(x->second) + cplx(0, 1) * dbl(y->second);
    }
  }
  return out;
}

Mat block_matrix(const ModelPoint& p) {
  const int n = p.n, d = p.dim;
  Mat w(n * d, n * d);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) w.block((i - 1) * d, (j - 1) * d, d, d) = p.matrix(Letter::u(i, j));
  }
  return w;
}

Mat u2n_matrix(const ModelPoint& p) {
  const int n = p.n;
  if (p.dim != 1) throw InvalidArgument("u2n_matrix: expected a scalar point");
  Mat m(2 * n, 2 * n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      cplx a = p.scalar(Letter::x(flat_index(i, j, n)));
      cplx b = p.scalar(Letter::y(flat_index(i, j, n)));
      m(i - 1, j - 1) = a;
      m(i - 1, n + j - 1) = b;
      m(n + i - 1, j - 1) = -b;
      m(n + i - 1, n + j - 1) = a;
    }
  }
  return m;
}

}  // namespace halfsph
