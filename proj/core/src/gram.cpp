#include "halfsph/error.hpp"
#include "halfsph/models.hpp"

namespace halfsph {

std::vector<Word> monomial_family(int family, int n) {
  std::vector<Word> out;
  for (int a = 1; a <= n; ++a) {
    if (family == 1) {
      for (int b = a; b <= n; ++b) out.push_back({Letter::z(a), Letter::z(b, true)});
      continue;
    }
    for (int b = 1; b <= n; ++b) {
      for (int c = a; c <= n; ++c) {
        if (family == 2) out.push_back({Letter::z(a), Letter::z(b), Letter::z(c)});
        else if (family == 3) out.push_back({Letter::z(a), Letter::z(b, true), Letter::z(c)});
        else throw InvalidArgument("monomial_family: family must be 1, 2 or 3");
      }
    }
  }
  return out;
}

GramResult gram_rank(const std::vector<Word>& monomials, const std::string& model_name, int n, std::size_t samples,
                     std::uint64_t seed, double svd_relative) {
  if (samples < monomials.size()) {
    throw InvalidArgument("gram_rank: need at least as many samples as monomials (" + std::to_string(monomials.size()) + ")");
  }
  GramResult res;
  res.samples = samples;
  if (monomials.empty()) return res;
  std::vector<ModelPoint> points;
  points.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) points.push_back(model(model_name, n, seed + s));
  const int d = points.front().dim;
  const Eigen::Index cols = static_cast<Eigen::Index>(samples) * d * d;
  Mat f(static_cast<Eigen::Index>(monomials.size()), cols);
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t m = 0; m < monomials.size(); ++m) {
      Mat v = evaluate(monomials[m], points[s]);
      for (int k = 0; k < d * d; ++k) f(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(s) * d * d + k) = v(k / d, k % d);
    }
  }
  // all points equal: the sampler is not exploring the manifold
  bool same = samples > 1;
  for (std::size_t s = 1; s < samples && same; ++s) {
    for (const auto& [l, m] : points[0].matrices) {
      if (!points[s].matrices.at(l).isApprox(m, 1e-14)) {
        same = false;
        break;
      }
    }
  }
  res.degenerate_sampler = same;
  Eigen::BDCSVD<Mat> svd(f);
  const auto& sv = svd.singularValues();
  for (Eigen::Index k = 0; k < sv.size(); ++k) res.singular_values.push_back(sv(k));
  const double top = sv.size() ? sv(0) : 0.0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (top > 0 && sv(k) > svd_relative * top) ++res.rank;
  }
  return res;
}

}  // namespace halfsph
