#include <gtest/gtest.h>

#include <cmath>

#include "halfsph/error.hpp"
#include "halfsph/models.hpp"
#include "oracles.hpp"

using namespace halfsph;

namespace {

NCPolynomial R(const std::string& s) { return parse_relation(s); }

double max_residual(const std::string& model_name, const Presentation& p, int n, int seeds = 10) {
  double mx = 0;
  for (int s = 1; s <= seeds; ++s) mx = std::max(mx, check_relations(p, model(model_name, n, s)).max_residual);
  return mx;
}

}  // namespace

TEST(Sampling, HaarMatricesAreUnitary) {
  std::mt19937_64 rng(1);
  for (int n : {1, 2, 3, 5}) {
    Mat u = haar_unitary(n, rng);
    EXPECT_LT((u * u.adjoint() - Mat::Identity(n, n)).norm(), 1e-12);
    Eigen::MatrixXd o = haar_orthogonal(n, rng);
    EXPECT_LT((o * o.transpose() - Eigen::MatrixXd::Identity(n, n)).norm(), 1e-12);
  }
}

TEST(Sampling, SeededAndReproducible) {
  for (const auto& m : {"S_C", "udiag", "pq", "U_N"}) {
    auto a = to_json(model(m, 2, 9)), b = to_json(model(m, 2, 9)), c = to_json(model(m, 2, 10));
    EXPECT_EQ(a, b) << m;
    EXPECT_NE(a, c) << m;
  }
  EXPECT_EQ(rng_name(), "std::mt19937_64");
}

TEST(Sampling, ClassicalPointsSatisfyMembership) {
  for (const auto& m : manifold_names()) {
    if (m == "udiag") continue;
    for (std::uint64_t s = 1; s <= 20; ++s) {
      auto pt = sample(m, 3, s);
      EXPECT_TRUE(membership(m, pt)) << m << " seed " << s;
    }
  }
  EXPECT_THROW(sample("nowhere", 2, 1), InvalidArgument);
}

// Model -> presentations it must satisfy; an independent listing of where each model lives.
TEST(ModelsProperty, ModelsSatisfyTheirPresentations) {
  struct Case {
    const char* model;
    std::vector<const char*> spheres;
    std::vector<const char*> groups;
  };
  const std::vector<Case> cases = {
      {"S_C", {"C"}, {}},
      {"S_R", {"R"}, {}},
      {"TSR", {"TSR"}, {}},
      {"pq", {"Cstarstar", "Ccirc"}, {}},
      {"pq-preset", {"Cstarstar"}, {}},
      {"dotS", {"Cstarstar"}, {}},
      {"ddotS", {"Ccirc"}, {}},
      {"T2SR", {"TSR"}, {}},
      {"udiag", {"Csharp"}, {}},
      {"preset-prop25", {"Ccirc"}, {}},
      {"preset-1i", {"C"}, {}},
      {"S_C-doubling", {"Rstar"}, {}},
      {"free-unitary", {"Cplus"}, {}},
      {"free-reflection", {"Rplus"}, {}},
      {"U_N", {}, {"UN"}},
      {"O_N", {}, {"TON"}},
      {"TO_N", {}, {"TON"}},
      {"u2n-model", {}, {"UNstarstar"}},
  };
  for (int n : {2, 3}) {
    for (const auto& c : cases) {
      for (const auto* s : c.spheres) EXPECT_LT(max_residual(c.model, make_sphere(s, n), n), 1e-9) << c.model << " " << s;
      for (const auto* g : c.groups) EXPECT_LT(max_residual(c.model, make_group(g, n), n), 1e-9) << c.model << " " << g;
    }
  }
}

TEST(Models, PointJsonRoundTrip) {
  for (const auto& m : model_names()) {
    auto pt = model(m, 2, 3);
    auto back = point_from_json(to_json(pt));
    EXPECT_EQ(to_json(back), to_json(pt)) << m;
    for (const auto& [l, mat] : pt.matrices) EXPECT_LT((back.matrix(l) - mat).norm(), 1e-15) << m;
  }
}

// The fixed point (i, 0, 0, 1)/sqrt 2 through the complex doubling, evaluated by hand.
TEST(Models, DoubledPresetPointAgainstTwoByTwoOracle) {
  using oracle::doubled;
  const double s = 1 / std::sqrt(2.0);
  const oracle::C2 x1(0, s), x2(0, 0), y1(0, 0), y2(s, 0);
  const oracle::C2 i(0, 1);
  auto z1 = doubled(x1) + oracle::M2{i, 0, 0, i} * doubled(y1);
  auto z2 = doubled(x2) + oracle::M2{i, 0, 0, i} * doubled(y2);
  const double expected = (z1 * z2 - z2 * z1).norm();
  EXPECT_NEAR(expected, 1.0, 1e-12);

  auto pt = model("preset-prop25", 2, 1);
  EXPECT_LT(check_relations(make_sphere("Ccirc", 2), pt).max_residual, 1e-12);
  EXPECT_NEAR(operator_norm(evaluate(R("z1 z2 - z2 z1"), pt)), expected, 1e-12);
}

// (p, q) point: z_i z_j* = diag(p_i p_j, q_i q_j), z_j* z_i = diag(q_j q_i, p_j p_i).
TEST(Models, PqPresetAgainstOracle) {
  auto pt = model("pq-preset", 2, 1);
  const double p[2] = {1, 0}, q[2] = {0, 1};
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      const double d = std::abs(p[i - 1] * p[j - 1] - q[j - 1] * q[i - 1]);
      auto f = NCPolynomial(Word{Letter::z(i), Letter::z(j, true)}) - NCPolynomial(Word{Letter::z(j, true), Letter::z(i)});
      EXPECT_NEAR(operator_norm(evaluate(f, pt)), d, 1e-12) << i << "," << j;
    }
}

TEST(Evaluate, StarIsAdjoint) {
  auto pt = model("udiag", 2, 4);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 30; ++t) {
    auto f = oracle::random_poly(rng, {Letter::z(1), Letter::z(2)});
    Mat a = evaluate(f, pt), b = evaluate(star(f), pt);
    EXPECT_LT((a.adjoint() - b).norm(), 1e-10);
  }
  EXPECT_THROW(evaluate(R("u1_1"), pt), Error);
}

TEST(Refute, SoundAndReverified) {
  auto p = make_sphere("Ccirc", 2);
  auto r = refute_implication(p, R("z1 z2 = z2 z1"), "preset-prop25", 1);
  ASSERT_TRUE(r.found());
  EXPECT_LT(r.counterexample->presentation_residual, 1e-9);
  EXPECT_GT(r.counterexample->target_residual, 1e-3);
  auto rv = reverify(to_json(r.counterexample->point), p, R("z1 z2 = z2 z1"));
  EXPECT_TRUE(rv.ok);
  EXPECT_NEAR(rv.target_residual, 1.0, 1e-12);
}

TEST(Refute, NeverReportsPointsOutsideThePresentation) {
  // S_C points are not in C#; the refuter must not use them against C# targets.
  auto r = refute_implication(make_sphere("Csharp", 2), R("z1 z2 = z2 z1"), "S_C", 50);
  EXPECT_FALSE(r.found());
  // a true consequence cannot be refuted
  auto t = refute_implication(make_sphere("Csharp", 3), R("z1 z2* z3 = z3 z2* z1"), "udiag", 50);
  EXPECT_FALSE(t.found());
}

TEST(Refute, TamperedPointFailsReverification) {
  auto p = make_sphere("Ccirc", 2);
  auto r = refute_implication(p, R("z1 z2 = z2 z1"), "preset-prop25", 1);
  ASSERT_TRUE(r.found());
  auto j = to_json(r.counterexample->point);
  auto pt = point_from_json(j);
  pt.matrices.begin()->second *= 2.0;
  EXPECT_FALSE(reverify(to_json(pt), p, R("z1 z2 = z2 z1")).ok);
}

TEST(Gram, FamilyRanks) {
  struct Case {
    int family;
    const char* sampler;
    int n;
    int rank;
  };
  for (const auto& c : {Case{1, "S_C", 2, 3}, Case{1, "S_C", 3, 6}, Case{2, "pq", 2, 6}, Case{2, "pq", 3, 18},
                        Case{3, "dotS", 2, 6}, Case{3, "dotS", 3, 18}}) {
    auto words = monomial_family(c.family, c.n);
    EXPECT_EQ(int(words.size()), c.rank);
    auto g = gram_rank(words, c.sampler, c.n, 200, 1, 1e-8);
    EXPECT_EQ(g.rank, c.rank) << c.family << " " << c.sampler << " N=" << c.n;
  }
  // classical points commute, so family 2 collapses there
  auto g = gram_rank(monomial_family(2, 2), "S_C", 2, 200, 1, 1e-8);
  EXPECT_LT(g.rank, 6);
  EXPECT_THROW(gram_rank(monomial_family(2, 3), "pq", 3, 5), InvalidArgument);
}

TEST(Exact, SignMatrixDeterminantsAgainstLaplace) {
  auto r = prop23_determinants();
  EXPECT_EQ(oracle::laplace_det(r.first), r.det_first);
  EXPECT_EQ(oracle::laplace_det(r.second), r.det_second);
  EXPECT_EQ(r.det_first.norm2(), mpq_class(256));
  EXPECT_EQ(r.det_second.norm2(), mpq_class(256));
}

TEST(ExactProperty, DeterminantMatchesLaplace) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 30; ++t) {
    ScalarMatrix m(4, std::vector<Scalar>(4));
    for (auto& row : m)
      for (auto& x : row) x = oracle::random_scalar(rng);
    EXPECT_EQ(determinant(m), oracle::laplace_det(m));
  }
}

TEST(Exact, U2nIdentities) {
  auto r = u2n_group_identities(100, 1, 1e-10);
  EXPECT_TRUE(r.identity1);
  EXPECT_TRUE(r.identity2);
  EXPECT_TRUE(r.t2on_closure);
  EXPECT_TRUE(r.to2n_closure);
  EXPECT_LT(r.max_t2on_defect, 1e-10);
  EXPECT_EQ(r.pairs, 100u);
}

TEST(Membership, AdversarialPoints) {
  ModelPoint p;
  p.manifold = "manual";
  p.n = 2;
  p.dim = 1;
  const double s = 1 / std::sqrt(2.0);
  p.matrices[Letter::z(1)] = Mat::Constant(1, 1, cplx(s, 0));
  p.matrices[Letter::z(2)] = Mat::Constant(1, 1, cplx(0, s));
  EXPECT_TRUE(membership("S_C", p));
  EXPECT_FALSE(membership("TSR", p));  // (1, i)/sqrt 2 has no common phase
  EXPECT_FALSE(membership("S_R", p));
  p.matrices[Letter::z(2)] = Mat::Constant(1, 1, cplx(-s, 0));
  EXPECT_TRUE(membership("S_R", p));
  for (auto& [l, m] : p.matrices) m *= std::polar(1.0, 0.7);
  EXPECT_TRUE(membership("TSR", p));
  EXPECT_FALSE(membership("S_R", p));
}
