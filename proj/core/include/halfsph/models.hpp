#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "halfsph/ncpoly.hpp"
#include "halfsph/presentations.hpp"

namespace halfsph {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

struct Tolerances {
  double strict = 1e-9;
  double margin = 1e-3;
  double svd_relative = 1e-8;
};

/// Concrete assignment of letters to d x d complex matrices. Only unstarred letters
/// are stored; a starred letter evaluates to the adjoint.
struct ModelPoint {
  std::string manifold;
  int n = 0;
  int dim = 1;
  std::uint64_t seed = 0;
  std::map<Letter, Mat> matrices;
  std::map<std::string, std::string> params;

  Mat matrix(const Letter& l) const;
  bool covers(const Letter& l) const { return matrices.count(l.plain()) != 0; }
  /// Classical coordinate value of a dim-1 point.
  cplx scalar(const Letter& l) const;
};

nlohmann::json to_json(const ModelPoint& p);
ModelPoint point_from_json(const nlohmann::json& j);

/// The named 64-bit generator used everywhere: std::mt19937_64.
std::string rng_name();

// ---- samplers ----

/// Classical points (dim 1). Sphere manifolds fill z letters; the doubled-coordinate
/// manifolds (dotS, ddotS, ddotS-subfamily, T2SR, preset-prop25) fill x and y; group
/// manifolds fill u (U_N, O_N, TO_N) or the blocks A, B as x/y letters with flat
/// index (U2N, TO2N, T2ON). udiag returns a dim-d sphere point (d from `dim`).
ModelPoint sample(const std::string& manifold, int n, std::uint64_t seed, int dim = 2);
const std::vector<std::string>& manifold_names();

Mat haar_unitary(int n, std::mt19937_64& rng);
Eigen::MatrixXd haar_orthogonal(int n, std::mt19937_64& rng);

/// The fixed point (x1, x2, y1, y2) = (i, 0, 0, 1)/sqrt 2, zero-padded for N > 2.
ModelPoint preset_prop25(int n = 2);
/// The (p, q) point x = (p + q)/2, y = (p - q)/(2i).
ModelPoint pq_point(const std::vector<double>& p, const std::vector<double>& q);

// ---- model constructions ----

/// z_i = x_i' + i y_i' with w' = [[0, w], [w*, 0]]. Needs x and y letters.
ModelPoint complex_doubling(const ModelPoint& p);
/// z_i' = [[0, z_i], [z_i*, 0]]; self-adjoint, dimension doubled.
ModelPoint doubling(const ModelPoint& p);
/// u_ij = [[0, a_ij + i b_ij], [conj(a_ij) + i conj(b_ij), 0]] from a U2N-type point.
ModelPoint group_model(const ModelPoint& p);
/// Block matrix (u_ij) of a group point, size N * dim.
Mat block_matrix(const ModelPoint& p);
/// [[A, B], [-B, A]] of a U2N-type point.
Mat u2n_matrix(const ModelPoint& p);

/// Sphere model by name: pq, pq-preset, ddotS, dotS, T2SR, udiag, preset-prop25, S_C, S_R, TSR,
/// preset-1i (scalar (1, i)/sqrt 2, zero-padded), S_C-doubling, free-unitary (z_i = W_i / sqrt N),
/// free-reflection (the same with self-adjoint W_i), plus group models u2n-model, U_N, O_N, TO_N.
ModelPoint model(const std::string& name, int n, std::uint64_t seed);
const std::vector<std::string>& model_names();

// ---- evaluation ----

Mat evaluate(const Word& w, const ModelPoint& p);
Mat evaluate(const NCPolynomial& f, const ModelPoint& p);
/// Largest singular value.
double operator_norm(const Mat& m);

struct Violation {
  std::size_t relation = 0;
  std::string text;
  double residual = 0;
};

struct SampleReport {
  std::vector<double> residuals;
  double max_residual = 0;
  std::optional<Violation> violation;
  bool satisfied(double tol) const { return max_residual < tol; }
};

/// Per-relation operator-norm residuals. Throws if the point misses a letter.
SampleReport check_relations(const std::vector<NCPolynomial>& relations, const ModelPoint& point,
                             double margin = Tolerances{}.margin);
SampleReport check_relations(const Presentation& p, const ModelPoint& point, double margin = Tolerances{}.margin);

struct Counterexample {
  ModelPoint point;
  double presentation_residual = 0;
  double target_residual = 0;
  std::size_t target_index = 0;
  std::string target;
  std::size_t trial = 0;
};

struct RefuteResult {
  std::optional<Counterexample> counterexample;
  std::size_t trials = 0;
  bool found() const { return counterexample.has_value(); }
};

/// Sound refutation: reports a point only when every relation of P holds below
/// tol.strict and some target exceeds tol.margin. Trial t uses seed + t.
RefuteResult refute_implication(const Presentation& p, const std::vector<NCPolynomial>& targets,
                                const std::string& model_name, std::size_t trials, std::uint64_t seed = 1,
                                const Tolerances& tol = {});
RefuteResult refute_implication(const Presentation& p, const NCPolynomial& target, const std::string& model_name,
                                std::size_t trials, std::uint64_t seed = 1, const Tolerances& tol = {});

/// Fresh evaluation from the serialized point.
struct Reverification {
  bool ok = false;
  double presentation_residual = 0;
  double target_residual = 0;
};
Reverification reverify(const nlohmann::json& serialized_point, const Presentation& p, const NCPolynomial& target,
                        const Tolerances& tol = {});

// ---- Gram rank ----

/// 1: {z_a z_b* : a <= b}; 2: {z_a z_b z_c : a <= c}; 3: {z_a z_b* z_c : a <= c}.
std::vector<Word> monomial_family(int family, int n);

struct GramResult {
  int rank = 0;
  std::vector<double> singular_values;
  bool degenerate_sampler = false;
  std::size_t samples = 0;
};

/// Numerical rank of the evaluation matrix (monomials x flattened entries over samples).
/// Throws if samples < family size.
GramResult gram_rank(const std::vector<Word>& monomials, const std::string& model_name, int n, std::size_t samples,
                     std::uint64_t seed = 1, double svd_relative = Tolerances{}.svd_relative);

// ---- exact checks ----

using ScalarMatrix = std::vector<std::vector<Scalar>>;
Scalar determinant(ScalarMatrix m);

struct Prop23Result {
  ScalarMatrix first;
  ScalarMatrix second;
  Scalar det_first;
  Scalar det_second;
};
/// Sign choices (alpha, beta, gamma) with entries +-i, one row per choice.
using SignChoice = std::array<Scalar, 3>;
std::vector<SignChoice> prop23_sign_choices();
Prop23Result prop23_matrices(const std::vector<SignChoice>& choices);
Prop23Result prop23_determinants();

struct IdentityReport {
  bool identity1 = false;  ///< real regrouping
  bool identity2 = false;  ///< imaginary regrouping
  std::size_t index_tuples = 0;
  bool t2on_closure = false;
  bool to2n_closure = false;
  double max_t2on_defect = 0;
  double max_to2n_defect = 0;
  std::size_t pairs = 0;
  bool ok() const { return identity1 && identity2 && t2on_closure && to2n_closure; }
};
/// Exact regrouping identities at N = 2 plus numerical closure of sampled points.
IdentityReport u2n_group_identities(std::size_t pairs = 100, std::uint64_t seed = 1, double tol = 1e-10);
/// Largest defect of the U_N' membership conditions of [[A, B], [-B, A]].
double un_prime_defect(const Mat& a, const Mat& b);

// ---- membership ----

/// Classical predicates on dim-1 points. Manifolds: S_C, S_R, TSR, T2SR, dotS, ddotS,
/// U_N, O_N, TO_N, U2N, UNprime, TO2N, T2ON.
bool membership(const std::string& manifold, const ModelPoint& point, double tol = 1e-9);

}  // namespace halfsph
