#include <stdexcept>

#include "halfsph/error.hpp"
#include "halfsph/models.hpp"

namespace halfsph {

Mat evaluate(const Word& w, const ModelPoint& p) {
  Mat out = Mat::Identity(p.dim, p.dim);
  for (const auto& l : w) out = out * p.matrix(l);
  return out;
}

Mat evaluate(const NCPolynomial& f, const ModelPoint& p) {
  Mat out = Mat::Zero(p.dim, p.dim);
  for (const auto& [w, c] : f.terms()) out += c.to_complex() * evaluate(w, p);
  return out;
}

double operator_norm(const Mat& m) {
  if (m.size() == 0) return 0;
  if (m.size() == 1) return std::abs(m(0, 0));
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

SampleReport check_relations(const std::vector<NCPolynomial>& relations, const ModelPoint& point, double margin) {
  SampleReport rep;
  for (std::size_t k = 0; k < relations.size(); ++k) {
    for (const auto& l : relations[k].letters()) {
      if (!point.covers(l)) throw InvalidArgument("check_relations: point does not assign " + l.str());
    }
    double r = operator_norm(evaluate(relations[k], point));
    rep.residuals.push_back(r);
    if (r > rep.max_residual) {
      rep.max_residual = r;
      if (r > margin) rep.violation = Violation{k, relations[k].str(), r};
    }
  }
  return rep;
}

SampleReport check_relations(const Presentation& p, const ModelPoint& point, double margin) {
  return check_relations(p.relations(), point, margin);
}

RefuteResult refute_implication(const Presentation& p, const std::vector<NCPolynomial>& targets,
                                const std::string& model_name, std::size_t trials, std::uint64_t seed,
                                const Tolerances& tol) {
  if (!(tol.margin > tol.strict)) throw InvalidArgument("refute_implication: margin must exceed the strict tolerance");
  RefuteResult res;
  const int n = p.n();
  for (std::size_t t = 0; t < trials; ++t) {
    ++res.trials;
    ModelPoint point = model(model_name, n, seed + t);
    SampleReport base = check_relations(p, point, tol.margin);
    if (!base.satisfied(tol.strict)) continue;
    SampleReport tgt = check_relations(targets, point, tol.margin);
    if (!tgt.violation) continue;
    if (base.max_residual >= tol.strict) throw std::logic_error("refute_implication: unsound counterexample");
    Counterexample ce;
    ce.point = std::move(point);
    ce.presentation_residual = base.max_residual;
    ce.target_residual = tgt.violation->residual;
    ce.target_index = tgt.violation->relation;
    ce.target = tgt.violation->text;
    ce.trial = t;
    res.counterexample = std::move(ce);
    return res;
  }
  return res;
}

RefuteResult refute_implication(const Presentation& p, const NCPolynomial& target, const std::string& model_name,
                                std::size_t trials, std::uint64_t seed, const Tolerances& tol) {
  return refute_implication(p, std::vector<NCPolynomial>{target}, model_name, trials, seed, tol);
}

Reverification reverify(const nlohmann::json& serialized_point, const Presentation& p, const NCPolynomial& target,
                        const Tolerances& tol) {
  ModelPoint point = point_from_json(serialized_point);
  Reverification r;
  r.presentation_residual = check_relations(p, point).max_residual;
  r.target_residual = operator_norm(evaluate(target, point));
  r.ok = r.presentation_residual < tol.strict && r.target_residual > tol.margin;
  return r;
}

}  // namespace halfsph
