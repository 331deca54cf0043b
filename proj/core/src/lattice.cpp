#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "halfsph/error.hpp"
#include "halfsph/lattice.hpp"

namespace halfsph {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool all_proved(const std::vector<ImplicationResult>& rs) {
  for (const auto& r : rs)
    if (!r.proved()) return false;
  return true;
}

bool contains_all(const Presentation& p, const std::vector<NCPolynomial>& rs) {
  for (const auto& r : rs)
    if (!p.has_relation(r)) return false;
  return true;
}

Presentation union_of(const Presentation& a, const Presentation& b) {
  if (!(a.generators() == b.generators())) throw InvalidArgument("intersection parents use different alphabets");
  Presentation u = a;
  u.add_relations(b.relations());
  u.set_name(a.name() + "&" + b.name());
  return u;
}

bool holds(const Presentation& p, const ModelPoint& x, double tol) {
  return check_relations(p, x).max_residual < tol;
}

// Multiplies the first coordinate (sphere) or the first row (group) by a fixed phase.
ModelPoint perturb(ModelPoint p) {
  const cplx ph = std::polar(1.0, 0.3);
  for (auto& [l, m] : p.matrices)
    if ((l.family == Family::Z && l.i == 1) || (l.family == Family::U && l.i == 1)) m *= ph;
  p.manifold += "+row-phase";
  return p;
}

// Sphere: drop the last coordinate and renormalize. Group: swap the first two rows.
ModelPoint pad(ModelPoint p) {
  bool group = false;
  for (const auto& [l, m] : p.matrices) group = group || l.family == Family::U;
  if (group) {
    if (p.n >= 2)
      for (int j = 1; j <= p.n; ++j) std::swap(p.matrices[Letter::u(1, j)], p.matrices[Letter::u(2, j)]);
    p.manifold += "+row-swap";
    return p;
  }
  if (p.n >= 2) {
    p.matrices[Letter::z(p.n)] = Mat::Zero(p.dim, p.dim);
    double norm = 0;
    for (const auto& [l, m] : p.matrices) norm += std::norm(m(0, 0));
    for (auto& [l, m] : p.matrices) m /= std::sqrt(norm);
  }
  p.manifold += "+padded";
  return p;
}

bool deterministic_model(const std::string& name) { return name.rfind("preset", 0) == 0 || name == "pq-preset"; }

Scalar inverse(int n) { return Scalar(mpq_class(1, n)); }

std::vector<ImplicationResult> derive_all(const Presentation& p, const std::vector<NCPolynomial>& targets,
                                          const Budget& budget) {
  RuleSet rules(p);
  std::vector<ImplicationResult> out;
  for (const auto& t : targets) out.push_back(check_implication(p, rules, t, budget));
  return out;
}

NCPolynomial w2(const Letter& a, const Letter& b) { return NCPolynomial(Word{a, b}); }

nlohmann::json results_json(const std::vector<NCPolynomial>& targets, const std::vector<ImplicationResult>& rs) {
  nlohmann::json j = nlohmann::json::array();
  for (std::size_t k = 0; k < rs.size(); ++k) {
    nlohmann::json e = {{"target", targets[k].str()}, {"verdict", verdict_str(rs[k].verdict)}};
    if (rs[k].proved()) e["trace"] = to_json(rs[k].trace);
    j.push_back(e);
  }
  return j;
}

}  // namespace

// ---- diagrams ----

const DiagramNode& Diagram::node(const std::string& id) const {
  for (const auto& n : nodes)
    if (n.id == id) return n;
  throw InvalidArgument("diagram " + name + ": unknown node '" + id + "'");
}

bool Diagram::has_node(const std::string& id) const {
  for (const auto& n : nodes)
    if (n.id == id) return true;
  return false;
}

bool Diagram::has_edge(const std::string& smaller, const std::string& larger) const {
  for (const auto& e : edges)
    if (e.smaller == smaller && e.larger == larger) return true;
  return false;
}

void Diagram::validate() const {
  std::set<std::string> ids;
  for (const auto& nd : nodes)
    if (!ids.insert(nd.id).second) throw InvalidArgument("diagram " + name + ": duplicate node '" + nd.id + "'");
  for (const auto& e : edges) {
    node(e.smaller);
    node(e.larger);
  }
  for (const auto& c : intersections) {
    node(c.node);
    node(c.left);
    node(c.right);
    if (!has_edge(c.node, c.left) || !has_edge(c.node, c.right)) {
      throw InvalidArgument("diagram " + name + ": intersection " + c.node + " needs edges to both parents");
    }
  }
  for (const auto& c : properness) {
    if (!has_edge(c.smaller, c.larger)) {
      throw InvalidArgument("diagram " + name + ": properness claim on missing edge " + c.smaller + " -> " + c.larger);
    }
  }
  for (const auto& c : equivalences) {
    node(c.left);
    node(c.right);
  }
}

Presentation node_presentation(const DiagramNode& node, int n) {
  if (node.kind == NodeKind::Group) return make_group(node.preset, n);
  const std::string& p = node.preset;
  if (p.rfind("real(", 0) == 0 && p.back() == ')') {
    Presentation r = real_version(make_sphere(p.substr(5, p.size() - 6), n));
    r.set_name(p);
    return r;
  }
  return make_sphere(p, n);
}

// ---- checks ----

InclusionCheck verify_inclusion(const Presentation& smaller, const Presentation& larger, const Budget& budget) {
  auto t0 = Clock::now();
  InclusionCheck c;
  c.smaller = smaller.name();
  c.larger = larger.name();
  c.detail = check_inclusion(smaller, larger, budget);
  c.targets = larger.relations();
  c.syntactic = contains_all(smaller, larger.relations());
  c.verdict = c.detail.proved ? Verdict::Proved : Verdict::Inconclusive;
  c.seconds = since(t0);
  return c;
}

IntersectionCheck verify_intersection(const IntersectionClaim& claim, const Diagram& d, const Budget& budget,
                                      std::size_t samples, std::uint64_t seed) {
  IntersectionCheck c;
  c.node = claim.node;
  c.left = claim.left;
  c.right = claim.right;
  const Presentation meet = node_presentation(d.node(claim.node), d.n);
  const Presentation left = node_presentation(d.node(claim.left), d.n);
  const Presentation right = node_presentation(d.node(claim.right), d.n);
  const Presentation both = union_of(left, right);
  c.syntactic = contains_all(meet, both.relations()) && contains_all(both, meet.relations());
  bool down = check_inclusion(meet, both, budget).proved;
  bool up = down && check_inclusion(both, meet, budget).proved;
  c.symbolic = up ? Verdict::Proved : Verdict::Inconclusive;

  if (!claim.classical()) return c;
  c.classical = true;
  const double tol = Tolerances{}.strict;
  for (std::size_t t = 0; t < samples; ++t) {
    const std::uint64_t s = seed + t;
    ModelPoint x;
    switch (t % 4) {
      case 0: x = sample(claim.ambient_manifold, d.n, s); break;
      case 1: x = sample(claim.meet_manifold, d.n, s); break;
      case 2: x = perturb(sample(claim.meet_manifold, d.n, s)); break;
      default: x = pad(sample(claim.meet_manifold, d.n, s)); break;
    }
    const bool in_meet = membership(claim.meet_manifold, x, tol);
    const bool in_parents = holds(left, x, tol) && holds(right, x, tol);
    ++c.samples;
    c.in_meet += in_meet;
    if (in_meet == in_parents) {
      ++c.agreements;
    } else if (c.disagreements.size() < 5) {
      c.disagreements.push_back(x.manifold + " seed " + std::to_string(s) + ": membership " +
                                (in_meet ? "true" : "false") + ", parent relations " + (in_parents ? "hold" : "fail"));
    }
  }
  return c;
}

std::string properness_str(Properness p) {
  switch (p) {
    case Properness::Certified: return "Certified";
    case Properness::Indirect: return "Indirect";
    default: return "Unknown";
  }
}

const std::vector<std::string>& witness_candidates() {
  static const std::vector<std::string> v = {"preset-1i", "S_C",       "TSR",          "pq-preset",
                                             "pq",        "preset-prop25", "udiag",    "S_C-doubling",
                                             "free-unitary", "free-reflection", "U_N", "u2n-model"};
  return v;
}

PropernessCheck verify_properness(const PropernessClaim& claim, const Diagram& d, std::size_t trials,
                                  std::uint64_t seed, const Tolerances& tol) {
  PropernessCheck c;
  c.smaller = claim.smaller;
  c.larger = claim.larger;
  if (!claim.indirect.empty()) {
    c.verdict = Properness::Indirect;
    c.reason = claim.indirect;
    return c;
  }
  const Presentation small = node_presentation(d.node(claim.smaller), d.n);
  const Presentation large = node_presentation(d.node(claim.larger), d.n);
  std::vector<NCPolynomial> targets;
  if (!claim.target.empty()) {
    targets.push_back(parse_relation(claim.target));
  } else {
    for (const auto& r : small.relations())
      if (!large.has_relation(r)) targets.push_back(r);
  }
  if (targets.empty()) {
    c.reason = "every relation of " + claim.smaller + " is a relation of " + claim.larger;
    return c;
  }
  std::vector<std::string> candidates;
  if (claim.witness.empty() || claim.witness == "auto") candidates = witness_candidates();
  else candidates.push_back(claim.witness);

  for (const auto& w : candidates) {
    RefuteResult r;
    try {
      r = refute_implication(large, targets, w, deterministic_model(w) ? 1 : trials, seed, tol);
    } catch (const InvalidArgument&) {
      continue;  // model does not cover this alphabet
    }
    c.trials += r.trials;
    if (!r.found()) continue;
    c.witness = w;
    c.serialized_point = to_json(r.counterexample->point);
    c.reverified = reverify(c.serialized_point, large, targets[r.counterexample->target_index], tol);
    c.counterexample = std::move(r.counterexample);
    if (c.reverified->ok) {
      c.verdict = Properness::Certified;
      c.reason = "point of " + claim.larger + " violating " + c.counterexample->target;
      return c;
    }
  }
  c.reason = "no witness among the tried models";
  return c;
}

bool ProjectiveItem::proved() const { return all_proved(results); }

ProjectiveReport projective_version_check(const Presentation& sphere, const Budget& budget) {
  const int n = sphere.generators().count(Family::Z);
  ProjectiveReport rep;
  rep.sphere = sphere.name();
  rep.n = n;
  auto p = [](int i, int j) { return w2(Letter::z(i), Letter::z(j, true)); };
  std::vector<std::pair<int, int>> idx;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) idx.emplace_back(i, j);

  ProjectiveItem comm{"commutation p_ij p_kl = p_kl p_ij", {}, {}};
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      NCPolynomial x = p(idx[a].first, idx[a].second), y = p(idx[b].first, idx[b].second);
      comm.targets.push_back(x * y - y * x);
    }
  ProjectiveItem adj{"adjoint p_ij* = p_ji", {}, {}};
  ProjectiveItem sym{"symmetric p_ij = p_ji", {}, {}};
  ProjectiveItem idem{"idempotent sum_j p_ij p_jk = p_ik", {}, {}};
  for (auto [i, k] : idx) {
    adj.targets.push_back(star(p(i, k)) - p(k, i));
    if (i < k) sym.targets.push_back(p(i, k) - p(k, i));
    NCPolynomial s = -p(i, k);
    for (int j = 1; j <= n; ++j) s += p(i, j) * p(j, k);
    idem.targets.push_back(s);
  }
  ProjectiveItem trace{"trace sum_i p_ii = 1", {}, {}};
  NCPolynomial tr = NCPolynomial(-1);
  for (int i = 1; i <= n; ++i) tr += p(i, i);
  trace.targets.push_back(tr);

  RuleSet rules(sphere);
  for (auto* item : {&comm, &adj, &sym, &idem, &trace}) {
    for (const auto& t : item->targets) item->results.push_back(check_implication(sphere, rules, t, budget));
    rep.items.push_back(std::move(*item));
  }
  return rep;
}

// ---- lifts ----

bool LiftCheck::proved() const { return !results.empty() && all_proved(results); }

LiftCheck torus_lift_check(int n, const std::string& sphere, const Budget& budget) {
  LiftCheck c;
  c.name = "torus";
  std::vector<NCPolynomial> ideal;
  for (int a = 1; a <= n; ++a) {
    ideal.push_back(NCPolynomial(Letter::p(a, a)) - NCPolynomial(inverse(n)));
    ideal.push_back(NCPolynomial(Letter::q(a, a)) - NCPolynomial(inverse(n)));
  }
  c.lifted = lift_projective(ideal, make_sphere(sphere, n), LiftSide::ConjugationStable);
  for (int a = 1; a <= n; ++a) {
    Letter z = Letter::z(a);
    c.targets.push_back(w2(z, z.star()) - NCPolynomial(inverse(n)));
    c.targets.push_back(w2(z.star(), z) - NCPolynomial(inverse(n)));
    c.targets.push_back(w2(z, z.star()) - w2(z.star(), z));
  }
  c.results = derive_all(c.lifted, c.targets, budget);
  return c;
}

LiftCheck kn_lift_check(int n, const std::string& sphere, const Budget& budget) {
  LiftCheck c;
  c.name = "K_N";
  std::vector<NCPolynomial> ideal;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) {
        if (j == k) continue;
        const int ij = flat_index(i, j, n), ik = flat_index(i, k, n);
        const int ji = flat_index(j, i, n), ki = flat_index(k, i, n);
        ideal.push_back(NCPolynomial(Letter::p(ij, ik)));
        ideal.push_back(NCPolynomial(Letter::q(ij, ik)));
        ideal.push_back(NCPolynomial(Letter::p(ji, ki)));
        ideal.push_back(NCPolynomial(Letter::q(ji, ki)));
        c.targets.push_back(w2(Letter::u(i, j), Letter::u(i, k, true)));
        c.targets.push_back(w2(Letter::u(i, j, true), Letter::u(i, k)));
        c.targets.push_back(w2(Letter::u(j, i), Letter::u(k, i, true)));
        c.targets.push_back(w2(Letter::u(j, i, true), Letter::u(k, i)));
      }
  c.lifted = lift_projective(ideal, make_coordinate_sphere(sphere, n), LiftSide::ConjugationStable);
  c.results = derive_all(c.lifted, c.targets, budget);
  return c;
}

LiftCheck unitary_group_lift_check(int n, const std::string& sphere, bool with_ideal, const Budget& budget) {
  LiftCheck c;
  c.name = with_ideal ? "PU_N" : "empty ideal";
  std::vector<NCPolynomial> ideal;
  if (with_ideal) {
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        NCPolynomial delta(Scalar(i == j ? 1 : 0));
        NCPolynomial f1 = -delta, f2 = -delta, f3 = -delta, f4 = -delta;
        for (int k = 1; k <= n; ++k) {
          f1 += NCPolynomial(Letter::p(flat_index(i, k, n), flat_index(j, k, n)));  // u_ik u_jk*
          f2 += NCPolynomial(Letter::q(flat_index(k, j, n), flat_index(k, i, n)));  // u_ki* u_kj
          f3 += NCPolynomial(Letter::p(flat_index(k, i, n), flat_index(k, j, n)));  // u_ki u_kj*
          f4 += NCPolynomial(Letter::q(flat_index(j, k, n), flat_index(i, k, n)));  // u_ik* u_jk
        }
        for (auto* f : {&f1, &f2, &f3, &f4}) ideal.push_back(*f);
      }
  }
  c.lifted = lift_projective(ideal, make_coordinate_sphere(sphere, n), LiftSide::ConjugationStable);
  c.targets = biunitarity_relations(n);
  c.results = derive_all(c.lifted, c.targets, budget);
  return c;
}

RescalingCheck rescaling_check(int n, std::size_t samples, std::uint64_t seed) {
  RescalingCheck r;
  const Presentation sc = make_sphere("C", n * n);
  const double scale = 1.0 / std::sqrt(double(n));
  for (std::size_t s = 0; s < samples; ++s) {
    ModelPoint u = sample("U_N", n, seed + s);
    ModelPoint z;
    z.manifold = "U_N/sqrt(N)";
    z.n = n * n;
    z.seed = u.seed;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) z.matrices[Letter::z(flat_index(i, j, n))] = u.matrix(Letter::u(i, j)) * scale;
    r.max_residual = std::max(r.max_residual, check_relations(sc, z).max_residual);
    ++r.samples;
  }
  return r;
}

// ---- reports ----

bool DiagramReport::inclusions_proved() const {
  for (const auto& c : inclusions)
    if (c.verdict != Verdict::Proved) return false;
  return true;
}

bool DiagramReport::ok() const {
  if (!inclusions_proved()) return false;
  for (const auto& c : intersections)
    if (!c.ok()) return false;
  for (const auto& c : properness)
    if (c.verdict == Properness::Unknown) return false;
  for (const auto& c : equivalences)
    if (!c.forward || !c.backward) return false;
  for (const auto& t : transitivity)
    if (t.check.verdict != Verdict::Proved) return false;
  return true;
}

DiagramReport run_diagram(const Diagram& d, const DiagramOptions& options) {
  auto t0 = Clock::now();
  d.validate();
  DiagramReport rep;
  rep.diagram = d;
  std::map<std::string, Presentation> pres;
  for (const auto& nd : d.nodes) pres.emplace(nd.id, node_presentation(nd, d.n));

  for (const auto& e : d.edges) {
    InclusionCheck c = verify_inclusion(pres.at(e.smaller), pres.at(e.larger), options.budget);
    c.smaller = e.smaller;
    c.larger = e.larger;
    rep.inclusions.push_back(std::move(c));
  }
  for (const auto& claim : d.intersections) {
    rep.intersections.push_back(verify_intersection(claim, d, options.budget, options.samples, options.seed));
  }
  for (const auto& claim : d.properness) {
    rep.properness.push_back(verify_properness(claim, d, options.trials, options.seed));
  }
  for (const auto& claim : d.equivalences) {
    EquivalenceCheck c;
    c.left = claim.left;
    c.right = claim.right;
    c.detail = check_presentation_equivalence(pres.at(claim.left), pres.at(claim.right), options.budget);
    c.forward = c.detail.all_forward();
    c.backward = c.detail.all_backward();
    rep.equivalences.push_back(std::move(c));
  }
  if (options.transitivity) {
    Budget combined = options.budget;
    combined.expansions *= 2;
    combined.reduce_steps *= 2;
    std::set<std::pair<std::string, std::string>> done;
    for (const auto& a : rep.inclusions) {
      if (a.verdict != Verdict::Proved) continue;
      for (const auto& b : rep.inclusions) {
        if (b.verdict != Verdict::Proved || b.smaller != a.larger || a.smaller == b.larger) continue;
        if (!done.insert({a.smaller, b.larger}).second) continue;
        TransitivityCheck t;
        t.via = a.larger;
        t.check = verify_inclusion(pres.at(a.smaller), pres.at(b.larger), combined);
        t.check.smaller = a.smaller;
        t.check.larger = b.larger;
        rep.transitivity.push_back(std::move(t));
      }
    }
  }
  rep.seconds = since(t0);
  return rep;
}

nlohmann::json to_json(const InclusionCheck& c) {
  return {{"smaller", c.smaller},
          {"larger", c.larger},
          {"verdict", verdict_str(c.verdict)},
          {"syntactic", c.syntactic},
          {"relations", results_json(c.targets, c.detail.per_relation)},
          {"seconds", c.seconds}};
}

nlohmann::json to_json(const IntersectionCheck& c) {
  nlohmann::json j = {{"node", c.node},
                      {"left", c.left},
                      {"right", c.right},
                      {"symbolic", verdict_str(c.symbolic)},
                      {"syntactic", c.syntactic},
                      {"ok", c.ok()}};
  if (c.classical) {
    j["classical"] = {{"samples", c.samples},
                      {"agreements", c.agreements},
                      {"in_meet", c.in_meet},
                      {"disagreements", c.disagreements}};
  }
  return j;
}

nlohmann::json to_json(const PropernessCheck& c) {
  nlohmann::json j = {{"smaller", c.smaller},
                      {"larger", c.larger},
                      {"verdict", properness_str(c.verdict)},
                      {"reason", c.reason},
                      {"trials", c.trials}};
  if (!c.witness.empty()) j["witness"] = c.witness;
  if (c.counterexample) {
    j["counterexample"] = {{"target", c.counterexample->target},
                           {"presentation_residual", c.counterexample->presentation_residual},
                           {"target_residual", c.counterexample->target_residual},
                           {"trial", c.counterexample->trial},
                           {"point", c.serialized_point}};
  }
  if (c.reverified) {
    j["reverified"] = {{"ok", c.reverified->ok},
                       {"presentation_residual", c.reverified->presentation_residual},
                       {"target_residual", c.reverified->target_residual}};
  }
  return j;
}

nlohmann::json to_json(const ProjectiveReport& r) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& it : r.items) {
    items.push_back({{"name", it.name},
                     {"verdict", verdict_str(it.proved() ? Verdict::Proved : Verdict::Inconclusive)},
                     {"targets", results_json(it.targets, it.results)}});
  }
  return {{"sphere", r.sphere}, {"N", r.n}, {"items", items}};
}

nlohmann::json to_json(const LiftCheck& c) {
  return {{"name", c.name},
          {"lifted", c.lifted.name()},
          {"lift_sides", c.lifted.metadata().count("lift_sides") ? c.lifted.metadata().at("lift_sides") : ""},
          {"verdict", verdict_str(c.proved() ? Verdict::Proved : Verdict::Inconclusive)},
          {"targets", results_json(c.targets, c.results)}};
}

nlohmann::json to_json(const DiagramReport& r) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& nd : r.diagram.nodes) {
    nodes.push_back({{"id", nd.id},
                     {"kind", nd.kind == NodeKind::Sphere ? "sphere" : "group"},
                     {"preset", nd.preset}});
  }
  nlohmann::json inc = nlohmann::json::array(), in = nlohmann::json::array(), pr = nlohmann::json::array(),
                 eq = nlohmann::json::array(), tr = nlohmann::json::array();
  for (const auto& c : r.inclusions) inc.push_back(to_json(c));
  for (const auto& c : r.intersections) in.push_back(to_json(c));
  for (const auto& c : r.properness) pr.push_back(to_json(c));
  for (const auto& c : r.equivalences) {
    eq.push_back({{"left", c.left}, {"right", c.right}, {"forward", c.forward}, {"backward", c.backward}});
  }
  for (const auto& t : r.transitivity) {
    tr.push_back({{"smaller", t.check.smaller},
                  {"larger", t.check.larger},
                  {"via", t.via},
                  {"verdict", verdict_str(t.check.verdict)},
                  {"seconds", t.check.seconds}});
  }
  return {{"diagram", r.diagram.name},
          {"N", r.diagram.n},
          {"nodes", nodes},
          {"inclusions", inc},
          {"intersections", in},
          {"properness", pr},
          {"equivalences", eq},
          {"transitivity", tr},
          {"ok", r.ok()},
          {"seconds", r.seconds}};
}

std::string to_markdown(const DiagramReport& r) {
  std::ostringstream os;
  os << "# Diagram " << r.diagram.name << " (N = " << r.diagram.n << ")\n\n";
  if (r.diagram.nodes.empty()) {
    os << "Empty diagram.\n";
    return os.str();
  }
  os << "## Inclusions\n\n| smaller | larger | verdict | syntactic |\n|---|---|---|---|\n";
  for (const auto& c : r.inclusions) {
    os << "| " << c.smaller << " | " << c.larger << " | " << verdict_str(c.verdict) << " | "
       << (c.syntactic ? "yes" : "no") << " |\n";
  }
  if (!r.intersections.empty()) {
    os << "\n## Intersections\n\n";
    for (const auto& c : r.intersections) {
      os << "- " << c.node << " = " << c.left << " ∩ " << c.right << ": symbolic " << verdict_str(c.symbolic);
      if (c.classical) os << ", classical " << c.agreements << "/" << c.samples << " agreements";
      os << "\n";
    }
  }
  if (!r.properness.empty()) {
    os << "\n## Properness\n\n| smaller | larger | verdict | witness | violation |\n|---|---|---|---|---|\n";
    for (const auto& c : r.properness) {
      os << "| " << c.smaller << " | " << c.larger << " | " << properness_str(c.verdict) << " | "
         << (c.witness.empty() ? "-" : c.witness) << " | ";
      if (c.counterexample) os << c.counterexample->target << " (" << c.counterexample->target_residual << ")";
      else os << c.reason;
      os << " |\n";
    }
  }
  if (!r.equivalences.empty()) {
    os << "\n## Equivalences\n\n";
    for (const auto& c : r.equivalences) {
      os << "- " << c.left << " = " << c.right << ": " << (c.forward && c.backward ? "Proved" : "Inconclusive")
         << "\n";
    }
  }
  if (!r.transitivity.empty()) {
    os << "\n## Transitivity\n\n";
    for (const auto& t : r.transitivity) {
      os << "- " << t.check.smaller << " ⊂ " << t.check.larger << " via " << t.via << ": "
         << verdict_str(t.check.verdict) << "\n";
    }
  }
  os << "\nOverall: " << (r.ok() ? "ok" : "FAILED") << "\n";
  return os.str();
}

}  // namespace halfsph
