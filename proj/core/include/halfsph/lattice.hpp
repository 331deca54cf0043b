#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "halfsph/models.hpp"
#include "halfsph/presentations.hpp"
#include "halfsph/rewrite.hpp"

namespace halfsph {

// ---- diagrams ----

enum class NodeKind { Sphere, Group };

struct DiagramNode {
  std::string id;
  NodeKind kind = NodeKind::Sphere;
  /// Preset name, or `real(X)` for the real version of sphere preset X.
  std::string preset;
};

struct DiagramEdge {
  std::string smaller;
  std::string larger;
};

/// node = left ∩ right. With a classical part, membership of the meet manifold is
/// compared with the parents' relations on points of the ambient manifold.
struct IntersectionClaim {
  std::string node;
  std::string left;
  std::string right;
  std::string meet_manifold;
  std::string ambient_manifold;
  bool classical() const { return !meet_manifold.empty(); }
};

struct PropernessClaim {
  std::string smaller;
  std::string larger;
  /// Model name, or `auto` to try the built-in candidates. Empty for indirect claims.
  std::string witness;
  /// Optional relation text; defaults to every relation of the smaller node.
  std::string target;
  /// Non-empty for claims resting on an argument that is not machine-checked.
  std::string indirect;
};

struct EquivalenceClaim {
  std::string left;
  std::string right;
};

struct Diagram {
  std::string name;
  int n = 2;
  std::vector<DiagramNode> nodes;
  std::vector<DiagramEdge> edges;
  std::vector<IntersectionClaim> intersections;
  std::vector<PropernessClaim> properness;
  std::vector<EquivalenceClaim> equivalences;

  const DiagramNode& node(const std::string& id) const;
  bool has_node(const std::string& id) const;
  bool has_edge(const std::string& smaller, const std::string& larger) const;
  /// Throws InvalidArgument when an edge or claim references a missing node or edge.
  void validate() const;
};

/// Line-based format: `diagram NAME`, `n N`, `node ID sphere|group PRESET`, `edge A B`,
/// `intersection X = A & B [classical MEET AMBIENT]`, `proper A B witness MODEL [target "REL"]`,
/// `proper A B indirect "REASON"`, `equivalent A B`. A `#` at the start of a token begins a
/// comment, so `C#` is a preset name.
/// Errors carry `line:column`.
Diagram parse_diagram(const std::string& text);
Diagram load_diagram(const std::string& path);
std::string render_diagram(const Diagram& d);

/// Presentation of a node at the diagram's N.
Presentation node_presentation(const DiagramNode& node, int n);

// ---- checks ----

struct InclusionCheck {
  std::string smaller;
  std::string larger;
  Verdict verdict = Verdict::Inconclusive;
  /// Every relation of the larger presentation is literally present in the smaller one.
  bool syntactic = false;
  InclusionResult detail;
  std::vector<NCPolynomial> targets;
  double seconds = 0;
};

/// X ⊂ Y iff every relation of Y derives from X. Throws on alphabet mismatch.
InclusionCheck verify_inclusion(const Presentation& smaller, const Presentation& larger, const Budget& budget = {});

struct IntersectionCheck {
  std::string node;
  std::string left;
  std::string right;
  /// Meet relations from the union of the parents, and conversely.
  Verdict symbolic = Verdict::Inconclusive;
  bool syntactic = false;
  /// Classical part; `samples` counts random plus adversarial points.
  bool classical = false;
  std::size_t samples = 0;
  std::size_t agreements = 0;
  std::size_t in_meet = 0;
  std::vector<std::string> disagreements;
  bool ok() const { return symbolic == Verdict::Proved && (!classical || agreements == samples); }
};

IntersectionCheck verify_intersection(const IntersectionClaim& claim, const Diagram& d, const Budget& budget = {},
                                      std::size_t samples = 1000, std::uint64_t seed = 1);

enum class Properness { Certified, Indirect, Unknown };
std::string properness_str(Properness p);

struct PropernessCheck {
  std::string smaller;
  std::string larger;
  Properness verdict = Properness::Unknown;
  std::string witness;
  std::string reason;
  std::optional<Counterexample> counterexample;
  nlohmann::json serialized_point;
  /// Fresh evaluation of the serialized point.
  std::optional<Reverification> reverified;
  std::size_t trials = 0;
};

/// Certified only for a point that satisfies the larger presentation and violates a
/// relation of the smaller one, re-verified from its JSON form.
PropernessCheck verify_properness(const PropernessClaim& claim, const Diagram& d, std::size_t trials = 500,
                                  std::uint64_t seed = 1, const Tolerances& tol = {});

/// Candidate models tried for `witness auto`.
const std::vector<std::string>& witness_candidates();

struct ProjectiveItem {
  std::string name;
  std::vector<NCPolynomial> targets;
  std::vector<ImplicationResult> results;
  bool proved() const;
};

struct ProjectiveReport {
  std::string sphere;
  int n = 0;
  std::vector<ProjectiveItem> items;
};

/// Derivation attempts on p_ij = z_i z_j*: commutation, p_ij = p_ji* (always), p_ij = p_ji,
/// sum_j p_ij p_jk = p_ik and Tr p = 1.
ProjectiveReport projective_version_check(const Presentation& sphere, const Budget& budget = {});

// ---- lifts ----

struct LiftCheck {
  std::string name;
  Presentation lifted;
  std::vector<NCPolynomial> targets;
  std::vector<ImplicationResult> results;
  bool proved() const;
};

/// Ideal {p_ii - 1/N, q_ii - 1/N} lifted onto the sphere preset; targets z_i z_i* = z_i* z_i = 1/N.
LiftCheck torus_lift_check(int n, const std::string& sphere = "Cstar", const Budget& budget = {});
/// Ideal {p_ij,ik, q_ij,ik, p_ji,ki, q_ji,ki : j != k} lifted onto the coordinate sphere;
/// targets the row and column annihilation relations.
LiftCheck kn_lift_check(int n, const std::string& sphere = "Cplus", const Budget& budget = {});
/// The four contraction families of PU_N lifted onto the coordinate sphere; targets
/// the 4N^2 biunitarity relations. With `with_ideal` false the ideal is empty.
LiftCheck unitary_group_lift_check(int n, const std::string& sphere = "Cplus", bool with_ideal = true,
                                   const Budget& budget = {});

struct RescalingCheck {
  std::size_t samples = 0;
  double max_residual = 0;
  bool ok(double tol = 1e-12) const { return max_residual < tol; }
};
/// z_ij = u_ij / sqrt N on sampled unitaries against the unit relations of S_C at N^2.
RescalingCheck rescaling_check(int n, std::size_t samples = 100, std::uint64_t seed = 1);

// ---- reports ----

struct DiagramOptions {
  Budget budget;
  std::size_t samples = 1000;
  std::size_t trials = 500;
  std::uint64_t seed = 1;
  bool transitivity = true;
};

struct TransitivityCheck {
  std::string via;
  InclusionCheck check;
};

struct EquivalenceCheck {
  std::string left;
  std::string right;
  bool forward = false;
  bool backward = false;
  EquivalenceReport detail;
};

struct DiagramReport {
  Diagram diagram;
  std::vector<InclusionCheck> inclusions;
  std::vector<IntersectionCheck> intersections;
  std::vector<PropernessCheck> properness;
  std::vector<EquivalenceCheck> equivalences;
  std::vector<TransitivityCheck> transitivity;
  double seconds = 0;
  bool inclusions_proved() const;
  /// Every check passed; Indirect properness counts as passing.
  bool ok() const;
};

DiagramReport run_diagram(const Diagram& d, const DiagramOptions& options = {});

nlohmann::json to_json(const InclusionCheck& c);
nlohmann::json to_json(const IntersectionCheck& c);
nlohmann::json to_json(const PropernessCheck& c);
nlohmann::json to_json(const ProjectiveReport& r);
nlohmann::json to_json(const LiftCheck& c);
/// Wall-clock fields are confined to `seconds` keys.
nlohmann::json to_json(const DiagramReport& r);
std::string to_markdown(const DiagramReport& r);

}  // namespace halfsph
