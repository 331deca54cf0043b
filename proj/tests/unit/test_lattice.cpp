#include <gtest/gtest.h>

#include "halfsph/error.hpp"
#include "halfsph/lattice.hpp"

using namespace halfsph;

namespace {

std::string data(const std::string& name) { return std::string(HALFSPH_DATA_DIR) + "/diagrams/" + name; }

const PropernessCheck* find_properness(const DiagramReport& r, const std::string& a, const std::string& b) {
  for (const auto& p : r.properness)
    if (p.smaller == a && p.larger == b) return &p;
  return nullptr;
}

void expect_parse_error(const std::string& text, const std::string& prefix) {
  try {
    parse_diagram(text);
    ADD_FAILURE() << "accepted: " << text;
  } catch (const InvalidArgument& e) {
    EXPECT_EQ(std::string(e.what()).rfind(prefix, 0), 0u) << e.what();
  }
}

}  // namespace

TEST(DiagramFile, ParsesShippedDiagrams) {
  auto six = load_diagram(data("six_sphere.diag"));
  EXPECT_EQ(six.nodes.size(), 6u);
  EXPECT_EQ(six.edges.size(), 7u);
  EXPECT_EQ(six.intersections.size(), 2u);
  EXPECT_TRUE(six.has_node("Csharp"));
  EXPECT_EQ(six.node("Csharp").preset, "C#");
  auto ten = load_diagram(data("ten_sphere.diag"));
  EXPECT_EQ(ten.nodes.size(), 13u);
  EXPECT_GE(ten.equivalences.size(), 3u);
  auto qg = load_diagram(data("quantum_groups.diag"));
  EXPECT_EQ(qg.node("UNsharp").kind, NodeKind::Group);
}

TEST(DiagramFile, RenderRoundTrip) {
  for (const auto& f : {"six_sphere.diag", "ten_sphere.diag", "quantum_groups.diag", "free_spheres_n3.diag"}) {
    auto d = load_diagram(data(f));
    auto text = render_diagram(d);
    EXPECT_EQ(render_diagram(parse_diagram(text)), text) << f;
  }
}

TEST(DiagramFile, ErrorsCarryPosition) {
  expect_parse_error("diagram x\nnode A sphere C\nedge A B\n", "3:8:");
  expect_parse_error("diagram x\nnode A sphere Q\n", "2:15:");
  expect_parse_error("diagram x\nnode A cube C\n", "2:8:");
  expect_parse_error("diagram x\nn zero\n", "2:3:");
  expect_parse_error("diagram x\nnode A sphere C\nnode B sphere C**\nproper A B witness S_C target \"z1 = \"\n", "4:");
  expect_parse_error("diagram x\nnode A sphere C\nfrobnicate\n", "3:1:");
  expect_parse_error("diagram x\nnode A sphere C\nnode B sphere C**\nproper A B indirect \"unterminated\n", "4:21:");
  EXPECT_THROW(load_diagram("/nonexistent.diag"), InvalidArgument);
}

TEST(DiagramFile, ClaimsMustReferenceEdges) {
  expect_parse_error("diagram x\nnode A sphere C\nnode B sphere C**\nproper A B witness S_C\n", "");
  Diagram d;
  d.nodes.push_back({"A", NodeKind::Sphere, "C"});
  d.edges.push_back({"A", "Z"});
  EXPECT_THROW(d.validate(), InvalidArgument);
}

TEST(DiagramFile, HashInsideTokenIsNotAComment) {
  auto d = parse_diagram("diagram x  # trailing\nnode S sphere C#\n# whole line\n");
  EXPECT_EQ(d.node("S").preset, "C#");
  EXPECT_EQ(node_presentation(d.node("S"), 2), make_sphere("Csharp", 2));
}

TEST(Lattice, EmptyDiagramGivesEmptyReport) {
  auto r = run_diagram(parse_diagram(""));
  EXPECT_TRUE(r.inclusions.empty());
  EXPECT_TRUE(r.properness.empty());
  EXPECT_TRUE(r.ok());
  EXPECT_NE(to_markdown(r).find("Empty diagram"), std::string::npos);
}

TEST(Lattice, SixSphereReport) {
  auto r = run_diagram(load_diagram(data("six_sphere.diag")));
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.inclusions_proved());
  EXPECT_EQ(r.inclusions.size(), 7u);
  for (const auto& c : r.intersections) EXPECT_TRUE(c.ok()) << c.node;
  for (const auto& p : r.properness) {
    EXPECT_EQ(p.verdict, Properness::Certified) << p.smaller << " " << p.larger;
    ASSERT_TRUE(p.reverified.has_value());
    EXPECT_TRUE(p.reverified->ok);
    // the embedded point re-verifies on its own
    auto d = r.diagram;
    auto larger = node_presentation(d.node(p.larger), d.n);
    auto rv = reverify(p.serialized_point, larger, parse_relation(p.counterexample->target));
    EXPECT_TRUE(rv.ok);
  }
  for (const auto& t : r.transitivity) EXPECT_EQ(t.check.verdict, Verdict::Proved) << t.check.smaller;
  EXPECT_GE(r.transitivity.size(), 1u);
}

TEST(Lattice, TenSphereReport) {
  auto r = run_diagram(load_diagram(data("ten_sphere.diag")));
  EXPECT_TRUE(r.ok());
  for (const auto& e : r.equivalences) EXPECT_TRUE(e.forward && e.backward) << e.left << " " << e.right;
  for (const auto& p : r.properness) EXPECT_EQ(p.verdict, Properness::Certified) << p.smaller << " " << p.larger;
}

TEST(Lattice, FreeSpheresAtThree) {
  auto r = run_diagram(load_diagram(data("free_spheres_n3.diag")));
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(find_properness(r, "Cstar", "Cplus")->verdict, Properness::Certified);
  EXPECT_EQ(find_properness(r, "Rstar", "Rplus")->verdict, Properness::Certified);
}

TEST(Lattice, QuantumGroupReport) {
  auto r = run_diagram(load_diagram(data("quantum_groups.diag")));
  EXPECT_TRUE(r.ok());
  std::size_t indirect = 0;
  for (const auto& p : r.properness) {
    EXPECT_NE(p.verdict, Properness::Unknown) << p.smaller;
    if (p.verdict == Properness::Indirect) {
      ++indirect;
      EXPECT_FALSE(p.reason.empty());
      EXPECT_FALSE(p.counterexample.has_value());
    }
  }
  EXPECT_EQ(indirect, 3u);
  for (const auto& c : r.intersections) EXPECT_TRUE(c.ok()) << c.node;
}

TEST(Lattice, WrongWitnessStaysUnknown) {
  // udiag points lie in C#, so they cannot separate it from C*
  auto d = parse_diagram(
      "diagram x\nnode A sphere C#\nnode B sphere C*\nedge A B\nproper A B witness udiag\n");
  auto r = run_diagram(d);
  EXPECT_EQ(r.properness.at(0).verdict, Properness::Unknown);
  EXPECT_FALSE(r.ok());
}

TEST(Lattice, FalseInclusionIsNotProved) {
  auto c = verify_inclusion(make_sphere("Cstar", 3), make_sphere("Csharp", 3));
  EXPECT_NE(c.verdict, Verdict::Proved);
  EXPECT_THROW(verify_inclusion(make_sphere("C", 2), make_group("UN", 2)), InvalidArgument);
}

TEST(Lattice, IntersectionDetectsWrongMeet) {
  // C# is not C** meet C*
  auto d = parse_diagram(
      "diagram x\nnode S sphere C**\nnode T sphere C*\nnode M sphere C#\nedge M S\nedge M T\nintersection M = S & T\n");
  auto c = verify_intersection(d.intersections.at(0), d);
  EXPECT_FALSE(c.ok());
}

TEST(Projective, StarAndSharp) {
  auto star = projective_version_check(make_sphere("Cstar", 2));
  auto sharp = projective_version_check(make_sphere("Csharp", 2));
  auto free3 = projective_version_check(make_sphere("Cplus", 3));
  auto item = [](const ProjectiveReport& r, const std::string& prefix) -> const ProjectiveItem& {
    for (const auto& it : r.items)
      if (it.name.rfind(prefix, 0) == 0) return it;
    throw std::runtime_error("missing item " + prefix);
  };
  EXPECT_TRUE(item(star, "commutation").proved());
  EXPECT_TRUE(item(sharp, "symmetric").proved());
  EXPECT_FALSE(item(star, "symmetric").proved());
  EXPECT_FALSE(item(free3, "commutation").proved());
  for (const auto* r : {&star, &sharp, &free3}) {
    EXPECT_TRUE(item(*r, "idempotent").proved());
    EXPECT_TRUE(item(*r, "trace").proved());
    EXPECT_TRUE(item(*r, "adjoint").proved());
  }
}

TEST(Lifts, TorusKnAndUnitary) {
  for (int n : {2, 3}) {
    EXPECT_TRUE(torus_lift_check(n).proved()) << n;
    EXPECT_TRUE(kn_lift_check(n).proved()) << n;
  }
  EXPECT_TRUE(unitary_group_lift_check(2).proved());
  EXPECT_FALSE(unitary_group_lift_check(2, "Cplus", false).proved());
  for (const auto& r : torus_lift_check(2).results) EXPECT_TRUE(replay(r.trace).ok);
}

TEST(Lifts, RescalingIsExact) {
  for (int n : {2, 3}) {
    auto r = rescaling_check(n, 100);
    EXPECT_EQ(r.samples, 100u);
    EXPECT_TRUE(r.ok(1e-12)) << r.max_residual;
  }
}

TEST(Report, JsonIsDeterministicApartFromTiming) {
  auto strip = [](nlohmann::json j) {
    std::function<void(nlohmann::json&)> rec = [&](nlohmann::json& x) {
      if (x.is_object()) {
        x.erase("seconds");
        for (auto& [k, v] : x.items()) rec(v);
      } else if (x.is_array()) {
        for (auto& v : x) rec(v);
      }
    };
    rec(j);
    return j;
  };
  auto d = load_diagram(data("six_sphere.diag"));
  auto a = strip(to_json(run_diagram(d))), b = strip(to_json(run_diagram(d)));
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a["inclusions"].size(), 7u);
}
