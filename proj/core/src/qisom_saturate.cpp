#include <algorithm>
#include <deque>

#include "halfsph/error.hpp"
#include "halfsph/qisom.hpp"
#include "span.hpp"

namespace halfsph {

namespace {

using FormSpan = detail::Span<AbstractMonomial>;

struct Transform {
  std::string op;
  std::array<int, 3> row_perm{0, 1, 2};
  std::array<int, 3> col_perm{0, 1, 2};
};

std::vector<Transform> transforms(int degree) {
  std::vector<Transform> out{{"antipode"}, {"involution"}};
  std::array<int, 3> rp{0, 1, 2};
  do {
    std::array<int, 3> cp{0, 1, 2};
    do {
      if (rp != std::array<int, 3>{0, 1, 2} || cp != std::array<int, 3>{0, 1, 2}) out.push_back({"relabel", rp, cp});
    } while (std::next_permutation(cp.begin(), cp.begin() + degree));
  } while (std::next_permutation(rp.begin(), rp.begin() + degree));
  return out;
}

SchemaRelation apply(const Transform& t, const SchemaRelation& r) {
  if (t.op == "antipode") return antipode(r);
  if (t.op == "involution") return involution(r);
  return relabel(r, t.row_perm, t.col_perm);
}

std::string perm_str(const std::array<int, 3>& p, int degree, const char* names) {
  std::string s;
  for (int x = 0; x < degree; ++x) s += names[x];
  s += "->";
  for (int x = 0; x < degree; ++x) s += names[p[x]];
  return s;
}

bool same(const SchemaRelation& a, const SchemaRelation& b) { return a.form == b.form && a.pattern == b.pattern; }

std::string describe(const std::vector<bool>& stars) {
  auto side = [&](const std::vector<char>& names) {
    std::string s;
    for (std::size_t p = 0; p < names.size(); ++p) {
      if (p) s += ' ';
      s += "z_";
      s += names[p];
      if (stars[p]) s += '*';
    }
    return s;
  };
  if (stars.size() == 3) return side({'i', 'j', 'k'}) + " = " + side({'k', 'j', 'i'});
  return side({'i', 'j'}) + " = " + side({'j', 'i'});
}

}  // namespace

std::size_t SaturationResult::classes_proved() const {
  return std::size_t(std::count_if(class_vanishes.begin(), class_vanishes.end(), [](const auto& kv) { return kv.second; }));
}

SaturationResult saturate(const std::vector<SchemaRelation>& initial, const BracketTerm& goal, std::size_t budget) {
  if (budget < 1) throw InvalidArgument("saturate: budget must be at least 1");
  const int d = goal.degree();
  if (d != 2 && d != 3) throw InvalidArgument("saturate: goal degree must be 2 or 3");
  SaturationResult res;
  res.goal = goal;
  res.budget = budget;

  const auto classes = exact_classes(d);
  std::map<std::string, FormSpan> spaces;
  std::map<int, SchemaRelation> by_id;
  std::deque<int> queue;
  int next_id = 1;

  auto record = [&](SaturationStep step, bool derived) {
    step.id = next_id++;
    step.output.id = step.id;
    by_id[step.id] = step.output;
    res.steps.push_back(step);
    if (derived) {
      ++res.derived;
      queue.push_back(step.id);
    }
    return step.id;
  };

  for (const auto& r : initial) {
    if (r.pattern.degree != d) throw InvalidArgument("saturate: statement degree differs from the goal");
    SaturationStep ax;
    ax.op = "axiom";
    ax.detail = r.origin;
    ax.output = r;
    int id = record(ax, false);
    for (const auto& e : classes) {
      if (!r.pattern.covers(e) || res.exhausted) continue;
      SaturationStep st;
      st.op = "specialize";
      st.inputs = {id};
      st.detail = e.key();
      st.output = specialize(by_id[id], e);
      if (st.output.form.empty()) continue;
      if (!spaces[e.key()].add(st.output.form, next_id)) continue;
      record(st, true);
      if (res.derived >= budget) res.exhausted = true;
    }
  }

  const auto ts = transforms(d);
  while (!queue.empty() && !res.exhausted) {
    int id = queue.front();
    queue.pop_front();
    for (const auto& t : ts) {
      SchemaRelation img = apply(t, by_id[id]);
      if (img.form.empty()) continue;
      if (!spaces[img.pattern.key()].add(img.form, next_id)) continue;
      SaturationStep st;
      st.op = t.op;
      st.inputs = {id};
      st.row_perm = t.row_perm;
      st.col_perm = t.col_perm;
      if (t.op == "relabel") {
        st.detail = "rows " + perm_str(t.row_perm, d, "ijk") + ", cols " + perm_str(t.col_perm, d, "abc");
      }
      st.output = img;
      record(st, true);
      if (res.derived >= budget) {
        res.exhausted = true;
        break;
      }
    }
  }
  if (res.exhausted) res.notes.push_back("budget of " + std::to_string(budget) + " derived statements exhausted");

  for (const auto& e : classes) {
    SchemaRelation target;
    target.pattern = e;
    target.form = canonical_form(goal.form(), e);
    target.origin = "goal " + goal.str() + " = 0 on class " + e.key();
    SaturationStep st;
    st.op = "combine";
    st.detail = e.key();
    st.output = target;
    if (target.form.empty()) {
      st.detail += " (bracket vanishes identically)";
      res.steps.push_back(st);
      res.class_vanishes[e.key()] = true;
      continue;
    }
    auto it = spaces.find(e.key());
    std::optional<FormSpan::Combination> comb;
    if (it != spaces.end()) comb = it->second.express(target.form);
    res.class_vanishes[e.key()] = comb.has_value();
    if (!comb) continue;
    for (const auto& [id, c] : *comb) {
      st.inputs.push_back(id);
      st.coefficients.push_back(c);
    }
    res.steps.push_back(st);
  }
  res.global = res.classes_proved() == classes.size();
  return res;
}

SaturationReplay replay_saturation(const SaturationResult& r) {
  SaturationReplay out;
  std::map<int, SchemaRelation> known;
  auto fail = [&](const SaturationStep& s, const std::string& why) {
    out.ok = false;
    out.message = "step " + std::to_string(s.id) + " (" + s.op + "): " + why;
    return out;
  };
  auto input = [&](const SaturationStep& s, std::size_t k) -> const SchemaRelation* {
    if (k >= s.inputs.size()) return nullptr;
    auto it = known.find(s.inputs[k]);
    return it == known.end() ? nullptr : &it->second;
  };
  std::map<std::string, bool> combined;
  for (const auto& s : r.steps) {
    ++out.steps_checked;
    if (s.op == "combine") {
      const auto& e = s.output.pattern;
      if (!e.exact()) return fail(s, "combine target is not an exact class");
      if (s.output.form != canonical_form(r.goal.form(), e)) return fail(s, "target is not the goal on its class");
      if (s.inputs.size() != s.coefficients.size()) return fail(s, "coefficient count mismatch");
      LinearForm sum;
      for (std::size_t k = 0; k < s.inputs.size(); ++k) {
        const SchemaRelation* in = input(s, k);
        if (!in) return fail(s, "unknown input");
        if (!(in->pattern == e)) return fail(s, "input from another class");
        for (const auto& [m, c] : in->form) sum[m] += c * s.coefficients[k];
      }
      std::erase_if(sum, [](const auto& kv) { return kv.second.is_zero(); });
      if (sum != s.output.form) return fail(s, "combination does not equal the goal");
      combined[e.key()] = true;
      continue;
    }
    if (s.id <= 0 || known.count(s.id)) return fail(s, "bad or repeated id");
    if (s.output.id != s.id) return fail(s, "output id differs from step id");
    if (s.op == "axiom") {
      if (!s.inputs.empty()) return fail(s, "axiom with inputs");
    } else {
      const SchemaRelation* in = input(s, 0);
      if (!in || s.inputs.size() != 1) return fail(s, "needs exactly one earlier input");
      SchemaRelation expect;
      if (s.op == "specialize") {
        if (!in->pattern.covers(s.output.pattern)) return fail(s, "class not covered by the input pattern");
        expect = specialize(*in, s.output.pattern);
      } else if (s.op == "antipode") {
        expect = antipode(*in);
      } else if (s.op == "involution") {
        expect = involution(*in);
      } else if (s.op == "relabel") {
        expect = relabel(*in, s.row_perm, s.col_perm);
      } else {
        return fail(s, "unknown op");
      }
      if (!same(expect, s.output)) return fail(s, "output differs from the re-derived statement");
    }
    known[s.id] = s.output;
  }
  for (const auto& [key, v] : r.class_vanishes) {
    if (v && !combined.count(key)) {
      out.message = "class " + key + " claimed without a combine step";
      return out;
    }
  }
  if (r.global && r.classes_proved() != exact_classes(r.goal.degree()).size()) {
    out.message = "global claim with missing classes";
    return out;
  }
  out.ok = true;
  out.message = "ok";
  return out;
}

nlohmann::json to_json(const SaturationResult& r) {
  nlohmann::json goal = nlohmann::json::array();
  for (const auto& g : r.goal.factors) goal.push_back({g.row, g.col, g.star});
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : r.steps) {
    nlohmann::json j{{"id", s.id}, {"op", s.op}, {"inputs", s.inputs}, {"output", to_json(s.output)}};
    if (!s.detail.empty()) j["detail"] = s.detail;
    if (s.op == "relabel") {
      j["row_perm"] = s.row_perm;
      j["col_perm"] = s.col_perm;
    }
    if (s.op == "combine") {
      std::vector<std::string> cs;
      for (const auto& c : s.coefficients) cs.push_back(c.str());
      j["coefficients"] = cs;
    }
    steps.push_back(j);
  }
  return {{"goal", goal},
          {"goal_text", r.goal.str() + " = 0"},
          {"global", r.global},
          {"classes", r.class_vanishes},
          {"classes_proved", r.classes_proved()},
          {"exhausted", r.exhausted},
          {"derived", r.derived},
          {"budget", r.budget},
          {"notes", r.notes},
          {"steps", steps}};
}

SaturationResult saturation_from_json(const nlohmann::json& j) {
  SaturationResult r;
  for (const auto& g : j.at("goal")) {
    r.goal.factors.push_back({g.at(0).get<std::uint8_t>(), g.at(1).get<std::uint8_t>(), g.at(2).get<bool>()});
  }
  r.global = j.at("global").get<bool>();
  r.class_vanishes = j.at("classes").get<std::map<std::string, bool>>();
  r.exhausted = j.value("exhausted", false);
  r.derived = j.value("derived", std::size_t(0));
  r.budget = j.value("budget", std::size_t(0));
  r.notes = j.value("notes", std::vector<std::string>{});
  for (const auto& js : j.at("steps")) {
    SaturationStep s;
    s.id = js.at("id").get<int>();
    s.op = js.at("op").get<std::string>();
    s.inputs = js.at("inputs").get<std::vector<int>>();
    s.detail = js.value("detail", "");
    if (js.contains("row_perm")) s.row_perm = js.at("row_perm").get<std::array<int, 3>>();
    if (js.contains("col_perm")) s.col_perm = js.at("col_perm").get<std::array<int, 3>>();
    if (js.contains("coefficients")) {
      for (const auto& c : js.at("coefficients")) s.coefficients.push_back(Scalar::parse(c.get<std::string>()));
    }
    s.output = schema_from_json(js.at("output"));
    r.steps.push_back(std::move(s));
  }
  return r;
}

QisomPipeline qisom_closure(const std::string& sphere, std::size_t budget) {
  const std::string canon = canonical_sphere(sphere);
  struct Plan {
    std::vector<std::vector<bool>> shapes;
    std::string conclusion;
    bool lemma44;
  };
  const std::vector<bool> t1{false, false, false}, tstar{false, true, false}, p1{false, true}, p2{true, false};
  std::map<std::string, Plan> plans{
      {"Cstar", {{tstar}, "ab*c = cb*a on the entries of u, so G is a subgroup of " + display_name("UNstar"), false}},
      {"Cstarstar",
       {{t1, tstar},
        "abc = cba and ab*c = cb*a on the entries of u; with abc* = c*ba this makes G a subgroup of " +
            display_name("UNstarstar"),
        true}},
      {"Csharp", {{p1, p2}, "ab* = ba* and a*b = b*a on the entries of u, so G is a subgroup of " + display_name("UNsharp"), false}},
      {"Ccirc",
       {{p1, p2, t1},
        "ab* = ba*, a*b = b*a and abc = cba on the entries of u; with abc* = c*ba this makes G a subgroup of " +
            display_name("UNcirc"),
        true}},
      {"Rstar", {{t1}, "abc = cba on the entries of u", false}},
  };
  auto it = plans.find(canon);
  if (it == plans.end()) throw InvalidArgument("qisom: no closure pipeline for sphere " + canon);

  QisomPipeline out;
  out.sphere = canon;
  out.proved = true;
  const auto bases = declared_bases(canon);
  for (const auto& shape : it->second.shapes) {
    QisomStage st;
    auto b = std::find_if(bases.begin(), bases.end(), [&](const DeclaredBasis& x) { return x.stars == shape; });
    if (b == bases.end()) throw Error("qisom: missing declared basis for " + canon);
    st.basis = *b;
    st.relation = describe(shape);
    const int d = b->degree;
    std::vector<int> rows;
    for (int r = 1; r <= d; ++r) rows.push_back(r);
    st.conditions = collect_conditions(expand_coaction(basis_relation(*b, rows), d), canon);
    BracketTerm goal = d == 3 ? BracketTerm::triple(shape[1]) : BracketTerm::pair(shape[0]);
    st.saturation = saturate(st.conditions, goal, budget);
    out.proved = out.proved && st.saturation.global;
    out.stages.push_back(std::move(st));
  }
  out.conclusion = it->second.conclusion;
  out.conditional_on_lemma44 = it->second.lemma44;
  if (out.conditional_on_lemma44) {
    out.notes.push_back(
        "the final inclusion is conditional on the lemma44 axiom schema abc* = c*ba for the entries of u; that schema "
        "is assumed, not derived");
  }
  return out;
}

nlohmann::json to_json(const QisomPipeline& p) {
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& s : p.stages) {
    nlohmann::json conds = nlohmann::json::array();
    for (const auto& c : s.conditions) conds.push_back(to_json(c));
    stages.push_back({{"relation", s.relation},
                      {"basis", {{"monomials", s.basis.description}, {"justification", s.basis.justification}}},
                      {"conditions", conds},
                      {"saturation", to_json(s.saturation)}});
  }
  return {{"sphere", p.sphere},
          {"proved", p.proved},
          {"conclusion", p.conclusion},
          {"conditional_on_lemma44", p.conditional_on_lemma44},
          {"notes", p.notes},
          {"stages", stages}};
}

}  // namespace halfsph
