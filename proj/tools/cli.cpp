#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "halfsph/dsl.hpp"
#include "halfsph/error.hpp"
#include "halfsph/lattice.hpp"
#include "halfsph/models.hpp"
#include "halfsph/qisom.hpp"
#include "halfsph/rewrite.hpp"

#ifndef HALFSPH_VERSION
#define HALFSPH_VERSION "unknown"
#endif

namespace halfsph::cli {

namespace {

using json = nlohmann::json;

struct Common {
  std::uint64_t seed = 1;
  double tol = 1e-9;
  bool md = false;
  bool verify = false;
  std::size_t expansions = Budget{}.expansions;
  int depth = Budget{}.max_depth;

  Budget budget() const {
    Budget b;
    b.expansions = expansions;
    b.max_depth = depth;
    return b;
  }
  Tolerances tolerances() const {
    Tolerances t;
    t.strict = tol;
    return t;
  }
};

struct Source {
  std::string preset;
  std::string file;
  int n = 2;
};

struct Report {
  std::string status = "error";
  json payload = json::object();
  std::vector<std::string> digest;
};

int exit_for(const std::string& status) {
  if (status == "proved" || status == "certified" || status == "indirect") return Ok;
  if (status == "refuted") return Refuted;
  if (status == "inconclusive") return Inconclusive;
  return Failure;
}

void add_common(CLI::App* app, Common& c, bool with_budget) {
  app->add_option("--seed", c.seed, "RNG seed (default: HALFSPH_SEED or 1)");
  app->add_option("--tol", c.tol, "strict residual tolerance (default: HALFSPH_TOL or 1e-9)");
  app->add_flag("--md", c.md, "emit a markdown digest instead of JSON");
  app->add_flag("--verify", c.verify, "replay every certificate with the independent verifier");
  if (with_budget) {
    app->add_option("--expansions", c.expansions, "search budget per target");
    app->add_option("--depth", c.depth, "maximum derivation depth");
  }
}

void add_source(CLI::App* app, Source& s) {
  auto* preset = app->add_option("--preset", s.preset, "sphere or group preset (C, Csharp, UN, real(Cstar), ...)");
  auto* file = app->add_option("--file", s.file, "presentation file in the DSL");
  preset->excludes(file);
  app->add_option("--N", s.n, "number of coordinates")->check(CLI::PositiveNumber);
}

// Flags win over the environment, which wins over defaults.
void apply_environment(Common& c, const CLI::App& sub) {
  if (sub.count("--seed") == 0) {
    if (const char* v = std::getenv("HALFSPH_SEED")) {
      try {
        c.seed = std::stoull(v);
      } catch (const std::exception&) {
        throw InvalidArgument(std::string("HALFSPH_SEED is not an integer: '") + v + "'");
      }
    }
  }
  if (sub.count("--tol") == 0) {
    if (const char* v = std::getenv("HALFSPH_TOL")) {
      try {
        c.tol = std::stod(v);
      } catch (const std::exception&) {
        throw InvalidArgument(std::string("HALFSPH_TOL is not a number: '") + v + "'");
      }
    }
  }
  if (!(c.tol > 0)) throw InvalidArgument("tolerance must be positive");
}

Presentation load_source(const Source& s) {
  if (!s.file.empty()) return load_presentation(s.file);
  if (s.preset.empty()) throw InvalidArgument("need --preset or --file");
  std::string name = s.preset;
  bool real = false;
  if (name.rfind("real(", 0) == 0 && name.back() == ')') {
    real = true;
    name = name.substr(5, name.size() - 6);
  }
  try {
    Presentation p = make_sphere(canonical_sphere(name), s.n);
    return real ? real_version(p) : p;
  } catch (const InvalidArgument&) {
    if (real) throw;
  }
  return make_group(canonical_group(name), s.n);
}

bool declares_coordinates(const Presentation& p, Family& f) {
  if (p.generators().declares(Family::Z)) {
    f = Family::Z;
    return true;
  }
  if (p.generators().declares(Family::U)) {
    f = Family::U;
    return true;
  }
  return false;
}

// Bare one-letter names other than `i` are schema variables over the coordinates.
std::vector<std::string> free_variables(const std::string& text, const Presentation& p) {
  std::vector<std::string> vars;
  std::size_t k = 0;
  while (k < text.size()) {
    if (std::isalpha(static_cast<unsigned char>(text[k]))) {
      std::size_t e = k;
      while (e < text.size() && (std::isalnum(static_cast<unsigned char>(text[e])) || text[e] == '_')) ++e;
      std::string name = text.substr(k, e - k);
      bool circle = name == "c" && p.generators().declares(Family::C);
      if (name.size() == 1 && name != "i" && !circle &&
          std::find(vars.begin(), vars.end(), name) == vars.end()) {
        vars.push_back(name);
      }
      k = e;
    } else {
      ++k;
    }
  }
  return vars;
}

std::vector<NCPolynomial> expand_target(const std::string& text, const Presentation& p) {
  auto vars = free_variables(text, p);
  if (vars.empty()) return {parse_relation(text)};
  Family f;
  if (!declares_coordinates(p, f)) throw InvalidArgument("schema variables need z or u generators");
  std::vector<Letter> range;
  for (const auto& l : p.generators().letters())
    if (l.family == f) range.push_back(l);
  std::vector<NCPolynomial> out;
  std::set<std::string> seen;
  std::vector<std::size_t> idx(vars.size(), 0);
  while (true) {
    Bindings b;
    for (std::size_t k = 0; k < vars.size(); ++k) b[vars[k]] = range[idx[k]];
    NCPolynomial r = parse_relation(text, b);
    if (!r.is_zero() && seen.insert(r.str()).second) out.push_back(r);
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == range.size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return out;
}

std::vector<NCPolynomial> expand_targets(const std::vector<std::string>& texts, const Presentation& p) {
  std::vector<NCPolynomial> out;
  for (const auto& t : texts) {
    auto part = expand_target(t, p);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

json replay_json(const ReplayResult& r) { return {{"ok", r.ok}, {"message", r.message}}; }

json implication_json(const NCPolynomial& target, const ImplicationResult& r, const Presentation& p, bool verify,
                      bool& replay_failed) {
  json j = {{"target", target.str()},
            {"verdict", verdict_str(r.verdict)},
            {"expansions", r.expansions}};
  if (r.proved()) {
    j["steps"] = r.trace.steps.size();
    j["method"] = r.trace.method;
    j["trace"] = to_json(r.trace);
    if (verify) {
      // replay from the serialized form, as an outside checker would
      ReplayResult rr = replay(trace_from_json(j["trace"]), p);
      j["replay"] = replay_json(rr);
      replay_failed = replay_failed || !rr.ok;
    }
  }
  return j;
}

json counterexample_json(const Counterexample& c, const std::string& model, const Reverification& rv) {
  return {{"model", model},
          {"target", c.target},
          {"target_index", c.target_index},
          {"presentation_residual", c.presentation_residual},
          {"target_residual", c.target_residual},
          {"trial", c.trial},
          {"point", to_json(c.point)},
          {"reverified",
           {{"ok", rv.ok},
            {"presentation_residual", rv.presentation_residual},
            {"target_residual", rv.target_residual}}}};
}

struct Found {
  Counterexample counterexample;
  std::string model;
  Reverification reverified;
  std::size_t trials = 0;
};

std::optional<Found> search(const Presentation& p, const std::vector<NCPolynomial>& targets,
                            const std::string& sampler, std::size_t trials, const Common& c,
                            std::vector<std::string>& skipped) {
  std::vector<std::string> models = sampler == "auto" ? witness_candidates() : std::vector<std::string>{sampler};
  const Tolerances tol = c.tolerances();
  std::size_t used = 0;
  for (const auto& m : models) {
    RefuteResult r;
    try {
      r = refute_implication(p, targets, m, trials, c.seed, tol);
    } catch (const InvalidArgument& e) {
      if (sampler != "auto") throw;
      skipped.push_back(m + ": " + e.what());
      continue;
    }
    used += r.trials;
    if (!r.found()) continue;
    Found f{*r.counterexample, m, {}, used};
    f.reverified = reverify(to_json(r.counterexample->point), p, targets[r.counterexample->target_index], tol);
    if (f.reverified.ok) return f;
  }
  return std::nullopt;
}

// ---- verbs ----

Report cmd_check(const Source& s, const std::vector<std::string>& texts, const std::string& sampler,
                 std::size_t trials, const Common& c) {
  Presentation p = load_source(s);
  auto targets = expand_targets(texts, p);
  RuleSet rules(p);
  Report rep;
  json items = json::array();
  std::vector<NCPolynomial> open;
  bool replay_failed = false;
  std::size_t max_steps = 0;
  for (const auto& t : targets) {
    ImplicationResult r = check_implication(p, rules, t, c.budget());
    items.push_back(implication_json(t, r, p, c.verify, replay_failed));
    if (r.proved()) max_steps = std::max(max_steps, r.trace.steps.size());
    else open.push_back(t);
  }
  rep.payload = {{"presentation", p.name()}, {"N", p.n()}, {"targets", texts}, {"instances", items}};
  rep.digest.push_back("presentation " + p.name() + ", " + std::to_string(targets.size()) + " instance(s), " +
                       std::to_string(targets.size() - open.size()) + " proved, longest trace " +
                       std::to_string(max_steps) + " step(s)");
  if (replay_failed) {
    rep.status = "error";
    rep.payload["error"] = "a trace failed to replay";
    return rep;
  }
  if (open.empty()) {
    rep.status = "proved";
    return rep;
  }
  rep.status = "inconclusive";
  if (!sampler.empty()) {
    std::vector<std::string> skipped;
    if (auto f = search(p, open, sampler, trials, c, skipped)) {
      rep.status = "refuted";
      rep.payload["counterexample"] = counterexample_json(f->counterexample, f->model, f->reverified);
      rep.digest.push_back("refuted by " + f->model + ": " + f->counterexample.target + " residual " +
                           std::to_string(f->counterexample.target_residual));
    }
    if (!skipped.empty()) rep.payload["skipped_models"] = skipped;
  }
  return rep;
}

Report cmd_refute(const Source& s, const std::vector<std::string>& texts, const std::string& sampler,
                  std::size_t trials, const Common& c) {
  Presentation p = load_source(s);
  auto targets = expand_targets(texts, p);
  if (targets.empty()) throw InvalidArgument("no nonzero target");
  Report rep;
  std::vector<std::string> skipped;
  auto f = search(p, targets, sampler, trials, c, skipped);
  rep.payload = {{"presentation", p.name()}, {"N", p.n()}, {"targets", texts}, {"sampler", sampler}};
  if (!skipped.empty()) rep.payload["skipped_models"] = skipped;
  if (f) {
    rep.status = "certified";
    rep.payload["trials"] = f->trials;
    rep.payload["counterexample"] = counterexample_json(f->counterexample, f->model, f->reverified);
    std::ostringstream os;
    os << "certified by " << f->model << ": " << f->counterexample.target << " has residual "
       << f->counterexample.target_residual << " while every relation holds within "
       << f->counterexample.presentation_residual;
    rep.digest.push_back(os.str());
  } else {
    rep.status = "inconclusive";
    rep.digest.push_back("no counterexample found");
  }
  return rep;
}

std::size_t replay_diagram(const DiagramReport& r, std::size_t& failures) {
  std::size_t checked = 0;
  for (const auto& inc : r.inclusions) {
    Presentation smaller = node_presentation(r.diagram.node(inc.smaller), r.diagram.n);
    for (const auto& res : inc.detail.per_relation) {
      if (!res.proved()) continue;
      ++checked;
      if (!replay(res.trace, smaller).ok) ++failures;
    }
  }
  return checked;
}

std::string diagram_status(const DiagramReport& r) {
  if (!r.ok()) return "inconclusive";
  for (const auto& p : r.properness)
    if (p.verdict == Properness::Indirect) return "indirect";
  return "proved";
}

DiagramReport run_file(const std::string& path, std::size_t samples, std::size_t trials, bool transitivity,
                       const Common& c) {
  Diagram d = load_diagram(path);
  DiagramOptions o;
  o.budget = c.budget();
  o.samples = samples;
  o.trials = trials;
  o.seed = c.seed;
  o.transitivity = transitivity;
  return run_diagram(d, o);
}

Report diagram_report(const DiagramReport& r, const Common& c) {
  Report rep;
  rep.status = diagram_status(r);
  rep.payload = to_json(r);
  if (c.verify) {
    std::size_t failures = 0;
    std::size_t checked = replay_diagram(r, failures);
    rep.payload["replay"] = {{"traces", checked}, {"failures", failures}};
    if (failures) rep.status = "error";
  }
  rep.digest.push_back(to_markdown(r));
  return rep;
}

Report cmd_gram(int family, int n, std::string sampler, std::size_t samples, double threshold, const Common& c) {
  if (family < 1 || family > 3) throw InvalidArgument("family must be 1, 2 or 3");
  if (sampler.empty()) sampler = family == 1 ? "S_C" : family == 2 ? "pq" : "dotS";
  auto words = monomial_family(family, n);
  GramResult g = gram_rank(words, sampler, n, samples, c.seed, threshold);
  Report rep;
  rep.status = g.rank == int(words.size()) ? "certified" : "inconclusive";
  std::vector<std::string> ws;
  for (const auto& w : words) ws.push_back(word_str(w));
  rep.payload = {{"family", family},      {"N", n},
                 {"sampler", sampler},    {"samples", g.samples},
                 {"threshold", threshold}, {"monomials", ws},
                 {"rank", g.rank},        {"size", words.size()},
                 {"degenerate_sampler", g.degenerate_sampler},
                 {"singular_values", g.singular_values}};
  rep.digest.push_back("family " + std::to_string(family) + " over " + sampler + " at N = " + std::to_string(n) +
                       ": rank " + std::to_string(g.rank) + " of " + std::to_string(words.size()));
  return rep;
}

Report cmd_qisom(const std::string& sphere_name, const std::string& mode, std::string group, int n,
                 std::size_t budget, const Common& c) {
  const std::string sphere = canonical_sphere(sphere_name);
  Report rep;
  if (mode == "closure") {
    QisomPipeline pl = qisom_closure(sphere, budget);
    rep.status = pl.proved ? "proved" : "inconclusive";
    rep.payload = to_json(pl);
    if (c.verify) {
      json replays = json::array();
      for (const auto& st : pl.stages) {
        SaturationReplay r = replay_saturation(saturation_from_json(to_json(st.saturation)));
        replays.push_back({{"relation", st.relation}, {"ok", r.ok}, {"steps", r.steps_checked}, {"message", r.message}});
        if (!r.ok) rep.status = "error";
      }
      rep.payload["replay"] = replays;
    }
    rep.digest.push_back(display_name(sphere) + " closure: " + (pl.proved ? "proved" : "inconclusive"));
    if (!pl.conclusion.empty()) rep.digest.push_back("conclusion: " + pl.conclusion);
    if (pl.conditional_on_lemma44) rep.digest.push_back("conditional on the lemma44 axiom schema");
    for (const auto& st : pl.stages) {
      rep.digest.push_back("- " + st.relation + ": " + std::to_string(st.saturation.classes_proved()) + "/" +
                           std::to_string(st.saturation.class_vanishes.size()) + " classes, " +
                           std::to_string(st.saturation.derived) + " statements");
    }
    return rep;
  }
  if (mode == "coaction") {
    if (group.empty()) {
      for (const auto& [g, s] : isometry_pairs())
        if (s == sphere) group = g;
      if (group.empty()) throw InvalidArgument("no default group for sphere '" + sphere_name + "'; pass --group");
    }
    group = canonical_group(group);
    CoactionVerdict v = verify_coaction_symbolic(sphere, group, n, c.budget());
    rep.status = v.verdict == Verdict::Proved ? "proved" : "inconclusive";
    rep.payload = to_json(v);
    if (c.verify) {
      Presentation gp = make_group(group, n);
      std::size_t checked = 0, failures = 0;
      for (const auto& rel : v.relations)
        for (const auto& co : rel.coefficients)
          if (co.result.proved()) {
            ++checked;
            if (!replay(co.result.trace, gp).ok) ++failures;
          }
      rep.payload["replay"] = {{"traces", checked}, {"failures", failures}};
      if (failures) rep.status = "error";
    }
    rep.digest.push_back(display_name(group) + " acting on " + display_name(sphere) + " at N = " +
                         std::to_string(n) + ": " + verdict_str(v.verdict) + ", " + std::to_string(v.failures) +
                         " failing coefficient(s)");
    return rep;
  }
  throw InvalidArgument("mode must be closure or coaction");
}

Report cmd_sample(const std::string& model_name, const std::string& manifold, int n, int dim,
                  const std::string& check, const Common& c) {
  if (model_name.empty() == manifold.empty()) throw InvalidArgument("need exactly one of --model or --manifold");
  ModelPoint pt = model_name.empty() ? sample(manifold, n, c.seed, dim) : model(model_name, n, c.seed);
  Report rep;
  rep.status = "certified";
  rep.payload = {{"source", model_name.empty() ? manifold : model_name}, {"N", n}, {"point", to_json(pt)}};
  rep.digest.push_back((model_name.empty() ? manifold : model_name) + " point of dimension " +
                       std::to_string(pt.dim));
  if (!check.empty()) {
    Source s{check, "", n};
    Presentation p = load_source(s);
    SampleReport sr = check_relations(p, pt);
    rep.payload["check"] = {{"presentation", p.name()},
                            {"max_residual", sr.max_residual},
                            {"residuals", sr.residuals},
                            {"satisfied", sr.satisfied(c.tol)}};
    if (!sr.satisfied(c.tol)) rep.status = "inconclusive";
    rep.digest.push_back("largest residual against " + p.name() + ": " + std::to_string(sr.max_residual));
  }
  return rep;
}

Report cmd_projective(const Source& s, const std::vector<std::string>& only, const Common& c) {
  Presentation p = load_source(s);
  ProjectiveReport pr = projective_version_check(p, c.budget());
  Report rep;
  rep.payload = to_json(pr);
  bool all = true;
  std::size_t checked = 0, failures = 0;
  for (const auto& it : pr.items) {
    const bool selected = only.empty() || std::find(only.begin(), only.end(), it.name.substr(0, it.name.find(' '))) != only.end();
    if (selected) all = all && it.proved();
    rep.digest.push_back("- " + it.name + ": " + (it.proved() ? "Proved" : "Inconclusive"));
    if (c.verify)
      for (const auto& r : it.results)
        if (r.proved()) {
          ++checked;
          if (!replay(r.trace, p).ok) ++failures;
        }
  }
  rep.status = all ? "proved" : "inconclusive";
  if (c.verify) {
    rep.payload["replay"] = {{"traces", checked}, {"failures", failures}};
    if (failures) rep.status = "error";
  }
  return rep;
}

std::string render_markdown(const std::string& verb, const json& envelope, const Report& rep) {
  std::ostringstream os;
  if (verb == "diagram" || verb == "report") {
    for (const auto& line : rep.digest) os << line;
    os << "\nStatus: " << rep.status << "\n";
    return os.str();
  }
  os << "# halfsph " << verb << "\n\n";
  os << "- status: " << rep.status << "\n";
  os << "- seed: " << envelope["seed"].get<std::uint64_t>() << "\n\n";
  for (const auto& line : rep.digest) os << line << "\n";
  if (envelope.contains("error")) os << "\nerror: " << envelope["error"].get<std::string>() << "\n";
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  CLI::App app{"Verification toolkit for half-liberated spheres and quantum groups", "halfsph"};
  app.require_subcommand(1);
  app.set_version_flag("--version", HALFSPH_VERSION);

  Common common;
  Source source;
  std::vector<std::string> targets;
  std::string sampler;
  std::size_t trials = 200;

  auto* check = app.add_subcommand("check", "derive target relations from a presentation");
  add_source(check, source);
  add_common(check, common, true);
  check->add_option("--target", targets, "relation `lhs = rhs`; bare one-letter names range over the coordinates")
      ->required();
  check->add_option("--sampler", sampler, "model used to refute targets that stay open (or `auto`)");
  check->add_option("--trials", trials, "refutation trials per model");

  auto* refute = app.add_subcommand("refute", "search a matrix model violating target relations");
  add_source(refute, source);
  add_common(refute, common, false);
  refute->add_option("--target", targets, "relation to violate")->required();
  std::string refute_sampler = "auto";
  refute->add_option("--sampler", refute_sampler, "model name, or `auto` for the built-in candidates");
  refute->add_option("--trials", trials, "trials per model");

  std::string diagram_path, out_dir;
  std::size_t samples = 1000, diagram_trials = 500;
  bool no_transitivity = false;
  auto* diagram = app.add_subcommand("diagram", "verify every claim of a diagram file");
  auto* report = app.add_subcommand("report", "verify a diagram and write JSON and markdown reports");
  for (auto* sub : {diagram, report}) {
    sub->add_option("file", diagram_path, "diagram file")->required()->check(CLI::ExistingFile);
    add_common(sub, common, true);
    sub->add_option("--samples", samples, "classical samples per intersection claim");
    sub->add_option("--trials", diagram_trials, "trials per properness witness");
    sub->add_flag("--no-transitivity", no_transitivity, "skip the composed-edge checks");
  }
  report->add_option("--out", out_dir, "output directory")->required();

  int family = 1, n = 2;
  double threshold = Tolerances{}.svd_relative;
  std::size_t gram_samples = 200;
  auto* gram = app.add_subcommand("gram", "numerical rank of a coordinate monomial family");
  add_common(gram, common, false);
  gram->add_option("--family", family, "1: z_a z_b*, 2: z_a z_b z_c, 3: z_a z_b* z_c")->required();
  gram->add_option("--N", n, "number of coordinates")->check(CLI::PositiveNumber);
  gram->add_option("--sampler", sampler, "model (default by family: S_C, pq, dotS)");
  gram->add_option("--samples", gram_samples, "number of sampled points");
  gram->add_option("--threshold", threshold, "relative singular value threshold");

  std::string sphere, mode = "closure", group;
  std::size_t sat_budget = 10000;
  auto* qisom = app.add_subcommand("qisom", "quantum isometry closure or coaction check");
  add_common(qisom, common, true);
  qisom->add_option("--sphere", sphere, "sphere preset")->required();
  qisom->add_option("--mode", mode, "closure or coaction")->check(CLI::IsMember({"closure", "coaction"}));
  qisom->add_option("--group", group, "group preset for coaction (default: the paired group)");
  qisom->add_option("--N", n, "number of coordinates for coaction")->check(CLI::PositiveNumber);
  qisom->add_option("--budget", sat_budget, "derived statement budget for saturation");

  std::string model_name, manifold, check_preset;
  int dim = 2;
  auto* samp = app.add_subcommand("sample", "draw a seeded point from a model or manifold");
  add_common(samp, common, false);
  samp->add_option("--model", model_name, "model name");
  samp->add_option("--manifold", manifold, "manifold name");
  samp->add_option("--N", n, "number of coordinates")->check(CLI::PositiveNumber);
  samp->add_option("--dim", dim, "matrix dimension where the sampler takes one")->check(CLI::PositiveNumber);
  samp->add_option("--check", check_preset, "preset whose relations the point is checked against");

  std::vector<std::string> items;
  auto* proj = app.add_subcommand("projective", "derivations on p_ij = z_i z_j*");
  add_source(proj, source);
  add_common(proj, common, true);
  proj->add_option("--item", items, "restrict the status to these items (commutation, symmetric, ...)");

  // CLI11 consumes its argument vector from the back
  std::vector<std::string> rev(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rev.begin(), rev.end());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return Ok;
  } catch (const CLI::CallForVersion& e) {
    out << HALFSPH_VERSION << "\n";
    return Ok;
  } catch (const CLI::ParseError& e) {
    json j = {{"schema", 1}, {"tool", "halfsph"}, {"version", HALFSPH_VERSION}, {"status", "error"},
              {"error", e.what()}};
    out << j.dump(2) << "\n";
    err << "halfsph: " << e.what() << "\n";
    return Failure;
  }

  const CLI::App& sub = *app.get_subcommands().front();
  const std::string verb = sub.get_name();
  json envelope = {{"schema", 1}, {"tool", "halfsph"}, {"version", HALFSPH_VERSION}, {"verb", verb}};
  envelope["command"] = std::vector<std::string>(args.begin() + (args.empty() ? 0 : 1), args.end());
  Report rep;
  try {
    apply_environment(common, sub);
    if (verb == "check") {
      rep = cmd_check(source, targets, sampler, trials, common);
    } else if (verb == "refute") {
      rep = cmd_refute(source, targets, refute_sampler, trials, common);
    } else if (verb == "diagram") {
      rep = diagram_report(run_file(diagram_path, samples, diagram_trials, !no_transitivity, common), common);
    } else if (verb == "report") {
      DiagramReport r = run_file(diagram_path, samples, diagram_trials, !no_transitivity, common);
      rep = diagram_report(r, common);
      std::filesystem::create_directories(out_dir);
      const std::string base = (std::filesystem::path(out_dir) / (r.diagram.name.empty() ? "diagram" : r.diagram.name)).string();
      json doc = envelope;
      doc["seed"] = common.seed;
      doc["status"] = rep.status;
      doc["payload"] = rep.payload;
      std::ofstream(base + ".json") << doc.dump(2) << "\n";
      std::ofstream(base + ".md") << to_markdown(r) << "\nStatus: " << rep.status << "\n";
      rep.payload["files"] = {base + ".json", base + ".md"};
    } else if (verb == "gram") {
      rep = cmd_gram(family, n, sampler, gram_samples, threshold, common);
    } else if (verb == "qisom") {
      rep = cmd_qisom(sphere, mode, group, n, sat_budget, common);
    } else if (verb == "sample") {
      rep = cmd_sample(model_name, manifold, n, dim, check_preset, common);
    } else if (verb == "projective") {
      rep = cmd_projective(source, items, common);
    }
  } catch (const Error& e) {
    rep.status = "error";
    envelope["error"] = e.what();
    err << "halfsph: " << e.what() << "\n";
  } catch (const std::exception& e) {
    rep.status = "error";
    envelope["error"] = std::string("internal: ") + e.what();
    err << "halfsph: " << e.what() << "\n";
  }

  envelope["seed"] = common.seed;
  envelope["tolerance"] = common.tol;
  envelope["status"] = rep.status;
  envelope["payload"] = rep.payload;
  envelope["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (common.md) out << render_markdown(verb, envelope, rep);
  else out << envelope.dump(2) << "\n";
  return exit_for(rep.status);
}

}  // namespace halfsph::cli
