#include "halfsph/trace.hpp"

#include "halfsph/error.hpp"
#include "halfsph/presentations.hpp"

namespace halfsph {

std::string direction_str(Direction d) { return d == Direction::Forward ? "forward" : "backward"; }

namespace {

bool word_occurs(const NCPolynomial& r, const Word& m) { return !r.coefficient(m).is_zero(); }

}  // namespace

ReplayResult replay(const DerivationTrace& trace) {
  ReplayResult res;
  NCPolynomial f = trace.start;
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const TraceStep& s = trace.steps[k];
    auto it = trace.relations.find(s.rule);
    if (it == trace.relations.end()) {
      res.message = "step " + std::to_string(k + 1) + ": relation " + std::to_string(s.rule) + " missing";
      return res;
    }
    const NCPolynomial& r = it->second;
    if (s.left.size() != s.position) {
      res.message = "step " + std::to_string(k + 1) + ": position does not match left factor";
      return res;
    }
    // the targeted word must be left * m * right for a word m of the relation
    if (s.term.size() < s.left.size() + s.right.size()) {
      res.message = "step " + std::to_string(k + 1) + ": term shorter than its context";
      return res;
    }
    Word mid(s.term.begin() + static_cast<std::ptrdiff_t>(s.left.size()),
             s.term.end() - static_cast<std::ptrdiff_t>(s.right.size()));
    if (!std::equal(s.left.begin(), s.left.end(), s.term.begin()) ||
        !std::equal(s.right.rbegin(), s.right.rend(), s.term.rbegin()) || !word_occurs(r, mid)) {
      res.message = "step " + std::to_string(k + 1) + ": relation word does not occur in the targeted term";
      return res;
    }
    bool leading = r.leading().first == mid;
    if (leading != (s.direction == Direction::Forward)) {
      res.message = "step " + std::to_string(k + 1) + ": direction flag inconsistent with the relation";
      return res;
    }
    f -= s.coefficient * (NCPolynomial(s.left) * r * NCPolynomial(s.right));
  }
  res.final_value = f;
  if (!(f == trace.end)) {
    res.message = "replay ends at " + f.str() + ", trace claims " + trace.end.str();
    return res;
  }
  res.ok = true;
  res.message = "ok";
  return res;
}

ReplayResult replay(const DerivationTrace& trace, const Presentation& p) {
  for (const auto& [id, r] : trace.relations) {
    if (id < 0 || static_cast<std::size_t>(id) >= p.relations().size() || !(p.relations()[id] == r)) {
      return {false, "relation " + std::to_string(id) + " differs from the presentation", {}};
    }
  }
  return replay(trace);
}

nlohmann::json to_json(const DerivationTrace& trace) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : trace.steps) {
    steps.push_back({{"step", s.step},
                     {"position", s.position},
                     {"rule", s.rule},
                     {"direction", direction_str(s.direction)},
                     {"term", word_str(s.term)},
                     {"left", word_str(s.left)},
                     {"right", word_str(s.right)},
                     {"coefficient", s.coefficient.str()}});
  }
  nlohmann::json rels = nlohmann::json::object();
  for (const auto& [id, r] : trace.relations) rels[std::to_string(id)] = r.str();
  nlohmann::json j = {{"start", trace.start.str()}, {"end", trace.end.str()}, {"method", trace.method},
                      {"relations", rels},          {"steps", steps}};
  if (!trace.notes.empty()) j["notes"] = trace.notes;
  return j;
}

DerivationTrace trace_from_json(const nlohmann::json& j) {
  DerivationTrace t;
  try {
    t.start = parse_polynomial(j.at("start").get<std::string>());
    t.end = parse_polynomial(j.at("end").get<std::string>());
    t.method = j.value("method", "");
    for (const auto& [k, v] : j.at("relations").items()) t.relations[std::stoi(k)] = parse_polynomial(v.get<std::string>());
    for (const auto& s : j.at("steps")) {
      TraceStep st;
      st.step = s.at("step").get<int>();
      st.position = s.at("position").get<std::size_t>();
      st.rule = s.at("rule").get<int>();
      st.direction = s.at("direction").get<std::string>() == "forward" ? Direction::Forward : Direction::Backward;
      st.term = parse_word(s.at("term").get<std::string>());
      st.left = parse_word(s.at("left").get<std::string>());
      st.right = parse_word(s.at("right").get<std::string>());
      st.coefficient = Scalar::parse(s.at("coefficient").get<std::string>());
      t.steps.push_back(std::move(st));
    }
    if (j.contains("notes")) t.notes = j.at("notes").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed trace JSON: ") + e.what());
  }
  return t;
}

}  // namespace halfsph
