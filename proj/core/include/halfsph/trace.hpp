#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "halfsph/ncpoly.hpp"

namespace halfsph {

class Presentation;

enum class Direction { Forward, Backward };

/// One step f -> f - coefficient * left * relation[rule] * right. `term` is the word
/// that the step targets; it equals left * m * right for some word m of the relation.
struct TraceStep {
  int step = 0;
  std::size_t position = 0;
  int rule = 0;
  Direction direction = Direction::Forward;
  Word term;
  Word left;
  Word right;
  Scalar coefficient;
};

struct DerivationTrace {
  NCPolynomial start;
  NCPolynomial end;
  std::vector<TraceStep> steps;
  /// Relation texts for every rule id referenced by a step.
  std::map<int, NCPolynomial> relations;
  std::string method;
  std::vector<std::string> notes;
};

struct ReplayResult {
  bool ok = false;
  std::string message;
  NCPolynomial final_value;
};

/// Independent verifier: walks the steps with plain polynomial arithmetic, using the
/// relation texts embedded in the trace.
ReplayResult replay(const DerivationTrace& trace);
/// Same, additionally checking each embedded relation against the presentation.
ReplayResult replay(const DerivationTrace& trace, const Presentation& p);

nlohmann::json to_json(const DerivationTrace& trace);
DerivationTrace trace_from_json(const nlohmann::json& j);

std::string direction_str(Direction d);

}  // namespace halfsph
