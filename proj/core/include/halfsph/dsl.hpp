#pragma once

#include <string>

#include "halfsph/error.hpp"
#include "halfsph/presentations.hpp"

namespace halfsph {

/// Syntax error in a presentation file; what() starts with `line:column:`.
class ParseError : public InvalidArgument {
 public:
  ParseError(int line, int column, const std::string& msg);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses
///
///     presentation Csharp {
///       generators z 1..2;
///       unit sphere;
///       relation forall a,b in z: a b* = b a*;
///     }
///
/// `generators F 1..N` declares family F (z, u, c, x, y). `relation [forall v,... in F:] lhs = rhs;`
/// expands over every tuple of unstarred F letters. `unit sphere;` adds the two unit
/// relations on z, `unit biunitary;` the 4N^2 contractions on u. `#` and `//` start comments.
Presentation parse_presentation(const std::string& text);
Presentation load_presentation(const std::string& path);

/// Text that parses back to a structurally equal presentation.
std::string render_presentation(const Presentation& p);

}  // namespace halfsph
