#pragma once

#include <string_view>

#include "rice/program.hpp"

namespace rice {

// Parse the textual program syntax, e.g.
//   ande(const(rd,1.0),proj(iif(ltValue(a,0.6),0.0,1.0),[a->dist,o->go]))
// Whitespace between tokens is ignored.  Throws ParseError on malformed
// input and WellFormednessError when the text describes an ill-formed
// program.  parse_program(p.to_text()) reproduces p exactly.
Program parse_program(std::string_view text);

}  // namespace rice
