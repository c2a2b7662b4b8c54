#pragma once

// Renders a program as definite-clause text and as structured English.
//
// Clause form: one clause per conditional branch, capitalized argument names
// as variables, conjunction of equality / strict-less / negated-conjunction
// literals.  Branches of a disjunction keep their priority order, and an
// ambiguity warning is attached when two clauses can fire on the same input.

#include <optional>
#include <string>
#include <vector>

#include "rice/program.hpp"

namespace rice {

// One body literal.  `negated` is used only by Kind::neg and holds the
// conjunction being denied (eq/lt literals only — conditions never nest).
struct Literal {
  enum class Kind { eq, lt, neg };
  Kind kind = Kind::eq;
  ArgName arg{"o"};
  double value = 0.0;
  std::vector<Literal> negated;
};

struct Clause {
  std::vector<Literal> body;
};

struct ClauseSet {
  std::vector<ArgName> head;    // valence names, declaration order
  std::vector<Clause> clauses;  // priority order: the first firing clause wins
  std::vector<std::string> warnings;

  // "model(Rd,Dist,Go) ← Rd=1.0 ∧ Dist<0.6 ∧ Go=0.0", one clause per line;
  // ascii swaps ←/∧/¬ for :-/,/\+.  Warnings render as trailing % lines.
  std::string to_text(bool ascii = false) const;
};

// Branch expansion of p over the given valence.
// Throws SignatureError when p uses names outside the valence.
ClauseSet to_clauses(const Program& p, const Valence& valence);

// Mechanical reading of the clause set on one input: the first clause whose
// body is satisfiable under `input` determines `out`; nullopt when no clause
// fires or the firing clause leaves `out` unbound.  This is the independent
// evaluator the fidelity tests compare against the program evaluator.
std::optional<double> clause_output(const ClauseSet& cs, const Binding& input,
                                    const ArgName& out);

// Fixed-template rendering, e.g. "If the rd is 1.0, when the dist is less
// than 0.6 assign go to 0.0, otherwise assign go to 1.0."
std::string to_english(const Program& p, const Valence& valence);

}  // namespace rice
