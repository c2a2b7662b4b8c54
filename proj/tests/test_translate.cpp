// Clause and English rendering, and the mechanical clause reader used to
// certify that renderings stay faithful to the evaluator.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "doctest.h"
#include "genjob.hpp"
#include "helpers.hpp"
#include "rice/errors.hpp"
#include "rice/eval.hpp"
#include "rice/parse.hpp"
#include "rice/translate.hpp"

using namespace rice;
using namespace rice::testing;

namespace {

Valence amber_slice_valence() {
  return Valence({{ArgName("am"), Mode::in}, {ArgName("dist"), Mode::in},
                  {ArgName("go"), Mode::out}});
}

Valence out_only_valence() { return Valence({{ArgName("go"), Mode::out}}); }

Program amber_equality_program() {
  return parse_program(
      "proj(iif(ande(const(am,1.0),ore(const(dist,0.1),const(dist,0.8))),0.0,1.0),[o->go])");
}

// evaluate() restricted to one out name, as an optional.
std::optional<double> out_value(const Program& p, const Valence& v, const Binding& input,
                                const ArgName& out) {
  try {
    std::optional<Binding> result = evaluate(p, input, v);
    if (!result) return std::nullopt;
    return result->at(out);
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Compares the clause reading against the evaluator on a full input grid.
void check_fidelity(const Program& p, const Valence& v, const std::vector<double>& grid) {
  ClauseSet cs = to_clauses(p, v);
  ArgName out = v.out_names().at(0);
  std::vector<ArgName> ins = v.in_names();
  std::vector<std::size_t> index(ins.size(), 0);
  bool done = false;
  while (!done) {
    Binding input;
    for (std::size_t i = 0; i < ins.size(); ++i) input.set(ins[i], grid[index[i]]);
    std::optional<double> direct = out_value(p, v, input, out);
    std::optional<double> read = clause_output(cs, input, out);
    CHECK(direct.has_value() == read.has_value());
    if (direct && read) CHECK(std::fabs(*direct - *read) <= 1e-9);

    std::size_t pos = 0;
    while (pos < index.size() && ++index[pos] == grid.size()) index[pos++] = 0;
    done = pos == index.size();
  }
}

}  // namespace

TEST_CASE("the red explanation renders to the published clause forms") {
  ClauseSet cs = to_clauses(reference_red_program(), red_slice_valence());
  CHECK(cs.to_text(false) ==
        "model(Rd,Dist,Go) ← Rd=1.0 ∧ Dist<0.6 ∧ Go=0.0\n"
        "model(Rd,Dist,Go) ← Rd=1.0 ∧ ¬(Dist<0.6) ∧ Go=1.0\n");
  CHECK(cs.to_text(true) ==
        "model(Rd,Dist,Go) :- Rd=1.0, Dist<0.6, Go=0.0\n"
        "model(Rd,Dist,Go) :- Rd=1.0, \\+(Dist<0.6), Go=1.0\n");
  CHECK(cs.warnings.empty());
  CHECK(to_english(reference_red_program(), red_slice_valence()) ==
        "If the rd is 1.0, when the dist is less than 0.6 assign go to 0.0, "
        "otherwise assign go to 1.0.");
}

TEST_CASE("disjunctive conditions expand to one clause per branch with guards") {
  ClauseSet cs = to_clauses(amber_equality_program(), amber_slice_valence());
  CHECK(cs.to_text(true) ==
        "model(Am,Dist,Go) :- Am=1.0, Dist=0.1, Go=0.0\n"
        "model(Am,Dist,Go) :- Am=1.0, Dist=0.8, \\+(Am=1.0, Dist=0.1), Go=0.0\n"
        "model(Am,Dist,Go) :- \\+(Am=1.0, Dist=0.1), \\+(Am=1.0, Dist=0.8), Go=1.0\n");
  CHECK(cs.warnings.empty());
  CHECK(to_english(amber_equality_program(), amber_slice_valence()) ==
        "when the am is 1.0 and either the dist is 0.1 or the dist is 0.8 "
        "assign go to 0.0, otherwise assign go to 1.0.");
}

TEST_CASE("a bare fact renders without a trailing period") {
  Program straw = parse_program("const(go,1.0)");
  ClauseSet cs = to_clauses(straw, out_only_valence());
  CHECK(cs.to_text(false) == "model(Go) ← Go=1.0\n");
  CHECK(to_english(straw, out_only_valence()) == "the go is 1.0");
}

TEST_CASE("conjunction inside a condition reads as a plain conjunction") {
  Program trained =
      parse_program("proj(iif(ande(const(rd,1.0),ltValue(dist,0.62)),0.0,1.0),[o->go])");
  CHECK(to_english(trained, red_slice_valence()) ==
        "when the rd is 1.0 and the dist is less than 0.62 assign go to 0.0, "
        "otherwise assign go to 1.0.");
  ClauseSet cs = to_clauses(trained, red_slice_valence());
  CHECK(cs.to_text(true) ==
        "model(Rd,Dist,Go) :- Rd=1.0, Dist<0.62, Go=0.0\n"
        "model(Rd,Dist,Go) :- \\+(Rd=1.0, Dist<0.62), Go=1.0\n");
}

TEST_CASE("overlapping disjuncts earn a priority warning") {
  Program overlap = parse_program(
      "ore(ande(const(rd,1.0),const(go,0.0)),ande(const(rd,1.0),const(go,1.0)))");
  ClauseSet cs = to_clauses(overlap, red_slice_valence());
  REQUIRE(cs.warnings.size() == 1);
  CHECK(cs.warnings[0] ==
        "ambiguous disjunction: clauses 1 and 2 both cover dist=0.00, rd=1.00; "
        "the earlier clause takes priority");
  CHECK(cs.to_text(true) ==
        "model(Rd,Dist,Go) :- Rd=1.0, Go=0.0\n"
        "model(Rd,Dist,Go) :- Rd=1.0, Go=1.0\n"
        "% warning: ambiguous disjunction: clauses 1 and 2 both cover dist=0.00, rd=1.00; "
        "the earlier clause takes priority\n");

  // The reader honors the priority the warning describes.
  Binding input{{ArgName("rd"), 1.0}, {ArgName("dist"), 0.3}};
  std::optional<double> read = clause_output(cs, input, ArgName("go"));
  REQUIRE(read.has_value());
  CHECK(*read == doctest::Approx(0.0));
}

TEST_CASE("clause heads use the valence order and literals stay inside it") {
  ClauseSet cs = to_clauses(amber_equality_program(), amber_slice_valence());
  REQUIRE(cs.head.size() == 3);
  CHECK(cs.head[0] == ArgName("am"));
  CHECK(cs.head[1] == ArgName("dist"));
  CHECK(cs.head[2] == ArgName("go"));
  for (const Clause& clause : cs.clauses) {
    for (const Literal& lit : clause.body) {
      if (lit.kind == Literal::Kind::neg) {
        for (const Literal& inner : lit.negated) CHECK(amber_slice_valence().has(inner.arg));
      } else {
        CHECK(amber_slice_valence().has(lit.arg));
      }
    }
  }
  // The reserved iif name was renamed away and must not surface anywhere.
  CHECK(cs.to_text(false).find("O=") == std::string::npos);
  CHECK(cs.to_text(false).find("(O") == std::string::npos);
}

TEST_CASE("names outside the valence are rejected") {
  CHECK_THROWS_AS(to_clauses(reference_red_program(), out_only_valence()), SignatureError);
  CHECK_THROWS_AS(to_english(reference_red_program(), out_only_valence()), SignatureError);
}

TEST_CASE("clause readings agree with the evaluator across the input grid") {
  std::vector<double> fine;
  for (int i = 0; i <= 100; ++i) fine.push_back(i / 100.0);

  check_fidelity(reference_red_program(), red_slice_valence(), fine);
  check_fidelity(amber_equality_program(), amber_slice_valence(), fine);
  check_fidelity(parse_program("proj(iif(ande(const(rd,1.0),ltValue(dist,0.62)),0.0,1.0),[o->go])"),
                 red_slice_valence(), fine);
  check_fidelity(parse_program("const(go,1.0)"), out_only_valence(), fine);
  check_fidelity(
      parse_program("ore(ande(const(rd,1.0),const(go,0.0)),ande(const(rd,1.0),const(go,1.0)))"),
      red_slice_valence(), fine);
  // Green light: always-go over a two-input slice.
  check_fidelity(parse_program("ande(const(gr,1.0),const(go,1.0))"),
                 Valence({{ArgName("gr"), Mode::in}, {ArgName("dist"), Mode::in},
                          {ArgName("go"), Mode::out}}),
                 fine);
}

TEST_CASE("clause readings agree with the evaluator on generated programs") {
  std::vector<double> coarse{0.0,  0.03, 0.1, 0.25, 0.28, 0.4,  0.5, 0.53,
                             0.6,  0.63, 0.7, 0.75, 0.78, 0.8,  0.83, 0.9,
                             0.93, 1.0,  -0.07, 1.25, 0.33, 0.47};
  int covered = 0;
  for (unsigned seed = 301; covered < 30 && seed < 400; ++seed) {
    GeneratedJob g = random_job(seed);
    check_fidelity(g.target, g.job.valence, coarse);
    ++covered;
  }
  CHECK(covered == 30);
}
