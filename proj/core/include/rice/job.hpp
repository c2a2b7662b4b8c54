#pragma once

// Synthesis jobs: the file format that carries a valence, a constant pool,
// and positive/negative observables from the prober to the synthesizer.
//
//   jobValence([rd:in, am:in, gr:in, dist:in, go:out]).
//   jobConstant(0.6).
//   jobObservable([rd:1.00, am:0.00, gr:0.00, dist:0.59, go:0.00], true).
//
// Constants print in shortest round-trip form, observable fields always with
// two decimals; serialization order is valence, constants ascending, then
// observables in recorded order, one fact per line.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rice/program.hpp"

namespace rice {

struct Observable {
  Binding fields;    // one value per valence name
  bool positive = true;
};

struct SynthesisJob {
  Valence valence;
  std::vector<double> constants;  // ascending, distinct
  std::vector<Observable> observables;

  Binding in_part(const Observable& row) const;
  Binding out_part(const Observable& row) const;
};

SynthesisJob parse_job(std::string_view text);
std::string serialize_job(const SynthesisJob& job);

// True when p agrees with every observable: positive rows must evaluate to
// exactly the recorded out values (within tolerance) and negative rows must
// not.  A row on which evaluation reports an unbound output counts as not
// produced.
bool satisfies(const Program& p, const SynthesisJob& job);

// Restriction of a job: keeps the observables whose fields match every
// entry of `fixed`, removes the names in `drop` from the valence and the
// kept rows, and recomputes the constant pool from the surviving rows.
// Throws UnsafeSliceError when a dropped name still varies among the kept
// rows (that would lose information) or when the out-mode name is dropped;
// SignatureError when `fixed` or `drop` mention unknown names.
SynthesisJob slice(const SynthesisJob& job, const std::map<ArgName, double>& fixed,
                   const std::set<ArgName>& drop);

}  // namespace rice
