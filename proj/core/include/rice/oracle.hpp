#pragma once

// Decision oracles over the traffic-light feature space.
//
// The feature vector is (rd, am, gr, dist): three light indicators plus a
// normalized distance.  An oracle maps it to a scalar in [0,1] that callers
// round to an action: 0 = stop, 1 = go.

#include <memory>
#include <string>

#include "rice/program.hpp"

namespace rice {

struct FeatureVector {
  double rd = 0.0;
  double am = 0.0;
  double gr = 0.0;
  double dist = 0.0;
};

// The ground-truth stop/go rule.  Requires exactly one light on; throws
// IrregularStateError otherwise.  Red: stop below 0.6.  Amber: stop on the
// closed interval [0.1, 0.8].  Green: always go.
double rule_label(const FeatureVector& f);

class Oracle {
 public:
  virtual ~Oracle() = default;
  virtual double predict(const FeatureVector& f) = 0;
};

class RuleOracle final : public Oracle {
 public:
  double predict(const FeatureVector& f) override { return rule_label(f); }
};

// Adapts a relational program with out-name `go` to the oracle interface;
// the program's in-mode names are filled from the matching feature
// components.  Useful for agreement self-tests.
class ProgramOracle final : public Oracle {
 public:
  ProgramOracle(Program program, Valence valence);
  double predict(const FeatureVector& f) override;

 private:
  Program program_;
  Valence valence_;
};

// Speaks the line protocol to a child process: each request is
// "rd am gr dist\n", each response one decimal in [0,1] followed by a
// newline; "QUIT\n" ends the session.  Any spawn failure, malformed or
// out-of-range reply, closed pipe, or timeout raises OracleIoError.
class ExternalProcessOracle final : public Oracle {
 public:
  explicit ExternalProcessOracle(const std::string& command, double timeout_seconds = 10.0);
  ~ExternalProcessOracle() override;
  ExternalProcessOracle(const ExternalProcessOracle&) = delete;
  ExternalProcessOracle& operator=(const ExternalProcessOracle&) = delete;

  double predict(const FeatureVector& f) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace rice
