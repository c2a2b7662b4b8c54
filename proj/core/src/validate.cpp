#include "rice/validate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "rice/dataset.hpp"
#include "rice/decimal.hpp"
#include "rice/errors.hpp"
#include "rice/eval.hpp"

namespace rice {

namespace {

constexpr double kTol = 1e-9;

struct LightName {
  const char* name;
  double FeatureVector::* field;
};

constexpr LightName kLights[] = {
    {"rd", &FeatureVector::rd},
    {"am", &FeatureVector::am},
    {"gr", &FeatureVector::gr},
};

std::string describe(const FeatureVector& f) {
  std::ostringstream os;
  os << "rd=" << format_field(f.rd) << ", am=" << format_field(f.am)
     << ", gr=" << format_field(f.gr) << ", dist=" << format_constant(f.dist);
  return os.str();
}

}  // namespace

std::string AgreementReport::to_text() const {
  std::ostringstream os;
  os << "samples: " << samples << "\n";
  os << "disagreements: " << disagreements << "\n";
  for (const Disagreement& d : examples) {
    os << "  " << describe(d.input) << "  program=" << format_constant(d.program_go)
       << " oracle=" << format_constant(d.oracle_go) << "\n";
  }
  os << "disagreement_rate=" << format_constant(rate) << "\n";
  return os.str();
}

AgreementReport agreement(const Program& p, Oracle& oracle, int samples,
                          std::uint64_t seed, const Binding& region) {
  if (samples < 1) throw SignatureError("agreement requires at least one sample");

  const std::vector<ArgName>& args = args_of(p);
  auto mentions = [&](const char* name) {
    return std::find(args.begin(), args.end(), ArgName(name)) != args.end();
  };
  if (!mentions("go"))
    throw SignatureError("program does not mention the output name go");

  // The program is evaluated over exactly the feature names it mentions.
  std::vector<ValenceEntry> entries;
  for (const LightName& l : kLights)
    if (mentions(l.name)) entries.push_back({ArgName(l.name), Mode::in});
  if (mentions("dist")) entries.push_back({ArgName("dist"), Mode::in});
  entries.push_back({ArgName("go"), Mode::out});
  Valence valence(entries);

  // Every light is either mentioned by the program or pinned by the region.
  for (const LightName& l : kLights) {
    if (!mentions(l.name) && !region.has(ArgName(l.name)))
      throw SignatureError(std::string("region does not fix unmentioned light ") +
                           l.name);
  }

  // Regular light states consistent with the region's pinned lights.
  std::vector<FeatureVector> states;
  for (int hot = 0; hot < 3; ++hot) {
    FeatureVector f{};
    f.*(kLights[hot].field) = 1.0;
    bool ok = true;
    for (const LightName& l : kLights) {
      const double* pinned = region.find(ArgName(l.name));
      if (pinned && std::abs(*pinned - f.*(l.field)) > kTol) ok = false;
    }
    if (ok) states.push_back(f);
  }
  if (states.empty())
    throw SignatureError("region admits no regular light state");

  const double* pinned_dist = region.find(ArgName("dist"));

  AgreementReport report;
  report.samples = samples;

  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples; ++i) {
    std::size_t which = 0;
    if (states.size() > 1) {
      which = static_cast<std::size_t>(uniform_unit(rng()) *
                                       static_cast<double>(states.size()));
      which = std::min(which, states.size() - 1);
    }
    FeatureVector f = states[which];
    f.dist = pinned_dist ? *pinned_dist : uniform_unit(rng());

    Binding input;
    for (const ValenceEntry& e : valence.entries()) {
      if (e.mode != Mode::in) continue;
      if (e.name == ArgName("dist"))
        input.set(e.name, f.dist);
      else
        for (const LightName& l : kLights)
          if (e.name == ArgName(l.name)) input.set(e.name, f.*(l.field));
    }

    std::optional<Binding> out;
    try {
      out = evaluate(p, input, valence);
    } catch (const UnboundOutputError&) {
      out = std::nullopt;
    }
    if (!out)
      throw IncompleteExplanationError(
          "program produces no go value for input " + describe(f));
    double program_go = out->at(ArgName("go"));
    double oracle_go = std::rint(oracle.predict(f));

    if (std::abs(program_go - oracle_go) > kTol) {
      ++report.disagreements;
      if (report.examples.size() < 20)
        report.examples.push_back({f, program_go, oracle_go});
    }
  }

  report.rate = static_cast<double>(report.disagreements) /
                static_cast<double>(report.samples);
  return report;
}

}  // namespace rice
