// Acceptance gate: one pass/fail line per shipped claim, exit 1 on any miss.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "brute.hpp"
#include "genjob.hpp"
#include "helpers.hpp"
#include "rice/dataset.hpp"
#include "rice/errors.hpp"
#include "rice/eval.hpp"
#include "rice/job.hpp"
#include "rice/mlp.hpp"
#include "rice/oracle.hpp"
#include "rice/parse.hpp"
#include "rice/probe.hpp"
#include "rice/synth.hpp"
#include "rice/translate.hpp"
#include "rice/validate.hpp"

using namespace rice;
using namespace rice::testing;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s — %s\n", criterion, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

void guarded(int criterion, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(criterion, false, std::string("unexpected error: ") + e.what());
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, pattern, a, b, c);
  return buffer;
}

SynthesisJob golden_job() {
  return parse_job(read_file(std::string(RICE_GOLDEN_DIR) + "/rule_steps100.job"));
}

// Shared across criteria: the strongest model from the training sweep.
std::optional<MlpModel> g_best_model;
double g_best_rule_accuracy = 0.0;

void criterion_1_training_sweep() {
  int accurate = 0;
  int strong = 0;
  double worst_seconds = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto start = std::chrono::steady_clock::now();
    Dataset d = generate_dataset(50000, 0.02, seed);
    TrainOptions opt;
    opt.epochs = 10;
    opt.seed = seed;
    TrainResult r = train(d, opt);
    double elapsed = seconds_since(start);
    worst_seconds = std::max(worst_seconds, elapsed);
    if (r.test_accuracy >= 0.96) ++accurate;
    if (r.rule_accuracy >= 0.99) ++strong;
    if (r.rule_accuracy > g_best_rule_accuracy) {
      g_best_rule_accuracy = r.rule_accuracy;
      g_best_model = r.model;
    }
  }
  bool ok = accurate >= 8 && strong >= 1 && worst_seconds < 120.0;
  report(1, ok,
         fmt("%.0f/10 seeds reach 0.96 held-out accuracy, %.0f reach 0.99 against the clean "
             "rule, slowest run %.1fs",
             accurate, strong, worst_seconds));
}

void criterion_2_probe_golden() {
  RuleOracle rule;
  SynthesisJob job = probe(rule, 100, probe_states(StateSet::regular));
  std::string golden = read_file(std::string(RICE_GOLDEN_DIR) + "/rule_steps100.job");
  bool bytes_equal = serialize_job(job) == golden;
  bool ok = job.observables.size() == 12 && bytes_equal;
  report(2, ok,
         fmt("rule probe at 100 steps gives %.0f observables; ",
             static_cast<double>(job.observables.size())) +
             (bytes_equal ? "bytes match the independently derived golden job"
                          : "BYTES DIFFER from the golden job"));
}

// The dist values of rows whose go output flips between adjacent rows,
// i.e. everything except the sweep endpoints 0.0 and 1.0.
std::vector<double> interior_dists(const SynthesisJob& job) {
  std::vector<double> out;
  for (const Observable& row : job.observables) {
    double d = row.fields.at(ArgName("dist"));
    if (d != 0.0 && d != 1.0) out.push_back(d);
  }
  return out;
}

void criterion_3_boundary_recovery() {
  if (!g_best_model) {
    report(3, false, "no trained model available from the training sweep");
    return;
  }
  MlpOracle oracle(*g_best_model);
  SynthesisJob job = probe(oracle, 100, probe_states(StateSet::regular));

  SynthesisJob red = slice(job, {{ArgName("rd"), 1.0}}, {ArgName("am"), ArgName("gr")});
  SynthesisJob amber = slice(job, {{ArgName("am"), 1.0}}, {ArgName("rd"), ArgName("gr")});

  std::vector<double> red_pair = interior_dists(red);
  std::vector<double> amber_band = interior_dists(amber);

  bool red_ok = red_pair.size() == 2 && std::fabs(red_pair[0] - 0.59) <= 0.03 &&
                std::fabs(red_pair[1] - 0.60) <= 0.03;
  bool amber_ok = amber_band.size() == 4 && std::fabs(amber_band[0] - 0.08) <= 0.03 &&
                  std::fabs(amber_band[1] - 0.09) <= 0.03 &&
                  std::fabs(amber_band[2] - 0.78) <= 0.03 &&
                  std::fabs(amber_band[3] - 0.79) <= 0.03;

  // The constant pool must be exactly the values appearing in the rows.
  std::vector<double> seen;
  for (const Observable& row : job.observables) {
    seen.push_back(row.fields.at(ArgName("dist")));
    seen.push_back(row.fields.at(ArgName("go")));
  }
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  bool pool_ok = job.constants == seen;

  std::string detail =
      red_pair.size() == 2 && amber_band.size() == 4
          ? fmt("red boundary %.2f/%.2f, ", red_pair[0], red_pair[1]) +
                fmt("amber band %.2f/%.2f and ", amber_band[0], amber_band[1]) +
                fmt("%.2f/%.2f", amber_band[2], amber_band[3]) +
                (pool_ok ? "; pool equals the observed values" : "; POOL MISMATCH")
          : "unexpected transition structure in the probe";
  report(3, red_ok && amber_ok && pool_ok, detail);
}

void criterion_4_synthesis_budget() {
  SynthesisJob red = slice(golden_job(), {{ArgName("rd"), 1.0}}, {ArgName("am"), ArgName("gr")});
  SynthConfig cfg;  // max_size 12, 60s
  auto start = std::chrono::steady_clock::now();
  SynthesisResult found = first_explanation(red, cfg);
  double red_seconds = seconds_since(start);
  bool red_ok = found.candidates.size() == 1 && red_seconds < 60.0 &&
                grid_disagreements(found.candidates[0].program, red_slice_valence(),
                                   reference_red_program(), red_slice_valence()) == 0;

  start = std::chrono::steady_clock::now();
  SynthesisResult full = first_explanation(golden_job(), cfg);
  double full_seconds = seconds_since(start);
  bool full_ok = full.candidates.empty() && full.exhaustion != Exhaustion::none;

  report(4, red_ok && full_ok,
         fmt("red slice solved in %.1fs matching the reference on all 101 inputs; "
             "full five-name job exhausted in %.1fs without a candidate",
             red_seconds, full_seconds));
}

void criterion_5_engine_vs_reference() {
  int agreements = 0;
  int mismatches = 0;
  for (unsigned seed = 1; seed <= 20; ++seed) {
    GeneratedJob g = random_job(seed);
    SynthConfig cfg;
    cfg.max_size = g.search_cap;
    cfg.time_budget = 30.0;
    SynthesisResult engine = first_explanation(g.job, cfg);
    BruteResult brute = brute_force_first(g.job, g.search_cap);

    bool both_found = !engine.candidates.empty() && brute.first.has_value();
    bool both_missing = engine.candidates.empty() && !brute.first.has_value();
    bool agree =
        both_missing ||
        (both_found && engine.candidates[0].size == brute.first->size &&
         satisfies(engine.candidates[0].program, g.job) && satisfies(brute.first->program, g.job));
    if (agree)
      ++agreements;
    else
      ++mismatches;
  }
  report(5, mismatches == 0,
         fmt("%.0f/20 generated jobs agree between the engine and the exhaustive reference "
             "search on first-candidate size and satisfaction",
             agreements));
}

void criterion_6_agreement_rates() {
  RuleOracle rule;
  AgreementReport exact =
      agreement(reference_red_program(), rule, 10000, 7,
                Binding{{ArgName("am"), 0.0}, {ArgName("gr"), 0.0}});

  double model_rate = -1.0;
  if (g_best_model) {
    MlpOracle oracle(*g_best_model);
    AgreementReport vs_model =
        agreement(reference_red_program(), oracle, 10000, 7,
                  Binding{{ArgName("am"), 0.0}, {ArgName("gr"), 0.0}});
    model_rate = vs_model.rate;
  }

  Program straw = parse_program("const(go,1.0)");
  AgreementReport straw_report =
      agreement(straw, rule, 10000, 7,
                Binding{{ArgName("rd"), 1.0}, {ArgName("am"), 0.0}, {ArgName("gr"), 0.0}});

  bool ok = exact.rate == 0.0 && model_rate >= 0.0 && model_rate <= 0.02 &&
            std::fabs(straw_report.rate - 0.60) <= 0.02;
  report(6, ok,
         fmt("reference vs rule %.4f, vs trained model %.4f, always-go straw man %.4f",
             exact.rate, model_rate, straw_report.rate));
}

void criterion_7_property_suites() {
  // Evaluator fuzz: generated programs terminate and round-trip.
  int fuzz_failures = 0;
  {
    std::mt19937_64 rng(99);
    std::vector<ArgName> names{ArgName("a"), ArgName("b"), ArgName("y")};
    std::vector<double> pool{0.0, 0.1, 0.5, 0.75, 1.0};
    for (int i = 0; i < 1000; ++i) {
      Program p = random_program(rng, names, pool, 1 + static_cast<int>(rng() % 7));
      if (!structurally_equal(parse_program(p.to_text()), p)) ++fuzz_failures;
      Binding input;
      for (const ArgName& n : names)
        if (rng() % 2 == 0) input.set(n, pool[rng() % pool.size()]);
      try {
        solutions(p, input);
      } catch (const Error&) {
      } catch (...) {
        ++fuzz_failures;
      }
    }
  }

  // Job files: serialization is a parse fixed point.
  int trip_failures = 0;
  for (unsigned seed = 1; seed <= 500; ++seed) {
    GeneratedJob g = random_job(seed);
    std::string text = serialize_job(g.job);
    if (serialize_job(parse_job(text)) != text) ++trip_failures;
  }

  // Gradients against central finite differences.
  double worst_rel = 0.0;
  {
    MlpModel m = init_model(17);
    Dataset d = generate_dataset(24, 0.0, 17);
    Gradients g;
    loss_and_gradients(m, d.rows, g);
    const double h = 1e-6;
    auto probe_param = [&](double& slot, double analytic) {
      double saved = slot;
      slot = saved + h;
      double up = mean_loss(m, d.rows);
      slot = saved - h;
      double down = mean_loss(m, d.rows);
      slot = saved;
      double numeric = (up - down) / (2 * h);
      double rel = std::fabs(analytic - numeric) /
                   std::max({std::fabs(analytic), std::fabs(numeric), 1e-6});
      worst_rel = std::max(worst_rel, rel);
    };
    for (int layer = 0; layer < 3; ++layer) {
      for (int r = 0; r < m.weights[layer].rows; ++r)
        for (int c = 0; c < m.weights[layer].cols; ++c)
          probe_param(m.weights[layer].at(r, c), g.weights[layer].at(r, c));
      for (std::size_t i = 0; i < m.biases[layer].size(); ++i)
        probe_param(m.biases[layer][i], g.biases[layer][i]);
    }
  }

  // Translation fidelity: the clause reading equals the evaluator on every
  // grid input for the fixed explanation corpus.
  int fidelity_failures = 0;
  {
    struct Entry {
      const char* text;
      Valence valence;
    };
    Valence red = red_slice_valence();
    Valence amber({{ArgName("am"), Mode::in}, {ArgName("dist"), Mode::in},
                   {ArgName("go"), Mode::out}});
    Valence green({{ArgName("gr"), Mode::in}, {ArgName("dist"), Mode::in},
                   {ArgName("go"), Mode::out}});
    Valence solo({{ArgName("go"), Mode::out}});
    std::vector<Entry> corpus = {
        {"ande(const(rd,1.0),proj(iif(ltValue(a,0.6),0.0,1.0),[a->dist,o->go]))", red},
        {"proj(iif(ande(const(rd,1.0),ltValue(dist,0.62)),0.0,1.0),[o->go])", red},
        {"proj(iif(ande(const(am,1.0),ore(const(dist,0.1),const(dist,0.8))),0.0,1.0),[o->go])",
         amber},
        {"ande(const(gr,1.0),const(go,1.0))", green},
        {"const(go,1.0)", solo},
    };
    for (const Entry& entry : corpus) {
      Program p = parse_program(entry.text);
      ClauseSet cs = to_clauses(p, entry.valence);
      std::vector<ArgName> ins = entry.valence.in_names();
      for (int i = 0; i <= (ins.empty() ? 0 : 100); ++i) {
        double dist = i / 100.0;
        Binding input;
        for (const ArgName& n : ins) {
          if (n == ArgName("dist"))
            input.set(n, dist);
          else
            input.set(n, 1.0);
        }
        std::optional<double> direct;
        try {
          std::optional<Binding> out = evaluate(p, input, entry.valence);
          if (out) direct = out->at(ArgName("go"));
        } catch (const Error&) {
        }
        std::optional<double> read = clause_output(cs, input, ArgName("go"));
        bool same = direct.has_value() == read.has_value() &&
                    (!direct || std::fabs(*direct - *read) <= 1e-9);
        if (!same) ++fidelity_failures;
      }
    }
  }

  bool ok = fuzz_failures == 0 && trip_failures == 0 && worst_rel <= 1e-4 &&
            fidelity_failures == 0;
  report(7, ok,
         fmt("1000 evaluator fuzz cases and 500 job round-trips clean (%.0f/%.0f failures), ",
             fuzz_failures, trip_failures) +
             fmt("worst gradient error %.2e, ", worst_rel) +
             fmt("%.0f fidelity mismatches", fidelity_failures));
}

void criterion_8_all_combinations_probe() {
  if (!g_best_model) {
    report(8, false, "no trained model available from the training sweep");
    return;
  }
  MlpOracle oracle(*g_best_model);
  SynthesisJob job = probe(oracle, 100, probe_states(StateSet::all_combinations));
  std::vector<std::vector<double>> states;
  for (const Observable& row : job.observables) {
    std::vector<double> s{row.fields.at(ArgName("rd")), row.fields.at(ArgName("am")),
                          row.fields.at(ArgName("gr"))};
    bool seen = false;
    for (const auto& t : states) seen = seen || t == s;
    if (!seen) states.push_back(s);
  }
  bool ok = states.size() == 8 && job.observables.size() >= 16;
  report(8, ok,
         fmt("probing all eight light combinations produced %.0f observables over %.0f states",
             static_cast<double>(job.observables.size()), static_cast<double>(states.size())));
}

}  // namespace

int main() {
  guarded(1, criterion_1_training_sweep);
  guarded(2, criterion_2_probe_golden);
  guarded(3, criterion_3_boundary_recovery);
  guarded(4, criterion_4_synthesis_budget);
  guarded(5, criterion_5_engine_vs_reference);
  guarded(6, criterion_6_agreement_rates);
  guarded(7, criterion_7_property_suites);
  guarded(8, criterion_8_all_combinations_probe);
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
