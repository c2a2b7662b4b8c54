// Command-line front end: each subcommand maps onto one library operation,
// and `pipeline` chains them end to end into a run directory.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rice/dataset.hpp"
#include "rice/decimal.hpp"
#include "rice/errors.hpp"
#include "rice/job.hpp"
#include "rice/mlp.hpp"
#include "rice/oracle.hpp"
#include "rice/parse.hpp"
#include "rice/pipeline.hpp"
#include "rice/probe.hpp"
#include "rice/synth.hpp"
#include "rice/translate.hpp"
#include "rice/validate.hpp"

namespace {

using namespace rice;

double default_time_budget() {
  if (const char* env = std::getenv("RICE_TIME_BUDGET")) {
    try {
      return std::stod(env);
    } catch (const std::exception&) {
      throw Error(std::string("RICE_TIME_BUDGET is not a number: ") + env);
    }
  }
  return 60.0;
}

// rule | exec:<command> | path to saved weights (optionally mlp:<path>).
std::unique_ptr<Oracle> make_oracle(const std::string& spec) {
  if (spec == "rule") return std::make_unique<RuleOracle>();
  if (spec.rfind("exec:", 0) == 0)
    return std::make_unique<ExternalProcessOracle>(spec.substr(5));
  std::string path = spec.rfind("mlp:", 0) == 0 ? spec.substr(4) : spec;
  return std::make_unique<MlpOracle>(load_weights(path));
}

SynthesisJob load_job(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read job file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_job(buffer.str());
}

// A program argument is either a path to a file holding program text or the
// text itself.
Program load_program(const std::string& arg) {
  if (std::filesystem::exists(arg)) {
    std::ifstream in(arg);
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    return parse_program(text);
  }
  return parse_program(arg);
}

Binding parse_region(const std::string& spec) {
  Binding region;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error("region entry is not name=value: " + item);
    region.set(ArgName(item.substr(0, eq)), parse_number(item.substr(eq + 1)));
  }
  return region;
}

void write_text(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw Error("cannot write " + path);
}

// The valence a program is explained or validated over: the names it
// mentions, inputs in rd/am/gr/dist order, go as output.
Valence infer_valence(const Program& p) {
  std::vector<ValenceEntry> entries;
  for (const char* name : {"rd", "am", "gr", "dist"}) {
    ArgName arg{name};
    for (const ArgName& a : args_of(p))
      if (a == arg) entries.push_back({arg, Mode::in});
  }
  entries.push_back({ArgName("go"), Mode::out});
  return Valence(entries);
}

int run(int argc, char** argv) {
  CLI::App app{"Explain a black-box stop/go model with synthesized relational programs"};
  app.require_subcommand(1);

  // gen-data
  auto* gen = app.add_subcommand("gen-data", "Generate a labeled dataset from the rule");
  int gen_n = 50000;
  double gen_noise = 0.02;
  std::uint64_t gen_seed = 7;
  std::string gen_out = "dataset.csv";
  gen->add_option("--n", gen_n, "Number of rows");
  gen->add_option("--noise", gen_noise, "Fraction of labels flipped");
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--out", gen_out, "Output CSV path");

  // train
  auto* tr = app.add_subcommand("train", "Train the decision model on a dataset");
  std::string tr_data = "dataset.csv";
  int tr_epochs = 10;
  std::uint64_t tr_seed = 7;
  std::string tr_out = "model.txt";
  tr->add_option("--data", tr_data, "Input CSV path");
  tr->add_option("--epochs", tr_epochs, "Training epochs");
  tr->add_option("--seed", tr_seed, "RNG seed");
  tr->add_option("--out", tr_out, "Output weights path");

  // probe
  auto* pr = app.add_subcommand("probe", "Probe an oracle into a synthesis job");
  std::string pr_oracle = "rule";
  int pr_steps = 100;
  std::string pr_states = "regular";
  std::string pr_out;
  pr->add_option("--oracle", pr_oracle, "rule, exec:<command>, or weights path");
  pr->add_option("--steps", pr_steps, "Sweep resolution");
  pr->add_option("--states", pr_states)->check(CLI::IsMember({"regular", "all-combinations"}));
  pr->add_option("--out", pr_out, "Output job path (default stdout)");

  // slice
  auto* sl = app.add_subcommand("slice", "Restrict a job to rows matching fixed fields");
  std::string sl_job;
  std::vector<std::string> sl_fix;
  std::string sl_drop;
  std::string sl_out;
  sl->add_option("--job", sl_job, "Input job path")->required();
  sl->add_option("--fix", sl_fix, "name=value filter (repeatable)");
  sl->add_option("--drop", sl_drop, "Comma-separated names to remove");
  sl->add_option("--out", sl_out, "Output job path (default stdout)");

  // synth
  auto* sy = app.add_subcommand("synth", "Synthesize minimal programs for a job");
  std::string sy_job;
  int sy_max_size = 12;
  int sy_max_programs = 1;
  double sy_budget = default_time_budget();
  bool sy_no_ore = false;
  sy->add_option("--job", sy_job, "Input job path")->required();
  sy->add_option("--max-size", sy_max_size, "Largest program size considered");
  sy->add_option("--max-programs", sy_max_programs, "Stop after this many programs");
  sy->add_option("--time-budget", sy_budget, "Seconds before giving up");
  sy->add_flag("--no-ore", sy_no_ore, "Disable the union operator");

  // explain
  auto* ex = app.add_subcommand("explain", "Render a program as clauses or English");
  std::string ex_program;
  std::string ex_format = "clauses";
  bool ex_ascii = false;
  ex->add_option("--program", ex_program, "Program file or literal text")->required();
  ex->add_option("--format", ex_format)->check(CLI::IsMember({"clauses", "english"}));
  ex->add_flag("--ascii", ex_ascii, "ASCII clause symbols");

  // validate
  auto* va = app.add_subcommand("validate", "Measure program/oracle agreement");
  std::string va_program;
  std::string va_oracle = "rule";
  int va_samples = 10000;
  std::uint64_t va_seed = 7;
  std::string va_region;
  va->add_option("--program", va_program, "Program file or literal text")->required();
  va->add_option("--oracle", va_oracle, "rule, exec:<command>, or weights path");
  va->add_option("--samples", va_samples, "Number of random inputs");
  va->add_option("--seed", va_seed, "RNG seed");
  va->add_option("--region", va_region, "Pinned fields, e.g. am=0,gr=0");

  // pipeline
  auto* pl = app.add_subcommand("pipeline", "Run every stage into a run directory");
  PipelineConfig cfg;
  cfg.time_budget = default_time_budget();
  std::string pl_oracle = "trained";
  pl->add_option("--seed", cfg.seed, "RNG seed");
  pl->add_option("--steps", cfg.steps, "Probe resolution");
  pl->add_option("--n", cfg.dataset_n, "Dataset rows");
  pl->add_option("--noise", cfg.noise, "Label noise fraction");
  pl->add_option("--epochs", cfg.epochs, "Training epochs");
  pl->add_option("--oracle", pl_oracle)->check(CLI::IsMember({"trained", "rule"}));
  pl->add_option("--threshold", cfg.threshold, "Max acceptable disagreement rate");
  pl->add_option("--time-budget", cfg.time_budget, "Seconds per synthesis size rung");
  pl->add_option("--samples", cfg.validate_samples, "Validation sample count");
  pl->add_flag("--ascii", cfg.ascii, "ASCII clause symbols");
  std::string pl_out_dir;
  pl->add_option("--out-dir", pl_out_dir, "Run directory (default run-seed<seed>)");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    Dataset d = generate_dataset(gen_n, gen_noise, gen_seed);
    write_csv(d, gen_out);
    std::cout << "rows=" << d.rows.size() << "\n";
    return 0;
  }

  if (tr->parsed()) {
    Dataset d = read_csv(tr_data);
    TrainOptions options;
    options.epochs = tr_epochs;
    options.seed = tr_seed;
    TrainResult r = train(d, options);
    save_weights(r.model, tr_out);
    std::cout << "test_accuracy=" << format_constant(r.test_accuracy) << "\n";
    std::cout << "rule_accuracy=" << format_constant(r.rule_accuracy) << "\n";
    return 0;
  }

  if (pr->parsed()) {
    auto oracle = make_oracle(pr_oracle);
    StateSet set = pr_states == "regular" ? StateSet::regular : StateSet::all_combinations;
    SynthesisJob job = probe(*oracle, pr_steps, probe_states(set));
    write_text(pr_out, serialize_job(job));
    return 0;
  }

  if (sl->parsed()) {
    SynthesisJob job = load_job(sl_job);
    std::map<ArgName, double> fixed;
    for (const std::string& item : sl_fix) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw Error("--fix entry is not name=value: " + item);
      fixed[ArgName(item.substr(0, eq))] = parse_number(item.substr(eq + 1));
    }
    std::set<ArgName> drop;
    std::stringstream ss(sl_drop);
    std::string name;
    while (std::getline(ss, name, ','))
      if (!name.empty()) drop.insert(ArgName(name));
    write_text(sl_out, serialize_job(slice(job, fixed, drop)));
    return 0;
  }

  if (sy->parsed()) {
    SynthesisJob job = load_job(sy_job);
    SynthConfig scfg;
    scfg.max_size = sy_max_size;
    scfg.max_programs = sy_max_programs;
    scfg.time_budget = sy_budget;
    scfg.enable_ore = !sy_no_ore;
    SynthesisResult r = enumerate(job, scfg, [](const Candidate& c) {
      std::cout << c.program.to_text() << "\n";
      return true;
    });
    if (r.exhaustion == Exhaustion::size_bound)
      std::cout << "% exhausted: size bound\n";
    else if (r.exhaustion == Exhaustion::time_bound)
      std::cout << "% exhausted: time budget\n";
    return r.candidates.empty() ? 1 : 0;
  }

  if (ex->parsed()) {
    Program p = load_program(ex_program);
    Valence valence = infer_valence(p);
    if (ex_format == "english")
      std::cout << to_english(p, valence) << "\n";
    else
      std::cout << to_clauses(p, valence).to_text(ex_ascii);
    return 0;
  }

  if (va->parsed()) {
    Program p = load_program(va_program);
    auto oracle = make_oracle(va_oracle);
    Binding region = va_region.empty() ? Binding{} : parse_region(va_region);
    AgreementReport r = agreement(p, *oracle, va_samples, va_seed, region);
    std::cout << r.to_text();
    return 0;
  }

  if (pl->parsed()) {
    cfg.use_rule_oracle = pl_oracle == "rule";
    cfg.out_dir = pl_out_dir.empty() ? "run-seed" + std::to_string(cfg.seed) : pl_out_dir;
    PipelineResult r = run_pipeline(cfg);
    std::cout << "run directory: " << r.out_dir << "\n";
    for (const LightRun& light : r.lights) {
      std::cout << light.light << ": ";
      if (!light.candidate)
        std::cout << "synthesis failed\n";
      else
        std::cout << light.candidate->program.to_text()
                  << "  disagreement_rate=" << format_constant(light.report->rate) << "\n";
    }
    std::cout << (r.ok ? "ok" : "fail") << "\n";
    return r.ok ? 0 : 1;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
