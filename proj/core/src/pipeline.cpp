#include "rice/pipeline.hpp"

#include <chrono>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <thread>

#include "rice/dataset.hpp"
#include "rice/decimal.hpp"
#include "rice/errors.hpp"
#include "rice/mlp.hpp"
#include "rice/oracle.hpp"
#include "rice/probe.hpp"
#include "rice/translate.hpp"

namespace rice {

namespace {

namespace fs = std::filesystem;

// The only file that may contain timestamps; everything else in the run
// directory must be byte-identical across reruns with the same seed.
class RunLog {
 public:
  explicit RunLog(const fs::path& path) : out_(path) {}

  void line(const std::string& stage, const std::string& msg) {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    out_ << "[" << buf << "] " << stage << ": " << msg << "\n";
    out_.flush();
  }

 private:
  std::ofstream out_;
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw Error("cannot write " + path.string());
}

template <typename F>
auto stage(RunLog& log, const std::string& name, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    log.line(name, std::string("failed: ") + e.what());
    throw Error("stage " + name + ": " + e.what());
  }
}

struct LightSpec {
  const char* light;  // artifact prefix
  const char* on;     // valence name fixed to 1.00
  const char* off_a;  // dropped and later pinned to 0.0 for validation
  const char* off_b;
};

constexpr LightSpec kLightSpecs[] = {
    {"red", "rd", "am", "gr"},
    {"amber", "am", "rd", "gr"},
    {"green", "gr", "rd", "am"},
};

// Iterative deepening over size rungs: most slices are explained by tiny
// programs, and a tight size bound keeps the equivalence tables small, so
// try cheap bounds first and escalate only when a rung is fully exhausted.
constexpr int kSizeRungs[] = {5, 7, 9, 12};

void synthesize_light(const SynthesisJob& job, double time_budget, LightRun& run) {
  SynthesisResult last;
  for (int rung : kSizeRungs) {
    SynthConfig cfg;
    cfg.max_size = rung;
    cfg.max_programs = 1;
    cfg.time_budget = time_budget;
    last = first_explanation(job, cfg);
    if (!last.candidates.empty()) {
      run.candidate = last.candidates.front();
      run.found_at_max_size = rung;
      run.exhaustion = Exhaustion::none;
      return;
    }
    // A rung that ran out of time dooms every larger rung as well.
    if (last.exhaustion == Exhaustion::time_bound) break;
  }
  run.exhaustion = last.exhaustion;
}

std::string describe_exhaustion(Exhaustion e) {
  switch (e) {
    case Exhaustion::none: return "none";
    case Exhaustion::size_bound: return "size bound";
    case Exhaustion::time_bound: return "time budget";
  }
  return "unknown";
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  if (cfg.out_dir.empty()) throw SignatureError("pipeline requires an output directory");
  fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  RunLog log(dir / "run.log");

  PipelineResult result;
  result.out_dir = cfg.out_dir;

  std::unique_ptr<Oracle> oracle;
  if (cfg.use_rule_oracle) {
    log.line("train", "skipped: probing the rule oracle directly");
    oracle = std::make_unique<RuleOracle>();
  } else {
    Dataset data = stage(log, "gen-data", [&] {
      Dataset d = generate_dataset(cfg.dataset_n, cfg.noise, cfg.seed);
      write_csv(d, (dir / "dataset.csv").string());
      return d;
    });
    log.line("gen-data", std::to_string(data.rows.size()) + " rows");

    TrainResult trained = stage(log, "train", [&] {
      TrainOptions options;
      options.epochs = cfg.epochs;
      options.seed = cfg.seed;
      TrainResult r = train(data, options);
      save_weights(r.model, (dir / "model.txt").string());
      return r;
    });
    result.test_accuracy = trained.test_accuracy;
    result.rule_accuracy = trained.rule_accuracy;
    log.line("train", "test accuracy " + format_constant(trained.test_accuracy) +
                          ", rule accuracy " + format_constant(trained.rule_accuracy));
    oracle = std::make_unique<MlpOracle>(trained.model);
  }

  SynthesisJob probe_job = stage(log, "probe", [&] {
    SynthesisJob j = probe(*oracle, cfg.steps, probe_states(StateSet::regular));
    write_file(dir / "probe.pl", serialize_job(j));
    return j;
  });
  log.line("probe", std::to_string(probe_job.observables.size()) + " observables");

  stage(log, "slice", [&] {
    for (const LightSpec& spec : kLightSpecs) {
      LightRun run;
      run.light = spec.light;
      run.job = slice(probe_job, {{ArgName(spec.on), 1.0}},
                      {ArgName(spec.off_a), ArgName(spec.off_b)});
      write_file(dir / (run.light + ".pl"), serialize_job(run.job));
      log.line("slice", run.light + ": " + std::to_string(run.job.observables.size()) +
                            " observables, " + std::to_string(run.job.constants.size()) +
                            " constants");
      result.lights.push_back(std::move(run));
    }
    return 0;
  });

  stage(log, "synth", [&] {
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(result.lights.size());
    for (std::size_t i = 0; i < result.lights.size(); ++i) {
      workers.emplace_back([&, i] {
        try {
          synthesize_light(result.lights[i].job, cfg.time_budget, result.lights[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
    for (std::thread& w : workers) w.join();
    for (const std::exception_ptr& e : errors)
      if (e) std::rethrow_exception(e);
    return 0;
  });
  for (LightRun& run : result.lights) {
    if (run.candidate) {
      write_file(dir / (run.light + ".prog"), run.candidate->program.to_text() + "\n");
      log.line("synth", run.light + ": size " + std::to_string(run.candidate->size) +
                            " at bound " + std::to_string(run.found_at_max_size));
    } else {
      log.line("synth", run.light + ": no program (" + describe_exhaustion(run.exhaustion) + ")");
    }
  }

  stage(log, "explain", [&] {
    for (const LightRun& run : result.lights) {
      if (!run.candidate) continue;
      ClauseSet clauses = to_clauses(run.candidate->program, run.job.valence);
      write_file(dir / (run.light + ".clauses.txt"), clauses.to_text(cfg.ascii));
      write_file(dir / (run.light + ".english.txt"),
                 to_english(run.candidate->program, run.job.valence) + "\n");
    }
    return 0;
  });

  stage(log, "validate", [&] {
    std::ostringstream report;
    bool all_found = true;
    bool all_within = true;
    for (std::size_t i = 0; i < result.lights.size(); ++i) {
      LightRun& run = result.lights[i];
      const LightSpec& spec = kLightSpecs[i];
      report << "light " << run.light << "\n";
      if (!run.candidate) {
        all_found = false;
        report << "synthesis failed: " << describe_exhaustion(run.exhaustion) << "\n\n";
        continue;
      }
      report << "program " << run.candidate->program.to_text() << "\n";
      Binding region{{ArgName(spec.off_a), 0.0}, {ArgName(spec.off_b), 0.0}};
      run.report = agreement(run.candidate->program, *oracle, cfg.validate_samples,
                             cfg.seed + i, region);
      report << run.report->to_text();
      log.line("validate", run.light + ": disagreement rate " +
                               format_constant(run.report->rate));
      if (run.report->rate > cfg.threshold) all_within = false;
      report << "\n";
    }
    result.ok = all_found && all_within;
    report << "threshold=" << format_constant(cfg.threshold) << "\n";
    report << "result: " << (result.ok ? "ok" : "fail") << "\n";
    write_file(dir / "validation.txt", report.str());
    return 0;
  });
  log.line("pipeline", result.ok ? "ok" : "fail");

  return result;
}

}  // namespace rice
