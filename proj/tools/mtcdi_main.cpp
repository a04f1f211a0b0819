// Copyright 2026 The mtcdi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// mtcdi: learn directed-information causality between devices' request
// patterns and predict who transmits after an event trigger.
//
//   mtcdi generate --scenario paper --events 10000 --seed 7 -o data/
//   mtcdi train    --data data/events.csv -o out/
//   mtcdi predict  --model out/model.json --trigger X --slot 1
//   mtcdi evaluate --model out/model.json --data holdout/events.csv
//
// Exit codes: 0 success, 2 usage error, 3 data error, 4 internal error.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mtcdi/datagen.hpp"
#include "mtcdi/error.hpp"
#include "mtcdi/io.hpp"
#include "mtcdi/model_io.hpp"
#include "mtcdi/predictor.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitInternal = 4;

struct GenerateArgs {
  std::string scenario;
  std::string profiles;
  std::optional<int> events;
  std::optional<std::uint64_t> seed;
  double activity_prob = mtcdi::kPaperActivityProb;
  std::string output;
};

struct TrainArgs {
  std::string data;
  std::string output;
  std::string model_name = "model.json";
  double threshold = mtcdi::kDefaultThresholdBits;
  double alpha = 0.0;
  int min_events = mtcdi::kDefaultMinEvents;
  bool allow_few_events = false;
  unsigned threads = 0;
  bool heatmap = false;
};

struct PredictArgs {
  std::string model;
  std::string trigger;
  int slot = 0;
  std::string json;
};

struct EvaluateArgs {
  std::string model;
  std::string data;
  double floor = 0.0;
  std::string json;
};

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw mtcdi::DataError("cannot create directory '" + dir.string() +
                           "': " + ec.message());
  }
}

int run_generate(const GenerateArgs& args) {
  mtcdi::GeneratorConfig config;
  if (!args.scenario.empty()) {
    if (args.scenario != "paper") {
      throw mtcdi::InvalidArgument("unknown scenario '" + args.scenario + "'");
    }
    if (!args.events) {
      throw mtcdi::InvalidArgument("--events is required with --scenario");
    }
    config = mtcdi::paper_scenario_config(*args.events, args.seed.value_or(0),
                                          args.activity_prob);
  } else {
    config = mtcdi::parse_generator_config(mtcdi::read_text_file(args.profiles));
    if (args.events) config.num_events = *args.events;
    if (args.seed) config.seed = *args.seed;
  }

  const auto dataset = mtcdi::generate(config);
  const fs::path dir(args.output);
  ensure_directory(dir);
  mtcdi::save_dataset_csv(dir / "events.csv", dataset);
  mtcdi::write_text_file(dir / "events.meta.json",
                         mtcdi::dataset_metadata_json(config));
  std::cout << "wrote " << (dir / "events.csv").string() << ": "
            << dataset.num_devices() << " devices x " << dataset.num_events()
            << " events x " << dataset.slots_per_event() << " slots\n";
  return kExitOk;
}

// Picks up the generator seed from the sidecar written by `generate`.
void read_sidecar(const fs::path& data, mtcdi::TrainOptions& options) {
  fs::path sidecar = data;
  sidecar.replace_extension(".meta.json");
  if (!fs::exists(sidecar)) return;
  const auto doc = nlohmann::json::parse(mtcdi::read_text_file(sidecar),
                                         nullptr, /*allow_exceptions=*/false);
  if (!doc.is_object()) {
    std::cerr << "warning: ignoring unreadable metadata " << sidecar << "\n";
    return;
  }
  if (doc.contains("seed") && doc["seed"].is_number_unsigned()) {
    options.generator_seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("generator") && doc["generator"].is_string()) {
    options.generator = doc["generator"].get<std::string>();
  }
}

int run_train(const TrainArgs& args) {
  const auto dataset = mtcdi::load_dataset_csv(args.data);
  mtcdi::TrainOptions options;
  options.threshold_bits = args.threshold;
  options.smoothing_alpha = args.alpha;
  options.min_events = args.min_events;
  options.allow_few_events = args.allow_few_events;
  options.threads = args.threads;
  read_sidecar(args.data, options);

  if (args.threshold >= 2.0) {
    std::cerr << "warning: threshold " << args.threshold
              << " bits is at or above the 2-bit DI maximum; every causality "
                 "set will be empty\n";
  }

  std::vector<mtcdi::DiMatrix> matrices;
  const auto model = mtcdi::train(dataset, options, &matrices);

  const fs::path dir(args.output);
  ensure_directory(dir);
  mtcdi::write_text_file(dir / args.model_name, mtcdi::save_model(model));
  for (const auto& m : matrices) {
    const std::string stem = "di_" + m.source_id() + "_to_" + m.target_id();
    mtcdi::write_text_file(dir / (stem + ".csv"), mtcdi::di_matrix_to_csv(m));
    if (args.heatmap) {
      mtcdi::write_text_file(dir / (stem + ".pgm"), mtcdi::di_matrix_to_pgm(m));
    }
  }

  std::size_t entries = 0;
  for (const auto& [id, set] : model.causality_sets) entries += set.entries.size();
  if (entries == 0) std::cerr << "warning: all causality sets are empty\n";
  std::cout << "trained on " << dataset.num_events() << " events, "
            << matrices.size() << " device pairs, " << entries
            << " causality entries above " << args.threshold << " bits\n"
            << "wrote " << (dir / args.model_name).string() << "\n";
  return kExitOk;
}

int run_predict(const PredictArgs& args) {
  const auto model = mtcdi::load_model(mtcdi::read_text_file(args.model));
  const auto predictions = mtcdi::predict(model, args.trigger, args.slot);
  if (predictions.empty()) {
    std::cout << "no predictions\n";
  } else {
    std::printf("%-12s %6s %10s %10s\n", "target", "slot", "di_bits",
                "normalized");
    for (const auto& p : predictions) {
      std::printf("%-12s %6d %10.6f %10.6f\n", p.target_id.c_str(),
                  p.predicted_slot, p.confidence, p.normalized_confidence);
    }
  }
  if (!args.json.empty()) {
    mtcdi::write_text_file(
        args.json, mtcdi::predictions_to_json(args.trigger, args.slot, predictions));
  }
  return kExitOk;
}

int run_evaluate(const EvaluateArgs& args) {
  const auto model = mtcdi::load_model(mtcdi::read_text_file(args.model));
  const auto holdout = mtcdi::load_dataset_csv(args.data);
  const auto report = mtcdi::evaluate(model, holdout, args.floor);

  std::printf("%-12s %9s %9s %9s %7s %7s %7s\n", "device", "precision",
              "recall", "f1", "tp", "fp", "fn");
  const auto row = [](const std::string& name, const mtcdi::DeviceScore& s) {
    std::printf("%-12s %9.4f %9.4f %9.4f %7lld %7lld %7lld%s\n", name.c_str(),
                s.precision, s.recall, s.f1,
                static_cast<long long>(s.true_positives),
                static_cast<long long>(s.false_positives),
                static_cast<long long>(s.false_negatives),
                s.precision_undefined ? "  (no predictions)" : "");
  };
  for (const auto& [id, s] : report.per_device) row(id, s);
  row("overall", report.overall);
  std::printf("events scored %lld, without trigger %lld, slot hits %lld, "
              "slot misses %lld\n",
              static_cast<long long>(report.events_scored),
              static_cast<long long>(report.events_without_trigger),
              static_cast<long long>(report.slot_hits),
              static_cast<long long>(report.slot_misses));
  if (!args.json.empty()) {
    mtcdi::write_text_file(args.json, mtcdi::evaluation_to_json(report));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Directed-information traffic prediction for event-driven devices"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a synthetic event dataset");
  auto* scenario = generate->add_option("--scenario", gen.scenario, "Built-in scenario (paper)");
  auto* profiles = generate->add_option("--profiles", gen.profiles, "Generator profiles JSON")
                       ->check(CLI::ExistingFile);
  scenario->excludes(profiles);
  profiles->excludes(scenario);
  generate->add_option("--events", gen.events, "Number of events")->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen.seed, "Random seed");
  generate->add_option("--activity-prob", gen.activity_prob,
                       "Per-slot activity probability for the paper scenario")
      ->check(CLI::Range(0.0, 1.0));
  generate->add_option("-o,--output", gen.output, "Output directory")->required();

  TrainArgs tr;
  auto* train = app.add_subcommand("train", "Learn causality sets from a dataset");
  train->add_option("--data", tr.data, "Dataset CSV")->required()->check(CLI::ExistingFile);
  train->add_option("-o,--output", tr.output, "Output directory")->required();
  train->add_option("--model-name", tr.model_name, "Model file name inside the output directory");
  train->add_option("--threshold", tr.threshold, "DI threshold in bits")
      ->check(CLI::NonNegativeNumber);
  train->add_option("--alpha", tr.alpha, "Additive smoothing per outcome")
      ->check(CLI::NonNegativeNumber);
  train->add_option("--min-events", tr.min_events, "Minimum training events");
  train->add_flag("--allow-few-events", tr.allow_few_events, "Train below --min-events");
  train->add_option("--threads", tr.threads, "Worker threads (0 = all cores)");
  train->add_flag("--heatmap", tr.heatmap, "Also write a PGM heatmap per pair");

  PredictArgs pr;
  auto* predict = app.add_subcommand("predict", "Predict transmissions after a trigger");
  predict->add_option("--model", pr.model, "Model JSON")->required()->check(CLI::ExistingFile);
  predict->add_option("--trigger", pr.trigger, "Trigger device id")->required();
  predict->add_option("--slot", pr.slot, "Trigger slot (1-based)")->required();
  predict->add_option("--json", pr.json, "Also write predictions as JSON");

  EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "Score a model on held-out events");
  evaluate->add_option("--model", ev.model, "Model JSON")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--data", ev.data, "Holdout dataset CSV")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--floor", ev.floor, "Normalized confidence floor")
      ->check(CLI::Range(0.0, 1.0));
  evaluate->add_option("--json", ev.json, "Also write metrics as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*generate) {
      if (gen.scenario.empty() && gen.profiles.empty()) {
        throw mtcdi::InvalidArgument("one of --scenario or --profiles is required");
      }
      return run_generate(gen);
    }
    if (*train) return run_train(tr);
    if (*predict) return run_predict(pr);
    if (*evaluate) return run_evaluate(ev);
  } catch (const mtcdi::InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mtcdi::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitData;
  } catch (const mtcdi::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const mtcdi::InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
