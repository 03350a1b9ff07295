// hmmaro: train, benchmark and score HMMs with Baum-Welch, SA, ARO and MARO.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hmmaro/bench.hpp"
#include "hmmaro/em.hpp"
#include "hmmaro/model_io.hpp"
#include "hmmaro/objectives.hpp"
#include "hmmaro/random.hpp"
#include "hmmaro/seqio.hpp"

using namespace hmmaro;

namespace {

struct CommonOptions {
  std::string objective = "log_odds";
  std::size_t states = 4;
  std::size_t iterations = 2000;
  std::size_t train_size = 0;
  std::uint64_t split_seed = 0;
  std::size_t int_bits = 1;
  std::size_t frac_bits = 10;
  std::string g_range = "total";
  bool flip_all = false;
  double bw_tolerance = 1e-6;
  std::string alphabet;
};

void add_common(CLI::App* app, CommonOptions& o) {
  app->add_option("--objective", o.objective, "log_odds or sop")->capture_default_str();
  app->add_option("--states", o.states, "Hidden states")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--iterations", o.iterations, "Optimizer iterations / Baum-Welch iteration cap")->capture_default_str();
  app->add_option("--train-size", o.train_size, "Training split size (0 = whole dataset)")->capture_default_str();
  app->add_option("--split-seed", o.split_seed, "Seed for the train/validation split")->capture_default_str();
  app->add_option("--int-bits", o.int_bits, "Integer bits per parameter")->capture_default_str();
  app->add_option("--frac-bits", o.frac_bits, "Fraction bits per parameter")->capture_default_str();
  app->add_option("--g-range", o.g_range, "Substring length range: total or int")
      ->capture_default_str()
      ->check(CLI::IsMember({"total", "int"}));
  app->add_flag("--flip-all", o.flip_all, "Flip every substring bit instead of flipping with 1/ln(g)");
  app->add_option("--bw-tolerance", o.bw_tolerance, "Baum-Welch stopping tolerance")->capture_default_str();
  app->add_option("--alphabet", o.alphabet, "Explicit alphabet (default: symbols seen in the data)");
}

// Plain key=value lines belong to the subcommand being run; [section] headers
// still work as CLI11 defines them.
class SubcommandConfig : public CLI::ConfigINI {
 public:
  explicit SubcommandConfig(std::string section) : section_(std::move(section)) {}
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    auto items = CLI::ConfigINI::from_config(input);
    for (auto& item : items) {
      if (item.parents.empty() && !section_.empty() && item.name != "++" && item.name != "--") item.parents = {section_};
    }
    return items;
  }

 private:
  std::string section_;
};

ExperimentConfig to_config(const CommonOptions& o, Algorithm a) {
  ExperimentConfig c;
  c.algorithm = a;
  c.objective = parse_score_kind(o.objective);
  c.states = o.states;
  c.iterations = o.iterations;
  c.train_size = o.train_size;
  c.split_seed = o.split_seed;
  c.int_bits = o.int_bits;
  c.frac_bits = o.frac_bits;
  c.reproduce.g_range = o.g_range == "int" ? SubstringRange::int_bits : SubstringRange::total_length;
  c.reproduce.flip_all = o.flip_all;
  c.bw_tolerance = o.bw_tolerance;
  return c;
}

std::optional<std::string> alphabet_of(const CommonOptions& o) {
  if (o.alphabet.empty()) return std::nullopt;
  return o.alphabet;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Train and compare hidden Markov models"};
  app.require_subcommand(1);
  app.fallthrough();
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "Read options from a key=value file");
  std::string active;
  for (int i = 1; i < argc && active.empty(); ++i) {
    const std::string arg = argv[i];
    if (arg == "train" || arg == "bench" || arg == "score" || arg == "synth") active = arg;
  }
  app.config_formatter(std::make_shared<SubcommandConfig>(active));

  // train
  CommonOptions train_opts;
  std::string train_data, train_algorithm = "maro", model_out, history_out, trace_out;
  std::uint64_t train_seed = 1;
  auto* train = app.add_subcommand("train", "Train one model and write it out");
  train->add_option("--data", train_data, "FASTA dataset")->required();
  train->add_option("--algorithm", train_algorithm, "bw, sa, aro or maro")->capture_default_str();
  train->add_option("--seed", train_seed, "Seed for initialization and search")->capture_default_str();
  train->add_option("--model-out", model_out, "Where to write the trained model")->required();
  train->add_option("--history-out", history_out, "Baum-Welch history CSV");
  train->add_option("--trace-out", trace_out, "Optimizer trace CSV (SA, ARO, MARO)");
  add_common(train, train_opts);

  // bench
  CommonOptions bench_opts;
  std::vector<std::string> bench_data;
  std::vector<std::string> bench_algorithms{"bw", "sa", "aro", "maro"};
  std::size_t repetitions = 25;
  std::uint64_t base_seed = 1;
  std::string format = "markdown", split_name = "both", report_out, runs_out;
  bool serial = false;
  auto* bench = app.add_subcommand("bench", "Run repeated experiments and emit a comparison table");
  bench->add_option("--data", bench_data, "FASTA dataset(s); each becomes a table row")->required();
  bench->add_option("--algorithms", bench_algorithms, "Subset of bw sa aro maro")->capture_default_str()->delimiter(',');
  bench->add_option("--repetitions", repetitions, "Repetitions per stochastic algorithm")->capture_default_str();
  bench->add_option("--base-seed", base_seed, "Repetition r uses base-seed + r")->capture_default_str();
  bench->add_option("--format", format, "csv or markdown")->capture_default_str()->check(CLI::IsMember({"csv", "markdown"}));
  bench->add_option("--split", split_name, "train, validation or both")
      ->capture_default_str()
      ->check(CLI::IsMember({"train", "validation", "both"}));
  bench->add_option("--out", report_out, "Report file (default: stdout)");
  bench->add_option("--runs-out", runs_out, "Per-repetition CSV");
  bench->add_flag("--serial", serial, "Run repetitions one at a time");
  add_common(bench, bench_opts);

  // score
  std::string score_model_path, score_data, score_alignment, score_reference, null_data, score_alphabet;
  auto* score = app.add_subcommand("score", "Score a model or an alignment against a dataset");
  score->add_option("--model", score_model_path, "Model file");
  score->add_option("--data", score_data, "FASTA dataset scored by --model");
  score->add_option("--null-data", null_data, "FASTA dataset for the null model (default: --data)");
  score->add_option("--alphabet", score_alphabet, "Alphabet matching the model's symbol order");
  score->add_option("--alignment", score_alignment, "Aligned FASTA to score");
  score->add_option("--reference", score_reference, "Reference aligned FASTA for --alignment");

  // synth
  std::size_t synth_states = 4, synth_symbols = 20, count = 30, min_len = 20, max_len = 40;
  std::uint64_t synth_seed = 1;
  std::string synth_out, generator_in, generator_out;
  auto* synth = app.add_subcommand("synth", "Sample a synthetic dataset from an HMM");
  synth->add_option("--states", synth_states, "States of a random generator")->capture_default_str();
  synth->add_option("--symbols", synth_symbols, "Alphabet size of a random generator")->capture_default_str();
  synth->add_option("--generator", generator_in, "Use this model file instead of a random generator");
  synth->add_option("--generator-out", generator_out, "Write the generator model here");
  synth->add_option("--count", count, "Number of sequences")->capture_default_str();
  synth->add_option("--min-length", min_len, "Shortest sequence")->capture_default_str();
  synth->add_option("--max-length", max_len, "Longest sequence")->capture_default_str();
  synth->add_option("--seed", synth_seed, "Seed")->capture_default_str();
  synth->add_option("--out", synth_out, "FASTA output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.get_exit_code() == 0 ? 2 : e.get_exit_code();
  }

  try {
    if (train->parsed()) {
      const auto ds = read_fasta_file(train_data, alphabet_of(train_opts));
      auto config = to_config(train_opts, parse_algorithm(train_algorithm));
      SequenceDataset train_part = ds, validation;
      if (config.train_size != 0 && config.train_size != ds.size()) {
        Rng split_rng(config.split_seed);
        std::tie(train_part, validation) = split(ds, config.train_size, split_rng);
      }
      const auto trained = train_once(config, train_part, &validation, train_seed);
      save_model(model_out, trained.model);
      if (!history_out.empty()) {
        auto out = open_out(history_out);
        write_history_csv(out, trained.bw_history);
      }
      if (!trace_out.empty()) {
        auto out = open_out(trace_out);
        write_trace_csv(out, trained.trace);
      }
      std::cout << manifest(ds, train_part.size()) << '\n';
      std::cout << "train " << fixed3(trained.record.train_fitness) << '\n';
      if (trained.record.validation_fitness) std::cout << "validation " << fixed3(*trained.record.validation_fitness) << '\n';
      return 0;
    }

    if (bench->parsed()) {
      std::vector<RunReport> reports;
      std::vector<std::string> manifests;
      for (const auto& path : bench_data) {
        const auto ds = read_fasta_file(path, alphabet_of(bench_opts));
        const std::string name = std::filesystem::path(path).stem().string();
        manifests.push_back(name + ": " +
                            manifest(ds, bench_opts.train_size == 0 ? ds.size() : bench_opts.train_size));
        for (const auto& a : bench_algorithms) {
          auto config = to_config(bench_opts, parse_algorithm(a));
          config.dataset_name = name;
          config.repetitions = repetitions;
          config.base_seed = base_seed;
          config.parallel = !serial;
          reports.push_back(run_experiment(config, ds));
        }
      }
      const auto fmt = format == "csv" ? ReportFormat::csv : ReportFormat::markdown;
      const std::string comment = fmt == ReportFormat::csv ? "# " : "";
      std::ostringstream text;
      text << comment << objective_label(parse_score_kind(bench_opts.objective)) << '\n';
      text << comment << kInitNote << '\n';
      for (const auto& m : manifests) text << comment << m << '\n';
      for (const auto& [which, label] : {std::pair{Split::train, "train"}, std::pair{Split::validation, "validation"}}) {
        if (split_name != "both" && split_name != label) continue;
        text << (fmt == ReportFormat::csv ? "# " : "\n") << label << " split\n";
        if (fmt == ReportFormat::markdown) text << '\n';
        text << emit_report(summarize(reports, which), fmt);
      }
      if (report_out.empty()) {
        std::cout << text.str();
      } else {
        open_out(report_out) << text.str();
      }
      if (!runs_out.empty()) open_out(runs_out) << emit_runs_csv(reports);
      return 0;
    }

    if (score->parsed()) {
      if (!score_alignment.empty()) {
        const auto test = read_alignment_file(score_alignment);
        std::cout << "sop_raw " << fixed3(sop_raw(test)) << '\n';
        if (!score_reference.empty()) {
          std::cout << "sop_reference " << fixed3(sop_reference(test, read_alignment_file(score_reference))) << '\n';
        }
        return 0;
      }
      if (score_model_path.empty() || score_data.empty()) {
        throw std::invalid_argument("score needs --model with --data, or --alignment");
      }
      const auto model = load_model(score_model_path);
      if (!model.is_discrete()) throw std::invalid_argument("score works with discrete models only");
      std::optional<std::string> alphabet;
      if (!score_alphabet.empty()) alphabet = score_alphabet;
      const auto ds = read_fasta_file(score_data, alphabet);
      if (ds.alphabet_size() != model.discrete().alphabet_size()) {
        throw std::invalid_argument("dataset alphabet has " + std::to_string(ds.alphabet_size()) +
                                    " symbols, model emits " + std::to_string(model.discrete().alphabet_size()) +
                                    " (pass --alphabet)");
      }
      const auto null_ds = null_data.empty() ? ds : read_fasta_file(null_data, ds.alphabet);
      const auto null = null_model(null_ds.indexed, ds.alphabet_size());
      std::cout << "log_odds " << fixed3(log_odds(model, null, ds.indexed)) << '\n';
      if (ds.size() >= 2) std::cout << "sop " << fixed3(-sop_raw(align(model, ds.indexed, ds.alphabet))) << '\n';
      return 0;
    }

    if (synth->parsed()) {
      Rng rng(synth_seed);
      const HmmModel generator =
          generator_in.empty() ? random_discrete_model(synth_states, synth_symbols, rng) : load_model(generator_in);
      require_valid(generator);
      if (!generator.is_discrete()) throw std::invalid_argument("synth needs a discrete generator");
      const auto ds = synthesize(generator, count, {min_len, max_len},
                                 default_alphabet(generator.discrete().alphabet_size()), rng);
      auto out = open_out(synth_out);
      write_fasta(out, ds);
      if (!generator_out.empty()) save_model(generator_out, generator);
      std::cout << manifest(ds, ds.size()) << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
