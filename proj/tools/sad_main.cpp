#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sad/cache.hpp"
#include "sad/config.hpp"
#include "sad/detectors.hpp"
#include "sad/errors.hpp"
#include "sad/eval.hpp"
#include "sad/jsonl.hpp"
#include "sad/service.hpp"
#include "sad/synthetic.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct CommonArgs {
  std::string config_file;
  bool mock = false;
  std::string provider;
  std::string model;
  std::string api_base;
  std::string cache_dir;
  int parallelism = 0;
  std::int64_t seed = -1;
  double alpha = -1.0;
  double threshold = 0.0;
  bool threshold_set = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_file, "flat key=value config file");
  cmd->add_flag("--mock", args.mock, "use the deterministic offline provider");
  cmd->add_option("--provider", args.provider, "provider kind: mock or remote");
  cmd->add_option("--model", args.model, "model id for the remote provider");
  cmd->add_option("--api-base", args.api_base, "OpenAI-compatible base URL");
  cmd->add_option("--cache-dir", args.cache_dir, "directory for the response cache");
  cmd->add_option("-j,--parallelism", args.parallelism, "max in-flight provider calls");
  cmd->add_option("--seed", args.seed, "seed for all seeded operations");
  cmd->add_option("--alpha", args.alpha, "SAD blend weight in [0, 1]");
  cmd->add_option("--threshold", args.threshold, "binary decision threshold")
      ->trigger_on_parse()
      ->each([&args](const std::string&) { args.threshold_set = true; });
}

sad::AppConfig resolve_config(const CommonArgs& args) {
  std::optional<std::filesystem::path> file;
  if (!args.config_file.empty()) file = args.config_file;
  sad::AppConfig config = sad::load_config(file);

  if (!args.provider.empty()) {
    if (args.provider == "mock") config.provider = sad::ProviderKind::Mock;
    else if (args.provider == "remote") config.provider = sad::ProviderKind::Remote;
    else throw sad::ConfigError("provider must be mock or remote, got " + args.provider);
  }
  if (args.mock) config.provider = sad::ProviderKind::Mock;
  if (!args.model.empty()) config.model_id = args.model;
  if (!args.api_base.empty()) config.api_base = args.api_base;
  if (!args.cache_dir.empty()) config.cache_dir = args.cache_dir;
  if (args.parallelism > 0) config.parallelism = args.parallelism;
  if (args.seed >= 0) {
    config.seed = static_cast<std::uint64_t>(args.seed);
    config.curvature.seed = config.seed;
  }
  if (args.alpha >= 0.0) config.sad.alpha = args.alpha;
  if (args.threshold_set) config.sad.threshold = args.threshold;
  if (config.model_id.empty()) {
    config.model_id = config.provider == sad::ProviderKind::Mock ? "mock-ngram-2"
                                                                 : "gpt-3.5-turbo";
  }
  sad::validate_config(config);
  return config;
}

void print_error(const std::string& type, const std::string& message) {
  std::cerr << json{{"error", {{"type", type}, {"message", message}}}}.dump() << "\n";
}

int map_exception() {
  try {
    throw;
  } catch (const sad::ConfigError& e) {
    print_error("ConfigError", e.what());
  } catch (const sad::DatasetFormatError& e) {
    print_error("DatasetFormatError", e.what());
  } catch (const sad::DuplicateIdError& e) {
    print_error("DuplicateId", e.what());
  } catch (const sad::EmptyTextError& e) {
    print_error("EmptyText", e.what());
  } catch (const sad::UnknownLabelError& e) {
    print_error("UnknownLabel", e.what());
  } catch (const sad::DegenerateLabels& e) {
    print_error("DegenerateLabels", e.what());
  } catch (const CLI::ParseError& e) {
    print_error("UsageError", e.what());
  } catch (const sad::EvalPartialFailure& e) {
    json ids = json::array();
    for (const auto& id : e.failed_ids) ids.push_back(id);
    std::cerr << json{{"error",
                       {{"type", "PartialFailure"},
                        {"message", e.what()},
                        {"failed_ids", ids}}}}
                     .dump()
              << "\n";
    return kExitRuntime;
  } catch (const sad::ProviderUnavailable& e) {
    print_error("ProviderUnavailable", e.what());
    return kExitRuntime;
  } catch (const sad::MalformedResponse& e) {
    print_error("MalformedResponse", e.what());
    return kExitRuntime;
  } catch (const sad::UnparseableSentiment& e) {
    print_error("UnparseableSentiment", e.what());
    return kExitRuntime;
  } catch (const sad::Error& e) {
    print_error("Error", e.what());
    return kExitRuntime;
  } catch (const std::exception& e) {
    print_error("Error", e.what());
    return kExitRuntime;
  }
  return kExitConfig;
}

std::string read_text_arg(const std::string& text, const std::string& file) {
  if (!text.empty()) return text;
  std::ifstream in(file, std::ios::binary);
  if (!in) throw sad::ConfigError("cannot open text file: " + file);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string format_row(const sad::EvalReport& report) {
  char buf[64];
  std::string row = report.detector_id;
  for (const auto& [domain, score] : report.per_domain) {
    std::snprintf(buf, sizeof(buf), " %s=%.2f", sad::to_string(domain).c_str(), score);
    row += buf;
  }
  std::snprintf(buf, sizeof(buf), " avg=%.2f", report.average);
  row += buf;
  return row;
}

sad::EvalMeta make_meta(const sad::AppConfig& config, const std::string& detector) {
  return {detector, config.model_id, sad::config_digest(config, detector)};
}

sad::DetectService* g_service = nullptr;

void handle_signal(int) {
  if (g_service != nullptr) g_service->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sentiment-differential detector for machine-generated text"};
  app.require_subcommand(1);

  // detect
  auto* detect = app.add_subcommand("detect", "score one text and print the result as JSON");
  CommonArgs detect_args;
  add_common(detect, detect_args);
  std::string detector_name, detect_text, detect_file, endpoint;
  int external_timeout_ms = 10000;
  detect->add_option("--detector", detector_name, "sad|logrank|entropy|meanlogprob|curvature|external")
      ->required();
  detect->add_option("--text", detect_text, "text to score");
  detect->add_option("--file", detect_file, "file with the text to score");
  detect->add_option("--endpoint", endpoint, "external detector URL");
  detect->add_option("--timeout-ms", external_timeout_ms, "external detector timeout");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a detector over a JSONL dataset");
  CommonArgs eval_args;
  add_common(eval_cmd, eval_args);
  std::string eval_dataset, eval_detector = "sad", eval_out = "eval_report";
  eval_cmd->add_option("--dataset", eval_dataset, "JSONL dataset path")->required();
  eval_cmd->add_option("--detector", eval_detector, "detector name");
  eval_cmd->add_option("--out", eval_out, "output base path (.json/.csv)");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "detection score across input lengths");
  CommonArgs sweep_args;
  add_common(sweep_cmd, sweep_args);
  std::string sweep_dataset, sweep_detector = "sad", sweep_out = "sweep_report";
  std::vector<int> sweep_lengths{20, 50, 100, 150, 200};
  sweep_cmd->add_option("--dataset", sweep_dataset, "JSONL dataset path")->required();
  sweep_cmd->add_option("--detector", sweep_detector, "detector name");
  sweep_cmd->add_option("--lengths", sweep_lengths, "token lengths within [20, 200]");
  sweep_cmd->add_option("--out", sweep_out, "output base path (.json/.csv)");

  // attack
  auto* attack_cmd = app.add_subcommand("attack", "paraphrase attack before/after comparison");
  CommonArgs attack_args;
  add_common(attack_cmd, attack_args);
  std::string attack_dataset, attack_detector = "sad", attack_out = "attack_report";
  double attack_fraction = 0.10;
  attack_cmd->add_option("--dataset", attack_dataset, "JSONL dataset path")->required();
  attack_cmd->add_option("--detector", attack_detector, "detector name");
  attack_cmd->add_option("--fraction", attack_fraction, "fraction of sentences to paraphrase");
  attack_cmd->add_option("--out", attack_out, "output base path (.json/.csv)");

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "run the HTTP scoring service");
  CommonArgs serve_args;
  add_common(serve_cmd, serve_args);
  std::string bind_addr = "127.0.0.1:8080";
  serve_cmd->add_option("--bind", bind_addr, "host:port to bind");

  // cache
  auto* cache_cmd = app.add_subcommand("cache", "inspect or clear the response cache");
  CommonArgs cache_args;
  add_common(cache_cmd, cache_args);
  auto* cache_stats = cache_cmd->add_subcommand("stats", "print record count and size");
  auto* cache_clear = cache_cmd->add_subcommand("clear", "remove the cache file");
  bool cache_yes = false;
  cache_clear->add_flag("--yes", cache_yes, "confirm removal");
  cache_cmd->require_subcommand(1);

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "write the synthetic evaluation corpus");
  CommonArgs synth_args;
  add_common(synth_cmd, synth_args);
  std::string synth_out = "synthetic.jsonl";
  int per_domain = 200;
  synth_cmd->add_option("--out", synth_out, "output JSONL path");
  synth_cmd->add_option("--per-domain", per_domain, "samples per domain (balanced)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (detect->parsed()) {
      sad::AppConfig config = resolve_config(detect_args);
      if (!endpoint.empty()) config.external_endpoint = endpoint;
      config.external_timeout = std::chrono::milliseconds(external_timeout_ms);
      if (!sad::is_detector_name(detector_name)) {
        throw sad::ConfigError("unknown detector: " + detector_name);
      }
      std::string text = read_text_arg(detect_text, detect_file);
      if (sad::tokenize_ws(text).empty()) throw sad::ConfigError("text is empty");
      auto provider = sad::make_provider(config);
      auto scorer = sad::make_scorer(detector_name, *provider, sad::scorer_options(config));
      std::cout << sad::detection_wire_json(scorer(text)) << "\n";
      return kExitOk;
    }

    if (eval_cmd->parsed()) {
      sad::AppConfig config = resolve_config(eval_args);
      if (!sad::is_detector_name(eval_detector)) {
        throw sad::ConfigError("unknown detector: " + eval_detector);
      }
      sad::Dataset dataset = sad::load_jsonl(eval_dataset);
      auto provider = sad::make_provider(config);
      auto scorer = sad::make_scorer(eval_detector, *provider, sad::scorer_options(config));
      sad::EvalReport report = sad::evaluate(dataset, scorer, make_meta(config, eval_detector),
                                             {config.parallelism});
      sad::write_report(report, eval_out);
      std::cout << format_row(report) << "\n";
      return kExitOk;
    }

    if (sweep_cmd->parsed()) {
      sad::AppConfig config = resolve_config(sweep_args);
      if (!sad::is_detector_name(sweep_detector)) {
        throw sad::ConfigError("unknown detector: " + sweep_detector);
      }
      sad::Dataset dataset = sad::load_jsonl(sweep_dataset);
      auto provider = sad::make_provider(config);
      auto scorer = sad::make_scorer(sweep_detector, *provider, sad::scorer_options(config));
      auto points = sad::length_sweep(dataset, scorer, make_meta(config, sweep_detector),
                                      sweep_lengths, {config.parallelism});
      sad::write_report(std::span<const sad::SweepPoint>(points), sweep_out);
      for (const auto& point : points) {
        std::printf("length=%d score=%.2f n=%d\n", point.length, point.detection_score, point.n);
      }
      return kExitOk;
    }

    if (attack_cmd->parsed()) {
      sad::AppConfig config = resolve_config(attack_args);
      if (!sad::is_detector_name(attack_detector)) {
        throw sad::ConfigError("unknown detector: " + attack_detector);
      }
      if (attack_fraction < 0.0 || attack_fraction > 1.0) {
        throw sad::ConfigError("fraction must lie in [0, 1]");
      }
      sad::Dataset dataset = sad::load_jsonl(attack_dataset);
      auto provider = sad::make_provider(config);
      auto scorer = sad::make_scorer(attack_detector, *provider, sad::scorer_options(config));
      sad::EvalMeta meta = make_meta(config, attack_detector);
      sad::EvalOptions options{config.parallelism};

      sad::AttackReport attack;
      attack.fraction = attack_fraction;
      attack.seed = config.seed;
      attack.before = sad::evaluate(dataset, scorer, meta, options);
      sad::Dataset attacked =
          sad::apply_paraphrase_attack(dataset, attack_fraction, *provider, config.seed);
      attack.after = sad::evaluate(attacked, scorer, meta, options);
      attack.delta_average = attack.before.average - attack.after.average;
      sad::write_report(attack, attack_out);
      std::printf("before avg=%.2f after avg=%.2f delta=%.2f\n", attack.before.average,
                  attack.after.average, attack.delta_average);
      return kExitOk;
    }

    if (serve_cmd->parsed()) {
      sad::AppConfig config = resolve_config(serve_args);
      auto colon = bind_addr.rfind(':');
      if (colon == std::string::npos) throw sad::ConfigError("--bind must be host:port");
      std::string host = bind_addr.substr(0, colon);
      int port = static_cast<int>(std::stol(bind_addr.substr(colon + 1)));

      sad::DetectService service(config);
      if (!service.bind(host, port)) {
        throw sad::ConfigError("cannot bind " + bind_addr);
      }
      g_service = &service;
      std::signal(SIGINT, handle_signal);
      std::signal(SIGTERM, handle_signal);
      std::cerr << "listening on " << host << ":" << service.port() << "\n";
      service.serve();
      g_service = nullptr;
      return kExitOk;
    }

    if (cache_cmd->parsed()) {
      sad::AppConfig config = resolve_config(cache_args);
      if (config.cache_dir.empty()) {
        throw sad::ConfigError("cache commands require cache_dir (or SAD_CACHE_DIR)");
      }
      if (!std::filesystem::is_directory(config.cache_dir)) {
        throw sad::ConfigError("cache directory does not exist: " + config.cache_dir.string());
      }
      auto file = config.cache_dir / "responses.cache";
      if (cache_stats->parsed()) {
        std::size_t records = 0, bytes = 0;
        if (std::filesystem::exists(file)) {
          sad::ResponseCache cache(file);
          records = cache.record_count();
          bytes = static_cast<std::size_t>(std::filesystem::file_size(file));
        }
        std::cout << records << " records, " << bytes << " bytes\n";
        return kExitOk;
      }
      if (cache_clear->parsed()) {
        if (!cache_yes) {
          throw sad::ConfigError("refusing to clear the cache without --yes");
        }
        std::filesystem::remove(file);
        std::cout << "cache cleared\n";
        return kExitOk;
      }
    }

    if (synth_cmd->parsed()) {
      sad::AppConfig config = resolve_config(synth_args);
      if (per_domain < 2 || per_domain % 2 != 0) {
        throw sad::ConfigError("--per-domain must be a positive even number");
      }
      sad::SynthConfig synth_config;
      synth_config.per_domain = per_domain;
      synth_config.seed = config.seed;
      sad::Dataset dataset = sad::synth_corpus(synth_config);
      sad::save_jsonl(dataset, synth_out);
      std::cout << "wrote " << dataset.samples.size() << " samples to " << synth_out << "\n";
      return kExitOk;
    }
  } catch (...) {
    return map_exception();
  }
  return kExitConfig;
}
