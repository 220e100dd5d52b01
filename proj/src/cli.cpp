// Copyright 2026 The bingnn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bingnn/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bingnn/analyze.hpp"
#include "bingnn/checkpoint.hpp"
#include "bingnn/config.hpp"
#include "bingnn/data.hpp"
#include "bingnn/train.hpp"

namespace bingnn {

namespace {

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// "lo:hi" with optional signs.
std::pair<int, int> parse_range(const std::string& text) {
  const auto colon = text.find(':', text.empty() ? 0 : 1);
  if (colon == std::string::npos) throw std::invalid_argument("range must look like lo:hi");
  int lo = 0, hi = 0;
  const char* b = text.data();
  const auto r1 = std::from_chars(b, b + colon, lo);
  const auto r2 = std::from_chars(b + colon + 1, b + text.size(), hi);
  if (r1.ec != std::errc{} || r1.ptr != b + colon || r2.ec != std::errc{} ||
      r2.ptr != b + text.size()) {
    throw std::invalid_argument("range must look like lo:hi, got '" + text + "'");
  }
  return {lo, hi};
}

Dataset load_data(const std::string& path, std::size_t split_group) {
  Dataset d = load_gtxt(path);
  if (split_group > 0) d.split_group = split_group;
  return d;
}

struct TrainArgs {
  std::string config, data, out, log;
  std::size_t split_group = 0;
};

int cmd_train(const TrainArgs& a, std::ostream& out, std::ostream& err) {
  ModelConfig cfg;
  try {
    cfg = load_config(a.config);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  Dataset data;
  try {
    data = load_data(a.data, a.split_group);
    cfg = resolve_dims(cfg, data);
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  }
  BinGnnModel model(cfg);
  const auto tr = split_indices(data, Split::kTrain, cfg.seed);
  const auto va = split_indices(data, Split::kVal, cfg.seed);
  std::ostringstream log;
  FitResult result;
  try {
    FitOptions opts;
    opts.log = &log;
    result = fit(model, data, tr, va, opts);
  } catch (const NanLossError& e) {
    err << "aborted: " << e.what() << '\n';
    return kExitNan;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  }
  std::ofstream log_file(a.log, std::ios::trunc);
  if (!log_file || !(log_file << log.str())) {
    err << "cannot write log '" << a.log << "'\n";
    return kExitData;
  }
  try {
    save_checkpoint(model, a.out);
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kExitCheckpoint;
  }
  const std::string metric = metric_name(cfg.task);
  out << "best epoch " << result.best_epoch << '\n'
      << "train " << metric << ' ' << format_double(result.best_train) << '\n'
      << "val " << metric << ' ' << format_double(result.best_val) << '\n';
  return kExitOk;
}

int cmd_eval(const std::string& ckpt, const std::string& data_path, std::size_t split_group,
             std::ostream& out, std::ostream& err) {
  std::optional<BinGnnModel> model;
  try {
    model.emplace(load_checkpoint(ckpt));
  } catch (const CheckpointError& e) {
    err << "bad checkpoint: " << e.what() << '\n';
    return kExitCheckpoint;
  }
  Dataset data;
  try {
    data = load_data(data_path, split_group);
    const ModelConfig resolved = resolve_dims(model->config(), data);
    if (!(resolved == model->config())) throw DataError("data shape does not match the checkpoint");
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  }
  const std::string metric = metric_name(model->config().task);
  const std::pair<const char*, Split> splits[] = {
      {"train", Split::kTrain}, {"val", Split::kVal}, {"test", Split::kTest}};
  for (const auto& [name, which] : splits) {
    const auto idx = split_indices(data, which, model->config().seed);
    out << name << ' ' << metric << ' ' << format_double(evaluate(*model, data, idx)) << '\n';
  }
  return kExitOk;
}

int cmd_analyze(int max_size, const std::string& range, const std::string& out_path,
                std::ostream& out, std::ostream& err) {
  std::string csv;
  try {
    const auto [lo, hi] = parse_range(range);
    csv = format_report_csv(enumerate_collisions(max_size, lo, hi));
  } catch (const std::invalid_argument& e) {
    err << "analyze: " << e.what() << '\n';
    return kExitConfig;
  }
  if (out_path.empty()) {
    out << csv;
    return kExitOk;
  }
  std::ofstream f(out_path, std::ios::trunc);
  if (!f || !(f << csv)) {
    err << "cannot write '" << out_path << "'\n";
    return kExitData;
  }
  return kExitOk;
}

struct GenerateArgs {
  std::string kind, out, range = "1:4";
  std::uint64_t seed = 0;
  std::size_t count = 0;
  int max_degree = 4;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out, std::ostream& err) {
  try {
    Dataset d;
    if (a.kind == "pairs") {
      TopologyPairOptions o;
      o.max_degree = a.max_degree;
      std::tie(o.lo, o.hi) = parse_range(a.range);
      o.seed = a.seed;
      if (a.count) o.num_pairs = a.count;
      d = gen_topology_pairs(o);
    } else {
      d = gen_regression(a.seed, a.count ? a.count : 500);
    }
    write_gtxt(d, a.out);
    out << "wrote " << d.size() << " graphs to " << a.out << '\n';
  } catch (const std::invalid_argument& e) {
    err << "generate: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DataError& e) {
    err << "generate: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

int cmd_inspect(const std::string& ckpt, const std::string& config_path, bool compare,
                std::ostream& out, std::ostream& err) {
  std::optional<BinGnnModel> model;
  if (!ckpt.empty()) {
    try {
      model.emplace(load_checkpoint(ckpt));
    } catch (const CheckpointError& e) {
      err << "bad checkpoint: " << e.what() << '\n';
      return kExitCheckpoint;
    }
  } else {
    try {
      const ModelConfig cfg = load_config(config_path);
      if (cfg.in_dim <= 0 || cfg.out_dim <= 0) {
        throw ConfigError("inspect from a config needs explicit in_dim and out_dim");
      }
      model.emplace(cfg);
    } catch (const ConfigError& e) {
      err << "config error: " << e.what() << '\n';
      return kExitConfig;
    }
  }
  const SizeReport report = model->inspect();
  out << format_size_report(report);
  if (compare) {
    ModelConfig full = model->config();
    full.binary = false;
    full.agg_mode = AggMode{};
    ModelConfig vanilla = model->config();
    vanilla.binary = true;
    vanilla.agg_mode = AggMode{};
    const double full_kb = BinGnnModel(full).inspect().kilobytes();
    const double vanilla_kb = BinGnnModel(vanilla).inspect().kilobytes();
    out << "full-precision KB " << fixed(full_kb, 4) << '\n'
        << "vanilla binary KB " << fixed(vanilla_kb, 4) << '\n'
        << "full/vanilla ratio " << fixed(full_kb / vanilla_kb, 4) << '\n'
        << "overhead over vanilla " << fixed(100.0 * (report.kilobytes() / vanilla_kb - 1.0), 4)
        << "%\n";
  }
  return kExitOk;
}

}  // namespace

std::string format_size_report(const SizeReport& r) {
  std::ostringstream o;
  char line[160];
  std::snprintf(line, sizeof line, "%-24s %10s %-9s %12s\n", "tensor", "params", "precision", "bits");
  o << line;
  for (const SizeEntry& e : r.entries) {
    std::snprintf(line, sizeof line, "%-24s %10zu %-9s %12zu\n", e.name.c_str(), e.params,
                  e.precision == Precision::kFull ? "full" : "binary", e.bits);
    o << line;
  }
  o << "params " << r.param_count << " (full " << r.full_params << ", binary " << r.binary_params
    << ")\n"
    << "encoder bits " << r.encoder_bits << '\n'
    << "total bits " << r.total_bits << '\n'
    << "size KB " << fixed(r.kilobytes(), 4) << '\n';
  return o.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"bingnn: 1-bit graph neural networks with learnable aggregators", "bingnn"};
  app.require_subcommand(1);

  TrainArgs ta;
  auto* train = app.add_subcommand("train", "Train a model and write a checkpoint and metric log");
  train->add_option("--config", ta.config, "key=value model config")->required();
  train->add_option("--data", ta.data, "GTXT dataset")->required();
  train->add_option("--out", ta.out, "checkpoint path")->required();
  train->add_option("--log", ta.log, "metric CSV path")->required();
  train->add_option("--split-group", ta.split_group, "graphs per split unit (0: 1)");

  std::string ckpt, data_path;
  std::size_t eval_group = 0;
  auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint on every split");
  eval->add_option("--ckpt", ckpt, "checkpoint path")->required();
  eval->add_option("--data", data_path, "GTXT dataset")->required();
  eval->add_option("--split-group", eval_group, "graphs per split unit (0: 1)");

  int max_size = 0;
  std::string range, analyze_out;
  auto* analyze = app.add_subcommand("analyze", "Enumerate aggregator collisions");
  analyze->add_option("--max-size", max_size, "largest multiset size (<= 6)")->required();
  analyze->add_option("--range", range, "value range lo:hi (at most 9 values)")->required();
  analyze->add_option("--out", analyze_out, "CSV path (stdout if omitted)");

  GenerateArgs ga;
  auto* generate = app.add_subcommand("generate", "Write a synthetic GTXT dataset");
  generate->add_option("--kind", ga.kind, "pairs | regression")
      ->required()
      ->check(CLI::IsMember({"pairs", "regression"}));
  generate->add_option("--out", ga.out, "GTXT path")->required();
  generate->add_option("--seed", ga.seed, "generator seed");
  generate->add_option("--count", ga.count, "couples (pairs) or graphs (regression)");
  generate->add_option("--max-degree", ga.max_degree, "largest neighborhood (pairs)");
  generate->add_option("--range", ga.range, "node value range lo:hi (pairs)");

  std::string inspect_ckpt, inspect_config;
  bool compare = false;
  auto* inspect = app.add_subcommand("inspect", "Print the serialized size breakdown");
  auto* ick = inspect->add_option("--ckpt", inspect_ckpt, "checkpoint path");
  auto* icf = inspect->add_option("--config", inspect_config, "config with in_dim and out_dim");
  ick->excludes(icf);
  inspect->add_flag("--compare", compare, "also report full-precision and vanilla sizes");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitConfig;
  }

  if (*train) return cmd_train(ta, out, err);
  if (*eval) return cmd_eval(ckpt, data_path, eval_group, out, err);
  if (*analyze) return cmd_analyze(max_size, range, analyze_out, out, err);
  if (*generate) return cmd_generate(ga, out, err);
  if (*inspect) {
    if (inspect_ckpt.empty() && inspect_config.empty()) {
      err << "inspect: one of --ckpt or --config is required\n";
      return kExitConfig;
    }
    return cmd_inspect(inspect_ckpt, inspect_config, compare, out, err);
  }
  return kExitConfig;
}

}  // namespace bingnn
