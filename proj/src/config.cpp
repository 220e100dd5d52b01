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

#include "bingnn/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace bingnn {

std::string_view to_string(Task task) {
  switch (task) {
    case Task::kGraphRegression:
      return "graph_regression";
    case Task::kGraphClassification:
      return "graph_classification";
    case Task::kNodeClassification:
      return "node_classification";
  }
  return "?";
}

std::string_view to_string(Order order) {
  return order == Order::kTransformFirst ? "transform_first" : "aggregate_first";
}

std::string to_string(const AggMode& mode) {
  switch (mode.kind) {
    case AggMode::Kind::kFixed:
      return "fixed:" + std::string(to_string(mode.fixed));
    case AggMode::Kind::kMixedSum:
      return "mixed_sum";
    case AggMode::Kind::kMixedConcat:
      return "mixed_concat";
    case AggMode::Kind::kGna:
      return "gna";
    case AggMode::Kind::kAna:
      return "ana";
    case AggMode::Kind::kAnaHybrid:
      return "ana_hybrid:" + std::to_string(mode.hybrid_terms);
  }
  return "?";
}

AggMode parse_agg_mode(std::string_view text) {
  AggMode m;
  if (text.starts_with("fixed:")) {
    m.kind = AggMode::Kind::kFixed;
    try {
      m.fixed = parse_aggregator(text.substr(6));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("agg_mode: " + std::string(e.what()));
    }
  } else if (text == "mixed_sum") {
    m.kind = AggMode::Kind::kMixedSum;
  } else if (text == "mixed_concat") {
    m.kind = AggMode::Kind::kMixedConcat;
  } else if (text == "gna") {
    m.kind = AggMode::Kind::kGna;
  } else if (text == "ana") {
    m.kind = AggMode::Kind::kAna;
  } else if (text.starts_with("ana_hybrid:")) {
    m.kind = AggMode::Kind::kAnaHybrid;
    const std::string_view h = text.substr(11);
    if (h != "1" && h != "2" && h != "3") {
      throw ConfigError("agg_mode: hybrid term count must be 1, 2 or 3, got '" + std::string(h) +
                        "'");
    }
    m.hybrid_terms = h[0] - '0';
  } else {
    throw ConfigError("agg_mode: unknown mode '" + std::string(text) + "'");
  }
  return m;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError("config key '" + std::string(key) + "': bad value '" + std::string(v) + "'");
  }
  return out;
}

int parse_positive(std::string_view key, std::string_view v, int min_value) {
  const int x = parse_number<int>(key, v);
  if (x < min_value) {
    throw ConfigError("config key '" + std::string(key) + "': must be >= " +
                      std::to_string(min_value));
  }
  return x;
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("config key '" + std::string(key) + "': expected true/false, got '" +
                    std::string(v) + "'");
}

std::string format_float(float f) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, f);
  return std::string(buf, ptr);
}

}  // namespace

ModelConfig parse_config(std::string_view text) {
  ModelConfig c;
  using Setter = std::function<void(std::string_view, std::string_view)>;
  const std::map<std::string_view, Setter> setters = {
      {"task",
       [&](auto k, auto v) {
         if (v == "graph_regression")
           c.task = Task::kGraphRegression;
         else if (v == "graph_classification")
           c.task = Task::kGraphClassification;
         else if (v == "node_classification")
           c.task = Task::kNodeClassification;
         else
           throw ConfigError("config key '" + std::string(k) + "': unknown task '" +
                             std::string(v) + "'");
       }},
      {"layers", [&](auto k, auto v) { c.layers = parse_positive(k, v, 1); }},
      {"hidden_dim", [&](auto k, auto v) { c.hidden_dim = parse_positive(k, v, 1); }},
      {"in_dim", [&](auto k, auto v) { c.in_dim = parse_positive(k, v, 0); }},
      {"out_dim", [&](auto k, auto v) { c.out_dim = parse_positive(k, v, 0); }},
      {"readout_dim", [&](auto k, auto v) { c.readout_dim = parse_positive(k, v, 0); }},
      {"order",
       [&](auto k, auto v) {
         if (v == "transform_first")
           c.order = Order::kTransformFirst;
         else if (v == "aggregate_first")
           c.order = Order::kAggregateFirst;
         else
           throw ConfigError("config key '" + std::string(k) + "': unknown order '" +
                             std::string(v) + "'");
       }},
      {"agg_mode", [&](auto, auto v) { c.agg_mode = parse_agg_mode(v); }},
      {"pool",
       [&](auto k, auto v) {
         try {
           c.pool = parse_pool(v);
         } catch (const std::invalid_argument& e) {
           throw ConfigError("config key '" + std::string(k) + "': " + e.what());
         }
       }},
      {"binary", [&](auto k, auto v) { c.binary = parse_bool(k, v); }},
      {"bias", [&](auto k, auto v) { c.bias = parse_bool(k, v); }},
      {"tau", [&](auto k, auto v) { c.tau = parse_number<float>(k, v); }},
      {"tau_anneal", [&](auto k, auto v) { c.tau_anneal = parse_bool(k, v); }},
      {"gumbel_eval", [&](auto k, auto v) { c.gumbel_eval = parse_bool(k, v); }},
      {"beta_min", [&](auto k, auto v) { c.beta_min = parse_number<float>(k, v); }},
      {"beta_max", [&](auto k, auto v) { c.beta_max = parse_number<float>(k, v); }},
      {"lr", [&](auto k, auto v) { c.lr = parse_number<float>(k, v); }},
      {"beta1", [&](auto k, auto v) { c.beta1 = parse_number<float>(k, v); }},
      {"beta2", [&](auto k, auto v) { c.beta2 = parse_number<float>(k, v); }},
      {"eps", [&](auto k, auto v) { c.eps = parse_number<float>(k, v); }},
      {"epochs", [&](auto k, auto v) { c.epochs = parse_positive(k, v, 0); }},
      {"batch_size", [&](auto k, auto v) { c.batch_size = parse_positive(k, v, 1); }},
      {"seed", [&](auto k, auto v) { c.seed = parse_number<std::uint64_t>(k, v); }},
  };

  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown config key '" + std::string(key) + "'");
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError("duplicate config key '" + std::string(key) + "'");
    }
    it->second(key, value);
  }
  if (!seen.contains("task")) throw ConfigError("missing required config key 'task'");
  if (!(c.tau > 0.0f)) throw ConfigError("config key 'tau': must be > 0");
  if (!(c.beta_min > 0.0f) || !(c.beta_max > c.beta_min)) {
    throw ConfigError("config keys 'beta_min'/'beta_max': need 0 < beta_min < beta_max");
  }
  if (!(c.lr >= 0.0f)) throw ConfigError("config key 'lr': must be >= 0");
  return c;
}

ModelConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ModelConfig& c) {
  std::ostringstream o;
  o << "task=" << to_string(c.task) << '\n'
    << "layers=" << c.layers << '\n'
    << "hidden_dim=" << c.hidden_dim << '\n'
    << "in_dim=" << c.in_dim << '\n'
    << "out_dim=" << c.out_dim << '\n'
    << "readout_dim=" << c.readout_dim << '\n'
    << "order=" << to_string(c.order) << '\n'
    << "agg_mode=" << to_string(c.agg_mode) << '\n'
    << "pool=" << pool_to_string(c.pool) << '\n'
    << "binary=" << (c.binary ? "true" : "false") << '\n'
    << "bias=" << (c.bias ? "true" : "false") << '\n'
    << "tau=" << format_float(c.tau) << '\n'
    << "tau_anneal=" << (c.tau_anneal ? "true" : "false") << '\n'
    << "gumbel_eval=" << (c.gumbel_eval ? "true" : "false") << '\n'
    << "beta_min=" << format_float(c.beta_min) << '\n'
    << "beta_max=" << format_float(c.beta_max) << '\n'
    << "lr=" << format_float(c.lr) << '\n'
    << "beta1=" << format_float(c.beta1) << '\n'
    << "beta2=" << format_float(c.beta2) << '\n'
    << "eps=" << format_float(c.eps) << '\n'
    << "epochs=" << c.epochs << '\n'
    << "batch_size=" << c.batch_size << '\n'
    << "seed=" << c.seed << '\n';
  return o.str();
}

}  // namespace bingnn
