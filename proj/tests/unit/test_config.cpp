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


#include <doctest.h>

#include <fstream>
#include <string>

#include "bingnn/config.hpp"
#include "test_util.hpp"

using namespace bingnn;

TEST_CASE("minimal config takes the defaults") {
  const ModelConfig c = parse_config("task=graph_regression\n");
  CHECK(c == ModelConfig{});
  CHECK(c.effective_readout_dim() == c.hidden_dim);
}

TEST_CASE("keys, comments and whitespace") {
  const ModelConfig c = parse_config(
      "# comment\n"
      "task = node_classification  # trailing\n"
      "\n"
      "layers=2\n"
      "hidden_dim=16\r\n"
      "order=aggregate_first\n"
      "agg_mode=ana_hybrid:3\n"
      "pool=sum,mean\n"
      "binary=false\n"
      "tau=0.5\n"
      "seed=18446744073709551615\n");
  CHECK(c.task == Task::kNodeClassification);
  CHECK(c.layers == 2);
  CHECK(c.hidden_dim == 16);
  CHECK(c.order == Order::kAggregateFirst);
  CHECK(c.agg_mode.kind == AggMode::Kind::kAnaHybrid);
  CHECK(c.agg_mode.hybrid_terms == 3);
  CHECK(c.pool == std::vector<AggregatorKind>{AggregatorKind::kMean, AggregatorKind::kSum});
  CHECK_FALSE(c.binary);
  CHECK(c.tau == 0.5f);
  CHECK(c.seed == 18446744073709551615ull);
}

TEST_CASE("agg mode strings round-trip") {
  for (const char* s : {"fixed:mean", "fixed:var", "mixed_sum", "mixed_concat", "gna", "ana",
                        "ana_hybrid:1", "ana_hybrid:2", "ana_hybrid:3"}) {
    CHECK(to_string(parse_agg_mode(s)) == s);
  }
  CHECK(parse_agg_mode("gna").is_meta());
  CHECK_FALSE(parse_agg_mode("mixed_sum").is_meta());
  CHECK_THROWS_AS(parse_agg_mode("ana_hybrid:4"), ConfigError);
  CHECK_THROWS_AS(parse_agg_mode("fixed:median"), ConfigError);
  CHECK_THROWS_AS(parse_agg_mode("attention"), ConfigError);
}

TEST_CASE("serialize then parse is the identity") {
  ModelConfig c;
  c.task = Task::kGraphClassification;
  c.layers = 3;
  c.hidden_dim = 24;
  c.readout_dim = 5;
  c.agg_mode = parse_agg_mode("fixed:std");
  c.pool = {AggregatorKind::kMax, AggregatorKind::kVar};
  c.bias = false;
  c.tau = 0.37f;
  c.tau_anneal = true;
  c.beta_min = 0.25f;
  c.beta_max = 7.5f;
  c.lr = 3e-4f;
  c.eps = 1e-7f;
  c.seed = 12345;
  CHECK(parse_config(serialize_config(c)) == c);
  CHECK(serialize_config(parse_config(serialize_config(c))) == serialize_config(c));
}

TEST_CASE("errors name the key") {
  auto message = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("layers=2\n").find("task") != std::string::npos);
  CHECK(message("task=graph_regression\nwidth=3\n").find("width") != std::string::npos);
  CHECK(message("task=graph_regression\nlayers=two\n").find("layers") != std::string::npos);
  CHECK(message("task=graph_regression\nlayers=0\n").find("layers") != std::string::npos);
  CHECK(message("task=graph_regression\nbinary=yes\n").find("binary") != std::string::npos);
  CHECK(message("task=graph_regression\ntau=0\n").find("tau") != std::string::npos);
  CHECK(message("task=graph_regression\nlr=1\nlr=2\n").find("lr") != std::string::npos);
  CHECK(message("task=graph_regression\nbeta_min=5\nbeta_max=1\n").find("beta_min") !=
        std::string::npos);
  CHECK(message("task=video\n").find("task") != std::string::npos);
  CHECK(message("task=graph_regression\npool=mean,foo\n").find("pool") != std::string::npos);
  CHECK(message("task=graph_regression\nnonsense\n").find("line 2") != std::string::npos);
}

TEST_CASE("load from a file") {
  testing::TempDir dir("config");
  const std::string path = dir.file("c.cfg");
  std::ofstream(path) << "task=graph_classification\nepochs=7\n";
  const ModelConfig c = load_config(path);
  CHECK(c.task == Task::kGraphClassification);
  CHECK(c.epochs == 7);
  CHECK_THROWS_AS(load_config(dir.file("missing.cfg")), ConfigError);
}
