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

#include <cstring>
#include <fstream>
#include <random>
#include <vector>

#include "bingnn/binarize.hpp"
#include "bingnn/checkpoint.hpp"
#include "test_util.hpp"

using namespace bingnn;

namespace {

ModelConfig config(const char* agg, bool binary) {
  ModelConfig c;
  c.task = Task::kGraphClassification;
  c.layers = 4;
  c.hidden_dim = 70;
  c.in_dim = 3;
  c.out_dim = 2;
  c.agg_mode = parse_agg_mode(agg);
  c.binary = binary;
  c.seed = 11;
  return c;
}

DenseTensor eval(BinGnnModel& m, const std::vector<Graph>& gs) {
  GumbelSampler s(0, 4);
  Tape t;
  return m.forward(t, batch(gs), Mode::kEval, s).value();
}

}  // namespace

TEST_CASE("loaded model evaluates bit-identically") {
  std::mt19937_64 rng(1);
  std::vector<Graph> gs;
  for (int i = 0; i < 5; ++i) gs.push_back(testing::random_graph(6 + i, 3, rng));
  for (const char* agg : {"fixed:mean", "mixed_concat", "gna", "ana", "ana_hybrid:3"}) {
    for (bool binary : {false, true}) {
      BinGnnModel m(config(agg, binary));
      for (Parameter* p : m.parameters()) {
        p->value = testing::random_tensor(p->value.rows(), p->value.cols(), -0.5f, 0.5f, rng);
      }
      const std::vector<std::uint8_t> bytes = serialize_checkpoint(m);
      BinGnnModel back = deserialize_checkpoint(bytes);
      INFO(agg << " binary=" << binary);
      CHECK(back.config() == m.config());
      CHECK(eval(back, gs) == eval(m, gs));
      CHECK(serialize_checkpoint(back) == bytes);
    }
  }
}

TEST_CASE("full-precision tensors round-trip exactly and binary ones keep their signs") {
  BinGnnModel m(config("fixed:sum", true));
  std::mt19937_64 rng(2);
  for (Parameter* p : m.parameters()) {
    p->value = testing::random_tensor(p->value.rows(), p->value.cols(), -1.0f, 1.0f, rng);
  }
  BinGnnModel back = deserialize_checkpoint(serialize_checkpoint(m));
  for (std::size_t l = 0; l < m.layers().size(); ++l) {
    const DenseTensor& w = m.layers()[l].weight.value;
    if (m.layers()[l].spec.precision == Precision::kFull) {
      CHECK(back.layers()[l].weight.value == w);
    } else {
      CHECK(back.layers()[l].weight.value == sign_values(w));
    }
    CHECK(back.layers()[l].bias.value == m.layers()[l].bias.value);
  }
  CHECK(back.head_weight().value == m.head_weight().value);
}

TEST_CASE("binary tensors shrink the file") {
  const auto full = serialize_checkpoint(BinGnnModel(config("fixed:mean", false)));
  const auto bin = serialize_checkpoint(BinGnnModel(config("fixed:mean", true)));
  // two 70x70 layers: 4 bytes per value versus 70 rows of two words, plus
  // "false" being one byte longer than "true" in the embedded config.
  CHECK(full.size() - bin.size() == 2 * (70 * 70 * 4 - 70 * 2 * 8) + 1);
}

TEST_CASE("malformed checkpoints are rejected") {
  const std::vector<std::uint8_t> good = serialize_checkpoint(BinGnnModel(config("gna", true)));
  CHECK_NOTHROW(deserialize_checkpoint(good));

  auto bad = good;
  bad[0] = 'X';
  CHECK_THROWS_AS(deserialize_checkpoint(bad), CheckpointError);

  bad = good;
  bad[4] = 2;
  CHECK_THROWS_AS(deserialize_checkpoint(bad), CheckpointError);

  bad = good;
  bad.push_back(0);
  CHECK_THROWS_AS(deserialize_checkpoint(bad), CheckpointError);

  for (std::size_t len = 0; len < good.size(); len += 37) {
    const std::vector<std::uint8_t> cut(good.begin(), good.begin() + static_cast<std::ptrdiff_t>(len));
    CHECK_THROWS_AS(deserialize_checkpoint(cut), CheckpointError);
  }

  bad = good;
  const std::string cfg(reinterpret_cast<const char*>(bad.data() + 12), 40);
  const auto pos = cfg.find("task=");
  REQUIRE(pos != std::string::npos);
  bad[12 + pos] = 'X';
  CHECK_THROWS_AS(deserialize_checkpoint(bad), CheckpointError);
}

TEST_CASE("save and load through a file") {
  testing::TempDir dir("ckpt");
  BinGnnModel m(config("ana", true));
  save_checkpoint(m, dir.file("m.bin"));
  std::ifstream in(dir.file("m.bin"), std::ios::binary);
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), {});
  CHECK(bytes == serialize_checkpoint(m));
  CHECK(serialize_checkpoint(load_checkpoint(dir.file("m.bin"))) == bytes);
  CHECK_THROWS_AS(load_checkpoint(dir.file("none.bin")), CheckpointError);
}
