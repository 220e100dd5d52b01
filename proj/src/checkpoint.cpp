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

#include "bingnn/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "bingnn/binarize.hpp"

namespace bingnn {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes little-endian");

namespace {

class Writer {
 public:
  template <typename T>
  void put(T v) {
    const auto* p = reinterpret_cast<const std::uint8_t*>(&v);
    out_.insert(out_.end(), p, p + sizeof(T));
  }
  void put_bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    out_.insert(out_.end(), p, p + n);
  }
  void put_floats(const DenseTensor& t) { put_bytes(t.data(), t.size() * sizeof(float)); }
  // sign(W^T): one packed row per output column.
  void put_signs(const DenseTensor& w) {
    const PackedBitMatrix m = pack(sign_values(w.transposed()));
    put_bytes(m.words().data(), m.words().size() * sizeof(std::uint64_t));
  }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& in) : in_(in) {}

  template <typename T>
  T get() {
    T v;
    get_bytes(&v, sizeof(T));
    return v;
  }
  void get_bytes(void* dst, std::size_t n) {
    if (in_.size() - pos_ < n) throw CheckpointError("checkpoint truncated at byte " + std::to_string(pos_));
    std::memcpy(dst, in_.data() + pos_, n);
    pos_ += n;
  }
  void get_floats(DenseTensor& t) { get_bytes(t.data(), t.size() * sizeof(float)); }
  // Inverse of Writer::put_signs into a latent of shape [rows x cols].
  void get_signs(DenseTensor& w) {
    const std::size_t words_per_row = (w.rows() + 63) / 64;
    std::vector<std::uint64_t> words(w.cols() * words_per_row);
    get_bytes(words.data(), words.size() * sizeof(std::uint64_t));
    try {
      w = unpack(PackedBitMatrix::from_words(w.cols(), w.rows(), std::move(words))).transposed();
    } catch (const std::invalid_argument& e) {
      throw CheckpointError(std::string("checkpoint: ") + e.what());
    }
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  const std::vector<std::uint8_t>& in_;
  std::size_t pos_ = 0;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw CheckpointError("checkpoint: " + what);
}

}  // namespace

std::vector<std::uint8_t> serialize_checkpoint(const BinGnnModel& model) {
  Writer w;
  w.put_bytes(kCheckpointMagic, 4);
  w.put<std::uint32_t>(kCheckpointVersion);
  const std::string cfg = serialize_config(model.config());
  w.put<std::uint32_t>(static_cast<std::uint32_t>(cfg.size()));
  w.put_bytes(cfg.data(), cfg.size());
  w.put<std::uint32_t>(static_cast<std::uint32_t>(model.layers().size()));
  for (const Layer& l : model.layers()) {
    w.put<std::uint8_t>(static_cast<std::uint8_t>(l.spec.precision));
    w.put<std::uint64_t>(l.weight.value.rows());
    w.put<std::uint64_t>(l.weight.value.cols());
    w.put<std::uint8_t>(static_cast<std::uint8_t>(l.spec.agg.kind));
    w.put<std::uint8_t>(l.spec.agg.kind == AggMode::Kind::kAnaHybrid
                            ? static_cast<std::uint8_t>(l.spec.agg.hybrid_terms)
                            : static_cast<std::uint8_t>(l.spec.agg.fixed));
    if (l.spec.precision == Precision::kFull)
      w.put_floats(l.weight.value);
    else
      w.put_signs(l.weight.value);
    w.put<std::uint8_t>(l.has_bias);
    if (l.has_bias) w.put_floats(l.bias.value);
    w.put<std::uint8_t>(l.encoder.has_value());
    if (l.encoder) {
      w.put<std::uint64_t>(l.encoder->in_dim());
      w.put<std::uint64_t>(l.encoder->out_dim());
      w.put_signs(l.encoder->weight().value);
      w.put<std::uint8_t>(l.encoder->has_bias());
      if (l.encoder->has_bias()) w.put_floats(l.encoder->bias().value);
    }
  }
  w.put<std::uint64_t>(model.head_weight().value.rows());
  w.put<std::uint64_t>(model.head_weight().value.cols());
  w.put_floats(model.head_weight().value);
  w.put_floats(model.head_bias().value);
  return w.take();
}

BinGnnModel deserialize_checkpoint(const std::vector<std::uint8_t>& bytes) {
  Reader r(bytes);
  char magic[4];
  r.get_bytes(magic, 4);
  expect(std::memcmp(magic, kCheckpointMagic, 4) == 0, "bad magic");
  const auto version = r.get<std::uint32_t>();
  expect(version == kCheckpointVersion, "unsupported version " + std::to_string(version));
  std::string cfg(r.get<std::uint32_t>(), '\0');
  r.get_bytes(cfg.data(), cfg.size());
  ModelConfig config;
  try {
    config = parse_config(cfg);
  } catch (const ConfigError& e) {
    throw CheckpointError(std::string("checkpoint: embedded config: ") + e.what());
  }
  expect(config.in_dim > 0 && config.out_dim > 0, "embedded config has unresolved dims");
  BinGnnModel model(config);
  expect(r.get<std::uint32_t>() == model.layers().size(), "layer count mismatch");
  for (std::size_t i = 0; i < model.layers().size(); ++i) {
    Layer& l = model.layers()[i];
    const std::string where = "layer " + std::to_string(i) + ": ";
    expect(r.get<std::uint8_t>() == static_cast<std::uint8_t>(l.spec.precision),
           where + "precision mismatch");
    expect(r.get<std::uint64_t>() == l.weight.value.rows(), where + "weight rows mismatch");
    expect(r.get<std::uint64_t>() == l.weight.value.cols(), where + "weight cols mismatch");
    expect(r.get<std::uint8_t>() == static_cast<std::uint8_t>(l.spec.agg.kind),
           where + "aggregation mismatch");
    r.get<std::uint8_t>();
    if (l.spec.precision == Precision::kFull)
      r.get_floats(l.weight.value);
    else
      r.get_signs(l.weight.value);
    expect(r.get<std::uint8_t>() == l.has_bias, where + "bias flag mismatch");
    if (l.has_bias) r.get_floats(l.bias.value);
    expect(r.get<std::uint8_t>() == l.encoder.has_value(), where + "encoder flag mismatch");
    if (l.encoder) {
      expect(r.get<std::uint64_t>() == l.encoder->in_dim(), where + "encoder rows mismatch");
      expect(r.get<std::uint64_t>() == l.encoder->out_dim(), where + "encoder cols mismatch");
      r.get_signs(l.encoder->weight().value);
      expect(r.get<std::uint8_t>() == l.encoder->has_bias(), where + "encoder bias mismatch");
      if (l.encoder->has_bias()) r.get_floats(l.encoder->bias().value);
    }
  }
  expect(r.get<std::uint64_t>() == model.head_weight().value.rows(), "head rows mismatch");
  expect(r.get<std::uint64_t>() == model.head_weight().value.cols(), "head cols mismatch");
  r.get_floats(model.head_weight().value);
  r.get_floats(model.head_bias().value);
  expect(r.done(), "trailing bytes");
  for (Parameter* p : model.parameters()) p->zero_grad();
  return model;
}

void save_checkpoint(const BinGnnModel& model, const std::string& path) {
  const auto bytes = serialize_checkpoint(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write checkpoint '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("short write to checkpoint '" + path + "'");
}

BinGnnModel load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot read checkpoint '" + path + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return deserialize_checkpoint(bytes);
}

}  // namespace bingnn
