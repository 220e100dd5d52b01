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

#include "bingnn/autodiff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bingnn {

const DenseTensor& Var::value() const { return tape_->value(id_); }
bool Var::requires_grad() const { return tape_->requires_grad(id_); }

Var Tape::push(Node node) {
  nodes_.push_back(std::move(node));
  return Var(this, static_cast<std::uint32_t>(nodes_.size() - 1));
}

Var Tape::constant(DenseTensor value) {
  Node n;
  n.value = std::move(value);
  return push(std::move(n));
}

Var Tape::parameter(Parameter& p) {
  Node n;
  n.value = p.value;
  n.param = &p;
  n.requires_grad = record_;
  return push(std::move(n));
}

Var Tape::variable(DenseTensor value) {
  Node n;
  n.value = std::move(value);
  n.requires_grad = record_;
  return push(std::move(n));
}

Var Tape::record(DenseTensor value, std::span<const Var> inputs, BackwardFn fn) {
  Node n;
  n.value = std::move(value);
  if (record_) {
    for (const Var& in : inputs) {
      if (in.tape() != this) throw std::invalid_argument("Tape: input from another tape");
      n.requires_grad = n.requires_grad || nodes_[in.id()].requires_grad;
    }
    if (n.requires_grad) n.backward = std::move(fn);
  }
  return push(std::move(n));
}

DenseTensor& Tape::grad_buffer(std::uint32_t id) {
  Node& n = nodes_[id];
  if (n.grad.empty() && !n.value.empty()) n.grad = DenseTensor(n.value.rows(), n.value.cols());
  return n.grad;
}

DenseTensor Tape::gradient(Var v) const {
  const Node& n = nodes_[v.id()];
  if (n.grad.empty()) return DenseTensor(n.value.rows(), n.value.cols());
  return n.grad;
}

void Tape::backward(Var loss) {
  if (loss.tape() != this) throw std::invalid_argument("backward: loss from another tape");
  const DenseTensor& lv = nodes_[loss.id()].value;
  if (lv.rows() != 1 || lv.cols() != 1) {
    throw std::invalid_argument("backward: loss must be 1x1, got " + lv.shape_string());
  }
  if (!record_) throw std::logic_error("backward: tape was not recording");
  grad_buffer(loss.id())[0] += 1.0f;
  for (std::size_t i = loss.id() + 1; i-- > 0;) {
    Node& n = nodes_[i];
    if (n.grad.empty()) continue;
    if (n.backward) n.backward(*this, static_cast<std::uint32_t>(i));
    if (n.param != nullptr) n.param->grad.accumulate(n.grad);
  }
}

namespace {

enum class Broadcast { kSame, kRow, kCol, kScalar };

Broadcast broadcast_mode(const DenseTensor& a, const DenseTensor& b, const char* op) {
  if (a.same_shape(b)) return Broadcast::kSame;
  if (b.rows() == 1 && b.cols() == 1) return Broadcast::kScalar;
  if (b.rows() == 1 && b.cols() == a.cols()) return Broadcast::kRow;
  if (b.cols() == 1 && b.rows() == a.rows()) return Broadcast::kCol;
  throw std::invalid_argument(std::string(op) + ": cannot broadcast " + b.shape_string() +
                              " onto " + a.shape_string());
}

inline std::size_t bindex(Broadcast m, std::size_t r, std::size_t c, std::size_t cols) {
  switch (m) {
    case Broadcast::kSame:
      return r * cols + c;
    case Broadcast::kRow:
      return c;
    case Broadcast::kCol:
      return r;
    case Broadcast::kScalar:
      return 0;
  }
  return 0;
}

template <typename F>
DenseTensor map_values(const DenseTensor& a, F f) {
  DenseTensor out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f(a[i]);
  return out;
}

}  // namespace

Var matmul(Var a, Var b) {
  Tape& t = *a.tape();
  DenseTensor out = matmul_values(a.value(), b.value());
  const auto ia = a.id(), ib = b.id();
  return t.record(std::move(out), {a, b}, [ia, ib](Tape& t, std::uint32_t self) {
    const DenseTensor& g = t.grad_buffer(self);
    if (t.requires_grad(ia)) {
      t.grad_buffer(ia).accumulate(matmul_values(g, t.value(ib).transposed()));
    }
    if (t.requires_grad(ib)) {
      t.grad_buffer(ib).accumulate(matmul_values(t.value(ia).transposed(), g));
    }
  });
}

Var add(Var a, Var b) {
  Tape& t = *a.tape();
  const DenseTensor& av = a.value();
  const DenseTensor& bv = b.value();
  const Broadcast mode = broadcast_mode(av, bv, "add");
  DenseTensor out(av.rows(), av.cols());
  for (std::size_t r = 0; r < av.rows(); ++r)
    for (std::size_t c = 0; c < av.cols(); ++c)
      out(r, c) = av(r, c) + bv[bindex(mode, r, c, av.cols())];
  const auto ia = a.id(), ib = b.id();
  return t.record(std::move(out), {a, b}, [ia, ib, mode](Tape& t, std::uint32_t self) {
    const DenseTensor& g = t.grad_buffer(self);
    if (t.requires_grad(ia)) t.grad_buffer(ia).accumulate(g);
    if (t.requires_grad(ib)) {
      DenseTensor& gb = t.grad_buffer(ib);
      for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < g.cols(); ++c) gb[bindex(mode, r, c, g.cols())] += g(r, c);
    }
  });
}

Var sub(Var a, Var b) { return add(a, scalar_mul(b, -1.0f)); }

Var mul_elem(Var a, Var b) {
  Tape& t = *a.tape();
  const DenseTensor& av = a.value();
  const DenseTensor& bv = b.value();
  const Broadcast mode = broadcast_mode(av, bv, "mul_elem");
  DenseTensor out(av.rows(), av.cols());
  for (std::size_t r = 0; r < av.rows(); ++r)
    for (std::size_t c = 0; c < av.cols(); ++c)
      out(r, c) = av(r, c) * bv[bindex(mode, r, c, av.cols())];
  const auto ia = a.id(), ib = b.id();
  return t.record(std::move(out), {a, b}, [ia, ib, mode](Tape& t, std::uint32_t self) {
    const DenseTensor& g = t.grad_buffer(self);
    const DenseTensor& av = t.value(ia);
    const DenseTensor& bv = t.value(ib);
    const std::size_t cols = g.cols();
    if (t.requires_grad(ia)) {
      DenseTensor& ga = t.grad_buffer(ia);
      for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < cols; ++c) ga(r, c) += g(r, c) * bv[bindex(mode, r, c, cols)];
    }
    if (t.requires_grad(ib)) {
      DenseTensor& gb = t.grad_buffer(ib);
      for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < cols; ++c) gb[bindex(mode, r, c, cols)] += g(r, c) * av(r, c);
    }
  });
}

Var scalar_mul(Var a, float s) {
  Tape& t = *a.tape();
  DenseTensor out = map_values(a.value(), [s](float x) { return x * s; });
  const auto ia = a.id();
  return t.record(std::move(out), {a}, [ia, s](Tape& t, std::uint32_t self) {
    const DenseTensor& g = t.grad_buffer(self);
    DenseTensor& ga = t.grad_buffer(ia);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * s;
  });
}

Var relu(Var a) {
  Tape& t = *a.tape();
  DenseTensor out = map_values(a.value(), [](float x) { return x < 0.0f ? 0.0f : x; });
  const auto ia = a.id();
  return t.record(std::move(out), {a}, [ia](Tape& t, std::uint32_t self) {
    const DenseTensor& g = t.grad_buffer(self);
    const DenseTensor& x = t.value(ia);
    DenseTensor& ga = t.grad_buffer(ia);
    for (std::size_t i = 0; i < g.size(); ++i)
      if (x[i] > 0.0f) ga[i] += g[i];
  });
}

Var exp(Var a) {
  Tape& t = *a.tape();
  DenseTensor out = map_values(a.value(), [](float x) { return std::exp(x); });
  const auto ia = a.id();
  return t.record(std::move(out), {a}, [ia](Tape& t, std::uint32_t self) {
    const DenseTensor& g = t.grad_buffer(self);
    const DenseTensor& y = t.value(self);
    DenseTensor& ga = t.grad_buffer(ia);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * y[i];
  });
}

Var log(Var a) {
  Tape& t = *a.tape();
  const DenseTensor& av = a.value();
  for (std::size_t i = 0; i < av.size(); ++i) {
    if (!(av[i] > 0.0f)) {
      throw std::domain_error("log: non-positive input " + std::to_string(av[i]) +
                              " at flat index " + std::to_string(i));
    }
  }
  DenseTensor out = map_values(av, [](float x) { return std::log(x); });
  const auto ia = a.id();
  return t.record(std::move(out), {a}, [ia](Tape& t, std::uint32_t self) {
    const DenseTensor& g = t.grad_buffer(self);
    const DenseTensor& x = t.value(ia);
    DenseTensor& ga = t.grad_buffer(ia);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] / x[i];
  });
}

Var sigmoid(Var a) {
  Tape& t = *a.tape();
  DenseTensor out = map_values(a.value(), [](float x) {
    if (x >= 0.0f) return 1.0f / (1.0f + std::exp(-x));
    const float e = std::exp(x);
    return e / (1.0f + e);
  });
  const auto ia = a.id();
  return t.record(std::move(out), {a}, [ia](Tape& t, std::uint32_t self) {
    const DenseTensor& g = t.grad_buffer(self);
    const DenseTensor& y = t.value(self);
    DenseTensor& ga = t.grad_buffer(ia);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * y[i] * (1.0f - y[i]);
  });
}

Var softmax(Var a, float temperature) {
  if (!(temperature > 0.0f)) {
    throw std::invalid_argument("softmax: temperature must be positive, got " +
                                std::to_string(temperature));
  }
  Tape& t = *a.tape();
  const DenseTensor& av = a.value();
  DenseTensor out(av.rows(), av.cols());
  const float inv_t = 1.0f / temperature;
  for (std::size_t r = 0; r < av.rows(); ++r) {
    auto in = av.row(r);
    auto o = out.row(r);
    const float m = *std::max_element(in.begin(), in.end());
    float z = 0.0f;
    for (std::size_t c = 0; c < in.size(); ++c) {
      o[c] = std::exp((in[c] - m) * inv_t);
      z += o[c];
    }
    for (float& v : o) v /= z;
  }
  const auto ia = a.id();
  return t.record(std::move(out), {a}, [ia, inv_t](Tape& t, std::uint32_t self) {
    const DenseTensor& g = t.grad_buffer(self);
    const DenseTensor& y = t.value(self);
    DenseTensor& ga = t.grad_buffer(ia);
    for (std::size_t r = 0; r < g.rows(); ++r) {
      float dot = 0.0f;
      for (std::size_t c = 0; c < g.cols(); ++c) dot += g(r, c) * y(r, c);
      for (std::size_t c = 0; c < g.cols(); ++c)
        ga(r, c) += inv_t * y(r, c) * (g(r, c) - dot);
    }
  });
}

Var sum_rows(Var a) {
  Tape& t = *a.tape();
  const DenseTensor& av = a.value();
  DenseTensor out(1, av.cols());
  for (std::size_t r = 0; r < av.rows(); ++r)
    for (std::size_t c = 0; c < av.cols(); ++c) out[c] += av(r, c);
  const auto ia = a.id();
  return t.record(std::move(out), {a}, [ia](Tape& t, std::uint32_t self) {
    const DenseTensor& g = t.grad_buffer(self);
    DenseTensor& ga = t.grad_buffer(ia);
    for (std::size_t r = 0; r < ga.rows(); ++r)
      for (std::size_t c = 0; c < ga.cols(); ++c) ga(r, c) += g[c];
  });
}

Var mean_rows(Var a) {
  const std::size_t n = a.rows();
  if (n == 0) throw std::invalid_argument("mean_rows: no rows");
  return scalar_mul(sum_rows(a), 1.0f / static_cast<float>(n));
}

Var max_rows(Var a) {
  Tape& t = *a.tape();
  const DenseTensor& av = a.value();
  if (av.rows() == 0) throw std::invalid_argument("max_rows: no rows");
  DenseTensor out(1, av.cols());
  std::vector<std::size_t> arg(av.cols(), 0);
  for (std::size_t c = 0; c < av.cols(); ++c) {
    float best = av(0, c);
    for (std::size_t r = 1; r < av.rows(); ++r) {
      if (av(r, c) > best) {
        best = av(r, c);
        arg[c] = r;
      }
    }
    out[c] = best;
  }
  const auto ia = a.id();
  return t.record(std::move(out), {a}, [ia, arg = std::move(arg)](Tape& t, std::uint32_t self) {
    const DenseTensor& g = t.grad_buffer(self);
    DenseTensor& ga = t.grad_buffer(ia);
    for (std::size_t c = 0; c < arg.size(); ++c) ga(arg[c], c) += g[c];
  });
}

Var sum_all(Var a) {
  Tape& t = *a.tape();
  const DenseTensor& av = a.value();
  float s = 0.0f;
  for (float v : av.values()) s += v;
  const auto ia = a.id();
  return t.record(DenseTensor(1, 1, s), {a}, [ia](Tape& t, std::uint32_t self) {
    const float g = t.grad_buffer(self)[0];
    DenseTensor& ga = t.grad_buffer(ia);
    for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += g;
  });
}

Var slice_cols(Var a, std::size_t begin, std::size_t end) {
  Tape& t = *a.tape();
  const DenseTensor& av = a.value();
  if (begin > end || end > av.cols()) {
    throw std::out_of_range("slice_cols: [" + std::to_string(begin) + ", " +
                            std::to_string(end) + ") outside " + av.shape_string());
  }
  const std::size_t w = end - begin;
  DenseTensor out(av.rows(), w);
  for (std::size_t r = 0; r < av.rows(); ++r)
    for (std::size_t c = 0; c < w; ++c) out(r, c) = av(r, begin + c);
  const auto ia = a.id();
  return t.record(std::move(out), {a}, [ia, begin, w](Tape& t, std::uint32_t self) {
    const DenseTensor& g = t.grad_buffer(self);
    DenseTensor& ga = t.grad_buffer(ia);
    for (std::size_t r = 0; r < g.rows(); ++r)
      for (std::size_t c = 0; c < w; ++c) ga(r, begin + c) += g(r, c);
  });
}

Var concat_cols(std::span<const Var> parts) {
  if (parts.empty()) throw std::invalid_argument("concat_cols: no inputs");
  Tape& t = *parts.front().tape();
  const std::size_t rows = parts.front().rows();
  std::size_t total = 0;
  for (const Var& p : parts) {
    if (p.rows() != rows) throw std::invalid_argument("concat_cols: row count mismatch");
    total += p.cols();
  }
  DenseTensor out(rows, total);
  std::vector<std::uint32_t> ids;
  std::vector<std::size_t> offsets;
  std::size_t off = 0;
  for (const Var& p : parts) {
    const DenseTensor& pv = p.value();
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < pv.cols(); ++c) out(r, off + c) = pv(r, c);
    ids.push_back(p.id());
    offsets.push_back(off);
    off += pv.cols();
  }
  return t.record(std::move(out), parts, [ids, offsets](Tape& t, std::uint32_t self) {
    const DenseTensor& g = t.grad_buffer(self);
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (!t.requires_grad(ids[k])) continue;
      DenseTensor& gp = t.grad_buffer(ids[k]);
      for (std::size_t r = 0; r < gp.rows(); ++r)
        for (std::size_t c = 0; c < gp.cols(); ++c) gp(r, c) += g(r, offsets[k] + c);
    }
  });
}

Var gather_rows(Var a, std::span<const std::size_t> rows) {
  Tape& t = *a.tape();
  const DenseTensor& av = a.value();
  DenseTensor out(rows.size(), av.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= av.rows()) throw std::out_of_range("gather_rows: row index out of range");
    for (std::size_t c = 0; c < av.cols(); ++c) out(i, c) = av(rows[i], c);
  }
  const auto ia = a.id();
  std::vector<std::size_t> idx(rows.begin(), rows.end());
  return t.record(std::move(out), {a}, [ia, idx = std::move(idx)](Tape& t, std::uint32_t self) {
    const DenseTensor& g = t.grad_buffer(self);
    DenseTensor& ga = t.grad_buffer(ia);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t c = 0; c < g.cols(); ++c) ga(idx[i], c) += g(i, c);
  });
}

Var segment_mean(Var a, std::span<const std::size_t> segment, std::size_t num_segments) {
  Tape& t = *a.tape();
  const DenseTensor& av = a.value();
  if (segment.size() != av.rows()) {
    throw std::invalid_argument("segment_mean: segment ids do not cover every row");
  }
  std::vector<float> counts(num_segments, 0.0f);
  DenseTensor out(num_segments, av.cols());
  for (std::size_t r = 0; r < av.rows(); ++r) {
    const std::size_t s = segment[r];
    if (s >= num_segments) throw std::out_of_range("segment_mean: segment id out of range");
    counts[s] += 1.0f;
    for (std::size_t c = 0; c < av.cols(); ++c) out(s, c) += av(r, c);
  }
  for (std::size_t s = 0; s < num_segments; ++s)
    if (counts[s] > 0.0f)
      for (std::size_t c = 0; c < av.cols(); ++c) out(s, c) /= counts[s];
  const auto ia = a.id();
  std::vector<std::size_t> seg(segment.begin(), segment.end());
  return t.record(std::move(out), {a},
                  [ia, seg = std::move(seg), counts = std::move(counts)](Tape& t,
                                                                         std::uint32_t self) {
                    const DenseTensor& g = t.grad_buffer(self);
                    DenseTensor& ga = t.grad_buffer(ia);
                    for (std::size_t r = 0; r < seg.size(); ++r)
                      for (std::size_t c = 0; c < g.cols(); ++c)
                        ga(r, c) += g(seg[r], c) / counts[seg[r]];
                  });
}

}  // namespace bingnn
