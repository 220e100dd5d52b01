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

#include "bingnn/train.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>

namespace bingnn {

namespace {

constexpr std::uint64_t kGumbelStream = 2;
constexpr std::uint64_t kShuffleStream = 3;
constexpr std::uint64_t kEvalStream = 4;
constexpr std::size_t kEvalBatch = 64;
constexpr float kTauFloor = 0.1f;

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), 0u};
  return std::mt19937_64(seq);
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

GraphBatch make_batch(const Dataset& data, std::span<const std::size_t> idx) {
  std::vector<const Graph*> ptrs;
  ptrs.reserve(idx.size());
  for (std::size_t i : idx) ptrs.push_back(&data.graphs[i]);
  return batch(std::span<const Graph* const>(ptrs));
}

std::vector<int> batch_classes(const GraphBatch& b, Task task) {
  if (task == Task::kNodeClassification) return b.graph.node_labels();
  std::vector<int> cls(b.num_graphs);
  for (std::size_t k = 0; k < b.num_graphs; ++k) cls[k] = static_cast<int>(b.targets(k, 0));
  return cls;
}

std::size_t row_argmax(const DenseTensor& t, std::size_t r) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < t.cols(); ++c)
    if (t(r, c) > t(r, best)) best = c;
  return best;
}

}  // namespace

Var mae_loss(Var pred, const DenseTensor& target) {
  const DenseTensor& p = pred.value();
  if (!p.same_shape(target)) {
    throw std::invalid_argument("mae_loss: prediction " + p.shape_string() + " vs target " +
                                target.shape_string());
  }
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(static_cast<double>(p[i]) - target[i]);
  const double n = static_cast<double>(p.size());
  const auto ip = pred.id();
  return pred.tape()->record(
      DenseTensor(1, 1, static_cast<float>(s / n)), {pred},
      [ip, target, n](Tape& t, std::uint32_t self) {
        const float g = t.grad_buffer(self)[0];
        const DenseTensor& p = t.value(ip);
        DenseTensor& gp = t.grad_buffer(ip);
        for (std::size_t i = 0; i < p.size(); ++i) {
          const float d = p[i] - target[i];
          const float sgn = d > 0.0f ? 1.0f : d < 0.0f ? -1.0f : 0.0f;
          gp[i] += static_cast<float>(g * sgn / n);
        }
      });
}

Var cross_entropy_loss(Var logits, std::span<const int> classes) {
  const DenseTensor& z = logits.value();
  if (classes.size() != z.rows()) {
    throw std::invalid_argument("cross_entropy_loss: " + std::to_string(classes.size()) +
                                " classes for " + std::to_string(z.rows()) + " rows");
  }
  DenseTensor prob(z.rows(), z.cols());
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t r = 0; r < z.rows(); ++r) {
    if (classes[r] < 0) continue;
    if (static_cast<std::size_t>(classes[r]) >= z.cols()) {
      throw std::out_of_range("cross_entropy_loss: class " + std::to_string(classes[r]) +
                              " with " + std::to_string(z.cols()) + " logits");
    }
    double m = z(r, 0);
    for (float v : z.row(r)) m = std::max(m, static_cast<double>(v));
    double s = 0.0;
    for (float v : z.row(r)) s += std::exp(v - m);
    for (std::size_t c = 0; c < z.cols(); ++c) prob(r, c) = static_cast<float>(std::exp(z(r, c) - m) / s);
    total += -(z(r, classes[r]) - m - std::log(s));
    ++count;
  }
  if (count == 0) throw std::invalid_argument("cross_entropy_loss: no labeled rows");
  const double n = static_cast<double>(count);
  std::vector<int> cls(classes.begin(), classes.end());
  const auto iz = logits.id();
  return logits.tape()->record(
      DenseTensor(1, 1, static_cast<float>(total / n)), {logits},
      [iz, prob = std::move(prob), cls = std::move(cls), n](Tape& t, std::uint32_t self) {
        const float g = t.grad_buffer(self)[0];
        DenseTensor& gz = t.grad_buffer(iz);
        for (std::size_t r = 0; r < prob.rows(); ++r) {
          if (cls[r] < 0) continue;
          for (std::size_t c = 0; c < prob.cols(); ++c) {
            const float onehot = static_cast<int>(c) == cls[r] ? 1.0f : 0.0f;
            gz(r, c) += static_cast<float>(g * (prob(r, c) - onehot) / n);
          }
        }
      });
}

Adam::Adam(std::vector<Parameter*> params, float lr, float beta1, float beta2, float eps)
    : params_(std::move(params)), lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {
  for (const Parameter* p : params_) {
    m_.emplace_back(p->value.rows(), p->value.cols());
    v_.emplace_back(p->value.rows(), p->value.cols());
  }
}

void Adam::step() {
  ++t_;
  const double bc1 = 1.0 - std::pow(static_cast<double>(beta1_), static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(static_cast<double>(beta2_), static_cast<double>(t_));
  for (std::size_t k = 0; k < params_.size(); ++k) {
    DenseTensor& w = params_[k]->value;
    const DenseTensor& g = params_[k]->grad;
    DenseTensor& m = m_[k];
    DenseTensor& v = v_[k];
    for (std::size_t i = 0; i < w.size(); ++i) {
      m[i] = beta1_ * m[i] + (1.0f - beta1_) * g[i];
      v[i] = beta2_ * v[i] + (1.0f - beta2_) * g[i] * g[i];
      const double mhat = m[i] / bc1;
      const double vhat = v[i] / bc2;
      w[i] -= static_cast<float>(lr_ * mhat / (std::sqrt(vhat) + eps_));
    }
  }
}

void Adam::zero_grad() {
  for (Parameter* p : params_) p->zero_grad();
}

std::string metric_name(Task task) {
  return task == Task::kGraphRegression ? "mae" : "accuracy";
}

bool higher_is_better(Task task) { return task != Task::kGraphRegression; }

ModelConfig resolve_dims(ModelConfig c, const Dataset& data) {
  if (data.empty()) throw DataError("dataset is empty");
  const std::size_t d = data.graphs.front().feat_dim();
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Graph& g = data.graphs[i];
    if (g.feat_dim() != d) throw DataError("graph " + std::to_string(i) + " has a different feature width");
    if (c.task != Task::kNodeClassification && !g.has_target()) {
      throw DataError("graph " + std::to_string(i) + " has no target");
    }
  }
  if (c.in_dim == 0) c.in_dim = static_cast<int>(d);
  if (static_cast<std::size_t>(c.in_dim) != d) {
    throw DataError("config in_dim " + std::to_string(c.in_dim) + " != data feature width " +
                    std::to_string(d));
  }
  int classes = 0;
  if (c.task == Task::kGraphClassification) {
    for (const Graph& g : data.graphs) {
      const float t = g.graph_target()[0];
      if (t < 0.0f || t != std::floor(t)) throw DataError("graph class targets must be non-negative integers");
      classes = std::max(classes, static_cast<int>(t) + 1);
    }
  } else if (c.task == Task::kNodeClassification) {
    for (const Graph& g : data.graphs)
      for (int l : g.node_labels()) classes = std::max(classes, l + 1);
    if (classes == 0) throw DataError("node classification data has no labels");
  }
  if (c.out_dim == 0) {
    c.out_dim = c.task == Task::kGraphRegression
                    ? static_cast<int>(data.graphs.front().graph_target().size())
                    : classes;
  }
  if (c.task == Task::kGraphRegression) {
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (data.graphs[i].graph_target().size() != static_cast<std::size_t>(c.out_dim)) {
        throw DataError("graph " + std::to_string(i) + " target width != out_dim");
      }
    }
  } else if (classes > c.out_dim) {
    throw DataError("data has " + std::to_string(classes) + " classes but out_dim is " +
                    std::to_string(c.out_dim));
  }
  return c;
}

Var batch_loss(Tape& tape, BinGnnModel& model, const GraphBatch& b, Mode mode,
               GumbelSampler& sampler, const ForwardOptions& fopts) {
  Var out = model.forward(tape, b, mode, sampler, fopts);
  const Task task = model.config().task;
  if (task == Task::kGraphRegression) return mae_loss(out, b.targets);
  return cross_entropy_loss(out, batch_classes(b, task));
}

double evaluate(BinGnnModel& model, const Dataset& data, std::span<const std::size_t> indices) {
  const Task task = model.config().task;
  GumbelSampler sampler(model.config().seed, kEvalStream, model.config().tau);
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t start = 0; start < indices.size(); start += kEvalBatch) {
    const auto chunk = indices.subspan(start, std::min(kEvalBatch, indices.size() - start));
    const GraphBatch b = make_batch(data, chunk);
    Tape tape(false);
    const DenseTensor& out = model.forward(tape, b, Mode::kEval, sampler).value();
    if (task == Task::kGraphRegression) {
      for (std::size_t i = 0; i < out.size(); ++i)
        total += std::abs(static_cast<double>(out[i]) - b.targets[i]);
      count += out.size();
    } else {
      const auto cls = batch_classes(b, task);
      for (std::size_t r = 0; r < out.rows(); ++r) {
        if (cls[r] < 0) continue;
        total += row_argmax(out, r) == static_cast<std::size_t>(cls[r]) ? 1.0 : 0.0;
        ++count;
      }
    }
  }
  return count ? total / static_cast<double>(count) : 0.0;
}

FitResult fit(BinGnnModel& model, const Dataset& data, std::span<const std::size_t> train_idx,
              std::span<const std::size_t> val_idx, const FitOptions& opts) {
  if (train_idx.empty() || val_idx.empty()) {
    throw DataError("fit: train and validation splits must be non-empty");
  }
  const ModelConfig& cfg = model.config();
  const std::string metric = metric_name(cfg.task);
  const bool higher = higher_is_better(cfg.task);
  Adam adam(model.parameters(), cfg.lr, cfg.beta1, cfg.beta2, cfg.eps);
  adam.zero_grad();
  GumbelSampler sampler(cfg.seed, kGumbelStream, cfg.tau);
  auto shuffle_rng = make_rng(cfg.seed, kShuffleStream);
  std::vector<std::size_t> order(train_idx.begin(), train_idx.end());
  const std::size_t bs = static_cast<std::size_t>(cfg.batch_size);

  FitResult result;
  std::vector<DenseTensor> snapshot;
  auto take_snapshot = [&] {
    snapshot.clear();
    for (const Parameter* p : model.parameters()) snapshot.push_back(p->value);
  };
  take_snapshot();
  if (opts.log) *opts.log << "epoch,split,metric_name,value\n";

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    if (cfg.tau_anneal) {
      const float frac = cfg.epochs > 1 ? static_cast<float>(epoch - 1) / (cfg.epochs - 1) : 1.0f;
      sampler.set_tau(cfg.tau + (kTauFloor - cfg.tau) * frac);
    }
    for (std::size_t i = order.size(); i > 1; --i) {
      std::uniform_int_distribution<std::size_t> pick(0, i - 1);
      std::swap(order[i - 1], order[pick(shuffle_rng)]);
    }
    for (std::size_t start = 0; start < order.size(); start += bs) {
      const std::span<const std::size_t> chunk(order.data() + start,
                                               std::min(bs, order.size() - start));
      const GraphBatch b = make_batch(data, chunk);
      Tape tape;
      ForwardOptions fopts;
      fopts.check_kernel_parity = opts.check_kernel_parity && start == 0;
      Var loss = batch_loss(tape, model, b, Mode::kTrain, sampler, fopts);
      const float lv = loss.value()[0];
      if (!std::isfinite(lv)) {
        throw NanLossError("non-finite loss " + format_double(lv) + " at epoch " +
                           std::to_string(epoch) + ", batch starting at " + std::to_string(start));
      }
      tape.backward(loss);
      adam.step();
      adam.zero_grad();
    }
    EpochRecord rec{epoch, evaluate(model, data, train_idx), evaluate(model, data, val_idx)};
    if (opts.log) {
      *opts.log << epoch << ",train," << metric << ',' << format_double(rec.train_metric) << '\n'
                << epoch << ",val," << metric << ',' << format_double(rec.val_metric) << '\n';
    }
    const bool better = result.best_epoch == 0 ||
                        (higher ? rec.val_metric > result.best_val : rec.val_metric < result.best_val);
    if (better) {
      result.best_epoch = epoch;
      result.best_val = rec.val_metric;
      result.best_train = rec.train_metric;
      take_snapshot();
    }
    result.history.push_back(rec);
  }
  auto params = model.parameters();
  for (std::size_t k = 0; k < params.size(); ++k) params[k]->value = snapshot[k];
  return result;
}

}  // namespace bingnn
