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

#ifndef BINGNN_TRAIN_HPP_
#define BINGNN_TRAIN_HPP_

#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bingnn/autodiff.hpp"
#include "bingnn/config.hpp"
#include "bingnn/data.hpp"
#include "bingnn/model.hpp"

namespace bingnn {

class NanLossError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// mean |pred - target| over every entry.
Var mae_loss(Var pred, const DenseTensor& target);
/// Mean of -log softmax(logits)[class] over rows whose class is >= 0; rows
/// with class -1 are skipped. Throws std::out_of_range for a class >= cols.
Var cross_entropy_loss(Var logits, std::span<const int> classes);

/// Bias-corrected Adam over a fixed parameter list.
class Adam {
 public:
  Adam(std::vector<Parameter*> params, float lr, float beta1, float beta2, float eps);

  void step();
  void zero_grad();
  std::uint64_t steps() const { return t_; }
  float lr() const { return lr_; }
  void set_lr(float lr) { lr_ = lr; }
  const std::vector<DenseTensor>& first_moments() const { return m_; }
  const std::vector<DenseTensor>& second_moments() const { return v_; }

 private:
  std::vector<Parameter*> params_;
  std::vector<DenseTensor> m_;
  std::vector<DenseTensor> v_;
  float lr_, beta1_, beta2_, eps_;
  std::uint64_t t_ = 0;
};

/// Fills in in_dim / out_dim left at 0 from the data. Throws DataError when
/// the data does not fit the task (missing targets, no labels, ...).
ModelConfig resolve_dims(ModelConfig config, const Dataset& data);

/// "mae" for regression, "accuracy" otherwise.
std::string metric_name(Task task);
bool higher_is_better(Task task);

/// Eval-mode metric over `indices` (deterministic).
double evaluate(BinGnnModel& model, const Dataset& data, std::span<const std::size_t> indices);

struct EpochRecord {
  int epoch = 0;
  double train_metric = 0.0;
  double val_metric = 0.0;
};

struct FitResult {
  std::vector<EpochRecord> history;
  /// 1-based epoch of the restored snapshot (0 if no epoch ran).
  int best_epoch = 0;
  double best_val = 0.0;
  double best_train = 0.0;
};

struct FitOptions {
  /// Receives `epoch,split,metric_name,value` rows (header written first).
  std::ostream* log = nullptr;
  /// Compare the packed kernel with the float path on the first batch of
  /// every epoch.
  bool check_kernel_parity = true;
};

/// Shuffled mini-batch Adam training. Restores the best validation snapshot
/// (earliest epoch on ties). Throws NanLossError on a non-finite loss.
FitResult fit(BinGnnModel& model, const Dataset& data, std::span<const std::size_t> train_idx,
              std::span<const std::size_t> val_idx, const FitOptions& opts = {});

/// Loss of one batch in train mode; exposed for tests.
Var batch_loss(Tape& tape, BinGnnModel& model, const GraphBatch& batch, Mode mode,
               GumbelSampler& sampler, const ForwardOptions& fopts = {});

}  // namespace bingnn

#endif  // BINGNN_TRAIN_HPP_
