// Copyright 2026 The hgbt Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hgbt/hist_tree.h"

#include <chrono>
#include <cmath>
#include <numeric>
#include <queue>

#include "hgbt/threading.h"

namespace hgbt {

namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename Fn>
void ForEachWorker(std::size_t n_workers, ThreadPool* pool, Fn&& fn) {
  if (pool == nullptr) {
    for (std::size_t w = 0; w < n_workers; ++w) fn(w);
  } else {
    pool->ParallelFor(n_workers, fn);
  }
}

double Score(double g, double h, double lambda) {
  double const denom = h + lambda;
  return denom > 0.0 ? g * g / denom : 0.0;
}

}  // namespace

bool SplitInfo::Update(SplitInfo const& candidate) {
  bool better = false;
  if (!IsValid()) {
    better = true;
  } else if (candidate.gain != gain) {
    better = candidate.gain > gain;
  } else if (candidate.feature != feature) {
    better = candidate.feature < feature;
  } else if (candidate.bin != bin) {
    better = candidate.bin < bin;
  } else {
    better = !candidate.default_left && default_left;
  }
  if (better) *this = candidate;
  return better;
}

WorkerShard::WorkerShard(std::size_t begin, std::size_t end)
    : begin_{begin}, end_{end}, rows_(end - begin), scratch_(end - begin), positions_(end - begin) {
  Reset();
}

void WorkerShard::Reset() {
  std::iota(rows_.begin(), rows_.end(), begin_);
  std::fill(positions_.begin(), positions_.end(), 0);
  ranges_.assign(1, Range{0, rows_.size()});
}

void WorkerShard::EnsureNode(bst_node_t nid) {
  auto const need = static_cast<std::size_t>(nid) + 1;
  if (ranges_.size() < need) ranges_.resize(need);
}

std::span<std::size_t const> WorkerShard::NodeRows(bst_node_t nid) const {
  if (nid < 0 || static_cast<std::size_t>(nid) >= ranges_.size()) return {};
  Range const r = ranges_[nid];
  return {rows_.data() + r.begin, rows_.data() + r.end};
}

WorkerSet::WorkerSet(std::size_t n_rows, std::size_t n_workers) : n_rows_{n_rows} {
  if (n_workers == 0) throw ContractError("worker count must be at least 1");
  shards_.reserve(n_workers);
  for (std::size_t w = 0; w < n_workers; ++w) {
    shards_.emplace_back(w * n_rows / n_workers, (w + 1) * n_rows / n_workers);
  }
}

void WorkerSet::Reset() {
  for (auto& s : shards_) s.Reset();
}

std::vector<bst_node_t> WorkerSet::GlobalPositions() const {
  std::vector<bst_node_t> out;
  out.reserve(n_rows_);
  for (auto const& s : shards_) {
    auto pos = s.Positions();
    out.insert(out.end(), pos.begin(), pos.end());
  }
  return out;
}

std::vector<GradientSum> ToGradientSums(std::span<GradientPair const> gpair, ThreadPool* pool) {
  std::vector<GradientSum> out(gpair.size());
  auto convert = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = GradientSum::FromPair(gpair[i]);
  };
  if (pool == nullptr) {
    convert(0, gpair.size());
  } else {
    pool->ParallelForBlocked(gpair.size(), 4096, convert);
  }
  return out;
}

void RepartitionInstances(ExpandEntry const& entry, bst_node_t left, bst_node_t right,
                          QuantizedMatrix const& qmat, WorkerShard& shard) {
  auto const& split = entry.split;
  if (!split.IsValid()) throw ContractError("cannot repartition on an invalid split");
  auto const feature = static_cast<std::size_t>(split.feature);
  std::uint32_t const sentinel = qmat.Sentinel();
  shard.Partition(entry.nid, left, right, [&](std::size_t row) {
    std::uint32_t const symbol = qmat.Symbol(row, feature);
    if (symbol == sentinel) return split.default_left;
    return symbol <= split.bin;
  });
}

void BuildPartialHistogram(bst_node_t nid, WorkerShard const& shard, QuantizedMatrix const& qmat,
                           std::span<GradientSum const> gpair, Histogram* out) {
  CutMatrix const& cuts = qmat.Cuts();
  if (out->Size() != cuts.TotalBins()) *out = Histogram(cuts.TotalBins());
  out->Clear();
  auto const ptrs = cuts.Ptrs();
  std::size_t const n_features = qmat.NumFeatures();
  std::uint32_t const sentinel = qmat.Sentinel();
  PackedBuffer const& buffer = qmat.Buffer();
  for (std::size_t row : shard.NodeRows(nid)) {
    GradientSum const& gp = gpair[row];
    std::size_t const base = row * n_features;
    for (std::size_t f = 0; f < n_features; ++f) {
      std::uint32_t const symbol = buffer[base + f];
      if (symbol == sentinel) continue;
      (*out)[ptrs[f] + symbol] += gp;
    }
  }
}

Histogram AllReduceHistograms(std::span<Histogram const> partials) {
  if (partials.empty()) throw ContractError("all-reduce needs at least one histogram");
  Histogram out = partials[0];
  for (std::size_t w = 1; w < partials.size(); ++w) {
    if (partials[w].Size() != out.Size()) {
      throw ContractError("histogram size mismatch in all-reduce: " +
                          std::to_string(partials[w].Size()) + " vs " +
                          std::to_string(out.Size()));
    }
    for (std::size_t b = 0; b < out.Size(); ++b) out[b] += partials[w][b];
  }
  return out;
}

double LeafWeight(GradientSum const& sum, TrainParams const& param) {
  double const denom = sum.Hess() + param.reg_lambda;
  if (denom <= 0.0) return 0.0;
  return -sum.Grad() / denom * param.learning_rate;
}

SplitInfo EvaluateSplit(Histogram const& hist, GradientSum const& totals, CutMatrix const& cuts,
                        TrainParams const& param) {
  if (hist.Size() != cuts.TotalBins()) throw ContractError("histogram does not match cut matrix");
  double const lambda = param.reg_lambda;
  double const parent_score = Score(totals.Grad(), totals.Hess(), lambda);
  SplitInfo best;

  auto consider = [&](std::size_t f, std::size_t local_bin, GradientSum const& left,
                      GradientSum const& right, bool default_left) {
    double const hl = left.Hess();
    double const hr = right.Hess();
    if (hl < param.min_child_weight || hr < param.min_child_weight) return;
    double const gain =
        0.5 * (Score(left.Grad(), hl, lambda) + Score(right.Grad(), hr, lambda) - parent_score) -
        param.gamma;
    if (!(gain > 0.0) || !std::isfinite(gain)) return;
    SplitInfo cand;
    cand.feature = static_cast<std::int32_t>(f);
    cand.bin = static_cast<bst_bin_t>(local_bin);
    cand.threshold = cuts.FeatureCuts(f)[local_bin];
    cand.gain = gain;
    cand.default_left = default_left;
    cand.left_sum = left;
    cand.right_sum = right;
    best.Update(cand);
  };

  auto const ptrs = cuts.Ptrs();
  for (std::size_t f = 0; f < cuts.NumFeatures(); ++f) {
    std::size_t const beg = ptrs[f];
    std::size_t const end = ptrs[f + 1];
    if (beg == end) continue;

    // forward scan, missing rows go right
    GradientSum left;
    for (std::size_t b = beg; b < end; ++b) {
      left += hist[b];
      consider(f, b - beg, left, totals - left, false);
    }
    // after the forward scan `left` is the feature's histogram sum
    GradientSum const missing = totals - left;
    if (missing.IsZero()) continue;

    // backward scan, missing rows go left
    GradientSum right;
    for (std::size_t b = end; b-- > beg;) {
      consider(f, b - beg, totals - right, right, true);
      right += hist[b];
    }
  }
  return best;
}

ExpandEntry InitRoot(WorkerSet& workers, QuantizedMatrix const& qmat,
                     std::span<GradientSum const> gpair, TrainParams const& param,
                     ThreadPool* pool) {
  if (workers.NumRows() == 0) throw ValidationError("cannot grow a tree on zero rows");
  if (gpair.size() != workers.NumRows() || qmat.NumRows() != workers.NumRows()) {
    throw ContractError("gradient, matrix and worker row counts differ");
  }
  std::size_t const p = workers.NumWorkers();
  std::vector<GradientSum> partial_totals(p);
  std::vector<Histogram> partials(p, Histogram(qmat.Cuts().TotalBins()));
  ForEachWorker(p, pool, [&](std::size_t w) {
    WorkerShard const& shard = workers.Shard(w);
    GradientSum sum;
    for (std::size_t row : shard.NodeRows(0)) sum += gpair[row];
    partial_totals[w] = sum;
    BuildPartialHistogram(0, shard, qmat, gpair, &partials[w]);
  });
  ExpandEntry root;
  root.nid = 0;
  root.depth = 0;
  for (auto const& s : partial_totals) root.totals += s;
  Histogram const hist = AllReduceHistograms(partials);
  root.split = EvaluateSplit(hist, root.totals, qmat.Cuts(), param);
  return root;
}

namespace {

struct DepthWiseOrder {
  bool operator()(ExpandEntry const& a, ExpandEntry const& b) const {
    // priority_queue pops the largest; "larger" means shallower, then older
    if (a.depth != b.depth) return a.depth > b.depth;
    return a.timestamp > b.timestamp;
  }
};

struct LossGuideOrder {
  bool operator()(ExpandEntry const& a, ExpandEntry const& b) const {
    if (a.split.gain != b.split.gain) return a.split.gain < b.split.gain;
    return a.timestamp > b.timestamp;
  }
};

class ExpandQueue {
 public:
  explicit ExpandQueue(GrowPolicy policy) : policy_{policy} {}
  void Push(ExpandEntry e) {
    e.timestamp = next_timestamp_++;
    if (policy_ == GrowPolicy::kDepthWise) {
      depthwise_.push(std::move(e));
    } else {
      lossguide_.push(std::move(e));
    }
  }
  ExpandEntry Pop() {
    ExpandEntry e;
    if (policy_ == GrowPolicy::kDepthWise) {
      e = depthwise_.top();
      depthwise_.pop();
    } else {
      e = lossguide_.top();
      lossguide_.pop();
    }
    return e;
  }
  bool Empty() const {
    return policy_ == GrowPolicy::kDepthWise ? depthwise_.empty() : lossguide_.empty();
  }

 private:
  GrowPolicy policy_;
  std::uint64_t next_timestamp_{0};
  std::priority_queue<ExpandEntry, std::vector<ExpandEntry>, DepthWiseOrder> depthwise_;
  std::priority_queue<ExpandEntry, std::vector<ExpandEntry>, LossGuideOrder> lossguide_;
};

}  // namespace

RegTree GrowTree(WorkerSet& workers, QuantizedMatrix const& qmat,
                 std::span<GradientSum const> gpair, TrainParams const& param, ThreadPool* pool,
                 TreeStageTimes* times, GrowTrace* trace) {
  TreeStageTimes local_times;
  if (times == nullptr) times = &local_times;
  CutMatrix const& cuts = qmat.Cuts();
  std::size_t const p = workers.NumWorkers();

  workers.Reset();
  auto start = Clock::now();
  ExpandEntry const root = InitRoot(workers, qmat, gpair, param, pool);
  times->histogram += SecondsSince(start);

  RegTree tree;
  tree.SetLeaf(0, LeafWeight(root.totals, param));

  bool const leaf_budget = param.grow_policy == GrowPolicy::kLossGuide && param.max_leaves > 0;
  auto can_expand = [&](ExpandEntry const& e) {
    return e.split.IsValid() && e.depth < param.max_depth;
  };

  ExpandQueue queue(param.grow_policy);
  if (can_expand(root)) queue.Push(root);
  std::size_t n_leaves = 1;

  std::vector<Histogram> left_partials(p, Histogram(cuts.TotalBins()));
  std::vector<Histogram> right_partials(p, Histogram(cuts.TotalBins()));

  while (!queue.Empty()) {
    ExpandEntry const entry = queue.Pop();
    if (leaf_budget && n_leaves >= param.max_leaves) continue;
    if (trace != nullptr) trace->expanded.push_back(entry);

    SplitInfo const& split = entry.split;
    bst_node_t const left =
        tree.ExpandNode(entry.nid, static_cast<bst_feature_t>(split.feature), split.threshold,
                        split.default_left, LeafWeight(split.left_sum, param),
                        LeafWeight(split.right_sum, param));
    bst_node_t const right = left + 1;
    ++n_leaves;

    std::uint32_t const child_depth = entry.depth + 1;
    bool const children_expandable =
        child_depth < param.max_depth && !(leaf_budget && n_leaves >= param.max_leaves);

    start = Clock::now();
    ForEachWorker(p, pool, [&](std::size_t w) {
      WorkerShard& shard = workers.Shard(w);
      RepartitionInstances(entry, left, right, qmat, shard);
      if (children_expandable) {
        BuildPartialHistogram(left, shard, qmat, gpair, &left_partials[w]);
        BuildPartialHistogram(right, shard, qmat, gpair, &right_partials[w]);
      }
    });
    if (!children_expandable) {
      times->histogram += SecondsSince(start);
      continue;
    }
    Histogram const left_hist = AllReduceHistograms(left_partials);
    Histogram const right_hist = AllReduceHistograms(right_partials);
    times->histogram += SecondsSince(start);

    start = Clock::now();
    ExpandEntry left_entry;
    left_entry.nid = left;
    left_entry.depth = child_depth;
    left_entry.totals = split.left_sum;
    left_entry.split = EvaluateSplit(left_hist, left_entry.totals, cuts, param);
    ExpandEntry right_entry;
    right_entry.nid = right;
    right_entry.depth = child_depth;
    right_entry.totals = split.right_sum;
    right_entry.split = EvaluateSplit(right_hist, right_entry.totals, cuts, param);
    times->evaluate += SecondsSince(start);

    if (can_expand(left_entry)) queue.Push(left_entry);
    if (can_expand(right_entry)) queue.Push(right_entry);
  }
  return tree;
}

}  // namespace hgbt
