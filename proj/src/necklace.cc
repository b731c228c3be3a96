// Copyright 2026 The Authors.
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

#include "balrep/necklace.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace balrep {
namespace {

// With cut positions c_1 < ... < c_m and D(p) = sum_{odd j <= p} h_j -
// sum_{even j <= p} h_j, the selected label sum is
//
//   PE(n-1) + sum_i [+D(c_i) if segment before c_i is inside,
//                    -D(c_i) otherwise] - (dropped edges)
//           + [D(n-1) if the last segment is inside]
//
// so every cut contributes an O(k) term that depends only on its position and
// the side before it.
class SplitEvaluator {
 public:
  SplitEvaluator(const PathInstance& path, int k)
      : n_(path.n()), k_(k), path_(path) {
    d_.assign(static_cast<std::size_t>(n_) * k_, 0.0);
    dc_.assign(n_, 0);
    Label fractional(k_, 0.0), even(k_, 0.0);
    for (int j = 1; j < n_; ++j) {
      const Label& h = path.labels[j - 1];
      const bool odd = j % 2 == 1;
      const double w = odd ? path.alpha : 1.0 - path.alpha;
      for (int i = 0; i < k_; ++i) {
        d_[j * k_ + i] = d_[(j - 1) * k_ + i] + (odd ? h[i] : -h[i]);
        fractional[i] += w * h[i];
        if (!odd) even[i] += h[i];
      }
      dc_[j] = dc_[j - 1] + (odd ? 1 : -1);
      if (!odd) ++even_count_;
    }
    base_.resize(k_);
    for (int i = 0; i < k_; ++i) base_[i] = even[i] - fractional[i];
  }

  int n() const { return n_; }
  int k() const { return k_; }

  // Adds sign * (contribution of a cut at p with the given side before it).
  void AddCut(int p, bool before_inside, int sign, std::vector<double>& value,
              long& size) const {
    const double* d = &d_[p * k_];
    const bool drop = (p % 2 == 1) == before_inside;
    const Label& next = path_.labels[p];  // h(e_{p+1})
    for (int i = 0; i < k_; ++i) {
      double t = before_inside ? d[i] : -d[i];
      if (drop) t -= next[i];
      value[i] += sign * t;
    }
    long s = before_inside ? dc_[p] : -dc_[p];
    if (drop) s -= 1;
    size += sign * s;
  }

  void AddEnd(bool last_inside, int sign, std::vector<double>& value,
              long& size) const {
    if (!last_inside) return;
    const double* d = &d_[(n_ - 1) * k_];
    for (int i = 0; i < k_; ++i) value[i] += sign * d[i];
    size += sign * dc_[n_ - 1];
  }

  void Evaluate(const IntervalSplit& split, std::vector<double>& value,
                long& size) const {
    value = base_;
    size = even_count_;
    bool inside = split.inside_first;
    for (int p : split.cut_points) {
      AddCut(p, inside, +1, value, size);
      inside = !inside;
    }
    AddEnd(inside, +1, value, size);
  }

  // Deviation if the cut term (p, before_inside) were added to `value`.
  double DeviationWith(const std::vector<double>& value, int p,
                       bool before_inside) const {
    const double* d = &d_[p * k_];
    const bool drop = (p % 2 == 1) == before_inside;
    const Label& next = path_.labels[p];
    double total = 0.0;
    for (int i = 0; i < k_; ++i) {
      double t = before_inside ? d[i] : -d[i];
      if (drop) t -= next[i];
      total += std::abs(value[i] + t);
    }
    return total;
  }

  long SizeWith(long size, int p, bool before_inside) const {
    const bool drop = (p % 2 == 1) == before_inside;
    return size + (before_inside ? dc_[p] : -dc_[p]) - (drop ? 1 : 0);
  }

 private:
  int n_;
  int k_;
  const PathInstance& path_;
  std::vector<double> d_;
  std::vector<long> dc_;
  std::vector<double> base_;
  long even_count_ = 0;
};

double L1(const std::vector<double>& v) {
  double total = 0.0;
  for (double x : v) total += std::abs(x);
  return total;
}

// (deviation, size) ordering shared by search and oracle.
bool Better(double dev, long size, double best_dev, long best_size) {
  if (dev < best_dev - kTolerance) return true;
  if (dev > best_dev + kTolerance) return false;
  return size > best_size;
}

bool BetterSplit(double dev, long size, const IntervalSplit& split,
                 double best_dev, long best_size,
                 const IntervalSplit& best_split) {
  if (dev < best_dev - kTolerance) return true;
  if (dev > best_dev + kTolerance) return false;
  if (size != best_size) return size > best_size;
  if (split.cut_points != best_split.cut_points) {
    return split.cut_points < best_split.cut_points;
  }
  return split.inside_first && !best_split.inside_first;
}

class LocalSearch {
 public:
  LocalSearch(const SplitEvaluator& eval, int budget, long max_steps,
              std::mt19937_64& rng)
      : eval_(eval), budget_(budget), max_steps_(max_steps), rng_(rng) {}

  void Run(IntervalSplit& split) {
    split_ = &split;
    Refresh();
    long steps = 0;
    while (steps < max_steps_) {
      if (MoveCuts() || InsertCut() || DeleteCut() || Toggle() ||
          InsertPair()) {
        ++steps;
        continue;
      }
      break;
    }
  }

  double deviation() const { return L1(value_); }
  long size() const { return size_; }

 private:
  void Refresh() { eval_.Evaluate(*split_, value_, size_); }

  bool BeforeInside(std::size_t cut) const {
    return (cut % 2 == 0) == split_->inside_first;
  }

  // Range of valid positions for cut i given its neighbours.
  std::pair<int, int> Range(std::size_t i) const {
    const auto& c = split_->cut_points;
    const int lo = i == 0 ? 1 : c[i - 1] + 2;
    const int hi = i + 1 == c.size() ? eval_.n() - 2 : c[i + 1] - 2;
    return {lo, hi};
  }

  bool MoveCuts() {
    bool improved = false;
    auto& c = split_->cut_points;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const bool side = BeforeInside(i);
      std::vector<double> without = value_;
      long size_without = size_;
      eval_.AddCut(c[i], side, -1, without, size_without);
      double best_dev = L1(value_);
      long best_size = size_;
      int best_pos = c[i];
      const auto [lo, hi] = Range(i);
      for (int p = lo; p <= hi; ++p) {
        const double dev = eval_.DeviationWith(without, p, side);
        const long size = eval_.SizeWith(size_without, p, side);
        if (Better(dev, size, best_dev, best_size)) {
          best_dev = dev;
          best_size = size;
          best_pos = p;
        }
      }
      if (best_pos != c[i]) {
        c[i] = best_pos;
        value_ = without;
        size_ = size_without;
        eval_.AddCut(best_pos, side, +1, value_, size_);
        improved = true;
      }
    }
    return improved;
  }

  // Single cut: flips the sides of every later cut and of the tail.
  bool InsertCut() {
    auto& c = split_->cut_points;
    if (static_cast<int>(c.size()) >= budget_) return false;
    const int n = eval_.n();
    const double current = L1(value_);
    double best_dev = current;
    long best_size = size_;
    int best_pos = -1;
    // flipped[s]: value with every term from segment s onward flipped.
    const std::size_t segments = c.size() + 1;
    std::vector<std::vector<double>> flipped(segments);
    std::vector<long> flipped_size(segments);
    {
      std::vector<double> v = value_;
      long sz = size_;
      const bool tail_inside = (c.size() % 2 == 0) == split_->inside_first;
      eval_.AddEnd(tail_inside, -1, v, sz);
      eval_.AddEnd(!tail_inside, +1, v, sz);
      flipped[segments - 1] = v;
      flipped_size[segments - 1] = sz;
      for (std::size_t s = segments - 1; s-- > 0;) {
        const bool side = BeforeInside(s);
        eval_.AddCut(c[s], side, -1, v, sz);
        eval_.AddCut(c[s], !side, +1, v, sz);
        flipped[s] = v;
        flipped_size[s] = sz;
      }
    }
    for (std::size_t s = 0; s < segments; ++s) {
      const int lo = s == 0 ? 1 : c[s - 1] + 2;
      const int hi = s == c.size() ? n - 2 : c[s] - 2;
      const bool side = BeforeInside(s);
      for (int p = lo; p <= hi; ++p) {
        const double dev = eval_.DeviationWith(flipped[s], p, side);
        const long size = eval_.SizeWith(flipped_size[s], p, side);
        if (Better(dev, size, best_dev, best_size)) {
          best_dev = dev;
          best_size = size;
          best_pos = p;
        }
      }
    }
    if (best_pos < 0) return false;
    c.insert(std::lower_bound(c.begin(), c.end(), best_pos), best_pos);
    Refresh();
    return true;
  }

  bool DeleteCut() {
    auto& c = split_->cut_points;
    double best_dev = L1(value_);
    long best_size = size_;
    int best_index = -1;
    for (std::size_t i = 0; i < c.size(); ++i) {
      IntervalSplit trial = *split_;
      trial.cut_points.erase(trial.cut_points.begin() + i);
      std::vector<double> v;
      long sz;
      eval_.Evaluate(trial, v, sz);
      const double dev = L1(v);
      if (Better(dev, sz, best_dev, best_size)) {
        best_dev = dev;
        best_size = sz;
        best_index = static_cast<int>(i);
      }
    }
    if (best_index < 0) return false;
    c.erase(c.begin() + best_index);
    Refresh();
    return true;
  }

  bool Toggle() {
    IntervalSplit trial = *split_;
    trial.inside_first = !trial.inside_first;
    std::vector<double> v;
    long sz;
    eval_.Evaluate(trial, v, sz);
    if (!Better(L1(v), sz, L1(value_), size_)) return false;
    *split_ = trial;
    value_ = v;
    size_ = sz;
    return true;
  }

  // Flips a sub-interval (a, b] of one segment, with a sampled.
  bool InsertPair() {
    auto& c = split_->cut_points;
    if (static_cast<int>(c.size()) + 2 > budget_) return false;
    const int n = eval_.n();
    if (n < 6) return false;
    constexpr int kSamples = 16;
    std::uniform_int_distribution<int> pick(1, n - 2);
    double best_dev = L1(value_);
    long best_size = size_;
    int best_a = -1, best_b = -1;
    for (int t = 0; t < kSamples; ++t) {
      const int a = pick(rng_);
      const std::size_t s =
          std::upper_bound(c.begin(), c.end(), a) - c.begin();
      const int lo = s == 0 ? 1 : c[s - 1] + 2;
      const int hi = s == c.size() ? n - 2 : c[s] - 2;
      if (a < lo || a + 2 > hi) continue;
      const bool side = BeforeInside(s);
      std::vector<double> with_a = value_;
      long size_a = size_;
      eval_.AddCut(a, side, +1, with_a, size_a);
      for (int b = a + 2; b <= hi; ++b) {
        const double dev = eval_.DeviationWith(with_a, b, !side);
        const long size = eval_.SizeWith(size_a, b, !side);
        if (Better(dev, size, best_dev, best_size)) {
          best_dev = dev;
          best_size = size;
          best_a = a;
          best_b = b;
        }
      }
    }
    if (best_a < 0) return false;
    c.insert(std::lower_bound(c.begin(), c.end(), best_a), best_a);
    c.insert(std::lower_bound(c.begin(), c.end(), best_b), best_b);
    Refresh();
    return true;
  }

  const SplitEvaluator& eval_;
  int budget_;
  long max_steps_;
  std::mt19937_64& rng_;
  IntervalSplit* split_ = nullptr;
  std::vector<double> value_;
  long size_ = 0;
};

IntervalSplit RandomSplit(int n, int budget, std::mt19937_64& rng) {
  IntervalSplit split;
  split.inside_first = (rng() & 1) == 0;
  if (n < 3) return split;
  const int want = std::uniform_int_distribution<int>(0, budget)(rng);
  std::uniform_int_distribution<int> pick(1, n - 2);
  for (int t = 0; t < 4 * want && static_cast<int>(split.cut_points.size()) <
                                      want;
       ++t) {
    const int p = pick(rng);
    auto& c = split.cut_points;
    auto it = std::lower_bound(c.begin(), c.end(), p);
    if (it != c.end() && *it - p < 2) continue;
    if (it != c.begin() && p - *(it - 1) < 2) continue;
    c.insert(it, p);
  }
  return split;
}

SplitResult Finish(const PathInstance& path, int k, IntervalSplit split) {
  SplitResult result;
  result.edges = SelectedEdges(split, path.n());
  result.split = std::move(split);
  for (int j : result.edges) result.matching.edges.push_back({j - 1, j});
  result.deviation = SplitDeviation(path, result.edges);
  result.bound_met = result.deviation <= 4.0 * k + 2.0 + kTolerance;
  return result;
}

}  // namespace

void PathInstance::Validate(int k) const {
  if (labels.empty()) throw InvalidInstanceError("path needs n >= 2");
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidInstanceError("alpha outside [0, 1]");
  }
  for (const Label& h : labels) {
    if (static_cast<int>(h.size()) != k) {
      throw InvalidInstanceError("path label of wrong dimension");
    }
    if (L1Norm(h) > 1.0 + kTolerance) {
      throw InvalidInstanceError("path label with l1-norm above 1");
    }
  }
}

int CutBudget(int k) { return 4 * k; }

std::vector<int> SelectedEdges(const IntervalSplit& split, int n) {
  const auto& c = split.cut_points;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] < 1 || c[i] > n - 2 || (i > 0 && c[i] - c[i - 1] < 2)) {
      std::ostringstream msg;
      msg << "invalid cut point " << c[i] << " on a path of " << n
          << " vertices";
      throw InvalidInstanceError(msg.str());
    }
  }
  std::vector<int> edges;
  bool inside = split.inside_first;
  std::size_t next_cut = 0;
  int last = -1;
  for (int j = 1; j < n; ++j) {
    const bool want = (j % 2 == 1) == inside;
    if (want && last != j - 1) {
      edges.push_back(j);
      last = j;
    }
    if (next_cut < c.size() && c[next_cut] == j) {
      inside = !inside;
      ++next_cut;
    }
  }
  return edges;
}

double SplitDeviation(const PathInstance& path, const std::vector<int>& edges) {
  const std::size_t k = path.labels.empty() ? 0 : path.labels[0].size();
  Label diff(k, 0.0);
  for (int j = 1; j < path.n(); ++j) {
    const double w = j % 2 == 1 ? path.alpha : 1.0 - path.alpha;
    for (std::size_t i = 0; i < k; ++i) diff[i] -= w * path.labels[j - 1][i];
  }
  for (int j : edges) {
    for (std::size_t i = 0; i < k; ++i) diff[i] += path.labels[j - 1][i];
  }
  return L1Norm(diff);
}

SplitResult SplitPath(const PathInstance& path, int k,
                      const SplitOptions& options) {
  path.Validate(k);
  const SplitEvaluator eval(path, k);
  const int budget = CutBudget(k);
  const long max_steps = static_cast<long>(options.steps_per_vertex) * path.n();
  const int max_restarts = std::max(2, options.restarts_per_dimension * k);
  std::mt19937_64 rng(options.seed);

  IntervalSplit best;
  double best_dev = 0.0;
  long best_size = 0;
  bool have = false;
  int stale = 0;
  int restarts = 0;
  for (; restarts < max_restarts; ++restarts) {
    IntervalSplit split;
    if (restarts < 2) {
      split.inside_first = restarts == 0;
    } else {
      split = RandomSplit(path.n(), budget, rng);
    }
    LocalSearch search(eval, budget, max_steps, rng);
    search.Run(split);
    const double dev = search.deviation();
    const long size = search.size();
    if (!have || BetterSplit(dev, size, split, best_dev, best_size, best)) {
      const bool strict = !have || Better(dev, size, best_dev, best_size);
      best = split;
      best_dev = dev;
      best_size = size;
      have = true;
      if (strict) stale = 0;
    } else {
      ++stale;
    }
    if (restarts >= 1 && best_dev <= kTolerance) break;
    if (options.patience > 0 && stale >= options.patience) break;
  }
  SplitResult result = Finish(path, k, std::move(best));
  result.restarts = std::min(restarts + 1, max_restarts);
  if (std::abs(result.deviation - best_dev) > 1e-6) {
    throw InvariantViolationError("split evaluator disagrees with recount");
  }
  return result;
}

SplitResult ExhaustiveSplitOracle(const PathInstance& path, int k,
                                  int max_cuts) {
  path.Validate(k);
  if (path.n() > kMaxOraclePathVertices) {
    std::ostringstream msg;
    msg << "exhaustive split oracle limited to " << kMaxOraclePathVertices
        << " vertices, got " << path.n();
    throw BudgetExceededError(msg.str());
  }
  if (max_cuts < 0) max_cuts = CutBudget(k);
  const SplitEvaluator eval(path, k);
  const int n = path.n();

  IntervalSplit best;
  double best_dev = 0.0;
  long best_size = 0;
  bool have = false;
  IntervalSplit current;
  std::vector<double> value;
  long size;
  auto consider = [&]() {
    for (bool inside_first : {true, false}) {
      current.inside_first = inside_first;
      eval.Evaluate(current, value, size);
      const double dev = L1(value);
      if (!have ||
          BetterSplit(dev, size, current, best_dev, best_size, best)) {
        best = current;
        best_dev = dev;
        best_size = size;
        have = true;
      }
    }
  };
  // Enumerates cut sets in lexicographic order.
  auto recurse = [&](auto&& self, int from) -> void {
    consider();
    if (static_cast<int>(current.cut_points.size()) >= max_cuts) return;
    for (int p = from; p <= n - 2; ++p) {
      current.cut_points.push_back(p);
      self(self, p + 2);
      current.cut_points.pop_back();
    }
  };
  recurse(recurse, 1);
  return Finish(path, k, std::move(best));
}

}  // namespace balrep
