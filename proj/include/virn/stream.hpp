#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "virn/linalg.hpp"

namespace virn {

struct LabeledSample {
  Vec x;
  std::uint32_t label;
};

// Embedding vectors with integer class labels; the unit of all data flow.
class LabeledSet {
 public:
  LabeledSet() = default;
  LabeledSet(std::size_t dim, std::uint32_t class_count);

  // Validates dimension, label range, and finiteness.
  void add(Vec x, std::uint32_t label);

  std::size_t size() const { return samples_.size(); }
  std::size_t dim() const { return dim_; }
  std::uint32_t class_count() const { return class_count_; }
  const LabeledSample& operator[](std::size_t i) const { return samples_[i]; }

  std::vector<std::uint32_t> per_class_counts() const;
  std::vector<std::vector<std::size_t>> indices_by_class() const;
  std::vector<Vec> class_samples(std::uint32_t label) const;

 private:
  std::size_t dim_ = 0;
  std::uint32_t class_count_ = 0;
  std::vector<LabeledSample> samples_;
};

struct Task {
  std::vector<std::uint32_t> class_set;  // in rank order
  LabeledSet train;
  LabeledSet test;
};

struct TaskStream {
  std::vector<Task> tasks;
  double rho = 1.0;
  std::uint64_t seed = 0;
  std::vector<std::uint32_t> class_order;  // class_order[rank] = class id
  std::uint32_t class_count = 0;
  std::size_t dim = 0;

  std::vector<std::uint32_t> classes_seen_through(std::size_t task_index) const;
};

struct StreamOptions {
  bool shuffle_class_order = false;  // natural id order unless set
  bool longtail_test = false;        // also subsample test splits by the power law
};

// Power-law train counts: n_i = max(1, round_half_even(full * rho^{rank/(C-1)})).
// `class_order[rank]` gives the class id at that rank; the result is indexed
// by class id.
std::vector<std::uint32_t> longtail_counts(const std::vector<std::uint32_t>& full_counts,
                                           double rho,
                                           const std::vector<std::uint32_t>& class_order);

// Deterministic round-half-to-even, independent of the FP rounding mode.
double round_half_even(double x);

// Partitions classes into `task_count` contiguous rank blocks, subsamples the
// train split of each class to its power-law count, and attaches the full
// test split. Deterministic for a fixed seed.
TaskStream build_stream(const LabeledSet& train_source, const LabeledSet& test_source,
                        std::uint32_t task_count, double rho, std::uint64_t seed,
                        const StreamOptions& options = {});

// Splits one labeled set into train/test pools per class (used when a single
// embedding file is the world source).
std::pair<LabeledSet, LabeledSet> split_holdout(const LabeledSet& source, double test_fraction,
                                                std::uint64_t seed);

}  // namespace virn
