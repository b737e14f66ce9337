#include "virn/stream.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "virn/errors.hpp"
#include "virn/rng.hpp"

namespace virn {

LabeledSet::LabeledSet(std::size_t dim, std::uint32_t class_count)
    : dim_(dim), class_count_(class_count) {}

void LabeledSet::add(Vec x, std::uint32_t label) {
  if (x.size() != dim_) throw DimensionMismatch("sample dimension does not match set");
  if (label >= class_count_)
    throw LabelOutOfRange("label " + std::to_string(label) + " >= class count " +
                          std::to_string(class_count_));
  require_finite(x, "embedding");
  samples_.push_back({std::move(x), label});
}

std::vector<std::uint32_t> LabeledSet::per_class_counts() const {
  std::vector<std::uint32_t> counts(class_count_, 0);
  for (const auto& s : samples_) ++counts[s.label];
  return counts;
}

std::vector<std::vector<std::size_t>> LabeledSet::indices_by_class() const {
  std::vector<std::vector<std::size_t>> idx(class_count_);
  for (std::size_t i = 0; i < samples_.size(); ++i) idx[samples_[i].label].push_back(i);
  return idx;
}

std::vector<Vec> LabeledSet::class_samples(std::uint32_t label) const {
  std::vector<Vec> out;
  for (const auto& s : samples_)
    if (s.label == label) out.push_back(s.x);
  return out;
}

std::vector<std::uint32_t> TaskStream::classes_seen_through(std::size_t task_index) const {
  std::vector<std::uint32_t> seen;
  for (std::size_t t = 0; t <= task_index && t < tasks.size(); ++t)
    seen.insert(seen.end(), tasks[t].class_set.begin(), tasks[t].class_set.end());
  std::sort(seen.begin(), seen.end());
  return seen;
}

double round_half_even(double x) {
  const double f = std::floor(x);
  const double frac = x - f;
  if (frac > 0.5) return f + 1.0;
  if (frac < 0.5) return f;
  return std::fmod(f, 2.0) == 0.0 ? f : f + 1.0;
}

std::vector<std::uint32_t> longtail_counts(const std::vector<std::uint32_t>& full_counts,
                                           double rho,
                                           const std::vector<std::uint32_t>& class_order) {
  if (!(rho > 0.0) || rho > 1.0)
    throw InvalidRho("rho must lie in (0, 1], got " + std::to_string(rho));
  const std::size_t c = full_counts.size();
  if (c < 2) throw DegenerateClassCount("need at least 2 classes for the power law");
  if (class_order.size() != c) throw DimensionMismatch("class_order must be a permutation");

  std::vector<std::uint32_t> counts(c, 0);
  for (std::size_t rank = 0; rank < c; ++rank) {
    const std::uint32_t id = class_order[rank];
    const double full = static_cast<double>(full_counts[id]);
    const double factor =
        std::pow(rho, static_cast<double>(rank) / static_cast<double>(c - 1));
    const double n = std::max(1.0, round_half_even(full * factor));
    counts[id] = static_cast<std::uint32_t>(n);
  }
  return counts;
}

namespace {

// Sorted subsample of `pool` of size `take`, drawn without replacement.
std::vector<std::size_t> subsample_sorted(const std::vector<std::size_t>& pool, std::size_t take,
                                          Rng& rng) {
  std::vector<std::size_t> idx = pool;
  rng.shuffle(idx);
  idx.resize(std::min(take, idx.size()));
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

TaskStream build_stream(const LabeledSet& train_source, const LabeledSet& test_source,
                        std::uint32_t task_count, double rho, std::uint64_t seed,
                        const StreamOptions& options) {
  if (task_count < 1) throw Error("task count must be >= 1");
  const std::uint32_t c = train_source.class_count();
  if (c != test_source.class_count() || train_source.dim() != test_source.dim())
    throw DimensionMismatch("train and test sources disagree on dim or class count");
  if (c < task_count) throw Error("cannot partition fewer classes than tasks");

  const auto train_counts = train_source.per_class_counts();
  for (std::uint32_t id = 0; id < c; ++id)
    if (train_counts[id] == 0)
      throw EmptyClass("class " + std::to_string(id) + " has no source samples");

  std::vector<std::uint32_t> order(c);
  std::iota(order.begin(), order.end(), 0u);
  if (options.shuffle_class_order) {
    Rng order_rng(mix_seed(seed, 0xC1A5501dull));
    order_rng.shuffle(order);
  }

  const auto longtail = longtail_counts(train_counts, rho, order);
  std::vector<std::uint32_t> test_take(c, 0);
  {
    const auto test_counts = test_source.per_class_counts();
    if (options.longtail_test) {
      const auto lt = longtail_counts(test_counts, rho, order);
      test_take = lt;
    } else {
      test_take = test_counts;
    }
  }

  const auto train_by_class = train_source.indices_by_class();
  const auto test_by_class = test_source.indices_by_class();

  TaskStream stream;
  stream.rho = rho;
  stream.seed = seed;
  stream.class_order = order;
  stream.class_count = c;
  stream.dim = train_source.dim();

  const std::uint32_t base = c / task_count;
  const std::uint32_t rem = c % task_count;
  std::size_t rank = 0;
  for (std::uint32_t t = 0; t < task_count; ++t) {
    const std::uint32_t block = base + (t < rem ? 1u : 0u);
    Task task;
    task.train = LabeledSet(train_source.dim(), c);
    task.test = LabeledSet(test_source.dim(), c);
    for (std::uint32_t b = 0; b < block; ++b, ++rank) {
      const std::uint32_t id = order[rank];
      task.class_set.push_back(id);

      Rng train_rng(mix_seed(seed, 0x7261111ull + id));
      for (std::size_t i : subsample_sorted(train_by_class[id], longtail[id], train_rng))
        task.train.add(train_source[i].x, id);

      if (options.longtail_test) {
        Rng test_rng(mix_seed(seed, 0x7E57000ull + id));
        for (std::size_t i : subsample_sorted(test_by_class[id], test_take[id], test_rng))
          task.test.add(test_source[i].x, id);
      } else {
        for (std::size_t i : test_by_class[id]) task.test.add(test_source[i].x, id);
      }
    }
    stream.tasks.push_back(std::move(task));
  }
  return stream;
}

std::pair<LabeledSet, LabeledSet> split_holdout(const LabeledSet& source, double test_fraction,
                                                std::uint64_t seed) {
  if (!(test_fraction >= 0.0) || test_fraction >= 1.0)
    throw Error("test fraction must lie in [0, 1)");
  LabeledSet train(source.dim(), source.class_count());
  LabeledSet test(source.dim(), source.class_count());
  const auto by_class = source.indices_by_class();
  for (std::uint32_t id = 0; id < source.class_count(); ++id) {
    std::vector<std::size_t> idx = by_class[id];
    Rng rng(mix_seed(seed, 0x5EED0ull + id));
    rng.shuffle(idx);
    // keep at least one training sample per class
    std::size_t n_test = static_cast<std::size_t>(
        std::floor(test_fraction * static_cast<double>(idx.size())));
    if (n_test >= idx.size()) n_test = idx.size() - 1;
    std::vector<std::size_t> test_idx(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_test));
    std::vector<std::size_t> train_idx(idx.begin() + static_cast<std::ptrdiff_t>(n_test), idx.end());
    std::sort(test_idx.begin(), test_idx.end());
    std::sort(train_idx.begin(), train_idx.end());
    for (std::size_t i : test_idx) test.add(source[i].x, id);
    for (std::size_t i : train_idx) train.add(source[i].x, id);
  }
  return {std::move(train), std::move(test)};
}

}  // namespace virn
