#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "virn/linalg.hpp"
#include "virn/stream.hpp"

namespace virn {

// Parameters of the generated embedding world. Class means sit on a smooth
// one-dimensional manifold so that nearby class ids have nearby
// distributions; covariances vary smoothly along the same parameter.
struct WorldRecipe {
  std::string name = "manifold";  // "manifold" | "collinear"
  std::uint32_t class_count = 20;
  std::uint32_t dim = 16;
  std::uint32_t train_per_class = 100;
  std::uint32_t test_per_class = 40;
  double spread = 1.0;      // distance between adjacent class means
  double sigma = 0.5;       // within-class standard deviation scale
  double cov_wiggle = 0.5;  // anisotropy strength for the manifold recipe
};

// Ground-truth class-conditional Gaussians plus the generation recipe.
struct SyntheticWorld {
  std::vector<Vec> means;
  std::vector<SymmetricMatrix> covariances;
  WorldRecipe recipe;
};

// Builds the world and draws `train_per_class` samples per class.
std::pair<SyntheticWorld, LabeledSet> synth_world(const WorldRecipe& recipe, std::uint64_t seed);

// Draws an independent labeled sample of the world (per-class i.i.d. draws).
LabeledSet sample_world(const SyntheticWorld& world, std::uint32_t per_class, std::uint64_t seed);

}  // namespace virn
