#include "virn/synthetic.hpp"

#include <cmath>
#include <numbers>

#include "virn/errors.hpp"
#include "virn/rng.hpp"

namespace virn {

namespace {

Vec random_unit(std::size_t dim, Rng& rng) {
  Vec u(dim);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& v : u) {
      v = rng.normal();
      norm2 += v * v;
    }
  } while (norm2 < 1e-12);
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& v : u) v *= inv;
  return u;
}

// Gram-Schmidt step: remove the components of `v` along each basis vector.
void orthogonalize(Vec& v, const std::vector<Vec>& basis) {
  for (const auto& b : basis) {
    const double proj = dot(v, b);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= proj * b[i];
  }
  double norm2 = 0.0;
  for (double x : v) norm2 += x * x;
  const double inv = 1.0 / std::sqrt(std::max(norm2, 1e-12));
  for (auto& x : v) x *= inv;
}

}  // namespace

std::pair<SyntheticWorld, LabeledSet> synth_world(const WorldRecipe& recipe, std::uint64_t seed) {
  if (recipe.class_count < 4) throw Error("synthetic worlds need at least 4 classes");
  if (recipe.dim < 2) throw Error("synthetic worlds need dim >= 2");
  const std::uint32_t c = recipe.class_count;
  const std::size_t m = recipe.dim;
  const double sigma = std::max(recipe.sigma, 1e-3);  // keeps lambda_min >= 1e-6

  Rng rng(mix_seed(seed, 0x3011d5eedull));
  Vec u1 = random_unit(m, rng);
  Vec u2 = random_unit(m, rng);
  orthogonalize(u2, {u1});
  Vec u3 = random_unit(m, rng);
  orthogonalize(u3, {u1, u2});
  Vec w1 = random_unit(m, rng);
  Vec w2 = random_unit(m, rng);
  orthogonalize(w2, {w1});

  SyntheticWorld world;
  world.recipe = recipe;
  world.recipe.sigma = sigma;
  world.means.reserve(c);
  world.covariances.reserve(c);

  const double two_pi = 2.0 * std::numbers::pi;
  for (std::uint32_t id = 0; id < c; ++id) {
    const double t = static_cast<double>(id) / static_cast<double>(c - 1);
    Vec mu(m, 0.0);
    if (recipe.name == "collinear") {
      // evenly spaced along one direction: adjacent means exactly `spread` apart
      const double pos = recipe.spread * (static_cast<double>(id) -
                                          0.5 * static_cast<double>(c - 1));
      for (std::size_t i = 0; i < m; ++i) mu[i] = pos * u1[i];
      world.covariances.push_back(
          SymmetricMatrix::diagonal(Vec(m, sigma * sigma)));
    } else if (recipe.name == "manifold") {
      // smooth curve: axial drift plus a circular component of similar pitch
      const double ring = static_cast<double>(c) / two_pi;
      const double axial = recipe.spread * static_cast<double>(id);
      const double s1 = recipe.spread * ring * std::sin(two_pi * t);
      const double s2 = recipe.spread * ring * std::cos(two_pi * t);
      for (std::size_t i = 0; i < m; ++i) mu[i] = axial * u1[i] + s1 * u2[i] + s2 * u3[i];

      Vec dir(m);
      const double cw = std::cos(two_pi * t);
      const double sw = std::sin(two_pi * t);
      for (std::size_t i = 0; i < m; ++i) dir[i] = cw * w1[i] + sw * w2[i];
      SymmetricMatrix cov = SymmetricMatrix::identity(m);
      cov.add_scaled_outer(dir, recipe.cov_wiggle);
      cov.scale(sigma * sigma);
      world.covariances.push_back(std::move(cov));
    } else {
      throw Error("unknown synthetic recipe: " + recipe.name);
    }
    world.means.push_back(std::move(mu));
  }

  LabeledSet train = sample_world(world, recipe.train_per_class, mix_seed(seed, 0x7261ull));
  return {std::move(world), std::move(train)};
}

LabeledSet sample_world(const SyntheticWorld& world, std::uint32_t per_class,
                        std::uint64_t seed) {
  const std::uint32_t c = static_cast<std::uint32_t>(world.means.size());
  const std::size_t m = world.means.empty() ? 0 : world.means.front().size();
  LabeledSet out(m, c);
  for (std::uint32_t id = 0; id < c; ++id) {
    const CholeskyFactor factor = cholesky(world.covariances[id], 1e-12);
    Rng rng(mix_seed(seed, 0x5A1700ull + id));
    Vec eps(m);
    for (std::uint32_t s = 0; s < per_class; ++s) {
      fill_normal(rng, eps);
      Vec x = world.means[id];
      for (std::size_t i = 0; i < m; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= i; ++j) acc += factor.lower(i, j) * eps[j];
        x[i] += acc;
      }
      out.add(std::move(x), id);
    }
  }
  return out;
}

}  // namespace virn
