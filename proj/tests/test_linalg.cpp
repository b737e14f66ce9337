#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "virn/errors.hpp"
#include "virn/linalg.hpp"
#include "virn/rng.hpp"

using namespace virn;

namespace {

SymmetricMatrix random_symmetric(std::size_t n, Rng& rng, double scale = 1.0) {
  SymmetricMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) a.set(i, j, scale * (2.0 * rng.uniform01() - 1.0));
  return a;
}

// A = B B^T + ridge * I
SymmetricMatrix random_spd(std::size_t n, Rng& rng, double ridge) {
  Matrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = 2.0 * rng.uniform01() - 1.0;
  SymmetricMatrix a = SymmetricMatrix::from_full(b.mul(b.transposed()));
  a.add_identity(ridge);
  return a;
}

double frob_diff(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      const double d = a(i, j) - b(i, j);
      s += d * d;
    }
  return std::sqrt(s);
}

SymmetricMatrix multiply_sym(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  return SymmetricMatrix::from_full(a.to_matrix().mul(b.to_matrix()));
}

}  // namespace

TEST_CASE("cholesky identity and diagonal") {
  auto id = cholesky(SymmetricMatrix::identity(3), 0.0);
  CHECK(id.jitter_used == 0.0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(id.lower(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-15));

  auto d = cholesky(SymmetricMatrix::diagonal({4.0, 9.0}), 0.0);
  CHECK(d.lower(0, 0) == doctest::Approx(2.0));
  CHECK(d.lower(1, 1) == doctest::Approx(3.0));
  CHECK(d.lower(1, 0) == 0.0);
}

TEST_CASE("cholesky reconstructs a random SPD matrix") {
  Rng rng(42);
  const std::size_t m = 8;
  SymmetricMatrix a = random_spd(m, rng, 1e-3);
  auto f = cholesky(a, 0.0);
  SymmetricMatrix llt = SymmetricMatrix::from_full(f.lower.mul(f.lower.transposed()));
  CHECK(frob_diff(llt, a) <= 1e-10);
}

TEST_CASE("cholesky jitter ladder reports the jitter applied") {
  // indefinite matrix: needs jitter to factor
  SymmetricMatrix a = SymmetricMatrix::diagonal({1.0, -0.5});
  CHECK_THROWS_AS(cholesky(a, 0.0), FactorizationFailed);
  auto f = cholesky(a, 1.0);  // ladder: 1, 10 -> succeeds at 1? diag becomes (2, .5)
  CHECK(f.jitter_used == 1.0);

  // j = 0 whenever lambda_min >= 1e-10 (well-conditioned inputs)
  Rng rng(7);
  for (int rep = 0; rep < 25; ++rep) {
    SymmetricMatrix spd = random_spd(6, rng, 1e-6);
    auto g = cholesky(spd, default_jitter(spd));
    CHECK(g.jitter_used == 0.0);
  }
}

TEST_CASE("sym_eig on trivial matrices") {
  auto d = sym_eig(SymmetricMatrix::diagonal({3.0, 1.0}));
  CHECK(d.eigenvalues[0] == doctest::Approx(3.0));
  CHECK(d.eigenvalues[1] == doctest::Approx(1.0));
  // axis-aligned eigenvectors up to sign
  CHECK(std::abs(d.eigenvectors(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(d.eigenvectors(1, 1)) == doctest::Approx(1.0));

  // [[2,1],[1,2]] has characteristic roots 3 and 1
  SymmetricMatrix a(2);
  a.set(0, 0, 2.0);
  a.set(1, 1, 2.0);
  a.set(0, 1, 1.0);
  auto e = sym_eig(a);
  CHECK(e.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(e.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sym_eig reconstruction and orthogonality bounds") {
  Rng rng(123);
  for (std::size_t m : {2ul, 8ul, 32ul}) {
    for (int rep = 0; rep < 40; ++rep) {
      SymmetricMatrix a = random_symmetric(m, rng, rep % 2 ? 1.0 : 50.0);
      auto eig = sym_eig(a);
      for (std::size_t i = 0; i + 1 < m; ++i)
        CHECK(eig.eigenvalues[i] >= eig.eigenvalues[i + 1]);

      Matrix lam(m, m);
      for (std::size_t i = 0; i < m; ++i) lam(i, i) = eig.eigenvalues[i];
      Matrix recon = eig.eigenvectors.mul(lam).mul(eig.eigenvectors.transposed());
      double err = 0.0;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          const double d = recon(i, j) - a(i, j);
          err += d * d;
        }
      CHECK(std::sqrt(err) <= 1e-8 * std::max(1.0, a.frobenius_norm()));

      Matrix qtq = eig.eigenvectors.transposed().mul(eig.eigenvectors);
      double orth = 0.0;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          const double d = qtq(i, j) - (i == j ? 1.0 : 0.0);
          orth += d * d;
        }
      CHECK(std::sqrt(orth) <= 1e-8 * static_cast<double>(m));
    }
  }
}

TEST_CASE("sqrtm_psd on diagonal and identity") {
  SymmetricMatrix r = sqrtm_psd(SymmetricMatrix::diagonal({4.0, 9.0}));
  CHECK(r(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r(1, 1) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r(0, 1) == doctest::Approx(0.0).epsilon(1e-12));

  SymmetricMatrix ri = sqrtm_psd(SymmetricMatrix::identity(5));
  CHECK(frob_diff(ri, SymmetricMatrix::identity(5)) <= 1e-12);
}

TEST_CASE("sqrtm_psd clamps rounding-noise eigenvalues") {
  // Build A = Q diag(1, 1e-14, -1e-15) Q^T from a known orthogonal basis.
  Rng rng(5);
  auto basis = sym_eig(random_symmetric(3, rng));
  const Matrix& q = basis.eigenvectors;
  Matrix lam(3, 3);
  lam(0, 0) = 1.0;
  lam(1, 1) = 1e-14;
  lam(2, 2) = -1e-15;
  SymmetricMatrix a = SymmetricMatrix::from_full(q.mul(lam).mul(q.transposed()));

  SymmetricMatrix r = sqrtm_psd(a, 1e-10);
  auto eig = sym_eig(r);
  CHECK(eig.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(eig.eigenvalues[1] == doctest::Approx(1e-7).epsilon(0.2));
  CHECK(eig.eigenvalues[2] >= 0.0);
  CHECK(eig.eigenvalues[2] <= 2e-8);

  // an eigenvalue below the window is a real failure
  CHECK_THROWS_AS(sqrtm_psd(SymmetricMatrix::diagonal({1.0, -1e-3}), 1e-10), NotPsd);
}

TEST_CASE("sqrtm_psd squares back to the PSD projection") {
  Rng rng(99);
  for (int rep = 0; rep < 20; ++rep) {
    SymmetricMatrix a = random_spd(8, rng, 1e-4);
    SymmetricMatrix r = sqrtm_psd(a);
    SymmetricMatrix rr = multiply_sym(r, r);
    CHECK(frob_diff(rr, psd_project(a)) <= 1e-8 * std::max(1.0, a.frobenius_norm()));
  }
}

TEST_CASE("psd_project clamps and is idempotent") {
  SymmetricMatrix a = SymmetricMatrix::diagonal({1.0, -0.5});
  SymmetricMatrix p = psd_project(a);
  CHECK(p(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p(1, 1) == doctest::Approx(0.0).epsilon(1e-12));

  SymmetricMatrix pp = psd_project(p);
  CHECK(frob_diff(pp, p) <= 1e-12);

  // PSD input is returned unchanged
  Rng rng(17);
  SymmetricMatrix spd = random_spd(4, rng, 1e-2);
  CHECK(frob_diff(psd_project(spd), spd) <= 1e-12);

  // all eigenvalues of any projection are >= -1e-12
  for (int rep = 0; rep < 20; ++rep) {
    SymmetricMatrix s = random_symmetric(8, rng);
    auto eig = sym_eig(psd_project(s));
    for (double lambda : eig.eigenvalues) CHECK(lambda >= -1e-12);
  }
}

TEST_CASE("quad_form worked examples") {
  auto id = cholesky(SymmetricMatrix::identity(2), 0.0);
  CHECK(quad_form(id, {3.0, 4.0}) == doctest::Approx(25.0).epsilon(1e-14));

  auto d = cholesky(SymmetricMatrix::diagonal({4.0, 1.0}), 0.0);
  CHECK(quad_form(d, {2.0, 1.0}) == doctest::Approx(2.0).epsilon(1e-14));

  CHECK(quad_form(d, {0.0, 0.0}) == 0.0);

  CHECK_THROWS_AS(quad_form(d, {1.0, 2.0, 3.0}), DimensionMismatch);
}

TEST_CASE("quad_form agrees with explicit inverse on well-conditioned matrices") {
  Rng rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t m = 6;
    SymmetricMatrix a = random_spd(m, rng, 0.05);  // condition well below 1e6
    Vec d(m);
    for (auto& v : d) v = 2.0 * rng.uniform01() - 1.0;

    auto f = cholesky(a, 0.0);
    const double via_solve = quad_form(f, d);

    // explicit inverse through the eigendecomposition
    auto eig = sym_eig(a);
    Vec proj(m, 0.0);
    double explicit_q = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      double c = 0.0;
      for (std::size_t i = 0; i < m; ++i) c += eig.eigenvectors(i, j) * d[i];
      explicit_q += c * c / eig.eigenvalues[j];
    }
    CHECK(via_solve == doctest::Approx(explicit_q).epsilon(1e-9));
    CHECK(via_solve >= 0.0);

    Vec x = solve_spd(f, d);
    Vec ax = a.mul(x);
    for (std::size_t i = 0; i < m; ++i) CHECK(ax[i] == doctest::Approx(d[i]).epsilon(1e-8));
  }
}
