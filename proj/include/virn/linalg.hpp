#pragma once

#include <cstddef>
#include <vector>

namespace virn {

using Vec = std::vector<double>;

// Dense row-major matrix. General (not necessarily symmetric); used for
// eigenvector bases, Cholesky factors and intermediate products.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);  // zero-initialized
  static Matrix identity(std::size_t n);

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Vec mul(const Vec& x) const;
  Matrix mul(const Matrix& other) const;
  Matrix transposed() const;

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Symmetric matrix stored as a full square with symmetry enforced on
// construction; entries are validated finite.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t n);  // zero matrix
  static SymmetricMatrix identity(std::size_t n);
  static SymmetricMatrix diagonal(const Vec& d);
  // Symmetrizes as (a + a^T)/2; throws NonFiniteValue on NaN/Inf entries.
  static SymmetricMatrix from_full(const Matrix& a);
  static SymmetricMatrix from_lower_packed(std::size_t n, const Vec& packed);

  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  // Sets both (i,j) and (j,i).
  void set(std::size_t i, std::size_t j, double v);

  std::size_t size() const { return n_; }
  double trace() const;
  double frobenius_norm() const;
  Vec mul(const Vec& x) const;
  Matrix to_matrix() const;
  Vec lower_packed() const;

  void add_scaled(const SymmetricMatrix& other, double s);  // this += s * other
  void add_scaled_outer(const Vec& v, double s);            // this += s * v v^T
  void add_identity(double s);                              // this += s * I
  void scale(double s);

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

struct EigenDecomposition {
  Vec eigenvalues;      // descending
  Matrix eigenvectors;  // columns, orthonormal
};

struct CholeskyFactor {
  Matrix lower;
  double jitter_used = 0.0;
};

// Scale-invariant jitter ladder base: 1e-9 * trace(a) / n.
double default_jitter(const SymmetricMatrix& a);

// Factors a + jI = L L^T for the smallest j in {0, jitter, 10*jitter, ...,
// 1e6*jitter} that admits a positive-pivot factorization. Reports the j used.
CholeskyFactor cholesky(const SymmetricMatrix& a, double jitter);

// Cyclic Jacobi; eigenvalues sorted descending. Throws NoConvergence after
// 100 sweeps (never observed below n ~ 1000).
EigenDecomposition sym_eig(const SymmetricMatrix& a);

// Principal square root of the PSD projection of `a`. Eigenvalues in
// [-clamp_tol * max(1, lambda_max), 0) are treated as rounding noise and
// clamped to zero; anything below that window throws NotPsd.
SymmetricMatrix sqrtm_psd(const SymmetricMatrix& a, double clamp_tol = 1e-10);

// Nearest PSD matrix by eigenvalue clamping. Returns the input unchanged when
// it is already PSD, so the operation is exactly idempotent.
SymmetricMatrix psd_project(const SymmetricMatrix& a);

// Solves (L L^T) x = b given a Cholesky factor.
Vec solve_spd(const CholeskyFactor& chol, const Vec& b);

// d^T (L L^T)^{-1} d  via one triangular solve; always >= 0.
double quad_form(const CholeskyFactor& chol, const Vec& d);

// Small helpers shared across modules.
double dot(const Vec& a, const Vec& b);
double squared_distance(const Vec& a, const Vec& b);
void require_finite(const Vec& v, const char* what);

}  // namespace virn
