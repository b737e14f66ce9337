#include "virn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "virn/errors.hpp"

namespace virn {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vec Matrix::mul(const Vec& x) const {
  if (x.size() != cols_) throw DimensionMismatch("matrix-vector size mismatch");
  Vec y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double acc = 0.0;
    const double* row = data_.data() + i * cols_;
    for (std::size_t j = 0; j < cols_; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
  return y;
}

Matrix Matrix::mul(const Matrix& other) const {
  if (cols_ != other.rows_) throw DimensionMismatch("matrix-matrix size mismatch");
  Matrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      const double* brow = other.data_.data() + k * other.cols_;
      double* orow = out.data_.data() + i * other.cols_;
      for (std::size_t j = 0; j < other.cols_; ++j) orow[j] += a * brow[j];
    }
  }
  return out;
}

Matrix Matrix::transposed() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

SymmetricMatrix::SymmetricMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

SymmetricMatrix SymmetricMatrix::identity(std::size_t n) {
  SymmetricMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1.0;
  return m;
}

SymmetricMatrix SymmetricMatrix::diagonal(const Vec& d) {
  SymmetricMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
  return m;
}

SymmetricMatrix SymmetricMatrix::from_full(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("from_full requires a square matrix");
  const std::size_t n = a.rows();
  SymmetricMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = 0.5 * (a(i, j) + a(j, i));
      if (!std::isfinite(v)) throw NonFiniteValue("non-finite entry in symmetric matrix");
      m.data_[i * n + j] = v;
      m.data_[j * n + i] = v;
    }
  }
  return m;
}

SymmetricMatrix SymmetricMatrix::from_lower_packed(std::size_t n, const Vec& packed) {
  if (packed.size() != n * (n + 1) / 2)
    throw DimensionMismatch("packed length does not match dimension");
  SymmetricMatrix m(n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = packed[k++];
      if (!std::isfinite(v)) throw NonFiniteValue("non-finite entry in symmetric matrix");
      m.data_[i * n + j] = v;
      m.data_[j * n + i] = v;
    }
  }
  return m;
}

void SymmetricMatrix::set(std::size_t i, std::size_t j, double v) {
  if (!std::isfinite(v)) throw NonFiniteValue("non-finite entry in symmetric matrix");
  data_[i * n_ + j] = v;
  data_[j * n_ + i] = v;
}

double SymmetricMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += data_[i * n_ + i];
  return t;
}

double SymmetricMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

Vec SymmetricMatrix::mul(const Vec& x) const {
  if (x.size() != n_) throw DimensionMismatch("matrix-vector size mismatch");
  Vec y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    const double* row = data_.data() + i * n_;
    for (std::size_t j = 0; j < n_; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
  return y;
}

Matrix SymmetricMatrix::to_matrix() const {
  Matrix m(n_, n_);
  m.data() = data_;
  return m;
}

Vec SymmetricMatrix::lower_packed() const {
  Vec packed;
  packed.reserve(n_ * (n_ + 1) / 2);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j <= i; ++j) packed.push_back(data_[i * n_ + j]);
  return packed;
}

void SymmetricMatrix::add_scaled(const SymmetricMatrix& other, double s) {
  if (other.n_ != n_) throw DimensionMismatch("matrix size mismatch in add_scaled");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += s * other.data_[i];
}

void SymmetricMatrix::add_scaled_outer(const Vec& v, double s) {
  if (v.size() != n_) throw DimensionMismatch("vector size mismatch in add_scaled_outer");
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) data_[i * n_ + j] += s * v[i] * v[j];
}

void SymmetricMatrix::add_identity(double s) {
  for (std::size_t i = 0; i < n_; ++i) data_[i * n_ + i] += s;
}

void SymmetricMatrix::scale(double s) {
  for (auto& v : data_) v *= s;
}

double default_jitter(const SymmetricMatrix& a) {
  if (a.size() == 0) return 0.0;
  return 1e-9 * std::abs(a.trace()) / static_cast<double>(a.size());
}

namespace {

// Plain Cholesky; returns false on a non-positive or non-finite pivot.
bool try_cholesky(const SymmetricMatrix& a, double jitter, Matrix& lower) {
  const std::size_t n = a.size();
  lower = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a(j, j) + jitter;
    for (std::size_t k = 0; k < j; ++k) diag -= lower(j, k) * lower(j, k);
    if (!(diag > 0.0) || !std::isfinite(diag)) return false;
    const double ljj = std::sqrt(diag);
    lower(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double sum = a(i, j);
      for (std::size_t k = 0; k < j; ++k) sum -= lower(i, k) * lower(j, k);
      lower(i, j) = sum / ljj;
    }
  }
  return true;
}

}  // namespace

CholeskyFactor cholesky(const SymmetricMatrix& a, double jitter) {
  if (jitter < 0.0) throw FactorizationFailed("jitter must be >= 0");
  CholeskyFactor factor;
  if (try_cholesky(a, 0.0, factor.lower)) {
    factor.jitter_used = 0.0;
    return factor;
  }
  if (jitter > 0.0) {
    for (double j = jitter; j <= 1e6 * jitter; j *= 10.0) {
      if (try_cholesky(a, j, factor.lower)) {
        factor.jitter_used = j;
        return factor;
      }
    }
  }
  throw FactorizationFailed("cholesky failed at every jitter level");
}

EigenDecomposition sym_eig(const SymmetricMatrix& a) {
  const std::size_t n = a.size();
  Matrix work = a.to_matrix();
  Matrix q = Matrix::identity(n);

  const double norm = a.frobenius_norm();
  const double off_tol = std::max(1e-300, 1e-15 * std::max(1.0, norm));

  constexpr int kMaxSweeps = 100;
  bool converged = (n < 2);
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t r = p + 1; r < n; ++r) off += work(p, r) * work(p, r);
    if (std::sqrt(2.0 * off) <= off_tol) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t r = p + 1; r < n; ++r) {
        const double apr = work(p, r);
        if (apr == 0.0) continue;
        const double app = work(p, p);
        const double arr = work(r, r);
        // Rotation angle from the classic two-by-two reduction.
        const double theta = (arr - app) / (2.0 * apr);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 1.0 / (2.0 * theta);
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        work(p, p) = app - t * apr;
        work(r, r) = arr + t * apr;
        work(p, r) = 0.0;
        work(r, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k != p && k != r) {
            const double akp = work(k, p);
            const double akr = work(k, r);
            work(k, p) = akp - s * (akr + tau * akp);
            work(p, k) = work(k, p);
            work(k, r) = akr + s * (akp - tau * akr);
            work(r, k) = work(k, r);
          }
          const double qkp = q(k, p);
          const double qkr = q(k, r);
          q(k, p) = qkp - s * (qkr + tau * qkp);
          q(k, r) = qkr + s * (qkp - tau * qkr);
        }
      }
    }
  }
  if (!converged) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t r = p + 1; r < n; ++r) off += work(p, r) * work(p, r);
    if (std::sqrt(2.0 * off) > off_tol)
      throw NoConvergence("jacobi eigensolver exceeded the sweep budget");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return work(i, i) > work(j, j); });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = work(order[j], order[j]);
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = q(i, order[j]);
  }
  return out;
}

namespace {

SymmetricMatrix reconstruct(const EigenDecomposition& eig, const Vec& values) {
  const std::size_t n = values.size();
  Matrix scaled(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scaled(i, j) = eig.eigenvectors(i, j) * values[j];
  return SymmetricMatrix::from_full(scaled.mul(eig.eigenvectors.transposed()));
}

}  // namespace

SymmetricMatrix sqrtm_psd(const SymmetricMatrix& a, double clamp_tol) {
  const EigenDecomposition eig = sym_eig(a);
  const double lambda_max = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front();
  const double window = clamp_tol * std::max(1.0, lambda_max);
  Vec roots(eig.eigenvalues.size());
  for (std::size_t i = 0; i < eig.eigenvalues.size(); ++i) {
    const double lambda = eig.eigenvalues[i];
    if (lambda < -window)
      throw NotPsd("eigenvalue " + std::to_string(lambda) + " below the clamp window");
    roots[i] = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
  }
  return reconstruct(eig, roots);
}

SymmetricMatrix psd_project(const SymmetricMatrix& a) {
  const EigenDecomposition eig = sym_eig(a);
  bool needs_clamp = false;
  for (double lambda : eig.eigenvalues)
    if (lambda < 0.0) needs_clamp = true;
  if (!needs_clamp) return a;
  Vec clamped(eig.eigenvalues.size());
  for (std::size_t i = 0; i < eig.eigenvalues.size(); ++i)
    clamped[i] = std::max(0.0, eig.eigenvalues[i]);
  return reconstruct(eig, clamped);
}

Vec solve_spd(const CholeskyFactor& chol, const Vec& b) {
  const Matrix& lower = chol.lower;
  const std::size_t n = lower.rows();
  if (b.size() != n) throw DimensionMismatch("rhs size mismatch in solve_spd");
  Vec y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = b[i];
    for (std::size_t k = 0; k < i; ++k) sum -= lower(i, k) * y[k];
    y[i] = sum / lower(i, i);
  }
  Vec x(n);
  for (std::size_t i = n; i-- > 0;) {
    double sum = y[i];
    for (std::size_t k = i + 1; k < n; ++k) sum -= lower(k, i) * x[k];
    x[i] = sum / lower(i, i);
  }
  return x;
}

double quad_form(const CholeskyFactor& chol, const Vec& d) {
  const Matrix& lower = chol.lower;
  const std::size_t n = lower.rows();
  if (d.size() != n) throw DimensionMismatch("vector size mismatch in quad_form");
  double q = 0.0;
  Vec y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = d[i];
    for (std::size_t k = 0; k < i; ++k) sum -= lower(i, k) * y[k];
    y[i] = sum / lower(i, i);
    q += y[i] * y[i];
  }
  return q;
}

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double squared_distance(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("distance size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void require_finite(const Vec& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) throw NonFiniteValue(std::string("non-finite value in ") + what);
}

}  // namespace virn
