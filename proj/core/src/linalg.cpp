#include "akkt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace akkt::linalg {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const Vec& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vec Matrix::apply(const Vec& x) const {
  if (x.size() != cols) throw std::invalid_argument("Matrix::apply: size mismatch");
  Vec y(rows, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    double s = 0.0;
    const double* row = data.data() + i * cols;
    for (std::size_t j = 0; j < cols; ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

Vec Matrix::apply_transposed(const Vec& y) const {
  if (y.size() != rows) throw std::invalid_argument("Matrix::apply_transposed: size mismatch");
  Vec x(cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = data.data() + i * cols;
    for (std::size_t j = 0; j < cols; ++j) x[j] += row[j] * y[i];
  }
  return x;
}

bool Matrix::all_finite() const {
  return std::all_of(data.begin(), data.end(), [](double v) { return std::isfinite(v); });
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matmul: size mismatch");
  Matrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (double v : a.data) s += v * v;
  return std::sqrt(s);
}

namespace {

// One-sided Jacobi on the columns of `work` (rows >= cols assumed by the
// caller); accumulates the right rotations in `v`.
void jacobi_sweeps(Matrix& work, Matrix& v) {
  const std::size_t n = work.cols;
  const std::size_t m = work.rows;
  const double eps = 1e-15;
  const int max_sweeps = 60;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    std::size_t rotations = 0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          const double wp = work(i, p), wq = work(i, q);
          app += wp * wp;
          aqq += wq * wq;
          apq += wp * wq;
        }
        if (std::abs(apq) <= eps * std::sqrt(app * aqq) || apq == 0.0) continue;
        ++rotations;

        const double zeta = (aqq - app) / (2.0 * apq);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;

        for (std::size_t i = 0; i < m; ++i) {
          const double wp = work(i, p), wq = work(i, q);
          work(i, p) = c * wp - s * wq;
          work(i, q) = s * wp + c * wq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (rotations == 0) break;
  }
}

// Deterministic orthonormal completion for columns whose singular value is
// (numerically) zero: scan coordinate vectors and Gram-Schmidt them against
// the columns already fixed.
void complete_column(Matrix& u, std::size_t col) {
  const std::size_t m = u.rows;
  for (std::size_t cand = 0; cand < m; ++cand) {
    Vec e(m, 0.0);
    e[cand] = 1.0;
    for (std::size_t j = 0; j < u.cols; ++j) {
      if (j == col) continue;
      double proj = 0.0;
      for (std::size_t i = 0; i < m; ++i) proj += u(i, j) * e[i];
      for (std::size_t i = 0; i < m; ++i) e[i] -= proj * u(i, j);
    }
    double nrm = std::sqrt(dot(e, e));
    if (nrm > 0.5) {
      for (std::size_t i = 0; i < m; ++i) u(i, col) = e[i] / nrm;
      return;
    }
  }
  // m columns cannot all be near-dependent on fewer than m fixed ones
  throw std::logic_error("svd: failed to complete orthonormal basis");
}

}  // namespace

SvdResult svd(const Matrix& a) {
  if (!a.all_finite()) throw std::invalid_argument("svd: non-finite input");
  if (a.rows == 0 || a.cols == 0) throw std::invalid_argument("svd: empty matrix");

  const bool flipped = a.rows < a.cols;
  Matrix work = flipped ? a.transposed() : a;
  const std::size_t m = work.rows, n = work.cols;

  Matrix v = Matrix::identity(n);
  jacobi_sweeps(work, v);

  // Column norms are the singular values; sort nonincreasing.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Vec sig(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += work(i, j) * work(i, j);
    sig[j] = std::sqrt(s);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sig[x] > sig[y]; });

  SvdResult out;
  out.singular_values.resize(n);
  out.left = Matrix(m, n);
  out.right = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.singular_values[j] = sig[src];
    for (std::size_t i = 0; i < n; ++i) out.right(i, j) = v(i, src);
    if (sig[src] > 0.0) {
      for (std::size_t i = 0; i < m; ++i) out.left(i, j) = work(i, src) / sig[src];
    }
  }
  for (std::size_t j = 0; j < n; ++j)
    if (out.singular_values[j] == 0.0) complete_column(out.left, j);

  if (flipped) std::swap(out.left, out.right);
  return out;
}

std::size_t numerical_rank(const SvdResult& s, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("numerical_rank: tol must be positive");
  if (s.singular_values.empty()) return 0;
  const double thresh = tol * s.singular_values.front();
  std::size_t r = 0;
  for (double v : s.singular_values)
    if (v > thresh && v > 0.0) ++r;
  return r;
}

std::size_t numerical_rank(const Matrix& a, double tol) {
  return numerical_rank(svd(a), tol);
}

double reduced_min_modulus(const SvdResult& s, double tol) {
  const std::size_t r = numerical_rank(s, tol);
  if (r == 0) return std::numeric_limits<double>::infinity();
  return s.singular_values[r - 1];
}

double reduced_min_modulus(const Matrix& a, double tol) {
  return reduced_min_modulus(svd(a), tol);
}

double operator_norm(const Matrix& a) {
  return svd(a).singular_values.front();
}

Subspace Subspace::trivial(std::size_t ambient_dim) {
  Subspace s;
  s.ambient_dim = ambient_dim;
  s.basis = Matrix(ambient_dim, 0);
  return s;
}

Subspace Subspace::span_of(const Matrix& spanning, double tol) {
  SvdResult d = svd(spanning);
  const std::size_t r = numerical_rank(d, tol);
  Subspace s;
  s.ambient_dim = spanning.rows;
  s.basis = Matrix(spanning.rows, r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < spanning.rows; ++i) s.basis(i, j) = d.left(i, j);
  return s;
}

Subspace Subspace::kernel_of(const Matrix& a, double tol) {
  // Kernel = orthogonal complement of the row space.  Going through the
  // complement projector keeps the wide case (rows < cols) correct, where
  // the thin right factor does not carry all kernel directions.
  SvdResult d = svd(a);
  const std::size_t r = numerical_rank(d, tol);
  Matrix complement = Matrix::identity(a.cols);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < a.cols; ++i)
      for (std::size_t k = 0; k < a.cols; ++k)
        complement(i, k) -= d.right(i, j) * d.right(k, j);
  Subspace s = Subspace::span_of(complement, 0.5);
  s.ambient_dim = a.cols;
  return s;
}

Subspace Subspace::range_of(const Matrix& a, double tol) {
  SvdResult d = svd(a);
  const std::size_t r = numerical_rank(d, tol);
  Subspace s;
  s.ambient_dim = a.rows;
  s.basis = Matrix(a.rows, r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < a.rows; ++i) s.basis(i, j) = d.left(i, j);
  return s;
}

double subspace_gap(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim != v.ambient_dim)
    throw std::invalid_argument("subspace_gap: ambient dimension mismatch");
  if (u.dim() == 0) return 0.0;  // convention for the trivial subspace
  // (I - B_V B_V^T) B_U, largest singular value.
  Matrix residual = u.basis;
  if (v.dim() > 0) {
    Matrix coeff = matmul(v.basis.transposed(), u.basis);  // k_v x k_u
    Matrix proj = matmul(v.basis, coeff);
    for (std::size_t i = 0; i < residual.data.size(); ++i) residual.data[i] -= proj.data[i];
  }
  const double gap = std::min(1.0, operator_norm(residual));
  // gaps below double-precision resolution are exact containments
  return gap < 1e-14 ? 0.0 : gap;
}

double dist_to_subspace(const Vec& x, const Subspace& s) {
  if (x.size() != s.ambient_dim)
    throw std::invalid_argument("dist_to_subspace: dimension mismatch");
  Vec r = x;
  if (s.dim() > 0) {
    Vec coeff = s.basis.apply_transposed(x);
    Vec proj = s.basis.apply(coeff);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= proj[i];
  }
  return norm2(r);
}

double dist_to_kernel(const Matrix& a, const Vec& x, double tol) {
  return dist_to_subspace(x, Subspace::kernel_of(a, tol));
}

Matrix weighted_adjoint(const Matrix& j, const Vec& wx, const Vec& wy) {
  if (wx.size() != j.cols || wy.size() != j.rows)
    throw std::invalid_argument("weighted_adjoint: weight dimensions incompatible");
  for (double w : wx)
    if (!(w > 0.0)) throw std::invalid_argument("weighted_adjoint: nonpositive weight");
  for (double w : wy)
    if (!(w > 0.0)) throw std::invalid_argument("weighted_adjoint: nonpositive weight");
  Matrix adj(j.cols, j.rows);
  for (std::size_t i = 0; i < j.cols; ++i)
    for (std::size_t k = 0; k < j.rows; ++k) adj(i, k) = j(k, i) * wy[k] / wx[i];
  return adj;
}

Matrix weighted_conjugate(const Matrix& j, const Vec& wx, const Vec& wy) {
  if (wx.size() != j.cols || wy.size() != j.rows)
    throw std::invalid_argument("weighted_conjugate: weight dimensions incompatible");
  Matrix out(j.rows, j.cols);
  for (std::size_t i = 0; i < j.rows; ++i)
    for (std::size_t k = 0; k < j.cols; ++k)
      out(i, k) = std::sqrt(wy[i]) * j(i, k) / std::sqrt(wx[k]);
  return out;
}

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec add(const Vec& a, const Vec& b) {
  Vec c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}

Vec sub(const Vec& a, const Vec& b) {
  Vec c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
  return c;
}

Vec scaled(const Vec& a, double t) {
  Vec c = a;
  for (double& v : c) v *= t;
  return c;
}

void axpy(double t, const Vec& x, Vec& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += t * x[i];
}

bool all_finite(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace akkt::linalg
