#pragma once

#include <cstddef>
#include <vector>

namespace akkt::linalg {

using Vec = std::vector<double>;

/// Dense row-major matrix. Sizes here are desk scale (<= a few thousand),
/// so everything is stored and factored densely.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  Vec data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const Vec& d);

  Matrix transposed() const;
  Vec apply(const Vec& x) const;             // A x
  Vec apply_transposed(const Vec& y) const;  // A^T y
  bool all_finite() const;
};

Matrix matmul(const Matrix& a, const Matrix& b);
double frobenius_norm(const Matrix& a);

/// Thin SVD A = U diag(s) V^T with s nonincreasing and orthonormal columns
/// in U (rows x k) and V (cols x k), k = min(rows, cols).
struct SvdResult {
  Vec singular_values;
  Matrix left;
  Matrix right;
};

/// One-sided Jacobi SVD. Throws std::invalid_argument on non-finite input.
SvdResult svd(const Matrix& a);

/// Number of singular values > tol * sigma_max (zero matrix has rank 0).
std::size_t numerical_rank(const SvdResult& s, double tol);
std::size_t numerical_rank(const Matrix& a, double tol = 1e-10);

/// Smallest singular value above the relative rank threshold, i.e. the
/// minimum of ||Ax|| over unit vectors orthogonal to the (numerical)
/// kernel. Returns +infinity for the zero matrix: the defining infimum
/// ranges over an empty set.
double reduced_min_modulus(const Matrix& a, double tol = 1e-10);
double reduced_min_modulus(const SvdResult& s, double tol = 1e-10);

/// Largest singular value.
double operator_norm(const Matrix& a);

/// Subspace of R^ambient_dim stored through an orthonormal basis; the basis
/// may have zero columns (trivial subspace).
struct Subspace {
  std::size_t ambient_dim = 0;
  Matrix basis;  // ambient_dim x k, orthonormal columns

  std::size_t dim() const { return basis.cols; }

  /// Orthonormalize the columns of a spanning matrix via SVD, dropping
  /// directions below the relative rank tolerance.
  static Subspace span_of(const Matrix& spanning, double tol = 1e-10);
  static Subspace kernel_of(const Matrix& a, double tol = 1e-10);
  static Subspace range_of(const Matrix& a, double tol = 1e-10);
  static Subspace trivial(std::size_t ambient_dim);
};

/// Gap delta(U, V) = sup { dist(x, V) : x in U, ||x|| = 1 }, computed as the
/// largest singular value of (I - P_V) B_U. Returns 0 for trivial U.
double subspace_gap(const Subspace& u, const Subspace& v);

/// || x - P_S x ||.
double dist_to_subspace(const Vec& x, const Subspace& s);
double dist_to_kernel(const Matrix& a, const Vec& x, double tol = 1e-10);

/// Adjoint of J : (X, w_x) -> (Y, w_y) between weighted inner-product
/// spaces: J* = W_x^{-1} J^T W_y, so that <J d, l>_Y = <d, J* l>_X.
/// Throws on nonpositive weights.
Matrix weighted_adjoint(const Matrix& j, const Vec& wx, const Vec& wy);

/// Similarity transform W_y^{1/2} J W_x^{-1/2}; its plain singular values
/// are the singular values of J viewed between the weighted spaces.
Matrix weighted_conjugate(const Matrix& j, const Vec& wx, const Vec& wy);

// Small Euclidean vector helpers used across the library.
double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scaled(const Vec& a, double t);
void axpy(double t, const Vec& x, Vec& y);  // y += t x
bool all_finite(const Vec& a);

}  // namespace akkt::linalg
