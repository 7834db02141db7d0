#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>

#include "swipt/errors.hpp"

namespace swipt {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Hermitian matrix, checked at construction (entrywise asymmetry <= 1e-12,
// finite entries) and stored exactly symmetrized as (A + A^H)/2. Zero-dim
// matrices are allowed; they stand for empty null-space compressions.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(CMatrix m);

  static HermitianMatrix zero(Eigen::Index dim);
  static HermitianMatrix identity(Eigen::Index dim);
  // v v^H
  static HermitianMatrix outer(const CVector& v);
  // caller guarantees hermitian; symmetrized without the asymmetry check
  static HermitianMatrix trusted(CMatrix m);

  Eigen::Index dim() const { return mat_.rows(); }
  const CMatrix& mat() const { return mat_; }
  double trace_real() const { return dim() == 0 ? 0.0 : mat_.trace().real(); }
  double frob_norm() const { return mat_.norm(); }

 private:
  CMatrix mat_;
};

HermitianMatrix operator*(double s, const HermitianMatrix& a);
HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator-(const HermitianMatrix& a);

struct EigResult {
  Eigen::VectorXd values;  // ascending
  CMatrix vectors;         // orthonormal columns, vectors.col(k) for values(k)
};

// A V = V diag(values) with residual <= 1e-9 ||A||_F, V^H V = I within 1e-10.
EigResult hermitian_eig(const HermitianMatrix& a);

// Orthonormal basis of the orthogonal complement of the column span of H
// (M x K, K <= M). Numerical rank uses sigma > rel_tol * sigma_max * max(M,K).
// K = 0 returns the M x M identity.
CMatrix null_space_of_columns(const CMatrix& h, double rel_tol = 1e-12);

struct DominantEig {
  double lambda_max = 0.0;
  CVector u;                // unit eigenvector of lambda_max
  double rank_defect = 0.0; // 1 - lambda_max / tr(A), in [0, 1]
};

// Requires A PSD (lambda_min >= -1e-6 tr(A) after a small absolute floor).
// tr(A) <= 0 (numerically zero matrix) yields (0, e1, 0).
DominantEig dominant_rank_one(const HermitianMatrix& a);

// Re tr(A B); equals the real Frobenius inner product for Hermitian pairs.
double frob_inner(const HermitianMatrix& a, const HermitianMatrix& b);

}  // namespace swipt
