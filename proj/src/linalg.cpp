#include "swipt/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace swipt {

HermitianMatrix::HermitianMatrix(CMatrix m) {
  if (m.rows() != m.cols()) throw InvalidInput("HermitianMatrix: matrix is not square");
  if (!m.allFinite()) throw InvalidInput("HermitianMatrix: non-finite entries");
  if (m.size() > 0) {
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) throw InvalidInput("HermitianMatrix: entrywise asymmetry " + std::to_string(asym));
    mat_ = 0.5 * (m + m.adjoint());
  } else {
    mat_ = std::move(m);
  }
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index dim) {
  return trusted(CMatrix::Zero(dim, dim));
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index dim) {
  return trusted(CMatrix::Identity(dim, dim));
}

HermitianMatrix HermitianMatrix::outer(const CVector& v) {
  return trusted(v * v.adjoint());
}

HermitianMatrix HermitianMatrix::trusted(CMatrix m) {
  HermitianMatrix h;
  if (m.size() > 0) m = 0.5 * (m + m.adjoint()).eval();
  h.mat_ = std::move(m);
  return h;
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
  return HermitianMatrix::trusted(s * a.mat());
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidInput("HermitianMatrix: dimension mismatch in +");
  return HermitianMatrix::trusted(a.mat() + b.mat());
}

HermitianMatrix operator-(const HermitianMatrix& a) {
  return HermitianMatrix::trusted(-a.mat());
}

EigResult hermitian_eig(const HermitianMatrix& a) {
  if (a.dim() == 0) return {Eigen::VectorXd(0), CMatrix(0, 0)};
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a.mat());
  if (es.info() != Eigen::Success) throw SolverFailure("hermitian_eig: eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

CMatrix null_space_of_columns(const CMatrix& h, double rel_tol) {
  const Eigen::Index m = h.rows();
  const Eigen::Index k = h.cols();
  if (m < 1) throw InvalidInput("null_space_of_columns: at least one row required");
  if (k > m) throw InvalidInput("null_space_of_columns: more columns than rows");
  if (!h.allFinite()) throw InvalidInput("null_space_of_columns: non-finite entries");
  if (k == 0) return CMatrix::Identity(m, m);

  Eigen::JacobiSVD<CMatrix> svd(h, Eigen::ComputeFullU);
  const Eigen::VectorXd sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double thresh = rel_tol * smax * static_cast<double>(std::max(m, k));
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > thresh) ++rank;
  return svd.matrixU().rightCols(m - rank);
}

DominantEig dominant_rank_one(const HermitianMatrix& a) {
  if (a.dim() == 0) throw InvalidInput("dominant_rank_one: empty matrix");
  const double tr = a.trace_real();
  const EigResult eig = hermitian_eig(a);
  const double lambda_min = eig.values(0);
  if (lambda_min < -(1e-6 * std::max(tr, 0.0) + 1e-12))
    throw NotPsd("dominant_rank_one: lambda_min = " + std::to_string(lambda_min));

  DominantEig out;
  if (tr <= 0.0) {
    out.lambda_max = 0.0;
    out.u = CVector::Unit(a.dim(), 0);
    out.rank_defect = 0.0;
    return out;
  }
  const Eigen::Index last = eig.values.size() - 1;
  out.lambda_max = eig.values(last);
  out.u = eig.vectors.col(last);
  out.rank_defect = std::clamp(1.0 - out.lambda_max / tr, 0.0, 1.0);
  return out;
}

double frob_inner(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidInput("frob_inner: dimension mismatch");
  if (a.dim() == 0) return 0.0;
  return a.mat().cwiseProduct(b.mat().conjugate()).sum().real();
}

}  // namespace swipt
