#pragma once

// Dense matrix aliases and the few strong types shared across modules.

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rinv/scalar.hpp"

namespace rinv {

template <typename T>
using MatrixX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using VectorX = Eigen::Matrix<T, Eigen::Dynamic, 1>;
using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class SamplingMode { WithReplacement, WithoutReplacement };

template <typename T>
MatrixXd to_double_matrix(const MatrixX<T>& a) {
  MatrixXd out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = to_double(a(i, j));
  return out;
}

inline MatrixXd to_double_matrix(const MatrixXd& a) { return a; }

// Square matrix certified symmetric on construction.  Ingest symmetrizes
// (A + A^T)/2 after checking the asymmetry is within rel_tol of the largest
// entry, so downstream code can rely on exact symmetry.
template <typename T>
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(const MatrixX<T>& a, double rel_tol = 1e-12) {
    if (a.rows() != a.cols())
      throw std::invalid_argument("SymmetricMatrix: matrix is not square");
    MatrixXd ad = to_double_matrix(a);
    double scale = std::max(1.0, ad.cwiseAbs().maxCoeff());
    double asym = (ad - ad.transpose()).cwiseAbs().maxCoeff();
    if (asym > rel_tol * scale)
      throw std::invalid_argument("SymmetricMatrix: input is not symmetric");
    m_ = (a + MatrixX<T>(a.transpose())) / T(2);
  }

  Eigen::Index dim() const { return m_.rows(); }
  const MatrixX<T>& mat() const { return m_; }

 private:
  MatrixX<T> m_;
};

template <typename T>
SymmetricMatrix<T> gram_bbt(const MatrixX<T>& B) {
  return SymmetricMatrix<T>(MatrixX<T>(B * B.transpose()));
}

// Sum of outer products of the selected columns; repeated indices are
// deliberately allowed (sampling with replacement).
template <typename T>
SymmetricMatrix<T> outer_product_sum(const MatrixX<T>& B, const std::vector<int>& indices) {
  const Eigen::Index d = B.rows();
  MatrixX<T> acc = MatrixX<T>::Zero(d, d);
  for (int i : indices) {
    if (i < 0 || i >= B.cols())
      throw std::invalid_argument("outer_product_sum: column index out of range");
    VectorX<T> u = B.col(i);
    acc += MatrixX<T>(u * u.transpose());
  }
  return SymmetricMatrix<T>(acc);
}

template <typename T>
MatrixX<T> columns(const MatrixX<T>& B, const std::vector<int>& indices) {
  MatrixX<T> out(B.rows(), static_cast<Eigen::Index>(indices.size()));
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] < 0 || indices[j] >= B.cols())
      throw std::invalid_argument("columns: column index out of range");
    out.col(static_cast<Eigen::Index>(j)) = B.col(indices[j]);
  }
  return out;
}

template <typename T>
SymmetricMatrix<T> gram_of_columns(const MatrixX<T>& B, const std::vector<int>& indices) {
  MatrixX<T> sub = columns(B, indices);
  return SymmetricMatrix<T>(MatrixX<T>(sub.transpose() * sub));
}

// B B^T = I within tol, entrywise.
template <typename T>
bool is_isotropic(const MatrixX<T>& B, double tol = 1e-8) {
  MatrixXd a = to_double_matrix(MatrixX<T>(B * B.transpose()));
  return (a - MatrixXd::Identity(a.rows(), a.cols())).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace rinv
