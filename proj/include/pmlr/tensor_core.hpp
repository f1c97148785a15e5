#pragma once

// Dense block-Kronecker kernel.
//
// The block Kronecker product A ⊠ B of an m×n matrix A with a p×q matrix B
// (n an integer multiple κ of p) splits A into κ consecutive m×p column
// blocks A_i and returns [A_1 B ... A_κ B], an m×κq matrix. When n == p it is
// the ordinary matrix product.
//
// vec() and reshape_t() are column-major by contract, independent of how
// Eigen stores the operands.

#include <Eigen/Dense>

#include <cstddef>

namespace pmlr {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Throws NonFiniteError if any entry of `a` is NaN or infinite.
void require_finite(const Mat& a, const char* what);

/// A ⊠ B. Throws DimensionError(n, p) when cols(a) is not a multiple of rows(b).
Mat block_kron(const Mat& a, const Mat& b);

/// Standard Kronecker product A ⊗ B.
Mat kron(const Mat& a, const Mat& b);

/// Column stacking, mn×1.
Mat vec(const Mat& a);

/// Reshaping transformation 𝒯_λ: the column-major reshape of `a` into λ rows.
/// Throws DimensionError when rows·cols is not a multiple of λ.
Mat reshape_t(std::size_t lambda, const Mat& a);

/// 𝒯_λ evaluated literally as (vec(I_κ)ᵀ ⊗ I_λ) ⊠ vec(a). Quadratic memory in
/// the element count; kept for cross-checking reshape_t on small operands.
Mat reshape_t_expanded(std::size_t lambda, const Mat& a);

}  // namespace pmlr
