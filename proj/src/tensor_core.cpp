#include "pmlr/tensor_core.hpp"

#include "pmlr/errors.hpp"

#include <string>

namespace pmlr {

void require_finite(const Mat& a, const char* what) {
    if (!a.allFinite()) {
        throw NonFiniteError(std::string(what) + ": operand contains NaN or Inf");
    }
}

Mat block_kron(const Mat& a, const Mat& b) {
    require_finite(a, "block_kron");
    require_finite(b, "block_kron");
    const auto n = static_cast<std::size_t>(a.cols());
    const auto p = static_cast<std::size_t>(b.rows());
    if (p == 0 || n % p != 0) {
        throw DimensionError("block_kron: columns of A must be a multiple of rows of B", n, p);
    }
    const Eigen::Index kappa = a.cols() / b.rows();
    const Eigen::Index q = b.cols();
    Mat out(a.rows(), kappa * q);
    for (Eigen::Index i = 0; i < kappa; ++i) {
        out.middleCols(i * q, q).noalias() = a.middleCols(i * b.rows(), b.rows()) * b;
    }
    return out;
}

Mat kron(const Mat& a, const Mat& b) {
    require_finite(a, "kron");
    require_finite(b, "kron");
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Mat vec(const Mat& a) {
    require_finite(a, "vec");
    // Eigen's default storage is column-major, so a flat copy is vec(a).
    return Eigen::Map<const Mat>(a.data(), a.size(), 1);
}

Mat reshape_t(std::size_t lambda, const Mat& a) {
    require_finite(a, "reshape_t");
    const auto total = static_cast<std::size_t>(a.size());
    if (lambda == 0 || total % lambda != 0) {
        throw DimensionError("reshape_t: element count must be a multiple of lambda", total,
                             lambda);
    }
    const auto rows = static_cast<Eigen::Index>(lambda);
    return Eigen::Map<const Mat>(a.data(), rows, a.size() / rows);
}

Mat reshape_t_expanded(std::size_t lambda, const Mat& a) {
    const auto total = static_cast<std::size_t>(a.size());
    if (lambda == 0 || total % lambda != 0) {
        throw DimensionError("reshape_t: element count must be a multiple of lambda", total,
                             lambda);
    }
    const auto rows = static_cast<Eigen::Index>(lambda);
    const Eigen::Index kappa = a.size() / rows;
    const Mat selector =
        kron(vec(Mat::Identity(kappa, kappa)).transpose(), Mat::Identity(rows, rows));
    return block_kron(selector, vec(a));
}

}  // namespace pmlr
