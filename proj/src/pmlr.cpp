#include "pmlr/pmlr.hpp"

#include "pmlr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace pmlr {

namespace {

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// Kronecker product of two column vectors, written out to skip the generic
// operator's checks in the evaluation hot path.
Vec kron_vec(const Vec& a, const Vec& b) {
    Vec out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a[i] * b;
    }
    return out;
}

Vec kron_chain(const std::vector<Vec>& factors) {
    Vec chain = Vec::Ones(1);
    for (const auto& f : factors) {
        chain = kron_vec(chain, f);
    }
    return chain;
}

Eigen::PartialPivLU<Mat> checked_lu(const Mat& a, double min_rcond, const std::string& what,
                                    int axis) {
    Eigen::PartialPivLU<Mat> lu(a);
    // The 1-norm estimate misses exactly zero pivots, so the spread of U's
    // diagonal is checked as well.
    const Vec pivots = lu.matrixLU().diagonal().cwiseAbs();
    const double spread = pivots.maxCoeff() > 0.0 ? pivots.minCoeff() / pivots.maxCoeff() : 0.0;
    const double rc = std::min(lu.rcond(), spread);
    if (!(rc >= min_rcond)) {
        throw SingularMatrixError(what + ": matrix is singular to working precision (rcond " +
                                      std::to_string(rc) + ")",
                                  axis);
    }
    return lu;
}

}  // namespace

AxisBreakpoints::AxisBreakpoints(std::vector<double> mu, std::string name, std::string unit)
    : mu_(std::move(mu)), name_(std::move(name)), unit_(std::move(unit)) {
    if (mu_.size() < 2) {
        throw FormatError("axis '" + name_ + "' needs at least two breakpoints");
    }
    for (std::size_t i = 0; i < mu_.size(); ++i) {
        if (!std::isfinite(mu_[i])) {
            throw NonFiniteError("axis '" + name_ + "' has a non-finite breakpoint");
        }
        if (i > 0 && !(mu_[i] > mu_[i - 1])) {
            throw FormatError("axis '" + name_ + "' breakpoints must be strictly increasing");
        }
    }
}

std::size_t AxisBreakpoints::cell(double z) const {
    // upper_bound gives the first breakpoint strictly greater than z.
    const auto it = std::upper_bound(mu_.begin(), mu_.end(), z);
    const auto idx = static_cast<std::ptrdiff_t>(it - mu_.begin()) - 1;
    return static_cast<std::size_t>(
        std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(mu_.size()) - 2));
}

std::size_t node_count(const std::vector<AxisBreakpoints>& axes) {
    std::size_t n = 1;
    for (const auto& a : axes) {
        if (a.size() != 0 && n > std::numeric_limits<std::size_t>::max() / a.size()) {
            throw NodeBudgetError("grid node count overflows");
        }
        n *= a.size();
    }
    return n;
}

std::vector<std::size_t> node_index(const std::vector<AxisBreakpoints>& axes,
                                    std::size_t linear) {
    std::vector<std::size_t> idx(axes.size());
    for (std::size_t j = axes.size(); j-- > 0;) {
        idx[j] = linear % axes[j].size();
        linear /= axes[j].size();
    }
    return idx;
}

Vec node_coordinates(const std::vector<AxisBreakpoints>& axes, std::size_t linear) {
    const auto idx = node_index(axes, linear);
    Vec z(static_cast<Eigen::Index>(axes.size()));
    for (std::size_t j = 0; j < axes.size(); ++j) {
        z[static_cast<Eigen::Index>(j)] = axes[j][idx[j]];
    }
    return z;
}

GriddedDataset::GriddedDataset(std::vector<AxisBreakpoints> axes, Mat values)
    : axes_(std::move(axes)), values_(std::move(values)) {
    if (axes_.empty()) {
        throw FormatError("gridded dataset needs at least one axis");
    }
    const std::size_t n = node_count(axes_);
    if (static_cast<std::size_t>(values_.cols()) != n) {
        throw DimensionError("gridded dataset: value columns must equal the node count",
                             static_cast<std::size_t>(values_.cols()), n);
    }
    if (values_.rows() == 0) {
        throw FormatError("gridded dataset needs at least one output");
    }
    require_finite(values_, "gridded dataset");
}

Vec GriddedDataset::interpolate(const Vec& z) const {
    if (static_cast<std::size_t>(z.size()) != k()) {
        throw DimensionError("interpolate: point arity differs from grid dimension",
                             static_cast<std::size_t>(z.size()), k());
    }
    require_finite(z, "interpolate");
    const std::size_t dims = k();
    std::vector<std::size_t> lo(dims);
    std::vector<double> t(dims);
    for (std::size_t j = 0; j < dims; ++j) {
        const auto& ax = axes_[j];
        lo[j] = ax.cell(z[static_cast<Eigen::Index>(j)]);
        t[j] = (z[static_cast<Eigen::Index>(j)] - ax[lo[j]]) / (ax[lo[j] + 1] - ax[lo[j]]);
    }

    Vec out = Vec::Zero(values_.rows());
    const std::size_t corners = std::size_t{1} << dims;
    for (std::size_t c = 0; c < corners; ++c) {
        double w = 1.0;
        std::size_t linear = 0;
        for (std::size_t j = 0; j < dims; ++j) {
            const bool upper = ((c >> (dims - 1 - j)) & 1U) != 0;
            w *= upper ? t[j] : 1.0 - t[j];
            linear = linear * axes_[j].size() + lo[j] + (upper ? 1 : 0);
        }
        out += w * values_.col(static_cast<Eigen::Index>(linear));
    }
    return out;
}

Vec basis_vector(double z, const AxisBreakpoints& axis) {
    const std::size_t L = axis.size();
    Vec b(static_cast<Eigen::Index>(L));
    b[0] = 1.0;
    b[1] = z;
    for (std::size_t i = 2; i < L; ++i) {
        b[static_cast<Eigen::Index>(i)] = std::abs(z - axis[i - 1]);
    }
    return b;
}

Vec basis_derivative(double z, const AxisBreakpoints& axis) {
    const std::size_t L = axis.size();
    Vec d(static_cast<Eigen::Index>(L));
    d[0] = 0.0;
    d[1] = 1.0;
    for (std::size_t i = 2; i < L; ++i) {
        d[static_cast<Eigen::Index>(i)] = sign(z - axis[i - 1]);
    }
    return d;
}

Mat basis_matrix(const AxisBreakpoints& axis) {
    const auto L = static_cast<Eigen::Index>(axis.size());
    Mat z(L, L);
    for (Eigen::Index c = 0; c < L; ++c) {
        z.col(c) = basis_vector(axis[static_cast<std::size_t>(c)], axis);
    }
    return z;
}

PmlrModel::PmlrModel(Mat gamma, std::vector<AxisBreakpoints> axes)
    : gamma_(std::move(gamma)), axes_(std::move(axes)) {
    if (axes_.empty()) {
        throw FormatError("PMLR model needs at least one axis");
    }
    const std::size_t n = node_count(axes_);
    if (static_cast<std::size_t>(gamma_.cols()) != n) {
        throw DimensionError("PMLR model: gamma columns must equal the product of axis lengths",
                             static_cast<std::size_t>(gamma_.cols()), n);
    }
    if (gamma_.rows() == 0) {
        throw FormatError("PMLR model needs at least one output");
    }
    require_finite(gamma_, "PMLR model");
}

void PmlrModel::check_arity(const Vec& z) const {
    if (static_cast<std::size_t>(z.size()) != k()) {
        throw DimensionError("PMLR model: point arity differs from model dimension",
                             static_cast<std::size_t>(z.size()), k());
    }
    require_finite(z, "PMLR model");
}

Vec PmlrModel::evaluate(const Vec& z) const {
    check_arity(z);
    std::vector<Vec> factors;
    factors.reserve(k());
    for (std::size_t j = 0; j < k(); ++j) {
        factors.push_back(basis_vector(z[static_cast<Eigen::Index>(j)], axes_[j]));
    }
    return gamma_ * kron_chain(factors);
}

Vec PmlrModel::evaluate_nested(const Vec& z) const {
    check_arity(z);
    Mat acc = gamma_;
    for (std::size_t j = k(); j-- > 1;) {
        acc = block_kron(acc, basis_vector(z[static_cast<Eigen::Index>(j)], axes_[j]));
    }
    return acc * basis_vector(z[0], axes_[0]);
}

Mat PmlrModel::jacobian(const Vec& z) const {
    Vec value;
    Mat jac;
    evaluate_with_jacobian(z, value, jac);
    return jac;
}

void PmlrModel::evaluate_with_jacobian(const Vec& z, Vec& value, Mat& jac) const {
    check_arity(z);
    std::vector<Vec> basis;
    std::vector<Vec> deriv;
    basis.reserve(k());
    deriv.reserve(k());
    for (std::size_t j = 0; j < k(); ++j) {
        basis.push_back(basis_vector(z[static_cast<Eigen::Index>(j)], axes_[j]));
        deriv.push_back(basis_derivative(z[static_cast<Eigen::Index>(j)], axes_[j]));
    }
    value = gamma_ * kron_chain(basis);
    jac.resize(gamma_.rows(), static_cast<Eigen::Index>(k()));
    for (std::size_t j = 0; j < k(); ++j) {
        std::swap(basis[j], deriv[j]);
        jac.col(static_cast<Eigen::Index>(j)) = gamma_ * kron_chain(basis);
        std::swap(basis[j], deriv[j]);
    }
}

bool PmlrModel::inside_hull(const Vec& z) const {
    check_arity(z);
    for (std::size_t j = 0; j < k(); ++j) {
        const double v = z[static_cast<Eigen::Index>(j)];
        if (v < axes_[j].front() || v > axes_[j].back()) {
            return false;
        }
    }
    return true;
}

PmlrModel fit_regression(const GriddedDataset& data, const FitOptions& options) {
    const std::size_t n = data.nodes();
    if (n > options.node_budget) {
        throw NodeBudgetError("fit_regression: " + std::to_string(n) +
                              " grid nodes exceed the budget of " +
                              std::to_string(options.node_budget) +
                              "; use the iterative fit");
    }
    const auto& axes = data.axes();
    const auto N = static_cast<Eigen::Index>(n);

    // Column c of X is the Kronecker-chain basis at node c.
    Mat x(N, N);
    std::vector<Vec> factors(axes.size());
    for (std::size_t c = 0; c < n; ++c) {
        const auto idx = node_index(axes, c);
        for (std::size_t j = 0; j < axes.size(); ++j) {
            factors[j] = basis_vector(axes[j][idx[j]], axes[j]);
        }
        x.col(static_cast<Eigen::Index>(c)) = kron_chain(factors);
    }

    // Γ X = Y  ⇔  Xᵀ Γᵀ = Yᵀ.
    const Mat xt = x.transpose();
    const auto lu = checked_lu(xt, options.min_rcond, "fit_regression", -1);
    Mat gamma = lu.solve(data.values().transpose()).transpose();
    return PmlrModel(std::move(gamma), axes);
}

PmlrModel fit_iterative(const GriddedDataset& data, const FitOptions& options) {
    const auto& axes = data.axes();
    const std::size_t k = axes.size();

    std::vector<Mat> z_inv(k);
    for (std::size_t j = 0; j < k; ++j) {
        const auto lu = checked_lu(basis_matrix(axes[j]), options.min_rcond,
                                   "fit_iterative (axis " + std::to_string(j) + " '" + axes[j].name() + "')",
                                   static_cast<int>(j));
        z_inv[j] = lu.inverse();
    }

    // λ_j = product of the axis lengths after axis j.
    std::vector<std::size_t> lambda(k);
    std::size_t tail = 1;
    for (std::size_t j = k; j-- > 0;) {
        lambda[j] = tail;
        tail *= axes[j].size();
    }

    Mat gamma(data.values().rows(), data.values().cols());
    for (Eigen::Index i = 0; i < data.values().rows(); ++i) {
        // With the last axis varying fastest, the stored row already is vec(Ŷ_i).
        Mat q = data.values().row(i).transpose();
        for (std::size_t j = 0; j < k; ++j) {
            q = block_kron(reshape_t(lambda[j], q), z_inv[j]);
        }
        gamma.row(i) = q;
    }
    return PmlrModel(std::move(gamma), axes);
}

}  // namespace pmlr
