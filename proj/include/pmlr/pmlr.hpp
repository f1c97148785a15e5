#pragma once

// Piecewise multi-linear representation (PMLR) of gridded vector data.
//
// Along axis j with breakpoints μ^(1) < ... < μ^(L), a coordinate z maps to
// the canonical piecewise-linear basis
//
//     ẑ = [1, z, |z − μ^(2)|, ..., |z − μ^(L−1)|]ᵀ            (length L)
//
// and a model with coefficient matrix Γ (m × ∏L_j) evaluates as
//
//     g(z) = Γ (ẑ_1 ⊗ ẑ_2 ⊗ ... ⊗ ẑ_k)
//          = (((Γ ⊠ ẑ_k) ⊠ ẑ_{k−1}) ... ⊠ ẑ_2) ẑ_1.
//
// Axis 1 is the outermost (slowest) factor of the Kronecker chain. Grid node
// values are stored in the same order: node (i_1, ..., i_k) has linear index
// ((i_1·L_2 + i_2)·L_3 + ...)·L_k + i_k, i.e. the last axis varies fastest.

#include "pmlr/tensor_core.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace pmlr {

/// Strictly increasing grid coordinates of one axis (at least two).
class AxisBreakpoints {
public:
    AxisBreakpoints() = default;
    explicit AxisBreakpoints(std::vector<double> mu, std::string name = {},
                             std::string unit = {});

    std::size_t size() const noexcept { return mu_.size(); }
    double operator[](std::size_t i) const { return mu_[i]; }
    const std::vector<double>& values() const noexcept { return mu_; }
    double front() const { return mu_.front(); }
    double back() const { return mu_.back(); }

    const std::string& name() const noexcept { return name_; }
    const std::string& unit() const noexcept { return unit_; }

    /// Index of the left node of the cell containing z, clamped to the
    /// boundary cells so that outside points extrapolate linearly.
    std::size_t cell(double z) const;

    bool operator==(const AxisBreakpoints&) const = default;

private:
    std::vector<double> mu_;
    std::string name_;
    std::string unit_;
};

std::size_t node_count(const std::vector<AxisBreakpoints>& axes);

/// Multi-index of node `linear` (last axis fastest).
std::vector<std::size_t> node_index(const std::vector<AxisBreakpoints>& axes,
                                    std::size_t linear);

/// Coordinates of node `linear`.
Vec node_coordinates(const std::vector<AxisBreakpoints>& axes, std::size_t linear);

/// k-dimensional rectilinear grid of m-vectors. `values` is m × node_count,
/// column c holding the output at the node with linear index c.
class GriddedDataset {
public:
    GriddedDataset() = default;
    GriddedDataset(std::vector<AxisBreakpoints> axes, Mat values);

    std::size_t k() const noexcept { return axes_.size(); }
    std::size_t m() const noexcept { return static_cast<std::size_t>(values_.rows()); }
    std::size_t nodes() const noexcept { return static_cast<std::size_t>(values_.cols()); }

    const std::vector<AxisBreakpoints>& axes() const noexcept { return axes_; }
    const Mat& values() const noexcept { return values_; }

    /// Direct multilinear interpolation of the table (the lookup-table
    /// semantics), with linear extension of the boundary cells outside the hull.
    Vec interpolate(const Vec& z) const;

    bool operator==(const GriddedDataset& other) const {
        return axes_ == other.axes_ && values_.rows() == other.values_.rows() &&
               values_.cols() == other.values_.cols() && values_ == other.values_;
    }

private:
    std::vector<AxisBreakpoints> axes_;
    Mat values_;
};

/// ẑ for coordinate z on `axis`.
Vec basis_vector(double z, const AxisBreakpoints& axis);

/// dẑ/dz. sign(0) is taken as 0, so at a breakpoint the hinge contributes
/// the mean of its one-sided slopes.
Vec basis_derivative(double z, const AxisBreakpoints& axis);

/// ẑ evaluated at every breakpoint of `axis`, one column per node (L × L).
Mat basis_matrix(const AxisBreakpoints& axis);

class PmlrModel {
public:
    PmlrModel() = default;
    PmlrModel(Mat gamma, std::vector<AxisBreakpoints> axes);

    std::size_t k() const noexcept { return axes_.size(); }
    std::size_t m() const noexcept { return static_cast<std::size_t>(gamma_.rows()); }
    const Mat& gamma() const noexcept { return gamma_; }
    const std::vector<AxisBreakpoints>& axes() const noexcept { return axes_; }

    /// Γ (ẑ_1 ⊗ ... ⊗ ẑ_k).
    Vec evaluate(const Vec& z) const;

    /// (((Γ ⊠ ẑ_k) ⊠ ẑ_{k−1}) ... ⊠ ẑ_2) ẑ_1, built from block_kron. Same value
    /// as evaluate(); slower, used for cross-checking.
    Vec evaluate_nested(const Vec& z) const;

    /// m × k matrix of partials; column j replaces ẑ_j by dẑ_j/dz_j in the chain.
    Mat jacobian(const Vec& z) const;

    /// Value and Jacobian sharing one set of basis vectors.
    void evaluate_with_jacobian(const Vec& z, Vec& value, Mat& jac) const;

    /// True when every coordinate lies within its axis range.
    bool inside_hull(const Vec& z) const;

    bool operator==(const PmlrModel& other) const {
        return axes_ == other.axes_ && gamma_.rows() == other.gamma_.rows() &&
               gamma_.cols() == other.gamma_.cols() && gamma_ == other.gamma_;
    }

private:
    void check_arity(const Vec& z) const;

    Mat gamma_;
    std::vector<AxisBreakpoints> axes_;
};

struct FitOptions {
    std::size_t node_budget = 200000;
    /// Reject regressor matrices whose reciprocal condition estimate is below this.
    double min_rcond = 1e-12;
};

/// Γ = Y X⁻¹ with X the n × n matrix of Kronecker-chain regressors at the nodes.
/// Throws NodeBudgetError above options.node_budget and SingularMatrixError
/// when X is numerically singular.
PmlrModel fit_regression(const GriddedDataset& data, const FitOptions& options = {});

/// Axis-by-axis fit: only L_j × L_j systems are inverted, so the cost stays
/// modest for large grids. Agrees with fit_regression up to rounding.
PmlrModel fit_iterative(const GriddedDataset& data, const FitOptions& options = {});

}  // namespace pmlr
