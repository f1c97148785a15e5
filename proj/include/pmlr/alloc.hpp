#pragma once

// Incremental (frame-wise) control allocation.
//
// Each control frame the nonlinear effector model g(x, δ) is replaced by its
// local affine approximation at the previous deflection δ₀, and the
// increment Δδ is sought with
//
//     G Δδ = ΔT_dem = T_dem − g(x₀, δ₀),     Δδ_lo ≤ Δδ ≤ Δδ_hi,
//
// where the bounds merge position and rate limits. The linear problem is
// solved by a weighted redistributed pseudo-inverse (RPI).

#include "pmlr/tensor_core.hpp"

#include <vector>

namespace pmlr::alloc {

/// Per-effector deflection bounds (rad) and rate magnitude (rad/s).
struct EffectorLimits {
    Vec delta_min;
    Vec delta_max;
    Vec rate_max;

    Eigen::Index size() const { return delta_min.size(); }
    /// Throws FormatError unless delta_min < delta_max and rate_max > 0 element-wise.
    void validate() const;
};

struct IncrementBounds {
    Vec lower;
    Vec upper;
};

struct AllocationProblem {
    Mat g_matrix;     // d × κ effectiveness
    Vec delta_t_dem;  // d
    Vec lower;        // κ
    Vec upper;        // κ
    Mat weights;      // κ × κ, symmetric positive definite
    Vec preference;   // κ

    /// Identity weights and zero preference.
    static AllocationProblem with_defaults(Mat g, Vec demand, Vec lower, Vec upper);
};

struct AllocationResult {
    Vec delta_increment;
    Vec achieved;
    std::vector<bool> saturated;
    int iterations = 0;

    Vec residual(const Vec& demand) const { return demand - achieved; }
};

/// upper = min(δ_max − δ₀, δ̇_max·dt), lower = max(δ_min − δ₀, −δ̇_max·dt).
/// Both are then kept inside ±δ̇_max·dt, so a surface that starts outside its
/// position limits is driven back at the full rate.
IncrementBounds increment_limits(const EffectorLimits& limits, const Vec& delta0, double dt);

/// ΔT_dem = T_dem − g(x₀, δ₀).
Vec incremental_demand(const Vec& t_dem, const Vec& onboard_effect);

/// G† = W⁻¹Gᵀ(GW⁻¹Gᵀ)⁻¹. Throws RankDeficiencyError when GW⁻¹Gᵀ is
/// numerically singular (condition estimate above 1e12).
Mat weighted_pinv(const Mat& g, const Mat& w);

/// Weighted pseudo-inverse with redistribution: effectors that leave their
/// bounds are clamped and frozen, and the remaining demand is re-solved over
/// the free set. Infeasible demand returns a best-effort increment whose
/// shortfall shows up in `achieved`.
AllocationResult rpi_allocate(const AllocationProblem& problem);

/// δ = δ₀ + Δδ.
Vec apply_increment(const Vec& delta0, const AllocationResult& result);

}  // namespace pmlr::alloc
