#pragma once

// Nonlinear dynamic inversion baseline controller: an angle loop over
// Φ = (φ, θ, β) producing reference body rates, a rate loop producing the
// demanded control moment, and first-order reference pre-filters.
//
// Both loops use the stabilizing error sign K·(reference − state).

#include <Eigen/Dense>

namespace pmlr::ndi {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kGravity = 9.80665;
inline constexpr double kLambdaMargin = 1e-3;

struct NdiGains {
    Vec3 k_omega{10.0, 10.0, 10.0};  // k_p, k_q, k_r (1/s)
    Vec3 k_phi{2.0, 2.0, 2.0};       // k_φ, k_θ, k_β (1/s)
    Vec3 tau{0.7, 1.0, 0.7};         // τ_φ, τ_θ, τ_β (s)

    /// Throws FormatError unless every gain and time constant is positive.
    void validate() const;
};

struct AttitudeState {
    Vec3 attitude = Vec3::Zero();  // φ, θ, β (rad)
    Vec3 omega = Vec3::Zero();     // p, q, r (rad/s)
    double v = 25.0;               // m/s
    double g0 = kGravity;
};

/// Diagonal of Λ = diag(1, cos φ, −1).
Vec3 lambda_diag(double phi);

/// f_Φ = [q sinφ tanθ + r cosφ tanθ, −r sinφ, ḡ₀ cosθ sinφ / V].
Vec3 f_phi(const AttitudeState& s);

/// Φ̇ = Λω + f_Φ under the small aerodynamic angle assumption.
Vec3 attitude_rates(const AttitudeState& s);

/// T_dem = I K_ω (ω_ref − ω) − T_a + ω × Iω.
Vec3 rate_loop(const NdiGains& gains, const Mat3& inertia, const Vec3& omega,
               const Vec3& omega_ref, const Vec3& t_a);

/// ω_ref = Λ⁻¹(K_Φ(Φ_ref − Φ) − f_Φ). Throws KinematicSingularityError when
/// |cos φ| ≤ 1e-3 or |cos θ| ≤ 1e-3.
Vec3 angle_loop(const NdiGains& gains, const AttitudeState& state, const Vec3& phi_ref);

/// Exact discrete step of ẋ = (x_ref − x)/τ for a reference held over dt.
double prefilter_step(double x_pf, double x_ref, double tau, double dt);

}  // namespace pmlr::ndi
