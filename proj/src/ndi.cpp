#include "pmlr/ndi.hpp"

#include "pmlr/errors.hpp"

#include <cmath>

namespace pmlr::ndi {

void NdiGains::validate() const {
    if (!(k_omega.array() > 0.0).all() || !(k_phi.array() > 0.0).all() ||
        !(tau.array() > 0.0).all()) {
        throw FormatError("NDI gains and pre-filter time constants must be positive");
    }
}

Vec3 lambda_diag(double phi) { return {1.0, std::cos(phi), -1.0}; }

Vec3 f_phi(const AttitudeState& s) {
    const double phi = s.attitude[0];
    const double theta = s.attitude[1];
    const double q = s.omega[1];
    const double r = s.omega[2];
    const double tt = std::tan(theta);
    return {q * std::sin(phi) * tt + r * std::cos(phi) * tt, -r * std::sin(phi),
            s.g0 * std::cos(theta) * std::sin(phi) / s.v};
}

Vec3 attitude_rates(const AttitudeState& s) {
    return lambda_diag(s.attitude[0]).cwiseProduct(s.omega) + f_phi(s);
}

Vec3 rate_loop(const NdiGains& gains, const Mat3& inertia, const Vec3& omega,
               const Vec3& omega_ref, const Vec3& t_a) {
    const Vec3 omega_dot_des = gains.k_omega.cwiseProduct(omega_ref - omega);
    return inertia * omega_dot_des - t_a + omega.cross(inertia * omega);
}

Vec3 angle_loop(const NdiGains& gains, const AttitudeState& state, const Vec3& phi_ref) {
    const Vec3 lambda = lambda_diag(state.attitude[0]);
    if (!(std::abs(lambda[1]) > kLambdaMargin)) {
        throw KinematicSingularityError("angle loop: |cos(phi)| is within 1e-3 of zero");
    }
    if (!(std::abs(std::cos(state.attitude[1])) > kLambdaMargin)) {
        throw KinematicSingularityError("angle loop: |cos(theta)| is within 1e-3 of zero");
    }
    const Vec3 phi_dot_des = gains.k_phi.cwiseProduct(phi_ref - state.attitude);
    return (phi_dot_des - f_phi(state)).cwiseQuotient(lambda);
}

double prefilter_step(double x_pf, double x_ref, double tau, double dt) {
    return x_ref + (x_pf - x_ref) * std::exp(-dt / tau);
}

}  // namespace pmlr::ndi
