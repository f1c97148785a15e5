#pragma once

// Closed-loop rotational simulation of the synthetic flying wing.
//
// Translational states are frozen: airspeed, dynamic pressure and α stay at
// trim and only β evolves through its kinematic channel. The controller sees
// the onboard model (PMLR or polynomial); the plant always uses direct
// multilinear interpolation of the truth tables.

#include "pmlr/airframe.hpp"
#include "pmlr/alloc.hpp"
#include "pmlr/ndi.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace pmlr::sim {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

struct SimConfig {
    double dt = 0.01;        // s
    double duration = 20.0;  // s
    double airspeed = 25.0;  // m/s
    double altitude = 500.0;  // m
    airframe::ModelKind model_kind = airframe::ModelKind::pmlr;
    airframe::GangMode gang = airframe::GangMode::split_aileron_ruddervator;
    ndi::NdiGains gains;
    std::uint64_t seed = 1;

    double pulse_amplitude_deg = 50.0;
    double pulse_on = 1.0;    // s
    double pulse_off = 11.0;  // s

    int substeps = 1;                  // RK4 steps per control frame
    double divergence_rate = 20.0;     // rad/s
    bool perfect_allocator = false;    // deliver T_dem exactly, surfaces frozen
    std::string dataset;               // empty: synthetic tables from `seed`
    std::vector<double> alloc_weights;     // diagonal of W, empty for identity
    std::vector<double> alloc_preference;  // δ_p, empty for zero

    /// Throws FormatError on any out-of-range field.
    void validate() const;

    /// Sets one field from its config-file key; throws FormatError for an
    /// unknown key or malformed value.
    void set(const std::string& key, const std::string& value);
};

/// Every documented config key with a one-line description.
const std::map<std::string, std::string>& config_keys();

/// Parses "key = value" lines; '#' starts a comment.
SimConfig parse_config(std::istream& is, SimConfig base = {});
SimConfig load_config(const std::string& path, SimConfig base = {});

/// International Standard Atmosphere density in the troposphere (kg/m³).
double air_density(double altitude);

struct SimState {
    double t = 0.0;
    Vec3 omega = Vec3::Zero();
    Vec3 attitude = Vec3::Zero();   // φ, θ, β
    Vec3 prefilter = Vec3::Zero();  // filtered Φ_ref
    Vec delta;                      // 10 physical deflections (rad)
};

struct Derivatives {
    Vec3 omega_dot;
    Vec3 attitude_dot;
};

/// ω̇ = I⁻¹(T_a − ω×Iω + T_δ) and Φ̇ = Λω + f_Φ. `params.c_a` must hold the
/// static moment coefficients at the state's (α, β).
Derivatives rotational_rhs(const airframe::AeroParams& params, const SimState& state,
                           const Vec3& t_delta);

struct TrimPoint {
    double alpha = 0.0;     // rad
    double theta = 0.0;     // rad
    double elevator = 0.0;  // symmetric flap deflection (rad)
    Vec delta;
    Vec3 residual_moment = Vec3::Zero();  // truth T_a + T_δ at trim (N·m)
};

struct FrameLog {
    double t = 0.0;
    Vec3 attitude, attitude_ref, omega, omega_ref;
    Vec delta;  // deflections commanded this frame
    Vec3 t_dem, t_delta, error;
    Vec3 onboard_effect;  // g(x₀, δ₀) from the onboard model
    Vec3 truth_effect;    // same quantity from the truth tables
    Vec3 delta_t_dem;     // ΔT_dem
    Vec3 achieved;        // G Δδ in virtual space
    bool saturated = false;
};

struct SimTrace {
    SimConfig config;
    TrimPoint trim;
    std::vector<FrameLog> frames;
};

class Simulator {
public:
    Simulator(SimConfig config, airframe::SurfaceSuite suite);

    const SimConfig& config() const noexcept { return config_; }
    const airframe::SurfaceSuite& suite() const noexcept { return suite_; }
    const TrimPoint& trim() const noexcept { return trim_; }

    /// Wings level at trim with the pre-filters settled.
    SimState initial_state() const;

    /// Aerodynamic parameters at sideslip β with truth static moments.
    airframe::AeroParams truth_params(double beta) const;
    /// Same with the onboard static-moment model.
    airframe::AeroParams onboard_params(double beta) const;

    /// One control frame with Φ_ref held at `command`; advances `state` by dt.
    /// Throws DivergenceError when any |ω| exceeds the configured limit.
    FrameLog step(SimState& state, const Vec3& command) const;

    /// The U-turn reference at time t: roll pulse, θ at trim, β at zero.
    Vec3 maneuver_command(double t) const;

    SimTrace run() const;

private:
    TrimPoint find_trim() const;
    void integrate(SimState& state, const Vec3& t_delta) const;

    SimConfig config_;
    airframe::SurfaceSuite suite_;
    airframe::AirframeConstants constants_;
    airframe::GangConfig gang_;
    alloc::EffectorLimits virtual_limits_;
    Mat weights_;
    Vec preference_;
    double q_inf_ = 0.0;
    TrimPoint trim_;
};

/// Builds the surface suite named by the config (dataset file or synthetic).
airframe::SurfaceSuite load_suite(const SimConfig& config);

/// Runs the U-turn maneuver.
SimTrace run_maneuver(const SimConfig& config);
SimTrace run_maneuver(const SimConfig& config, const airframe::SurfaceSuite& suite);

struct ErrorMetrics {
    Vec3 rms = Vec3::Zero();
    Vec3 peak = Vec3::Zero();
    Vec3 peak_demand = Vec3::Zero();
};

/// Per-axis RMS and peak of ℰ = T_dem − T_δ. Throws std::invalid_argument
/// for an empty trace.
ErrorMetrics error_metrics(const SimTrace& trace);

/// CSV with a commented header line carrying the trim solution.
void write_trace_csv(std::ostream& os, const SimTrace& trace);

}  // namespace pmlr::sim
