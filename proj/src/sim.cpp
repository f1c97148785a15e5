#include "pmlr/sim.hpp"

#include "pmlr/errors.hpp"
#include "pmlr/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace pmlr::sim {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::string trim_ws(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_number(const std::string& key, const std::string& value) {
    try {
        return io::parse_double(value);
    } catch (const FormatError&) {
        throw FormatError("config key '" + key + "': '" + value + "' is not a number");
    }
}

long long to_integer(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != value.size()) {
        throw FormatError("config key '" + key + "': '" + value + "' is not an integer");
    }
    return v;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") {
        return true;
    }
    if (value == "false" || value == "0" || value == "no") {
        return false;
    }
    throw FormatError("config key '" + key + "': expected true or false, found '" + value + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& value) {
    std::string s = value;
    for (char& c : s) {
        if (c == ',') {
            c = ' ';
        }
    }
    std::istringstream is(s);
    std::vector<double> out;
    std::string tok;
    while (is >> tok) {
        out.push_back(to_number(key, tok));
    }
    return out;
}

}  // namespace

const std::map<std::string, std::string>& config_keys() {
    static const std::map<std::string, std::string> keys = {
        {"dt", "control and integration step (s)"},
        {"duration", "simulated time (s)"},
        {"airspeed", "frozen true airspeed (m/s)"},
        {"altitude", "altitude for the standard-atmosphere density (m)"},
        {"model", "onboard effector model: pmlr or poly"},
        {"gang", "ganging mode: 1 split-aileron/ruddervator, 2 elevator/rudderon"},
        {"seed", "seed of the synthetic aerodynamic tables"},
        {"dataset", "dataset file to use instead of synthetic tables"},
        {"k_p", "roll-rate loop gain (1/s)"},
        {"k_q", "pitch-rate loop gain (1/s)"},
        {"k_r", "yaw-rate loop gain (1/s)"},
        {"k_phi", "bank-angle loop gain (1/s)"},
        {"k_theta", "pitch-angle loop gain (1/s)"},
        {"k_beta", "sideslip loop gain (1/s)"},
        {"tau_phi", "bank reference pre-filter time constant (s)"},
        {"tau_theta", "pitch reference pre-filter time constant (s)"},
        {"tau_beta", "sideslip reference pre-filter time constant (s)"},
        {"pulse_amplitude_deg", "roll command pulse amplitude (deg)"},
        {"pulse_on", "pulse start time (s)"},
        {"pulse_off", "pulse end time (s)"},
        {"substeps", "RK4 steps per control frame"},
        {"divergence_rate", "abort when any body rate exceeds this (rad/s)"},
        {"perfect_allocator", "deliver the demanded moment exactly (true/false)"},
        {"alloc_weights", "diagonal allocation weights, one per virtual effector"},
        {"alloc_preference", "preferred virtual increments (rad)"},
    };
    return keys;
}

void SimConfig::set(const std::string& key, const std::string& value) {
    const auto num = [&] { return to_number(key, value); };
    if (key == "dt") {
        dt = num();
    } else if (key == "duration") {
        duration = num();
    } else if (key == "airspeed") {
        airspeed = num();
    } else if (key == "altitude") {
        altitude = num();
    } else if (key == "model") {
        model_kind = airframe::parse_model_kind(value);
    } else if (key == "gang") {
        gang = airframe::parse_gang_mode(static_cast<int>(to_integer(key, value)));
    } else if (key == "seed") {
        const long long s = to_integer(key, value);
        if (s < 0) {
            throw FormatError("config key 'seed' must be non-negative");
        }
        seed = static_cast<std::uint64_t>(s);
    } else if (key == "dataset") {
        dataset = value;
    } else if (key == "k_p") {
        gains.k_omega[0] = num();
    } else if (key == "k_q") {
        gains.k_omega[1] = num();
    } else if (key == "k_r") {
        gains.k_omega[2] = num();
    } else if (key == "k_phi") {
        gains.k_phi[0] = num();
    } else if (key == "k_theta") {
        gains.k_phi[1] = num();
    } else if (key == "k_beta") {
        gains.k_phi[2] = num();
    } else if (key == "tau_phi") {
        gains.tau[0] = num();
    } else if (key == "tau_theta") {
        gains.tau[1] = num();
    } else if (key == "tau_beta") {
        gains.tau[2] = num();
    } else if (key == "pulse_amplitude_deg") {
        pulse_amplitude_deg = num();
    } else if (key == "pulse_on") {
        pulse_on = num();
    } else if (key == "pulse_off") {
        pulse_off = num();
    } else if (key == "substeps") {
        substeps = static_cast<int>(to_integer(key, value));
    } else if (key == "divergence_rate") {
        divergence_rate = num();
    } else if (key == "perfect_allocator") {
        perfect_allocator = to_bool(key, value);
    } else if (key == "alloc_weights") {
        alloc_weights = to_list(key, value);
    } else if (key == "alloc_preference") {
        alloc_preference = to_list(key, value);
    } else {
        throw FormatError("unknown config key '" + key + "'");
    }
}

void SimConfig::validate() const {
    if (!(dt > 0.0)) {
        throw FormatError("dt must be positive");
    }
    if (!(duration >= dt)) {
        throw FormatError("duration must be at least dt");
    }
    if (!(airspeed > 0.0)) {
        throw FormatError("airspeed must be positive");
    }
    if (!(altitude >= -500.0 && altitude <= 11000.0)) {
        throw FormatError("altitude must lie in the troposphere (-500 m to 11000 m)");
    }
    gains.validate();
    if (substeps < 1) {
        throw FormatError("substeps must be at least 1");
    }
    if (!(divergence_rate > 0.0)) {
        throw FormatError("divergence_rate must be positive");
    }
    if (!std::isfinite(pulse_amplitude_deg) || !(pulse_on <= pulse_off)) {
        throw FormatError("pulse_on must not exceed pulse_off");
    }
    if (std::abs(pulse_amplitude_deg) >= 89.0) {
        throw FormatError("pulse_amplitude_deg must stay below 89 deg");
    }
    for (const double w : alloc_weights) {
        if (!(w > 0.0)) {
            throw FormatError("alloc_weights must be positive");
        }
    }
}

SimConfig parse_config(std::istream& is, SimConfig base) {
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim_ws(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw FormatError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        try {
            base.set(trim_ws(line.substr(0, eq)), trim_ws(line.substr(eq + 1)));
        } catch (const FormatError& e) {
            throw FormatError("config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return base;
}

SimConfig load_config(const std::string& path, SimConfig base) {
    std::ifstream is(path);
    if (!is) {
        throw FormatError("cannot open config '" + path + "'");
    }
    return parse_config(is, std::move(base));
}

double air_density(double altitude) {
    constexpr double rho0 = 1.225;
    constexpr double t0 = 288.15;
    constexpr double lapse = 0.0065;
    constexpr double r_air = 287.05287;
    const double exponent = ndi::kGravity / (r_air * lapse) - 1.0;
    return rho0 * std::pow(1.0 - lapse * altitude / t0, exponent);
}

Derivatives rotational_rhs(const airframe::AeroParams& params, const SimState& state,
                           const Vec3& t_delta) {
    const Vec3& w = state.omega;
    const Vec3 t_a = airframe::airframe_moment(params, w);
    const Vec3 rhs = t_a - w.cross(params.inertia * w) + t_delta;
    Derivatives d;
    d.omega_dot = params.inertia.partialPivLu().solve(rhs);
    d.attitude_dot = ndi::attitude_rates({state.attitude, w, params.v, ndi::kGravity});
    return d;
}

Simulator::Simulator(SimConfig config, airframe::SurfaceSuite suite)
    : config_(std::move(config)), suite_(std::move(suite)) {
    config_.validate();
    gang_.mode = config_.gang;
    virtual_limits_ = airframe::gang_limits(gang_, suite_.limits);
    const Eigen::Index nv = gang_.virtual_size();

    weights_ = Mat::Identity(nv, nv);
    if (!config_.alloc_weights.empty()) {
        if (static_cast<Eigen::Index>(config_.alloc_weights.size()) != nv) {
            throw FormatError("alloc_weights needs " + std::to_string(nv) +
                              " entries for this ganging mode");
        }
        for (Eigen::Index i = 0; i < nv; ++i) {
            weights_(i, i) = config_.alloc_weights[static_cast<std::size_t>(i)];
        }
    }
    preference_ = Vec::Zero(nv);
    if (!config_.alloc_preference.empty()) {
        if (static_cast<Eigen::Index>(config_.alloc_preference.size()) != nv) {
            throw FormatError("alloc_preference needs " + std::to_string(nv) +
                              " entries for this ganging mode");
        }
        preference_ = Eigen::Map<const Vec>(config_.alloc_preference.data(), nv);
    }

    q_inf_ = 0.5 * air_density(config_.altitude) * config_.airspeed * config_.airspeed;
    trim_ = find_trim();
}

airframe::AeroParams Simulator::truth_params(double beta) const {
    airframe::AeroParams p;
    p.q_inf = q_inf_;
    p.s_ref = constants_.s_ref;
    p.l_ref = Vec3(constants_.span, constants_.chord, constants_.span);
    p.v = config_.airspeed;
    p.inertia = constants_.inertia;
    p.c_omega = constants_.c_omega;
    p.c_a = suite_.ca_table.interpolate(Eigen::Vector2d(trim_.alpha, beta));
    return p;
}

airframe::AeroParams Simulator::onboard_params(double beta) const {
    airframe::AeroParams p = truth_params(beta);
    p.c_a = suite_.ca_model.evaluate(Eigen::Vector2d(trim_.alpha, beta));
    return p;
}

TrimPoint Simulator::find_trim() const {
    TrimPoint t;
    const double weight = constants_.mass * ndi::kGravity;
    t.alpha = (weight / (q_inf_ * constants_.s_ref) - constants_.cl0) / constants_.cl_alpha;
    t.theta = t.alpha;

    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (int i = 0; i < airframe::kFlaps; ++i) {
        lo = std::max(lo, suite_.limits.delta_min[i]);
        hi = std::min(hi, suite_.limits.delta_max[i]);
    }
    const Vec3 c_a = suite_.ca_table.interpolate(Eigen::Vector2d(t.alpha, 0.0));
    const auto deflection = [](double elevator) {
        Vec d = Vec::Zero(airframe::kSurfaces);
        d.head(airframe::kFlaps).setConstant(elevator);
        return d;
    };
    const auto pitch = [&](double elevator) {
        return c_a[1] + airframe::cdelta_table(suite_, t.alpha, 0.0, deflection(elevator))[1];
    };

    double f_lo = pitch(lo);
    const double f_hi = pitch(hi);
    if (f_lo * f_hi > 0.0) {
        throw NumericalError("trim: no symmetric flap deflection balances the pitch moment");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = pitch(mid);
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    t.elevator = 0.5 * (lo + hi);
    t.delta = deflection(t.elevator);

    airframe::AeroParams p;
    p.q_inf = q_inf_;
    p.s_ref = constants_.s_ref;
    p.l_ref = Vec3(constants_.span, constants_.chord, constants_.span);
    t.residual_moment = airframe::control_moment(
        p, c_a + airframe::cdelta_table(suite_, t.alpha, 0.0, t.delta));
    return t;
}

SimState Simulator::initial_state() const {
    SimState s;
    s.attitude = Vec3(0.0, trim_.theta, 0.0);
    s.prefilter = s.attitude;
    s.delta = trim_.delta;
    return s;
}

Vec3 Simulator::maneuver_command(double t) const {
    const bool on = t >= config_.pulse_on && t < config_.pulse_off;
    return {on ? config_.pulse_amplitude_deg * kDeg : 0.0, trim_.theta, 0.0};
}

void Simulator::integrate(SimState& state, const Vec3& t_delta) const {
    const double h = config_.dt / config_.substeps;
    const auto f = [&](const Vec3& w, const Vec3& a) {
        SimState s;
        s.omega = w;
        s.attitude = a;
        return rotational_rhs(truth_params(a[2]), s, t_delta);
    };
    for (int i = 0; i < config_.substeps; ++i) {
        const Vec3 w = state.omega;
        const Vec3 a = state.attitude;
        const Derivatives k1 = f(w, a);
        const Derivatives k2 = f(w + 0.5 * h * k1.omega_dot, a + 0.5 * h * k1.attitude_dot);
        const Derivatives k3 = f(w + 0.5 * h * k2.omega_dot, a + 0.5 * h * k2.attitude_dot);
        const Derivatives k4 = f(w + h * k3.omega_dot, a + h * k3.attitude_dot);
        state.omega = w + h / 6.0 *
                              (k1.omega_dot + 2.0 * k2.omega_dot + 2.0 * k3.omega_dot + k4.omega_dot);
        state.attitude = a + h / 6.0 * (k1.attitude_dot + 2.0 * k2.attitude_dot +
                                        2.0 * k3.attitude_dot + k4.attitude_dot);
    }
}

FrameLog Simulator::step(SimState& state, const Vec3& command) const {
    const double dt = config_.dt;
    const double alpha = trim_.alpha;
    const double beta = state.attitude[2];

    FrameLog log;
    log.t = state.t;
    for (int i = 0; i < 3; ++i) {
        state.prefilter[i] = ndi::prefilter_step(state.prefilter[i], command[i],
                                                 config_.gains.tau[i], dt);
    }
    log.attitude = state.attitude;
    log.attitude_ref = state.prefilter;
    log.omega = state.omega;

    const ndi::AttitudeState att{state.attitude, state.omega, config_.airspeed, ndi::kGravity};
    log.omega_ref = ndi::angle_loop(config_.gains, att, state.prefilter);

    const airframe::AeroParams onboard = onboard_params(beta);
    const airframe::AeroParams truth = truth_params(beta);
    const Vec3 t_a = airframe::airframe_moment(onboard, state.omega);
    log.t_dem = ndi::rate_loop(config_.gains, onboard.inertia, state.omega, log.omega_ref, t_a);
    log.truth_effect =
        airframe::control_moment(truth, airframe::cdelta_table(suite_, alpha, beta, state.delta));

    if (config_.perfect_allocator) {
        log.onboard_effect = log.truth_effect;
        log.delta_t_dem = alloc::incremental_demand(log.t_dem, log.onboard_effect);
        log.achieved = log.delta_t_dem;
        log.delta = state.delta;
        log.t_delta = log.t_dem;
    } else {
        const auto kind = config_.model_kind;
        log.onboard_effect = airframe::control_moment(
            onboard, airframe::cdelta(suite_, kind, alpha, beta, state.delta));
        log.delta_t_dem = alloc::incremental_demand(log.t_dem, log.onboard_effect);

        const Mat m_full = airframe::effectiveness_columns(suite_, kind, alpha, beta, state.delta);
        const Vec v0 = airframe::gang_contract(gang_, state.delta);
        const double hint =
            gang_.mode == airframe::GangMode::split_aileron_ruddervator ? v0[airframe::kFlaps] : 0.0;
        Mat g = airframe::gang_project(gang_, m_full, hint);
        for (int i = 0; i < 3; ++i) {
            g.row(i) *= onboard.q_inf * onboard.s_ref * onboard.l_ref[i];
        }
        const alloc::IncrementBounds bounds = alloc::increment_limits(virtual_limits_, v0, dt);
        const alloc::AllocationProblem problem{g,       log.delta_t_dem, bounds.lower,
                                               bounds.upper, weights_, preference_};
        const alloc::AllocationResult result = alloc::rpi_allocate(problem);
        log.achieved = result.achieved;
        for (const bool s : result.saturated) {
            log.saturated = log.saturated || s;
        }
        log.delta = airframe::gang_expand(gang_, alloc::apply_increment(v0, result));
        log.t_delta = airframe::control_moment(
            truth, airframe::cdelta_table(suite_, alpha, beta, log.delta));
    }
    log.error = log.t_dem - log.t_delta;

    state.delta = log.delta;
    integrate(state, log.t_delta);
    state.t = log.t + dt;

    const bool finite = state.omega.allFinite() && state.attitude.allFinite();
    if (!finite || state.omega.cwiseAbs().maxCoeff() > config_.divergence_rate) {
        std::ostringstream msg;
        msg << "simulation diverged at t = " << state.t << " s: |omega| exceeds "
            << config_.divergence_rate << " rad/s";
        throw DivergenceError(msg.str());
    }
    return log;
}

SimTrace Simulator::run() const {
    SimTrace trace;
    trace.config = config_;
    trace.trim = trim_;
    const auto frames = static_cast<std::size_t>(std::llround(config_.duration / config_.dt));
    trace.frames.reserve(frames);
    SimState state = initial_state();
    for (std::size_t i = 0; i < frames; ++i) {
        state.t = static_cast<double>(i) * config_.dt;
        trace.frames.push_back(step(state, maneuver_command(state.t)));
    }
    return trace;
}

airframe::SurfaceSuite load_suite(const SimConfig& config) {
    if (config.dataset.empty()) {
        return airframe::synth_dataset(config.seed);
    }
    return airframe::build_suite(io::load_dataset(config.dataset));
}

SimTrace run_maneuver(const SimConfig& config) {
    return run_maneuver(config, load_suite(config));
}

SimTrace run_maneuver(const SimConfig& config, const airframe::SurfaceSuite& suite) {
    return Simulator(config, suite).run();
}

ErrorMetrics error_metrics(const SimTrace& trace) {
    if (trace.frames.empty()) {
        throw std::invalid_argument("error_metrics: empty trace");
    }
    ErrorMetrics m;
    Vec3 sum_sq = Vec3::Zero();
    for (const auto& f : trace.frames) {
        sum_sq += f.error.cwiseAbs2();
        m.peak = m.peak.cwiseMax(f.error.cwiseAbs());
        m.peak_demand = m.peak_demand.cwiseMax(f.t_dem.cwiseAbs());
    }
    m.rms = (sum_sq / static_cast<double>(trace.frames.size())).cwiseSqrt();
    return m;
}

void write_trace_csv(std::ostream& os, const SimTrace& trace) {
    const auto& c = trace.config;
    const auto& names = airframe::surface_names();
    const auto fmt = [](double v) { return io::format_double(v); };

    os << "# model=" << airframe::to_string(c.model_kind) << " gang=" << static_cast<int>(c.gang)
       << " seed=" << c.seed << " dt=" << fmt(c.dt) << " airspeed=" << fmt(c.airspeed)
       << " altitude=" << fmt(c.altitude) << " trim_alpha_deg=" << fmt(trace.trim.alpha / kDeg)
       << " trim_theta_deg=" << fmt(trace.trim.theta / kDeg)
       << " trim_elevator_deg=" << fmt(trace.trim.elevator / kDeg) << '\n';

    std::vector<std::string> cols = {"t[s]"};
    const auto add3 = [&](const char* a, const char* b, const char* cc, const std::string& unit) {
        cols.push_back(std::string(a) + "[" + unit + "]");
        cols.push_back(std::string(b) + "[" + unit + "]");
        cols.push_back(std::string(cc) + "[" + unit + "]");
    };
    add3("phi", "theta", "beta", "rad");
    add3("phi_ref", "theta_ref", "beta_ref", "rad");
    add3("p", "q", "r", "rad/s");
    add3("p_ref", "q_ref", "r_ref", "rad/s");
    for (const auto& n : names) {
        cols.push_back(n + "[rad]");
    }
    add3("Tdem_l", "Tdem_m", "Tdem_n", "N*m");
    add3("Tdelta_l", "Tdelta_m", "Tdelta_n", "N*m");
    add3("E_l", "E_m", "E_n", "N*m");
    cols.push_back("saturated[-]");
    add3("phi", "theta", "beta", "deg");
    add3("phi_ref", "theta_ref", "beta_ref", "deg");
    add3("p", "q", "r", "deg/s");
    add3("p_ref", "q_ref", "r_ref", "deg/s");
    for (const auto& n : names) {
        cols.push_back(n + "[deg]");
    }
    for (std::size_t i = 0; i < cols.size(); ++i) {
        os << (i == 0 ? "" : ",") << cols[i];
    }
    os << '\n';

    for (const auto& f : trace.frames) {
        std::string row = fmt(f.t);
        const auto put = [&](double v) {
            row += ',';
            row += fmt(v);
        };
        const auto put3 = [&](const Vec3& v, double scale) {
            for (int i = 0; i < 3; ++i) {
                put(v[i] * scale);
            }
        };
        put3(f.attitude, 1.0);
        put3(f.attitude_ref, 1.0);
        put3(f.omega, 1.0);
        put3(f.omega_ref, 1.0);
        for (Eigen::Index i = 0; i < f.delta.size(); ++i) {
            put(f.delta[i]);
        }
        put3(f.t_dem, 1.0);
        put3(f.t_delta, 1.0);
        put3(f.error, 1.0);
        row += f.saturated ? ",1" : ",0";
        put3(f.attitude, 1.0 / kDeg);
        put3(f.attitude_ref, 1.0 / kDeg);
        put3(f.omega, 1.0 / kDeg);
        put3(f.omega_ref, 1.0 / kDeg);
        for (Eigen::Index i = 0; i < f.delta.size(); ++i) {
            put(f.delta[i] / kDeg);
        }
        os << row << '\n';
    }
}

}  // namespace pmlr::sim
