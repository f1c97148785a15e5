#include "pmlr/airframe.hpp"

#include "pmlr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace pmlr::airframe {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

const Vec3 kMirror(-1.0, 1.0, -1.0);

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    }
    return out;
}

// Builds an m = 3 table by sampling `fn` (radian arguments, axis order) at
// every node of the degree-valued grid.
template <class Fn>
NamedTable sample_table(std::string name, std::vector<AxisBreakpoints> axes, Fn&& fn) {
    const std::size_t n = node_count(axes);
    Mat values(3, static_cast<Eigen::Index>(n));
    for (std::size_t c = 0; c < n; ++c) {
        const Vec z = node_coordinates(axes, c) * kDeg;
        values.col(static_cast<Eigen::Index>(c)) = fn(z);
    }
    return NamedTable{std::move(name), {"dCl", "dCm", "dCn"},
                      GriddedDataset(std::move(axes), std::move(values))};
}

// Control power fades linearly past 12° angle of attack down to half at 25°.
double effectiveness(double alpha) {
    const double onset = 12.0 * kDeg;
    const double top = 25.0 * kDeg;
    return alpha <= onset ? 1.0 : 1.0 - 0.5 * (alpha - onset) / (top - onset);
}

struct FlapShape {
    double span;   // roll and yaw arm
    double pitch;  // pitch arm
    Vec3 gain;
};

Vec3 starboard_flap(double delta, double alpha, const FlapShape& s) {
    const double eff = effectiveness(alpha);
    const double lift = delta - 0.9 * delta * delta * delta;
    // Deflecting down drags far more than deflecting up.
    const double drag = (delta > 0.0 ? 1.2 : 0.35) * delta * delta;
    return {-0.09 * s.span * s.gain[0] * eff * lift,
            -0.12 * s.pitch * s.gain[1] * eff * lift * (1.0 + 0.3 * alpha),
            0.03 * s.span * s.gain[2] * (0.25 * delta * (1.0 + 2.0 * alpha) + drag)};
}

Vec3 starboard_clamshell(double delta_u, double delta_l, double beta, double alpha,
                         const Vec3& gain) {
    const double eff = effectiveness(alpha);
    const double open_l = delta_l;
    const double open_u = -delta_u;
    const double lift_l = open_l - 0.1 * open_l * open_l;
    const double lift_u = open_u - 0.1 * open_u * open_u;
    const double open = open_l + open_u;
    // Split drag: the interaction term makes the pair additively non-separable.
    const double drag =
        open + 0.8 * open * open + 1.5 * open_l * open_u + 0.5 * std::abs(open_l - open_u);
    return {-0.06 * gain[0] * eff * (lift_l - 0.8 * lift_u) * (1.0 + 0.2 * beta),
            -0.03 * gain[1] * eff * (lift_l - lift_u),
            0.012 * gain[2] * (1.0 + 0.5 * alpha) * (1.0 - 1.5 * beta) * drag};
}

Vec3 static_moments(double alpha, double beta) {
    const double stall = std::max(0.0, alpha - 0.2);
    return {-0.05 * beta, 0.01 - 0.3 * alpha - 0.6 * stall * stall,
            0.025 * beta * (1.0 - alpha)};
}

double unit_uniform(std::mt19937_64& rng) {
    // Portable mapping of the raw 64-bit draw; std distributions are not
    // bit-reproducible across standard libraries.
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

GriddedDataset to_radians(const GriddedDataset& table) {
    std::vector<AxisBreakpoints> axes;
    axes.reserve(table.k());
    for (const auto& ax : table.axes()) {
        if (ax.unit() == "deg") {
            std::vector<double> mu = ax.values();
            for (double& v : mu) {
                v *= kDeg;
            }
            axes.emplace_back(std::move(mu), ax.name(), "rad");
        } else {
            axes.push_back(ax);
        }
    }
    return GriddedDataset(std::move(axes), table.values());
}

const GriddedDataset& checked(const AeroDataset& data, const std::string& name, std::size_t k) {
    const auto& t = data.table(name);
    if (t.data.k() != k || t.data.m() != 3) {
        throw FormatError("table '" + name + "' must have " + std::to_string(k) +
                          " inputs and 3 outputs");
    }
    return t.data;
}

const std::vector<std::vector<int>> kFlapPolyDegrees = {{3, 2}, {3, 3}, {4, 3}};
const std::vector<std::vector<int>> kClamshellPolyDegrees = {
    {3, 2, 2, 2}, {4, 3, 3, 2}, {3, 3, 3, 2}};

Vec flap_point(const Vec& delta, int i, double alpha) {
    Vec z(2);
    z << delta[i], alpha;
    return z;
}

Vec clamshell_point(const Vec& delta, int pair, double beta, double alpha) {
    const int lower = pair == 0 ? k7L : k8L;
    Vec z(4);
    z << delta[lower + 1], delta[lower], beta, alpha;
    return z;
}

void check_deflections(const Vec& delta) {
    if (delta.size() != kSurfaces) {
        throw DimensionError("deflection vector must hold ten surfaces",
                             static_cast<std::size_t>(delta.size()), kSurfaces);
    }
    require_finite(delta, "deflections");
}

// Exponent tuples with e_j ≤ degrees[j], last input varying fastest.
std::vector<std::vector<int>> tensor_exponents(const std::vector<int>& degrees) {
    std::vector<std::vector<int>> out{{}};
    for (const int d : degrees) {
        std::vector<std::vector<int>> next;
        for (const auto& prefix : out) {
            for (int e = 0; e <= d; ++e) {
                auto t = prefix;
                t.push_back(e);
                next.push_back(std::move(t));
            }
        }
        out = std::move(next);
    }
    return out;
}

}  // namespace

const std::array<std::string, kSurfaces>& surface_names() {
    static const std::array<std::string, kSurfaces> names = {
        "d1", "d2", "d3", "d4", "d5", "d6", "d7L", "d7U", "d8L", "d8U"};
    return names;
}

ModelKind parse_model_kind(const std::string& s) {
    if (s == "pmlr") {
        return ModelKind::pmlr;
    }
    if (s == "poly") {
        return ModelKind::poly;
    }
    throw FormatError("unknown model kind '" + s + "' (expected pmlr or poly)");
}

std::string to_string(ModelKind kind) { return kind == ModelKind::pmlr ? "pmlr" : "poly"; }

void AeroParams::validate() const {
    if (!(q_inf > 0.0) || !(v > 0.0) || !(s_ref > 0.0)) {
        throw FormatError("aero params: q_inf, v and s_ref must be positive");
    }
    if (!(l_ref.array() > 0.0).all()) {
        throw FormatError("aero params: reference lengths must be positive");
    }
    if (!inertia.isApprox(inertia.transpose()) || inertia.llt().info() != Eigen::Success) {
        throw FormatError("aero params: inertia must be symmetric positive definite");
    }
}

PolyModel::PolyModel(std::size_t inputs, std::vector<Output> outputs)
    : inputs_(inputs), outputs_(std::move(outputs)) {
    for (const auto& o : outputs_) {
        if (static_cast<std::size_t>(o.coefficients.size()) != o.exponents.size()) {
            throw DimensionError("polynomial: coefficient count differs from term count",
                                 static_cast<std::size_t>(o.coefficients.size()),
                                 o.exponents.size());
        }
        for (const auto& e : o.exponents) {
            if (e.size() != inputs_) {
                throw DimensionError("polynomial: exponent tuple arity", e.size(), inputs_);
            }
        }
    }
}

PolyModel PolyModel::fit(const GriddedDataset& data,
                         const std::vector<std::vector<int>>& degrees) {
    if (degrees.size() != data.m()) {
        throw DimensionError("polynomial fit: one degree tuple per output required",
                             degrees.size(), data.m());
    }
    const auto n = static_cast<Eigen::Index>(data.nodes());
    std::vector<Output> outputs;
    for (std::size_t i = 0; i < data.m(); ++i) {
        if (degrees[i].size() != data.k()) {
            throw DimensionError("polynomial fit: degree tuple arity", degrees[i].size(),
                                 data.k());
        }
        Output out;
        out.exponents = tensor_exponents(degrees[i]);
        const auto terms = static_cast<Eigen::Index>(out.exponents.size());
        Mat a(n, terms);
        for (Eigen::Index c = 0; c < n; ++c) {
            const Vec z = node_coordinates(data.axes(), static_cast<std::size_t>(c));
            for (Eigen::Index t = 0; t < terms; ++t) {
                double v = 1.0;
                const auto& e = out.exponents[static_cast<std::size_t>(t)];
                for (std::size_t j = 0; j < e.size(); ++j) {
                    v *= std::pow(z[static_cast<Eigen::Index>(j)], e[j]);
                }
                a(c, t) = v;
            }
        }
        out.coefficients =
            a.colPivHouseholderQr().solve(data.values().row(static_cast<Eigen::Index>(i)).transpose());
        outputs.push_back(std::move(out));
    }
    return PolyModel(data.k(), std::move(outputs));
}

Vec PolyModel::evaluate(const Vec& z) const {
    if (static_cast<std::size_t>(z.size()) != inputs_) {
        throw DimensionError("polynomial: point arity", static_cast<std::size_t>(z.size()),
                             inputs_);
    }
    Vec out(static_cast<Eigen::Index>(outputs_.size()));
    for (std::size_t i = 0; i < outputs_.size(); ++i) {
        const auto& o = outputs_[i];
        double sum = 0.0;
        for (std::size_t t = 0; t < o.exponents.size(); ++t) {
            double v = o.coefficients[static_cast<Eigen::Index>(t)];
            for (std::size_t j = 0; j < inputs_; ++j) {
                v *= std::pow(z[static_cast<Eigen::Index>(j)], o.exponents[t][j]);
            }
            sum += v;
        }
        out[static_cast<Eigen::Index>(i)] = sum;
    }
    return out;
}

Mat PolyModel::jacobian(const Vec& z) const {
    if (static_cast<std::size_t>(z.size()) != inputs_) {
        throw DimensionError("polynomial: point arity", static_cast<std::size_t>(z.size()),
                             inputs_);
    }
    Mat jac = Mat::Zero(static_cast<Eigen::Index>(outputs_.size()),
                        static_cast<Eigen::Index>(inputs_));
    for (std::size_t i = 0; i < outputs_.size(); ++i) {
        const auto& o = outputs_[i];
        for (std::size_t t = 0; t < o.exponents.size(); ++t) {
            const auto& e = o.exponents[t];
            for (std::size_t d = 0; d < inputs_; ++d) {
                if (e[d] == 0) {
                    continue;
                }
                double v = o.coefficients[static_cast<Eigen::Index>(t)] * e[d];
                for (std::size_t j = 0; j < inputs_; ++j) {
                    const int p = j == d ? e[j] - 1 : e[j];
                    v *= std::pow(z[static_cast<Eigen::Index>(j)], p);
                }
                jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) += v;
            }
        }
    }
    return jac;
}

const NamedTable& AeroDataset::table(const std::string& name) const {
    const auto it = std::find_if(tables.begin(), tables.end(),
                                 [&](const NamedTable& t) { return t.name == name; });
    if (it == tables.end()) {
        throw FormatError("dataset has no table named '" + name + "'");
    }
    return *it;
}

SurfaceSuite build_suite(const AeroDataset& data) {
    SurfaceSuite s;
    s.ca_table = to_radians(checked(data, "ca", 2));
    s.ca_model = fit_regression(s.ca_table);
    for (int i = 0; i < kFlaps; ++i) {
        s.flap_tables[i] = to_radians(checked(data, "flap" + std::to_string(i + 1), 2));
        s.flap_models[i] = fit_regression(s.flap_tables[i]);
        s.flap_poly[i] = PolyModel::fit(s.flap_tables[i], kFlapPolyDegrees);
    }
    for (int c = 0; c < kClamshellPairs; ++c) {
        s.clamshell_tables[c] = to_radians(checked(data, "clam" + std::to_string(c + 7), 4));
        s.clamshell_models[c] = fit_regression(s.clamshell_tables[c]);
        s.clamshell_poly[c] = PolyModel::fit(s.clamshell_tables[c], kClamshellPolyDegrees);
    }
    s.limits.delta_min.resize(kSurfaces);
    s.limits.delta_max.resize(kSurfaces);
    s.limits.rate_max.resize(kSurfaces);
    for (int i = 0; i < kSurfaces; ++i) {
        s.limits.delta_min[i] = data.delta_min_deg[static_cast<std::size_t>(i)] * kDeg;
        s.limits.delta_max[i] = data.delta_max_deg[static_cast<std::size_t>(i)] * kDeg;
        s.limits.rate_max[i] = data.rate_max_dps[static_cast<std::size_t>(i)] * kDeg;
    }
    s.limits.validate();
    return s;
}

AeroDataset synth_tables(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto gain = [&rng] {
        Vec3 g;
        for (int i = 0; i < 3; ++i) {
            g[i] = 0.9 + 0.2 * unit_uniform(rng);
        }
        return g;
    };

    AeroDataset out;
    const AxisBreakpoints alpha7(linspace(-5.0, 25.0, 7), "alpha", "deg");
    const AxisBreakpoints alpha5(linspace(-5.0, 25.0, 5), "alpha", "deg");
    const AxisBreakpoints beta5(linspace(-10.0, 10.0, 5), "beta", "deg");
    const AxisBreakpoints flap_delta(linspace(-30.0, 30.0, 7), "delta", "deg");
    const AxisBreakpoints clam_upper(linspace(-60.0, 0.0, 5), "delta_u", "deg");
    const AxisBreakpoints clam_lower(linspace(0.0, 60.0, 5), "delta_l", "deg");

    out.tables.push_back(sample_table("ca", {alpha7, beta5}, [](const Vec& z) -> Vec {
        return static_moments(z[0], z[1]);
    }));
    out.tables.back().outputs = {"Cl", "Cm", "Cn"};

    // Starboard flaps 4, 5, 6 run inboard to outboard.
    const std::array<double, 3> span = {0.6, 0.85, 1.0};
    const std::array<double, 3> pitch = {1.0, 0.85, 0.7};
    std::array<FlapShape, 3> starboard{};
    for (std::size_t i = 0; i < 3; ++i) {
        starboard[i] = FlapShape{span[i], pitch[i], gain()};
    }
    const Vec3 clam_gain = gain();

    for (int f = 0; f < kFlaps; ++f) {
        const bool port = f < 3;
        const FlapShape shape = starboard[static_cast<std::size_t>(port ? 2 - f : f - 3)];
        out.tables.push_back(sample_table(
            "flap" + std::to_string(f + 1), {flap_delta, alpha7},
            [shape, port](const Vec& z) -> Vec {
                const Vec3 c = starboard_flap(z[0], z[1], shape);
                return port ? Vec3(c.cwiseProduct(kMirror)) : c;
            }));
    }
    for (int pair = 0; pair < kClamshellPairs; ++pair) {
        const bool port = pair == 0;
        out.tables.push_back(sample_table(
            "clam" + std::to_string(pair + 7), {clam_upper, clam_lower, beta5, alpha5},
            [clam_gain, port](const Vec& z) -> Vec {
                if (port) {
                    return starboard_clamshell(z[0], z[1], -z[2], z[3], clam_gain)
                        .cwiseProduct(kMirror);
                }
                return starboard_clamshell(z[0], z[1], z[2], z[3], clam_gain);
            }));
    }

    for (int i = 0; i < kFlaps; ++i) {
        out.delta_min_deg[static_cast<std::size_t>(i)] = -30.0;
        out.delta_max_deg[static_cast<std::size_t>(i)] = 30.0;
        out.rate_max_dps[static_cast<std::size_t>(i)] = 150.0;
    }
    for (const int lower : {k7L, k8L}) {
        out.delta_min_deg[static_cast<std::size_t>(lower)] = 0.0;
        out.delta_max_deg[static_cast<std::size_t>(lower)] = 60.0;
        out.delta_min_deg[static_cast<std::size_t>(lower + 1)] = -60.0;
        out.delta_max_deg[static_cast<std::size_t>(lower + 1)] = 0.0;
    }
    for (int i = kFlaps; i < kSurfaces; ++i) {
        out.rate_max_dps[static_cast<std::size_t>(i)] = 120.0;
    }
    return out;
}

SurfaceSuite synth_dataset(std::uint64_t seed) { return build_suite(synth_tables(seed)); }

Vec3 cdelta(const SurfaceSuite& suite, ModelKind kind, double alpha, double beta,
            const Vec& delta) {
    check_deflections(delta);
    Vec3 sum = Vec3::Zero();
    for (int i = 0; i < kFlaps; ++i) {
        const Vec z = flap_point(delta, i, alpha);
        sum += kind == ModelKind::pmlr ? suite.flap_models[i].evaluate(z)
                                       : suite.flap_poly[i].evaluate(z);
    }
    for (int c = 0; c < kClamshellPairs; ++c) {
        const Vec z = clamshell_point(delta, c, beta, alpha);
        sum += kind == ModelKind::pmlr ? suite.clamshell_models[c].evaluate(z)
                                       : suite.clamshell_poly[c].evaluate(z);
    }
    return sum;
}

Vec3 cdelta_table(const SurfaceSuite& suite, double alpha, double beta, const Vec& delta) {
    check_deflections(delta);
    Vec3 sum = Vec3::Zero();
    for (int i = 0; i < kFlaps; ++i) {
        sum += suite.flap_tables[i].interpolate(flap_point(delta, i, alpha));
    }
    for (int c = 0; c < kClamshellPairs; ++c) {
        sum += suite.clamshell_tables[c].interpolate(clamshell_point(delta, c, beta, alpha));
    }
    return sum;
}

Vec3 control_moment(const AeroParams& params, const Vec3& c_delta) {
    return params.q_inf * params.s_ref * params.l_ref.cwiseProduct(c_delta);
}

Mat effectiveness_columns(const SurfaceSuite& suite, ModelKind kind, double alpha, double beta,
                          const Vec& delta) {
    check_deflections(delta);
    Mat m(3, kSurfaces);
    if (kind == ModelKind::poly) {
        for (int i = 0; i < kFlaps; ++i) {
            m.col(i) = suite.flap_poly[i].jacobian(flap_point(delta, i, alpha)).col(0);
        }
        for (int c = 0; c < kClamshellPairs; ++c) {
            const int lower = c == 0 ? k7L : k8L;
            const Mat jac =
                suite.clamshell_poly[c].jacobian(clamshell_point(delta, c, beta, alpha));
            m.col(lower) = jac.col(1);
            m.col(lower + 1) = jac.col(0);
        }
        return m;
    }

    // Flaps: σ_i = (Γ_i ⊠ α̂) dδ̂_i/dδ_i.
    for (int i = 0; i < kFlaps; ++i) {
        const auto& model = suite.flap_models[i];
        const Mat reduced = block_kron(model.gamma(), basis_vector(alpha, model.axes()[1]));
        m.col(i) = reduced * basis_derivative(delta[i], model.axes()[0]);
    }
    // Clamshells: with A = (Γ ⊠ α̂) ⊠ β̂,
    //   σ_U = (A ⊠ δ̂_L) dδ̂_U/dδ_U,   σ_L = (A ⊠ dδ̂_L/dδ_L) δ̂_U.
    for (int c = 0; c < kClamshellPairs; ++c) {
        const auto& model = suite.clamshell_models[c];
        const auto& ax = model.axes();
        const int lower = c == 0 ? k7L : k8L;
        const double d_u = delta[lower + 1];
        const double d_l = delta[lower];
        const Mat a = block_kron(block_kron(model.gamma(), basis_vector(alpha, ax[3])),
                                 basis_vector(beta, ax[2]));
        m.col(lower + 1) =
            block_kron(a, basis_vector(d_l, ax[1])) * basis_derivative(d_u, ax[0]);
        m.col(lower) = block_kron(a, basis_derivative(d_l, ax[1])) * basis_vector(d_u, ax[0]);
    }
    return m;
}

Vec3 airframe_moment(const AeroParams& params, const Vec3& omega) {
    const Vec3 coeff =
        params.c_a + params.l_ref.cwiseProduct(params.c_omega * omega) / (2.0 * params.v);
    return params.q_inf * params.s_ref * params.l_ref.cwiseProduct(coeff);
}

Eigen::Index GangConfig::virtual_size() const {
    return mode == GangMode::split_aileron_ruddervator ? 7 : 5;
}

GangMode parse_gang_mode(int n) {
    if (n == 1) {
        return GangMode::split_aileron_ruddervator;
    }
    if (n == 2) {
        return GangMode::elevator_rudderon;
    }
    throw FormatError("gang configuration must be 1 or 2, got " + std::to_string(n));
}

Vec gang_contract(const GangConfig& config, const Vec& delta) {
    check_deflections(delta);
    Vec v(config.virtual_size());
    if (config.mode == GangMode::split_aileron_ruddervator) {
        v.head(kFlaps) = delta.head(kFlaps);
        v[6] = 0.5 * ((delta[k7L] - delta[k8U]) + (delta[k7U] - delta[k8L]));
    } else {
        v[0] = delta.head(kFlaps).sum() / 6.0;
        v.tail(4) = delta.tail(4);
    }
    return v;
}

Vec gang_expand(const GangConfig& config, const Vec& virtual_delta) {
    if (virtual_delta.size() != config.virtual_size()) {
        throw DimensionError("gang_expand: virtual command length",
                             static_cast<std::size_t>(virtual_delta.size()),
                             static_cast<std::size_t>(config.virtual_size()));
    }
    Vec d = Vec::Zero(kSurfaces);
    if (config.mode == GangMode::split_aileron_ruddervator) {
        d.head(kFlaps) = virtual_delta.head(kFlaps);
        const double da = virtual_delta[6];
        if (da >= 0.0) {
            d[k7L] = da;
            d[k8U] = 0.0 - da;
        } else {
            d[k7U] = da;
            d[k8L] = 0.0 - da;
        }
    } else {
        d.head(kFlaps).setConstant(virtual_delta[0]);
        d.tail(4) = virtual_delta.tail(4);
    }
    return d;
}

Mat gang_project(const GangConfig& config, const Mat& m_full, double virtual_hint) {
    if (m_full.cols() != kSurfaces) {
        throw DimensionError("gang_project: effectiveness must have ten columns",
                             static_cast<std::size_t>(m_full.cols()), kSurfaces);
    }
    Mat out(m_full.rows(), config.virtual_size());
    if (config.mode == GangMode::split_aileron_ruddervator) {
        out.leftCols(kFlaps) = m_full.leftCols(kFlaps);
        out.col(6) = virtual_hint < 0.0 ? Vec(m_full.col(k7U) - m_full.col(k8L))
                                        : Vec(m_full.col(k7L) - m_full.col(k8U));
    } else {
        out.col(0) = m_full.leftCols(kFlaps).rowwise().sum();
        out.rightCols(4) = m_full.rightCols(4);
    }
    return out;
}

alloc::EffectorLimits gang_limits(const GangConfig& config, const alloc::EffectorLimits& full) {
    if (full.size() != kSurfaces) {
        throw DimensionError("gang_limits: physical limits must cover ten surfaces",
                             static_cast<std::size_t>(full.size()), kSurfaces);
    }
    const Eigen::Index n = config.virtual_size();
    alloc::EffectorLimits v{Vec(n), Vec(n), Vec(n)};
    if (config.mode == GangMode::split_aileron_ruddervator) {
        v.delta_min.head(kFlaps) = full.delta_min.head(kFlaps);
        v.delta_max.head(kFlaps) = full.delta_max.head(kFlaps);
        v.rate_max.head(kFlaps) = full.rate_max.head(kFlaps);
        v.delta_min[6] = std::max(full.delta_min[k7U], -full.delta_max[k8L]);
        v.delta_max[6] = std::min(full.delta_max[k7L], -full.delta_min[k8U]);
        v.rate_max[6] = full.rate_max.tail(4).minCoeff();
    } else {
        v.delta_min[0] = full.delta_min.head(kFlaps).maxCoeff();
        v.delta_max[0] = full.delta_max.head(kFlaps).minCoeff();
        v.rate_max[0] = full.rate_max.head(kFlaps).minCoeff();
        v.delta_min.tail(4) = full.delta_min.tail(4);
        v.delta_max.tail(4) = full.delta_max.tail(4);
        v.rate_max.tail(4) = full.rate_max.tail(4);
    }
    v.validate();
    return v;
}

AirframeConstants::AirframeConstants() {
    inertia << 0.90, 0.0, -0.04,
               0.0, 0.55, 0.0,
               -0.04, 0.0, 1.35;
    // Damping derivatives (Clp, Cmq, Cnr on the diagonal), negative definite.
    c_omega << -0.45, 0.0, 0.08,
               0.0, -1.40, 0.0,
               -0.04, 0.0, -0.12;
}

}  // namespace pmlr::airframe
