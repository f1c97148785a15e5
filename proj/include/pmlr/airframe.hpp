#pragma once

// Onboard and truth aerodynamic models of a tailless flying wing with ten
// independently driven surfaces:
//
//   index 0..5  flaps 1..6 (1-3 port, outboard to inboard; 4-6 starboard,
//               inboard to outboard), each a table over (δ_i, α)
//   index 6..9  clamshells 7L, 7U (port), 8L, 8U (starboard); each pair is a
//               table over (δ_U, δ_L, β, α)
//
// Deflections are positive trailing-edge down, so an opening lower clamshell
// is positive and an opening upper clamshell negative. Port tables are the
// mirror image of their starboard counterparts: roll and yaw outputs change
// sign, pitch is preserved and β is reflected.
//
// All angles are radians here; tables as read from or written to files keep
// their breakpoints in degrees (see AeroDataset).

#include "pmlr/alloc.hpp"
#include "pmlr/pmlr.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace pmlr::airframe {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr int kFlaps = 6;
inline constexpr int kClamshellPairs = 2;
inline constexpr int kSurfaces = 10;

enum SurfaceIndex : int {
    kFlap1 = 0,
    kFlap6 = 5,
    k7L = 6,
    k7U = 7,
    k8L = 8,
    k8U = 9,
};

/// Physical surface names in deflection-vector order.
const std::array<std::string, kSurfaces>& surface_names();

enum class ModelKind { pmlr, poly };

ModelKind parse_model_kind(const std::string& s);
std::string to_string(ModelKind kind);

/// Moment-model parameters at the current flight condition.
struct AeroParams {
    double q_inf = 0.0;  // Pa
    double s_ref = 0.0;  // m²
    Vec3 l_ref = Vec3::Zero();  // diagonal of L_ref = (b, c̄, b), m
    double v = 0.0;             // m/s
    Mat3 inertia = Mat3::Identity();
    Vec3 c_a = Vec3::Zero();  // static moment coefficients C_A(α, β)
    Mat3 c_omega = Mat3::Zero();

    void validate() const;
};

/// Tensor-product polynomial fitted by least squares, one term set per output.
class PolyModel {
public:
    struct Output {
        std::vector<std::vector<int>> exponents;  // one exponent tuple per term
        Vec coefficients;
    };

    PolyModel() = default;
    PolyModel(std::size_t inputs, std::vector<Output> outputs);

    /// Least-squares fit on every node of `data`; output i uses all exponent
    /// tuples with e_j ≤ degrees[i][j].
    static PolyModel fit(const GriddedDataset& data,
                         const std::vector<std::vector<int>>& degrees);

    std::size_t k() const noexcept { return inputs_; }
    std::size_t m() const noexcept { return outputs_.size(); }
    std::size_t coefficient_count(std::size_t output) const {
        return outputs_[output].exponents.size();
    }
    const std::vector<Output>& outputs() const noexcept { return outputs_; }

    Vec evaluate(const Vec& z) const;
    Mat jacobian(const Vec& z) const;

private:
    std::size_t inputs_ = 0;
    std::vector<Output> outputs_;
};

/// A gridded table with axis labels and output names, in file units.
struct NamedTable {
    std::string name;
    std::vector<std::string> outputs;
    GriddedDataset data;

    bool operator==(const NamedTable&) const = default;
};

/// Raw aerodynamic data as exchanged through dataset files: breakpoints in
/// degrees, limits in degrees and degrees per second.
struct AeroDataset {
    std::vector<NamedTable> tables;  // "ca", "flap1".."flap6", "clam7", "clam8"
    std::array<double, kSurfaces> delta_min_deg{};
    std::array<double, kSurfaces> delta_max_deg{};
    std::array<double, kSurfaces> rate_max_dps{};

    const NamedTable& table(const std::string& name) const;
    bool operator==(const AeroDataset&) const = default;
};

/// Fitted onboard models together with the truth tables they came from.
struct SurfaceSuite {
    GriddedDataset ca_table;  // over (α, β)
    std::array<GriddedDataset, kFlaps> flap_tables;  // over (δ, α)
    std::array<GriddedDataset, kClamshellPairs> clamshell_tables;  // over (δ_U, δ_L, β, α)

    PmlrModel ca_model;
    std::array<PmlrModel, kFlaps> flap_models;
    std::array<PmlrModel, kClamshellPairs> clamshell_models;
    std::array<PolyModel, kFlaps> flap_poly;
    std::array<PolyModel, kClamshellPairs> clamshell_poly;

    alloc::EffectorLimits limits;
};

/// Converts a dataset to radians and fits both onboard model families.
SurfaceSuite build_suite(const AeroDataset& data);

/// Deterministic synthetic aerodynamic data standing in for wind-tunnel
/// tables. The seed perturbs the starboard gains by up to ±10 %.
AeroDataset synth_tables(std::uint64_t seed);

/// synth_tables + build_suite.
SurfaceSuite synth_dataset(std::uint64_t seed);

/// Increment in moment coefficients due to the deflections, from the onboard model.
Vec3 cdelta(const SurfaceSuite& suite, ModelKind kind, double alpha, double beta,
            const Vec& delta);

/// Same sum evaluated by direct interpolation of the truth tables.
Vec3 cdelta_table(const SurfaceSuite& suite, double alpha, double beta, const Vec& delta);

/// T_δ = q∞ S L_ref C_δ.
Vec3 control_moment(const AeroParams& params, const Vec3& c_delta);

/// M = ∂C_δ/∂δ (3 × 10) from the onboard model.
Mat effectiveness_columns(const SurfaceSuite& suite, ModelKind kind, double alpha, double beta,
                          const Vec& delta);

/// T_a = q∞ S L_ref (C_A + L_ref C_ω ω / 2V).
Vec3 airframe_moment(const AeroParams& params, const Vec3& omega);

enum class GangMode { split_aileron_ruddervator = 1, elevator_rudderon = 2 };

struct GangConfig {
    GangMode mode = GangMode::split_aileron_ruddervator;

    /// 7 (six flaps + aileron) or 5 (elevator + four clamshells).
    Eigen::Index virtual_size() const;
};

GangMode parse_gang_mode(int n);

/// Virtual command from physical deflections: flaps and δ_a in mode 1,
/// δ_e and clamshells in mode 2.
Vec gang_contract(const GangConfig& config, const Vec& delta);

/// Physical deflections for a virtual command. In mode 1 a positive δ_a
/// drives 7L to +δ_a and 8U to −δ_a, a negative one drives 7U to δ_a and 8L
/// to −δ_a; the idle diagonal stays at zero.
Vec gang_expand(const GangConfig& config, const Vec& virtual_delta);

/// Virtual effectiveness [M₁ | M₂] from the full 3 × 10 matrix. `virtual_hint`
/// is the current δ_a in mode 1 (selects the active diagonal, δ_a = 0 taking
/// the positive branch) and unused in mode 2.
Mat gang_project(const GangConfig& config, const Mat& m_full, double virtual_hint);

/// Position and rate limits of the virtual effectors.
alloc::EffectorLimits gang_limits(const GangConfig& config, const alloc::EffectorLimits& full);

/// Fixed airframe constants of the synthetic aircraft.
struct AirframeConstants {
    double span = 2.0;         // m
    double chord = 0.45;       // m
    double s_ref = 0.85;       // m²
    double mass = 7.5;         // kg
    double cl0 = 0.02;
    double cl_alpha = 3.8;     // 1/rad
    Mat3 inertia;
    Mat3 c_omega;

    AirframeConstants();
};

}  // namespace pmlr::airframe
