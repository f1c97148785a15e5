#include "pmlr/alloc.hpp"

#include "pmlr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace pmlr::alloc {

namespace {

void check_size(Eigen::Index got, Eigen::Index want, const char* what) {
    if (got != want) {
        throw DimensionError(what, static_cast<std::size_t>(got), static_cast<std::size_t>(want));
    }
}

// Reciprocal condition of a symmetric positive semi-definite matrix.
double spd_rcond(const Mat& gram) {
    const Eigen::SelfAdjointEigenSolver<Mat> eig(gram, Eigen::EigenvaluesOnly);
    const Vec& ev = eig.eigenvalues();
    if (!(ev.maxCoeff() > 0.0)) {
        return 0.0;
    }
    return std::max(ev.minCoeff(), 0.0) / ev.maxCoeff();
}

// Pseudo-inverse used inside redistribution. The free-set G can lose rank
// (a ganged axis momentarily without authority); GW⁻¹Gᵀ then gets a ridge of
// 1e-10·trace instead of failing.
Mat regularized_pinv(const Mat& g, const Mat& w) {
    const Mat w_inv_gt = w.llt().solve(g.transpose());
    Mat gram = g * w_inv_gt;
    if (spd_rcond(gram) >= 1e-12) {
        return w_inv_gt * gram.ldlt().solve(Mat::Identity(g.rows(), g.rows()));
    }
    const double ridge = 1e-10 * gram.trace();
    if (!(ridge > 0.0)) {
        return Mat::Zero(g.cols(), g.rows());
    }
    gram.diagonal().array() += ridge;
    return w_inv_gt * gram.ldlt().solve(Mat::Identity(g.rows(), g.rows()));
}

Mat select_cols(const Mat& a, const std::vector<Eigen::Index>& idx) {
    Mat out(a.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) {
        out.col(static_cast<Eigen::Index>(i)) = a.col(idx[i]);
    }
    return out;
}

Mat select_principal(const Mat& a, const std::vector<Eigen::Index>& idx) {
    const auto n = static_cast<Eigen::Index>(idx.size());
    Mat out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            out(i, j) = a(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
        }
    }
    return out;
}

}  // namespace

void EffectorLimits::validate() const {
    if (delta_max.size() != delta_min.size() || rate_max.size() != delta_min.size()) {
        throw DimensionError("effector limits: vectors differ in length",
                             static_cast<std::size_t>(delta_min.size()),
                             static_cast<std::size_t>(delta_max.size()));
    }
    for (Eigen::Index i = 0; i < delta_min.size(); ++i) {
        if (!(delta_min[i] < delta_max[i])) {
            throw FormatError("effector limits: delta_min must be below delta_max for effector " +
                              std::to_string(i));
        }
        if (!(rate_max[i] > 0.0)) {
            throw FormatError("effector limits: rate_max must be positive for effector " +
                              std::to_string(i));
        }
    }
}

AllocationProblem AllocationProblem::with_defaults(Mat g, Vec demand, Vec lower, Vec upper) {
    const Eigen::Index kappa = g.cols();
    return AllocationProblem{std::move(g),
                             std::move(demand),
                             std::move(lower),
                             std::move(upper),
                             Mat::Identity(kappa, kappa),
                             Vec::Zero(kappa)};
}

IncrementBounds increment_limits(const EffectorLimits& limits, const Vec& delta0, double dt) {
    if (!(dt > 0.0)) {
        throw FormatError("increment_limits: dt must be positive");
    }
    check_size(delta0.size(), limits.size(), "increment_limits: deflection count");
    const Vec step = limits.rate_max * dt;
    IncrementBounds b;
    b.upper = (limits.delta_max - delta0).cwiseMin(step);
    b.lower = (limits.delta_min - delta0).cwiseMax(-step);
    // A surface beyond a position limit by more than one rate step returns at
    // full rate; this keeps lower ≤ upper.
    b.upper = b.upper.cwiseMax(-step);
    b.lower = b.lower.cwiseMin(step);
    return b;
}

Vec incremental_demand(const Vec& t_dem, const Vec& onboard_effect) {
    check_size(onboard_effect.size(), t_dem.size(), "incremental_demand: dimension");
    return t_dem - onboard_effect;
}

Mat weighted_pinv(const Mat& g, const Mat& w) {
    require_finite(g, "weighted_pinv");
    require_finite(w, "weighted_pinv");
    check_size(w.rows(), g.cols(), "weighted_pinv: weight rows");
    check_size(w.cols(), g.cols(), "weighted_pinv: weight cols");
    const Eigen::LLT<Mat> w_llt(w);
    if (w_llt.info() != Eigen::Success) {
        throw RankDeficiencyError("weighted_pinv: weighting matrix is not positive definite");
    }
    const Mat w_inv_gt = w_llt.solve(g.transpose());
    const Mat gram = g * w_inv_gt;
    if (!(spd_rcond(gram) >= 1e-12)) {
        throw RankDeficiencyError(
            "weighted_pinv: G W^-1 G^T is singular (effectiveness lacks full row rank)");
    }
    return w_inv_gt * gram.ldlt().solve(Mat::Identity(g.rows(), g.rows()));
}

AllocationResult rpi_allocate(const AllocationProblem& p) {
    const Eigen::Index d = p.g_matrix.rows();
    const Eigen::Index kappa = p.g_matrix.cols();
    check_size(p.delta_t_dem.size(), d, "rpi_allocate: demand");
    check_size(p.lower.size(), kappa, "rpi_allocate: lower bound");
    check_size(p.upper.size(), kappa, "rpi_allocate: upper bound");
    check_size(p.weights.rows(), kappa, "rpi_allocate: weight rows");
    check_size(p.weights.cols(), kappa, "rpi_allocate: weight cols");
    check_size(p.preference.size(), kappa, "rpi_allocate: preference");
    require_finite(p.g_matrix, "rpi_allocate");
    require_finite(p.delta_t_dem, "rpi_allocate");

    AllocationResult res;
    res.delta_increment = Vec::Zero(kappa);
    res.saturated.assign(static_cast<std::size_t>(kappa), false);

    std::vector<Eigen::Index> free_set(static_cast<std::size_t>(kappa));
    for (Eigen::Index i = 0; i < kappa; ++i) {
        free_set[static_cast<std::size_t>(i)] = i;
    }

    while (!free_set.empty() && res.iterations < kappa) {
        ++res.iterations;

        // Demand left after the frozen effectors' contribution.
        Vec frozen = res.delta_increment;
        for (const auto i : free_set) {
            frozen[i] = 0.0;
        }
        const Vec v = p.delta_t_dem - p.g_matrix * frozen;

        const Mat g_free = select_cols(p.g_matrix, free_set);
        const Mat w_free = select_principal(p.weights, free_set);
        Vec pref(static_cast<Eigen::Index>(free_set.size()));
        for (std::size_t i = 0; i < free_set.size(); ++i) {
            pref[static_cast<Eigen::Index>(i)] = p.preference[free_set[i]];
        }
        const Vec x = pref + regularized_pinv(g_free, w_free) * (v - g_free * pref);

        // Every violator in this pass is clamped and frozen together.
        std::vector<Eigen::Index> still_free;
        still_free.reserve(free_set.size());
        for (std::size_t i = 0; i < free_set.size(); ++i) {
            const Eigen::Index e = free_set[i];
            const double xi = x[static_cast<Eigen::Index>(i)];
            if (xi > p.upper[e]) {
                res.delta_increment[e] = p.upper[e];
                res.saturated[static_cast<std::size_t>(e)] = true;
            } else if (xi < p.lower[e]) {
                res.delta_increment[e] = p.lower[e];
                res.saturated[static_cast<std::size_t>(e)] = true;
            } else {
                res.delta_increment[e] = xi;
                still_free.push_back(e);
            }
        }
        if (still_free.size() == free_set.size()) {
            break;
        }
        free_set = std::move(still_free);
    }

    res.achieved = p.g_matrix * res.delta_increment;
    return res;
}

Vec apply_increment(const Vec& delta0, const AllocationResult& result) {
    check_size(result.delta_increment.size(), delta0.size(), "apply_increment: effector count");
    return delta0 + result.delta_increment;
}

}  // namespace pmlr::alloc
