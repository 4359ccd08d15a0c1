#include "pcm/equilibrium.hpp"

#include "pcm/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numeric>

namespace pcm {

namespace {

void require_size(const HourData& h, const Scenario& s) {
    if (s.size() != h.size())
        throw InputError("scenario covers " + std::to_string(s.size()) + " prosumers, hour has " +
                         std::to_string(h.size()));
}

void require_size(const HourData& h, std::span<const double> x) {
    if (x.size() != h.size())
        throw InputError("strategy vector has " + std::to_string(x.size()) + " entries, expected " +
                         std::to_string(h.size()));
}

// Expected DA purchase u - x - mu of each prosumer.
double residual(const HourData& h, std::size_t z, std::span<const double> x) {
    return h.prosumers[z].net_demand() - x[z];
}

double others_residual(const HourData& h, std::size_t i, std::span<const double> x) {
    double s = 0.0;
    for (std::size_t z = 0; z < h.size(); ++z)
        if (z != i)
            s += residual(h, z, x);
    return s;
}

}  // namespace

double incentive_for(const Scenario& s, std::size_t i, IncentivePair prices) {
    return s.is_wp(i) ? prices.r_wp : prices.r_ls;
}

double expected_da_cost(const HourData& h, std::size_t i, std::span<const double> x) {
    require_size(h, x);
    const double a = h.gen.a;
    const auto& p = h.prosumers[i];
    const double own = p.demand - x[i];
    return residual(h, i, x) * (a * others_residual(h, i, x) + h.gen.b) + a * own * own +
           a * p.second_moment - 2.0 * a * p.mean_wind * own;
}

double prosumer_cost(const HourData& h, std::size_t i, std::span<const double> x, double incentive) {
    return incentive * x[i] + expected_da_cost(h, i, x);
}

double prosumer_cost_gradient(const HourData& h, std::size_t i, std::span<const double> x,
                              double incentive) {
    require_size(h, x);
    const double a = h.gen.a;
    return incentive - (a * others_residual(h, i, x) + h.gen.b) - 2.0 * a * residual(h, i, x);
}

double equilibrium_total(const HourData& h, int n, IncentivePair prices) {
    return (h.boundary_rhs() - package_load(h.count(), n, prices)) / h.slope_denominator();
}

NeOutcome nash_equilibrium(const HourData& h, const Scenario& s, IncentivePair prices) {
    require_size(h, s);
    const std::size_t N = h.size();
    double sum_r = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        sum_r += incentive_for(s, i, prices);

    NeOutcome out;
    out.x.resize(N);
    const double denom = h.slope_denominator();
    for (std::size_t i = 0; i < N; ++i) {
        const double r = incentive_for(s, i, prices);
        const double others = sum_r - r;
        out.x[i] = h.prosumers[i].net_demand() + (h.gen.b + others - static_cast<double>(N) * r) / denom;
    }
    out.x_tot = std::accumulate(out.x.begin(), out.x.end(), 0.0);
    return out;
}

NeOutcome best_response_oracle(const HourData& h, const Scenario& s, IncentivePair prices) {
    require_size(h, s);
    const auto N = static_cast<Eigen::Index>(h.size());
    if (N == 0)
        return {};

    // Row i: 2 x_i + sum_{z != i} x_z = 2 e_i + sum_{z != i} e_z + (b - R_i) / a.
    const Eigen::MatrixXd A = Eigen::MatrixXd::Ones(N, N) + Eigen::MatrixXd::Identity(N, N);
    Eigen::VectorXd rhs(N);
    const double total_net = h.sum_net_demand();
    for (Eigen::Index i = 0; i < N; ++i) {
        const auto k = static_cast<std::size_t>(i);
        const double e = h.prosumers[k].net_demand();
        rhs(i) = e + total_net + (h.gen.b - incentive_for(s, k, prices)) / h.gen.a;
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (!lu.isInvertible())
        throw NumericError("best-response system is singular", lu.rcond());
    const Eigen::VectorXd x = lu.solve(rhs);

    NeOutcome out;
    out.x.assign(x.data(), x.data() + N);
    out.x_tot = x.sum();
    return out;
}

}  // namespace pcm
