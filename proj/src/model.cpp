#include "pcm/model.hpp"

#include "pcm/errors.hpp"
#include "pcm/wind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pcm {

const char* to_string(BalancingSide side) {
    return side == BalancingSide::up ? "up" : "down";
}

std::vector<double> MarketInstance::selection_probabilities() const {
    std::vector<double> q;
    q.reserve(prosumers.size());
    for (const auto& p : prosumers)
        q.push_back(p.q);
    return q;
}

std::string ValidationReport::to_string() const {
    if (ok())
        return "pass";
    std::ostringstream os;
    os << "fail:";
    for (const auto& v : violations)
        os << "\n  " << v.field << ": " << v.bound;
    return os.str();
}

namespace {

class Checker {
public:
    explicit Checker(ValidationReport& report) : report_(report) {}

    void require(bool ok, std::string field, std::string bound) {
        if (!ok)
            report_.violations.push_back({std::move(field), std::move(bound)});
    }

    bool length(const std::vector<double>& v, int horizon, const std::string& field) {
        const bool ok = horizon >= 0 && v.size() == static_cast<std::size_t>(horizon);
        require(ok, field, "length must equal horizon (" + std::to_string(horizon) + "), got " +
                               std::to_string(v.size()));
        return ok;
    }

private:
    ValidationReport& report_;
};

std::string at(const std::string& field, std::size_t t) {
    return field + "[hour " + std::to_string(t + 1) + "]";
}

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

ValidationReport validate(const MarketInstance& inst) {
    ValidationReport report;
    Checker check(report);
    const int T = inst.horizon;

    check.require(T >= 1, "horizon", "must be >= 1");
    check.require(inst.gen.a > 0.0, "gen.a", "must be > 0, got " + num(inst.gen.a));
    check.require(inst.gen.b >= 0.0, "gen.b", "must be >= 0, got " + num(inst.gen.b));
    check.require(inst.gen.c >= 0.0, "gen.c", "must be >= 0, got " + num(inst.gen.c));
    check.require(!inst.prosumers.empty(), "prosumers", "need at least one prosumer (N >= 1)");

    for (std::size_t k = 0; k < inst.prosumers.size(); ++k) {
        const auto& p = inst.prosumers[k];
        const std::string base = "prosumers[" + std::to_string(p.id) + "]";
        check.require(p.q >= 0.0 && p.q <= 1.0, base + ".q", "must lie in [0, 1], got " + num(p.q));
        if (check.length(p.demand, T, base + ".demand")) {
            for (std::size_t t = 0; t < p.demand.size(); ++t)
                check.require(p.demand[t] >= 0.0, at(base + ".demand", t),
                              "must be >= 0, got " + num(p.demand[t]));
        }
        const auto& w = p.wind;
        check.require(w.capacity > 0.0, base + ".wind.capacity", "must be > 0, got " + num(w.capacity));
        check.require(w.spread > 0.0 && w.spread < 100.0, base + ".wind.spread",
                      "must lie in (0, 100), got " + num(w.spread));
        if (check.length(w.mean_profile, T, base + ".wind.mean")) {
            for (std::size_t t = 0; t < w.mean_profile.size(); ++t) {
                const double mu = w.mean_profile[t];
                const std::string field = at(base + ".wind.mean", t);
                if (!(mu > 0.0 && mu < w.capacity)) {
                    check.require(false, field, "must lie in (0, capacity), got " + num(mu));
                    continue;
                }
                if (!(w.capacity > 0.0 && w.spread > 0.0 && w.spread < 100.0))
                    continue;
                try {
                    (void)wind_from_spread(mu, w.spread, w.capacity);
                } catch (const ParameterError& e) {
                    check.require(false, field, std::string("beta moment match infeasible: ") + e.what());
                }
            }
        }
    }

    check.length(inst.ebm.up, T, "ebm.up");
    check.length(inst.ebm.down, T, "ebm.down");

    const auto& ea = inst.ea;
    double min_floor = std::numeric_limits<double>::infinity();
    if (check.length(ea.r_wp_floor, T, "ea.r_wp_floor")) {
        for (std::size_t t = 0; t < ea.r_wp_floor.size(); ++t) {
            check.require(ea.r_wp_floor[t] > 0.0, at("ea.r_wp_floor", t), "must be > 0");
            min_floor = std::min(min_floor, ea.r_wp_floor[t]);
        }
    }
    if (check.length(ea.r_ls_floor, T, "ea.r_ls_floor")) {
        for (std::size_t t = 0; t < ea.r_ls_floor.size(); ++t) {
            check.require(ea.r_ls_floor[t] > 0.0, at("ea.r_ls_floor", t), "must be > 0");
            min_floor = std::min(min_floor, ea.r_ls_floor[t]);
        }
    }
    if (check.length(ea.ramp_up, T, "ea.ramp_up")) {
        for (std::size_t t = 0; t < ea.ramp_up.size(); ++t)
            check.require(ea.ramp_up[t] > 0.0, at("ea.ramp_up", t),
                          "ramp ordering requires ramp_up > 0 > ramp_down, got ramp_up = " +
                              num(ea.ramp_up[t]));
    }
    if (check.length(ea.ramp_down, T, "ea.ramp_down")) {
        for (std::size_t t = 0; t < ea.ramp_down.size(); ++t)
            check.require(ea.ramp_down[t] < 0.0, at("ea.ramp_down", t),
                          "ramp ordering requires ramp_up > 0 > ramp_down, got ramp_down = " +
                              num(ea.ramp_down[t]));
    }
    check.require(std::isfinite(ea.x_prev_init), "ea.x_prev_init", "must be finite");

    if (std::isfinite(min_floor))
        check.require(inst.gen.b <= min_floor, "gen.b",
                      "price-floor assumption violated: b = " + num(inst.gen.b) +
                          " exceeds min floor " + num(min_floor));
    return report;
}

double HourData::sum_net_demand() const {
    double s = 0.0;
    for (const auto& p : prosumers)
        s += p.net_demand();
    return s;
}

double HourData::min_net_demand() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& p : prosumers)
        m = std::min(m, p.net_demand());
    return m;
}

double HourData::boundary_rhs() const {
    return count() * gen.b + slope_denominator() * sum_net_demand();
}

HourData hour_data(const MarketInstance& inst, Hour hour) {
    if (hour.value() < 1 || hour.value() > inst.horizon)
        throw ParameterError("hour " + std::to_string(hour.value()) + " outside horizon 1.." +
                             std::to_string(inst.horizon));
    const std::size_t t = hour.index();

    HourData h;
    h.hour = hour;
    h.gen = inst.gen;
    h.up_price = inst.ebm.up.at(t);
    h.down_price = inst.ebm.down.at(t);
    h.r_wp_floor = inst.ea.r_wp_floor.at(t);
    h.r_ls_floor = inst.ea.r_ls_floor.at(t);
    h.ramp_up = inst.ea.ramp_up.at(t);
    h.ramp_down = inst.ea.ramp_down.at(t);
    h.prosumers.reserve(inst.size());
    for (const auto& p : inst.prosumers) {
        const double mu = p.wind.mean_profile.at(t);
        const BetaWind w = wind_from_spread(mu, p.wind.spread, p.wind.capacity);
        h.prosumers.push_back({p.demand.at(t), mu, quadrature_second_moment(w), p.wind.capacity});
    }
    return h;
}

}  // namespace pcm
