#include "pcm/wind.hpp"

#include "pcm/errors.hpp"

#include <boost/math/distributions/beta.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace pcm {

namespace {

boost::math::beta_distribution<double> unit_beta(const BetaWind& m) {
    return boost::math::beta_distribution<double>(m.alpha, m.beta);
}

std::string describe(double mean, double v2, double capacity) {
    std::ostringstream os;
    os << "(mean=" << mean << ", v2=" << v2 << ", capacity=" << capacity << ")";
    return os.str();
}

}  // namespace

double BetaWind::mean() const {
    return capacity * alpha / (alpha + beta);
}

double BetaWind::variance() const {
    const double s = alpha + beta;
    return capacity * capacity * alpha * beta / (s * s * (s + 1.0));
}

double BetaWind::second_moment() const {
    const double mu = mean();
    return variance() + mu * mu;
}

BetaWind make_beta_wind(double alpha, double beta, double capacity) {
    if (!(capacity > 0.0))
        throw ParameterError("wind capacity must be > 0");
    if (!(alpha > 1.0))
        throw ParameterError("beta shape alpha must be > 1, got " + std::to_string(alpha));
    if (!(beta > 1.0))
        throw ParameterError("beta shape beta must be > 1, got " + std::to_string(beta));
    return BetaWind{alpha, beta, capacity};
}

double pdf(const BetaWind& model, double w) {
    if (!(w >= 0.0 && w <= model.capacity))
        throw ParameterError("wind output " + std::to_string(w) + " outside [0, capacity]");
    return boost::math::pdf(unit_beta(model), w / model.capacity) / model.capacity;
}

double cdf(const BetaWind& model, double w) {
    if (w <= 0.0)
        return 0.0;
    if (w >= model.capacity)
        return 1.0;
    return boost::math::cdf(unit_beta(model), w / model.capacity);
}

double CumulativeIntegrals::second_moment(double capacity) const {
    return capacity * capacity - 2.0 * (capacity * cf - ccf);
}

CumulativeIntegrals cf_ccf(const BetaWind& model) {
    using boost::math::quadrature::tanh_sinh;
    const double cap = model.capacity;
    const auto dist = unit_beta(model);

    // Integrate over the unit interval and rescale. CCF(cap) is written as
    // the single integral of (cap - w) F(w), which swaps the order of the
    // iterated integral.
    auto f = [&](double z) { return boost::math::cdf(dist, z); };
    auto g = [&](double z) { return (1.0 - z) * boost::math::cdf(dist, z); };

    double err_cf = 0.0;
    double err_ccf = 0.0;
    // The CDF can have unbounded derivatives at both ends; tanh-sinh copes.
    thread_local tanh_sinh<double> integrator;
    const double cf_unit = integrator.integrate(f, 0.0, 1.0, 1e-12, &err_cf);
    const double ccf_unit = integrator.integrate(g, 0.0, 1.0, 1e-12, &err_ccf);

    // Errors of the rescaled integrals.
    const double abs_cf = err_cf * cap;
    const double abs_ccf = err_ccf * cap * cap;
    const double worst = std::max(abs_cf, abs_ccf);
    if (!(worst <= kQuadratureTolerance) || !std::isfinite(cf_unit) || !std::isfinite(ccf_unit))
        throw NumericError("CF/CCF quadrature did not converge", worst);

    return CumulativeIntegrals{cf_unit * cap, ccf_unit * cap * cap};
}

double quadrature_second_moment(const BetaWind& model) {
    return cf_ccf(model).second_moment(model.capacity);
}

BetaWind match_moments(double mean, double normalized_variance, double capacity) {
    if (!(capacity > 0.0))
        throw ParameterError("wind capacity must be > 0");
    if (!(mean > 0.0 && mean < capacity))
        throw ParameterError("wind mean must lie in (0, capacity) " +
                             describe(mean, normalized_variance, capacity));
    const double m = mean / capacity;
    const double v2 = normalized_variance;
    const double bound = m * (1.0 - m);
    if (!(v2 > 0.0))
        throw ParameterError("normalized variance must be > 0 " + describe(mean, v2, capacity));
    if (!(v2 < bound))
        throw ParameterError("normalized variance must be < m(1-m) = " + std::to_string(bound) +
                             " " + describe(mean, v2, capacity));
    const double k = bound / v2 - 1.0;
    const double alpha = m * k;
    const double beta = (1.0 - m) * k;
    if (!(alpha > 1.0))
        throw ParameterError("moment match gives alpha = " + std::to_string(alpha) +
                             " <= 1 " + describe(mean, v2, capacity));
    if (!(beta > 1.0))
        throw ParameterError("moment match gives beta = " + std::to_string(beta) +
                             " <= 1 " + describe(mean, v2, capacity));
    return BetaWind{alpha, beta, capacity};
}

double spread_to_variance(double normalized_mean, double spread) {
    if (!(spread > 0.0 && spread < 100.0))
        throw ParameterError("wind spread must lie in (0, 100), got " + std::to_string(spread));
    return spread / 100.0 * normalized_mean * (1.0 - normalized_mean);
}

BetaWind wind_from_spread(double mean, double spread, double capacity) {
    if (!(capacity > 0.0))
        throw ParameterError("wind capacity must be > 0");
    return match_moments(mean, spread_to_variance(mean / capacity, spread), capacity);
}

}  // namespace pcm
