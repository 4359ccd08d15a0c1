#pragma once

namespace pcm {

/// Beta-distributed wind output on [0, capacity].
///
/// Both shape parameters are strictly greater than one, so the density
/// vanishes at both ends of the support.
struct BetaWind {
    double alpha;
    double beta;
    double capacity;

    double mean() const;
    double variance() const;
    /// E[w^2] from the closed-form beta moments.
    double second_moment() const;
};

/// Builds a validated model; throws ParameterError if alpha or beta <= 1
/// or capacity <= 0.
BetaWind make_beta_wind(double alpha, double beta, double capacity);

/// Density at w. Throws ParameterError outside [0, capacity].
double pdf(const BetaWind& model, double w);

/// Cumulative distribution at w, clamped to 0 below and 1 above the support.
double cdf(const BetaWind& model, double w);

/// The iterated CDF integrals evaluated at capacity:
///   cf  = int_0^cap F(w) dw
///   ccf = int_0^cap CF(w) dw
struct CumulativeIntegrals {
    double cf;
    double ccf;

    /// cap^2 - 2 (cap cf - ccf), which equals E[w^2] by integration by parts.
    double second_moment(double capacity) const;
};

/// Absolute tolerance targeted by the CF/CCF quadrature.
inline constexpr double kQuadratureTolerance = 1e-9;

/// Adaptive Gauss-Kronrod quadrature of the CDF. Throws NumericError if the
/// error estimate stays above kQuadratureTolerance.
CumulativeIntegrals cf_ccf(const BetaWind& model);

/// E[w^2] through the CF/CCF route (the form used by the cost functions).
double quadrature_second_moment(const BetaWind& model);

/// Moment matching in normalized units: m = mean / capacity and v2 the
/// variance of w / capacity. Throws ParameterError when v2 >= m(1-m) or the
/// implied alpha or beta is not above one.
BetaWind match_moments(double mean, double normalized_variance, double capacity);

/// Maps a configured spread nu to a normalized variance
/// v2 = (nu / 100) m (1 - m). Throws ParameterError unless 0 < nu < 100.
double spread_to_variance(double normalized_mean, double spread);

/// match_moments after spread_to_variance; the form used for configured
/// wind profiles.
BetaWind wind_from_spread(double mean, double spread, double capacity);

}  // namespace pcm
