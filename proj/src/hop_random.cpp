#include "afrelay/hop_random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/gamma.hpp>

#include "afrelay/errors.hpp"

namespace afrelay {

namespace {

const RandomInterference& random_part(const HopConfig& hop)
{
    const auto* r = std::get_if<RandomInterference>(&hop.interference);
    if (r == nullptr) {
        throw DomainError("hop does not carry generalized-Gamma interference");
    }
    return *r;
}

double factorial(int n)
{
    return std::tgamma(n + 1.0);
}

}  // namespace

GgaHop::GgaHop(const HopConfig& hop, const QuadratureSpec& quad) : HopDistribution(hop)
{
    hop.validate();
    quad.validate();
    gg_ = random_part(hop).gga;
    rate_ = hop.signal_m / hop.signal_omega;
    shape_ = gg_.gamma_shape();
    power_ = 1.0 / gg_.p;
    log_gamma_shape_ = boost::math::lgamma(shape_);
    inner_ = quad.tightened(1e-2);
    inner_.abs_tol = std::min(inner_.abs_tol, 1e-300);
    const double eps = quad.tail_cutoff_mass;
    // y^m weighting in the density moves mass towards Gamma(shape + m/p).
    const double z_lo = boost::math::gamma_p_inv(shape_, eps);
    const double z_hi = boost::math::gamma_q_inv(shape_ + hop.signal_m * power_, eps);
    s_lo_ = std::log(std::max(z_lo, std::numeric_limits<double>::min()));
    s_hi_ = std::log(z_hi);
}

template <class F>
double GgaHop::expect(F&& g) const
{
    auto integrand = [&](double s) {
        const double z = std::exp(s);
        const double y = gg_.a * std::exp(power_ * s);
        const double lw = shape_ * s - z - log_gamma_shape_;
        return g(y, lw);
    };
    std::vector<double> pts;
    constexpr int panels = 8;
    for (int i = 0; i <= panels; ++i) {
        pts.push_back(s_lo_ + (s_hi_ - s_lo_) * i / panels);
    }
    return integrate_panels(integrand, pts, inner_).value;
}

double GgaHop::cdf(double u) const
{
    if (!(u >= 0.0)) {
        throw DomainError("GgaHop::cdf: u must be nonnegative");
    }
    if (u == 0.0) {
        return 0.0;
    }
    if (std::isinf(u)) {
        return 1.0;
    }
    const double m = config_.signal_m;
    const double noise = config_.noise_power;
    const double v = expect([&](double y, double lw) {
        const double arg = rate_ * u * (noise + y);
        return boost::math::gamma_p(m, arg) * std::exp(lw);
    });
    return std::clamp(v, 0.0, 1.0);
}

double GgaHop::pdf(double u) const
{
    if (!(u >= 0.0)) {
        throw DomainError("GgaHop::pdf: u must be nonnegative");
    }
    const int m = config_.signal_m;
    const double noise = config_.noise_power;
    if (u == 0.0) {
        if (m > 1) {
            return 0.0;
        }
        // m = 1: rate * E[noise + Y]
        return rate_ * (noise + gg_moment(gg_, 1.0));
    }
    if (std::isinf(u)) {
        return 0.0;
    }
    const double lead = m * std::log(rate_) + (m - 1) * std::log(u) - boost::math::lgamma(static_cast<double>(m));
    return expect([&](double y, double lw) {
        const double total = noise + y;
        return std::exp(lead + m * std::log(total) - rate_ * u * total + lw);
    });
}

double GgaHop::ccdf_series(double u, const SeriesOrder& orders) const
{
    orders.validate();
    const int m = config_.signal_m;
    const double noise = config_.noise_power;
    double sum = 0.0;
    for (int n2 = 0; n2 <= orders.interference_terms; ++n2) {
        for (int n4 = 0; n4 <= orders.noise_terms; ++n4) {
            for (int r2 = 0; r2 < m; ++r2) {
                for (int r3 = 0; r3 <= r2; ++r3) {
                    const int power_u = n2 + r2 + n4;
                    const double sign = ((n2 + n4) % 2 == 0) ? 1.0 : -1.0;
                    const int noise_power = r2 - r3 + n4;
                    if (noise == 0.0 && noise_power > 0) {
                        continue;
                    }
                    const double term = sign * std::pow(rate_ * u, power_u) * std::pow(noise, noise_power) *
                                        interference_moment(n2 + r3) /
                                        (factorial(n2) * factorial(n4) * factorial(r3) * factorial(r2 - r3));
                    sum += term;
                }
            }
        }
    }
    return sum;
}

double GgaHop::typical_sinr() const
{
    return config_.signal_omega / (config_.noise_power + gg_moment(gg_, 1.0));
}

double GgaHop::interference_moment(int k) const
{
    return gg_moment(gg_, k);
}

double hop_pdf_gga(double u, const HopConfig& hop, const QuadratureSpec& quad)
{
    return GgaHop(hop, quad).pdf(u);
}

double hop_cdf_gga(double u, const HopConfig& hop, const QuadratureSpec& quad)
{
    return GgaHop(hop, quad).cdf(u);
}

Approximation hop_cdf_highsinr(double u, const HopConfig& hop, const SeriesOrder& orders)
{
    if (!(u >= 0.0)) {
        throw DomainError("hop_cdf_highsinr: u must be nonnegative");
    }
    return clamp_probability(1.0 - GgaHop(hop).ccdf_series(u, orders));
}

double hop_moments_gg(const HopConfig& hop, int k)
{
    return gg_moment(random_part(hop).gga, k);
}

}  // namespace afrelay
