#pragma once

#include "afrelay/gamma_mixture.hpp"
#include "afrelay/hop.hpp"

namespace afrelay {

/// Hop SINR with a fixed interferer field. The interference density is the
/// exact Gamma mixture, so CDF and density are finite sums.
class FixedHop final : public HopDistribution
{
  public:
    explicit FixedHop(const HopConfig& hop);

    double cdf(double u) const override;
    double pdf(double u) const override;
    double ccdf_series(double u, const SeriesOrder& orders) const override;
    double typical_sinr() const override;

    double ccdf(double u) const override;
    const GammaMixture& mixture() const { return mixture_; }

  private:
    GammaMixture mixture_;
    double rate_;  // m / Omega
};

/// Mixture for a fixed field: the single-Gamma form when the interferers are
/// i.i.d., the partial-fraction form otherwise.
GammaMixture interference_mixture(const FixedField& field);

double hop_pdf_fixed(double u, const HopConfig& hop);
double hop_cdf_fixed(double u, const HopConfig& hop);
Approximation hop_cdf_fixed_highsinr(double u, const HopConfig& hop, const SeriesOrder& orders = {});

// End-to-end closed forms for a relay link with fixed interferers on both hops.
// The dominant-interference and Rayleigh forms ignore the noise powers.

double e2e_cdf_dominant_fixed(double x, const RelayLink& link);
double e2e_cdf_dominant_iid(double x, const RelayLink& link);
double e2e_cdf_rayleigh_iid(double x, const RelayLink& link);
double e2e_cdf_rayleigh_highsinr(double x, const RelayLink& link);

double e2e_lb_fixed(double x, const RelayLink& link);
double e2e_lb_iid(double x, const RelayLink& link);

Approximation e2e_asymptotic_fixed(double x, const RelayLink& link, const SeriesOrder& source = {},
                                   const SeriesOrder& dest = {});
Approximation e2e_asymptotic_iid(double x, const RelayLink& link, const SeriesOrder& source = {},
                                 const SeriesOrder& dest = {});

}  // namespace afrelay
