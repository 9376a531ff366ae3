#pragma once

#include "afrelay/hop.hpp"

namespace afrelay {

/// Hop SINR W / (noise + Y) with W ~ Gamma(m, Omega/m) and Y generalized-Gamma.
/// Density and CDF are expectations over Y evaluated by quadrature.
class GgaHop final : public HopDistribution
{
  public:
    explicit GgaHop(const HopConfig& hop, const QuadratureSpec& quad = {});

    double cdf(double u) const override;
    double pdf(double u) const override;
    double ccdf_series(double u, const SeriesOrder& orders) const override;
    double typical_sinr() const override;

    double interference_moment(int k) const;

  private:
    template <class F>
    double expect(F&& g) const;

    GGDist gg_;
    double rate_;   // m / Omega
    double shape_;  // d / p
    double power_;  // 1 / p
    double s_lo_;
    double s_hi_;
    double log_gamma_shape_;
    QuadratureSpec inner_;
};

double hop_pdf_gga(double u, const HopConfig& hop, const QuadratureSpec& quad = {});
double hop_cdf_gga(double u, const HopConfig& hop, const QuadratureSpec& quad = {});
Approximation hop_cdf_highsinr(double u, const HopConfig& hop, const SeriesOrder& orders = {});
double hop_moments_gg(const HopConfig& hop, int k);

}  // namespace afrelay
