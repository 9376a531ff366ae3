#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "afrelay/hop.hpp"

namespace afrelay {

/// J relays and the outage thresholds (linear SINR).
struct SystemConfig
{
    std::vector<RelayLink> links;
    std::vector<double> thresholds;

    void validate() const;
};

/// gamma_th = 2^{2R} - 1 for a target rate R (bit/s/Hz).
double threshold_from_rate(double rate);

using HopFunction = std::function<double(double)>;

/// Exact CDF of Gs Gd / (Gs + Gd + 1):
///   F_s(x) + int_0^inf F_d(x (x + 1 + t) / t) f_s(t + x) dt.
/// The scale hints are typical SINR values of the two hops.
double e2e_cdf(double x, const HopFunction& cdf_s, const HopFunction& cdf_d, const HopFunction& pdf_s,
               const QuadratureSpec& quad = {}, double scale_s = 1.0, double scale_d = 1.0);
double e2e_cdf(double x, const HopDistribution& s, const HopDistribution& d, const QuadratureSpec& quad = {});

/// 1 - (1 - F_s)(1 - F_d), which never exceeds e2e_cdf.
double e2e_lb(double x, const HopDistribution& s, const HopDistribution& d);

/// Which form of the asymptotic series to use. dominant drops the noise
/// (interference-limited hops); rayleigh requires m = 1 on both hops.
enum class AsymptoticRoute
{
    general,
    dominant,
    rayleigh,
};

/// 1 - S_s(x) S_d(x) with the truncated high-SINR series of both GGA hops.
Approximation e2e_asymptotic_gga(double x, const RelayLink& link, const SeriesOrder& source = {},
                                 const SeriesOrder& dest = {}, AsymptoticRoute route = AsymptoticRoute::general);

enum class OutageMethod
{
    exact,
    lower_bound,
    asymptotic,
    closed_form_dominant,
    rayleigh_closed_form,
    rayleigh_highsinr,
};

struct EvalOptions
{
    QuadratureSpec quad;
    SeriesOrder source_orders;
    SeriesOrder dest_orders;
};

struct OutagePoint
{
    double threshold = 0.0;
    double value = 0.0;
    bool clamped = false;
};

/// Failure while evaluating one relay link.
class LinkError : public std::runtime_error
{
  public:
    LinkError(std::size_t link, const std::string& what)
        : std::runtime_error("link " + std::to_string(link) + ": " + what), link_(link)
    {
    }

    std::size_t link() const noexcept { return link_; }

  private:
    std::size_t link_;
};

/// End-to-end CDF of a single link by the chosen method.
OutagePoint link_cdf(double x, const RelayLink& link, OutageMethod method, const EvalOptions& opts = {});

/// Selection-combining outage: product over relays of the link CDFs.
std::vector<OutagePoint> selection_outage(const SystemConfig& system, OutageMethod method,
                                          const EvalOptions& opts = {});

}  // namespace afrelay
