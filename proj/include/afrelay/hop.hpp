#pragma once

#include <memory>
#include <optional>
#include <variant>

#include "afrelay/interference.hpp"
#include "afrelay/quadrature.hpp"
#include "afrelay/specialfn.hpp"

namespace afrelay {

/// Interference described by its generalized-Gamma approximation. The field is
/// kept when the law was fitted from one; a GGDist may also be given directly.
struct RandomInterference
{
    std::optional<RandomField> field;
    GGDist gga;
};

using Interference = std::variant<RandomInterference, FixedField>;

/// One hop: Nakagami-m signal of mean power signal_omega over noise plus interference.
struct HopConfig
{
    int signal_m = 1;
    double signal_omega = 1.0;
    double noise_power = 0.0;
    Interference interference = RandomInterference{};

    void validate() const;
    bool is_random() const { return std::holds_alternative<RandomInterference>(interference); }
};

/// Fits the GGA to the field's moments and returns the hop.
HopConfig make_random_hop(int signal_m, double signal_omega, double noise_power, const RandomField& field,
                          const QuadratureSpec& quad = {});

/// Truncation orders of the high-SINR series. interference_terms and noise_terms
/// bound the CDF expansion; the pdf_* pair is kept for the density series.
struct SeriesOrder
{
    int interference_terms = 3;
    int noise_terms = 3;
    int pdf_interference_terms = 3;
    int pdf_noise_terms = 3;

    void validate() const;
    bool operator==(const SeriesOrder&) const = default;
};

/// Truncated-series value after clamping to [0, 1].
struct Approximation
{
    double value = 0.0;
    bool clamped = false;
    double raw = 0.0;
};

Approximation clamp_probability(double raw);

/// SINR distribution of a single hop.
class HopDistribution
{
  public:
    virtual ~HopDistribution() = default;

    virtual double cdf(double u) const = 0;
    virtual double pdf(double u) const = 0;
    /// 1 - cdf(u); overridden where it can be formed without the subtraction.
    virtual double ccdf(double u) const { return 1.0 - cdf(u); }
    /// Truncated high-SINR series of the complementary CDF, unclamped.
    virtual double ccdf_series(double u, const SeriesOrder& orders) const = 0;
    /// Omega / (noise + E[Y]); a scale hint for integration.
    virtual double typical_sinr() const = 0;

    const HopConfig& config() const { return config_; }

  protected:
    explicit HopDistribution(HopConfig cfg) : config_(std::move(cfg)) {}

    HopConfig config_;
};

std::unique_ptr<HopDistribution> make_hop_distribution(const HopConfig& hop, const QuadratureSpec& quad = {});

/// Source-relay and relay-destination hops through one relay.
struct RelayLink
{
    HopConfig hop_sr;
    HopConfig hop_rd;
};

}  // namespace afrelay
