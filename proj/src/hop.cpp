#include "afrelay/hop.hpp"

#include <algorithm>
#include <cmath>

#include "afrelay/errors.hpp"
#include "afrelay/gga.hpp"
#include "afrelay/hop_fixed.hpp"
#include "afrelay/hop_random.hpp"

namespace afrelay {

void HopConfig::validate() const
{
    if (signal_m < 1) {
        throw DomainError("HopConfig: signal_m must be >= 1");
    }
    if (!(signal_omega > 0.0) || !std::isfinite(signal_omega)) {
        throw DomainError("HopConfig: signal_omega must be positive");
    }
    if (!(noise_power >= 0.0) || !std::isfinite(noise_power)) {
        throw DomainError("HopConfig: noise_power must be nonnegative");
    }
    if (const auto* r = std::get_if<RandomInterference>(&interference)) {
        r->gga.validate();
        if (r->field) {
            r->field->validate();
        }
    } else {
        std::get<FixedField>(interference).validate();
    }
}

HopConfig make_random_hop(int signal_m, double signal_omega, double noise_power, const RandomField& field,
                          const QuadratureSpec& quad)
{
    const MomentTriple mt = aggregate_moments_random(field, quad);
    const FitReport fit = fit_gga(mt);
    HopConfig hop;
    hop.signal_m = signal_m;
    hop.signal_omega = signal_omega;
    hop.noise_power = noise_power;
    hop.interference = RandomInterference{field, fit.params};
    hop.validate();
    return hop;
}

void SeriesOrder::validate() const
{
    if (interference_terms < 0 || noise_terms < 0 || pdf_interference_terms < 0 || pdf_noise_terms < 0) {
        throw DomainError("SeriesOrder: orders must be nonnegative");
    }
}

Approximation clamp_probability(double raw)
{
    Approximation a;
    a.raw = raw;
    a.value = std::clamp(raw, 0.0, 1.0);
    a.clamped = !(raw >= 0.0 && raw <= 1.0);
    if (std::isnan(raw)) {
        a.value = raw;
    }
    return a;
}

std::unique_ptr<HopDistribution> make_hop_distribution(const HopConfig& hop, const QuadratureSpec& quad)
{
    if (hop.is_random()) {
        return std::make_unique<GgaHop>(hop, quad);
    }
    return std::make_unique<FixedHop>(hop);
}

}  // namespace afrelay
