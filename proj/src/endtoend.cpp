#include "afrelay/endtoend.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <boost/math/special_functions/gamma.hpp>

#include "afrelay/errors.hpp"
#include "afrelay/hop_fixed.hpp"
#include "afrelay/hop_random.hpp"

namespace afrelay {

namespace {

double lfact(int n)
{
    return boost::math::lgamma(n + 1.0);
}

double ipow(double base, int e)
{
    return e == 0 ? 1.0 : std::pow(base, e);
}

// Interference-limited form: only terms without noise survive.
double dominant_series(double x, const RelayLink& link, const SeriesOrder& so, const SeriesOrder& dso)
{
    const HopConfig& s = link.hop_sr;
    const HopConfig& d = link.hop_rd;
    const double ts = s.signal_m / s.signal_omega;
    const double td = d.signal_m / d.signal_omega;
    double sum = 0.0;
    for (int n2 = 0; n2 <= so.interference_terms; ++n2) {
        for (int r2 = 0; r2 < s.signal_m; ++r2) {
            for (int n2p = 0; n2p <= dso.interference_terms; ++n2p) {
                for (int r2p = 0; r2p < d.signal_m; ++r2p) {
                    const double sign = ((n2 + n2p) % 2 == 0) ? 1.0 : -1.0;
                    const double c = sign * ipow(ts, n2 + r2) * ipow(td, n2p + r2p) * hop_moments_gg(s, n2 + r2) *
                                     hop_moments_gg(d, n2p + r2p) *
                                     std::exp(-lfact(n2) - lfact(r2) - lfact(n2p) - lfact(r2p));
                    sum += c * ipow(x, n2 + r2 + n2p + r2p);
                }
            }
        }
    }
    return 1.0 - sum;
}

// Rayleigh signal fading on both hops.
double rayleigh_series(double x, const RelayLink& link, const SeriesOrder& so, const SeriesOrder& dso)
{
    const HopConfig& s = link.hop_sr;
    const HopConfig& d = link.hop_rd;
    double sum = 0.0;
    for (int n2 = 0; n2 <= so.interference_terms; ++n2) {
        for (int n4 = 0; n4 <= so.noise_terms; ++n4) {
            for (int n2p = 0; n2p <= dso.interference_terms; ++n2p) {
                for (int n4p = 0; n4p <= dso.noise_terms; ++n4p) {
                    const double sign = ((n2 + n4 + n2p + n4p) % 2 == 0) ? 1.0 : -1.0;
                    const double c = sign * std::pow(s.signal_omega, -(n2 + n4)) *
                                     std::pow(d.signal_omega, -(n2p + n4p)) * ipow(s.noise_power, n4) *
                                     ipow(d.noise_power, n4p) * hop_moments_gg(s, n2) * hop_moments_gg(d, n2p) *
                                     std::exp(-lfact(n2) - lfact(n4) - lfact(n2p) - lfact(n4p));
                    sum += c * ipow(x, n2 + n4 + n2p + n4p);
                }
            }
        }
    }
    return 1.0 - sum;
}

struct LinkHops
{
    std::unique_ptr<HopDistribution> s;
    std::unique_ptr<HopDistribution> d;
};

OutagePoint evaluate(double x, const RelayLink& link, const LinkHops& hops, OutageMethod method,
                     const EvalOptions& opts)
{
    OutagePoint p;
    p.threshold = x;
    switch (method) {
    case OutageMethod::exact:
        p.value = e2e_cdf(x, *hops.s, *hops.d, opts.quad);
        break;
    case OutageMethod::lower_bound:
        p.value = e2e_lb(x, *hops.s, *hops.d);
        break;
    case OutageMethod::asymptotic: {
        const Approximation a = clamp_probability(1.0 - hops.s->ccdf_series(x, opts.source_orders) *
                                                            hops.d->ccdf_series(x, opts.dest_orders));
        p.value = a.value;
        p.clamped = a.clamped;
        break;
    }
    case OutageMethod::closed_form_dominant:
        p.value = e2e_cdf_dominant_fixed(x, link);
        break;
    case OutageMethod::rayleigh_closed_form:
        p.value = e2e_cdf_rayleigh_iid(x, link);
        break;
    case OutageMethod::rayleigh_highsinr:
        p.value = e2e_cdf_rayleigh_highsinr(x, link);
        break;
    }
    return p;
}

LinkHops hops_for(const RelayLink& link, OutageMethod method, const QuadratureSpec& quad)
{
    LinkHops h;
    if (method == OutageMethod::exact || method == OutageMethod::lower_bound || method == OutageMethod::asymptotic) {
        h.s = make_hop_distribution(link.hop_sr, quad);
        h.d = make_hop_distribution(link.hop_rd, quad);
    } else if (link.hop_sr.is_random() || link.hop_rd.is_random()) {
        throw DomainError("closed-form methods need fixed interferer fields on both hops");
    }
    return h;
}

}  // namespace

void SystemConfig::validate() const
{
    if (links.empty()) {
        throw DomainError("SystemConfig: at least one relay link is required");
    }
    for (const auto& l : links) {
        l.hop_sr.validate();
        l.hop_rd.validate();
    }
    for (double t : thresholds) {
        if (!(t > 0.0) || !std::isfinite(t)) {
            throw DomainError("SystemConfig: thresholds must be positive and finite");
        }
    }
}

double threshold_from_rate(double rate)
{
    if (!(rate >= 0.0) || !std::isfinite(rate)) {
        throw DomainError("threshold_from_rate: rate must be nonnegative");
    }
    return std::expm1(2.0 * rate * std::log(2.0));
}

double e2e_cdf(double x, const HopFunction& cdf_s, const HopFunction& cdf_d, const HopFunction& pdf_s,
               const QuadratureSpec& quad, double scale_s, double scale_d)
{
    if (!(x >= 0.0)) {
        throw DomainError("e2e_cdf: x must be nonnegative");
    }
    if (x == 0.0) {
        return 0.0;
    }
    if (std::isinf(x)) {
        return 1.0;
    }
    const double fs = cdf_s(x);
    auto integrand = [&](double t) {
        const double fd = cdf_d(x * (x + 1.0 + t) / t);
        if (fd == 0.0) {
            return 0.0;
        }
        return fd * pdf_s(t + x);
    };
    // F_d turns on near t ~ x(x+1)/scale_d; f_s carries its mass near scale_s.
    const double t_d = x * (x + 1.0) / scale_d;
    const double t_s = std::max(scale_s, x);
    const double center = std::sqrt(t_d * t_s);
    const QuadratureResult r = integrate_log_scale(integrand, center, quad);
    return std::clamp(fs + r.value, fs, 1.0);
}

double e2e_cdf(double x, const HopDistribution& s, const HopDistribution& d, const QuadratureSpec& quad)
{
    return e2e_cdf(
        x, [&](double u) { return s.cdf(u); }, [&](double u) { return d.cdf(u); }, [&](double u) { return s.pdf(u); },
        quad, s.typical_sinr(), d.typical_sinr());
}

double e2e_lb(double x, const HopDistribution& s, const HopDistribution& d)
{
    if (!(x >= 0.0)) {
        throw DomainError("e2e_lb: x must be nonnegative");
    }
    return std::clamp(1.0 - s.ccdf(x) * d.ccdf(x), 0.0, 1.0);
}

Approximation e2e_asymptotic_gga(double x, const RelayLink& link, const SeriesOrder& source, const SeriesOrder& dest,
                                 AsymptoticRoute route)
{
    if (!(x >= 0.0)) {
        throw DomainError("e2e_asymptotic_gga: x must be nonnegative");
    }
    source.validate();
    dest.validate();
    if (!link.hop_sr.is_random() || !link.hop_rd.is_random()) {
        throw DomainError("e2e_asymptotic_gga: both hops need generalized-Gamma interference");
    }
    switch (route) {
    case AsymptoticRoute::dominant:
        return clamp_probability(dominant_series(x, link, source, dest));
    case AsymptoticRoute::rayleigh:
        if (link.hop_sr.signal_m != 1 || link.hop_rd.signal_m != 1) {
            throw DomainError("e2e_asymptotic_gga: the Rayleigh route needs m = 1 on both hops");
        }
        return clamp_probability(rayleigh_series(x, link, source, dest));
    case AsymptoticRoute::general:
        break;
    }
    const GgaHop s(link.hop_sr);
    const GgaHop d(link.hop_rd);
    return clamp_probability(1.0 - s.ccdf_series(x, source) * d.ccdf_series(x, dest));
}

OutagePoint link_cdf(double x, const RelayLink& link, OutageMethod method, const EvalOptions& opts)
{
    const LinkHops hops = hops_for(link, method, opts.quad);
    return evaluate(x, link, hops, method, opts);
}

std::vector<OutagePoint> selection_outage(const SystemConfig& system, OutageMethod method, const EvalOptions& opts)
{
    system.validate();
    std::vector<OutagePoint> out(system.thresholds.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].threshold = system.thresholds[i];
        out[i].value = 1.0;
    }
    for (std::size_t j = 0; j < system.links.size(); ++j) {
        try {
            const LinkHops hops = hops_for(system.links[j], method, opts.quad);
            for (std::size_t i = 0; i < out.size(); ++i) {
                const OutagePoint p = evaluate(system.thresholds[i], system.links[j], hops, method, opts);
                out[i].value *= p.value;
                out[i].clamped = out[i].clamped || p.clamped;
            }
        } catch (const LinkError&) {
            throw;
        } catch (const std::exception& e) {
            throw LinkError(j, e.what());
        }
    }
    return out;
}

}  // namespace afrelay
