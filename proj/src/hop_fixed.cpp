#include "afrelay/hop_fixed.hpp"

#include <cmath>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "afrelay/errors.hpp"
#include "afrelay/specialfn.hpp"

namespace afrelay {

namespace {

double lgam(double x)
{
    return boost::math::lgamma(x);
}

double lfact(int n)
{
    return boost::math::lgamma(n + 1.0);
}

// log of C(n, k) for integers 0 <= k <= n
double lchoose(int n, int k)
{
    return lfact(n) - lfact(k) - lfact(n - k);
}

const FixedField& fixed_part(const HopConfig& hop)
{
    const auto* f = std::get_if<FixedField>(&hop.interference);
    if (f == nullptr) {
        throw DomainError("hop does not carry a fixed interferer field");
    }
    return *f;
}

IidField iid_part(const HopConfig& hop)
{
    auto iid = as_iid(fixed_part(hop));
    if (!iid) {
        throw DomainError("hop interferers are not identically distributed");
    }
    return *iid;
}

struct HopView
{
    int m;
    double rate;  // m / Omega
    GammaMixture mix;
};

HopView view_of(const HopConfig& hop)
{
    hop.validate();
    return {hop.signal_m, hop.signal_m / hop.signal_omega, interference_mixture(fixed_part(hop))};
}

// Integral of t^n (A t + B)^{-alpha} (C t + D)^{-beta} over (0, inf), as a log
// magnitude plus the hypergeometric factor.
double log_pair_integral(double n, double alpha, double beta_, double A, double B, double C, double D,
                         double& hyp)
{
    hyp = gauss_2f1_complement(beta_, n + 1.0, alpha + beta_, (B * C) / (A * D));
    return -beta_ * std::log(D) + (n + 1.0 - alpha) * std::log(B) - (n + 1.0) * std::log(A) +
           lgam(n + 1.0) + lgam(alpha + beta_ - n - 1.0) - lgam(alpha + beta_);
}

// 1 - F for the end-to-end SINR when both hops are interference limited.
double dominant_ccdf(double x, const HopView& s, const HopView& d)
{
    const double ms = s.m;
    const double th = s.rate;
    const double thd = d.rate;
    long double sum = 0.0L;
    for (const GammaTerm& ts : s.mix.terms) {
        const double lam = ts.rate;
        const double r = ts.shape;
        const double log_ks = ms * std::log(th) + r * std::log(lam) + lgam(ms + r) - lgam(ms) - lgam(r);
        for (const GammaTerm& td : d.mix.terms) {
            const double mu = td.rate;
            const double q = td.shape;
            const double sign_w = (ts.weight < 0) != (td.weight < 0) ? -1.0 : 1.0;
            const double log_w = std::log(std::abs(ts.weight)) + std::log(std::abs(td.weight));
            if (ts.weight == 0.0 || td.weight == 0.0) {
                continue;
            }
            const double A = mu + thd * x;
            const double B = thd * x * (x + 1.0);
            const double C = th;
            const double D = lam + th * x;
            for (int f = 0; f < d.m; ++f) {
                const double log_kd = f * std::log(thd) - lfact(f) + q * std::log(mu) + lgam(f + q) - lgam(q);
                for (int j1 = 0; j1 <= s.m - 1; ++j1) {
                    for (int j2 = 0; j2 <= f; ++j2) {
                        const double n = q + j1 + j2;
                        double hyp = 0.0;
                        const double lt = log_pair_integral(n, f + q, ms + r, A, B, C, D, hyp);
                        const double lc = log_w + log_ks + log_kd + f * std::log(x) + lchoose(s.m - 1, j1) +
                                          lchoose(f, j2) + (s.m - 1 - j1) * std::log(x) +
                                          (f - j2) * std::log1p(x) + lt;
                        sum += static_cast<long double>(sign_w * hyp) * std::exp(static_cast<long double>(lc));
                    }
                }
            }
        }
    }
    return static_cast<double>(sum);
}

double ipow(double base, int e)
{
    return e == 0 ? 1.0 : std::pow(base, e);
}

}  // namespace

GammaMixture interference_mixture(const FixedField& field)
{
    if (auto iid = as_iid(field)) {
        return iid_mixture(*iid);
    }
    return gamma_sum_partial_fractions(field);
}

FixedHop::FixedHop(const HopConfig& hop) : HopDistribution(hop)
{
    hop.validate();
    mixture_ = interference_mixture(fixed_part(hop));
    rate_ = hop.signal_m / hop.signal_omega;
}

double FixedHop::ccdf(double u) const
{
    if (!(u >= 0.0)) {
        throw DomainError("FixedHop: u must be nonnegative");
    }
    if (u == 0.0) {
        return 1.0;
    }
    if (std::isinf(u)) {
        return 0.0;
    }
    const int m = config_.signal_m;
    const double noise = config_.noise_power;
    const double tu = rate_ * u;
    long double sum = 0.0L;
    for (const GammaTerm& t : mixture_.terms) {
        const double lam = t.rate;
        const double r = t.shape;
        const double base = r * std::log(lam / (lam + tu)) - tu * noise - lgam(r);
        for (int f = 0; f < m; ++f) {
            for (int h = 0; h <= f; ++h) {
                if (noise == 0.0 && f > h) {
                    continue;
                }
                double lv = base + f * std::log(tu) - lfact(f) + lchoose(f, h) + lgam(h + r) - h * std::log(lam + tu);
                if (f > h) {
                    lv += (f - h) * std::log(noise);
                }
                sum += static_cast<long double>(t.weight) * std::exp(static_cast<long double>(lv));
            }
        }
    }
    return static_cast<double>(sum);
}

// Per mixture term the outage is P(N >= m) with N = Poisson(tu * noise) + NegBin(r, z),
// z = tu / (lam + tu). Summed directly so tiny outages keep their relative precision.
double FixedHop::cdf(double u) const
{
    if (!(u >= 0.0)) {
        throw DomainError("FixedHop: u must be nonnegative");
    }
    if (u == 0.0) {
        return 0.0;
    }
    if (std::isinf(u)) {
        return 1.0;
    }
    const int m = config_.signal_m;
    const double a = rate_ * u * config_.noise_power;
    const double tu = rate_ * u;
    long double sum = 0.0L;
    for (const GammaTerm& t : mixture_.terms) {
        const double z = tu / (t.rate + tu);
        long double v = a > 0.0 ? boost::math::gamma_p(static_cast<double>(m), a) : 0.0;
        for (int k = 0; k < m; ++k) {
            if (k > 0 && a == 0.0) {
                break;
            }
            const double pois = a > 0.0 ? std::exp(k * std::log(a) - a - lfact(k)) : 1.0;
            v += pois * boost::math::ibeta(static_cast<double>(m - k), static_cast<double>(t.shape), z);
        }
        sum += static_cast<long double>(t.weight) * v;
    }
    return std::clamp(static_cast<double>(sum), 0.0, 1.0);
}

double FixedHop::pdf(double u) const
{
    if (!(u >= 0.0)) {
        throw DomainError("FixedHop: u must be nonnegative");
    }
    const int m = config_.signal_m;
    const double noise = config_.noise_power;
    if (std::isinf(u)) {
        return 0.0;
    }
    if (u == 0.0 && m > 1) {
        return 0.0;
    }
    if (u == 0.0) {
        return rate_ * (noise + mixture_.mean());
    }
    const double tu = rate_ * u;
    const double lead = m * std::log(rate_) + (m - 1) * std::log(u) - tu * noise - lgam(m);
    long double sum = 0.0L;
    for (const GammaTerm& t : mixture_.terms) {
        const double lam = t.rate;
        const double r = t.shape;
        for (int f = 0; f <= m; ++f) {
            if (noise == 0.0 && f < m) {
                continue;
            }
            double lv = lead + lchoose(m, f) + lgam(f + r) - lgam(r) + r * std::log(lam / (lam + tu)) -
                        f * std::log(lam + tu);
            if (f < m) {
                lv += (m - f) * std::log(noise);
            }
            sum += static_cast<long double>(t.weight) * std::exp(static_cast<long double>(lv));
        }
    }
    return static_cast<double>(sum);
}

double FixedHop::ccdf_series(double u, const SeriesOrder& orders) const
{
    orders.validate();
    if (u == 0.0) {
        return 1.0;
    }
    const int m = config_.signal_m;
    const double noise = config_.noise_power;
    const double tu = rate_ * u;
    double noise_factor = 0.0;
    for (int n = 0; n <= orders.noise_terms; ++n) {
        noise_factor += ipow(-tu * noise, n) / std::exp(lfact(n));
    }
    double sum = 0.0;
    for (const GammaTerm& t : mixture_.terms) {
        const double lam = t.rate;
        const double r = t.shape;
        for (int f = 0; f < m; ++f) {
            for (int h = 0; h <= f; ++h) {
                if (noise == 0.0 && f > h) {
                    continue;
                }
                double interference_factor = 0.0;
                for (int k = 0; k <= orders.interference_terms; ++k) {
                    interference_factor += binomial(-(h + r), k) * ipow(tu / lam, k);
                }
                const double coeff = std::exp(f * std::log(tu) - lfact(f) + lchoose(f, h) + lgam(h + r) - lgam(r) -
                                              h * std::log(lam)) *
                                     ipow(noise, f - h);
                sum += t.weight * coeff * noise_factor * interference_factor;
            }
        }
    }
    return sum;
}

double FixedHop::typical_sinr() const
{
    return config_.signal_omega / (config_.noise_power + mixture_.mean());
}

double hop_pdf_fixed(double u, const HopConfig& hop)
{
    return FixedHop(hop).pdf(u);
}

double hop_cdf_fixed(double u, const HopConfig& hop)
{
    return FixedHop(hop).cdf(u);
}

Approximation hop_cdf_fixed_highsinr(double u, const HopConfig& hop, const SeriesOrder& orders)
{
    if (!(u >= 0.0)) {
        throw DomainError("hop_cdf_fixed_highsinr: u must be nonnegative");
    }
    return clamp_probability(1.0 - FixedHop(hop).ccdf_series(u, orders));
}

double e2e_cdf_dominant_fixed(double x, const RelayLink& link)
{
    if (!(x >= 0.0)) {
        throw DomainError("e2e_cdf_dominant_fixed: x must be nonnegative");
    }
    if (x == 0.0) {
        return 0.0;
    }
    const HopView s = view_of(link.hop_sr);
    const HopView d = view_of(link.hop_rd);
    return std::clamp(1.0 - dominant_ccdf(x, s, d), 0.0, 1.0);
}

double e2e_cdf_dominant_iid(double x, const RelayLink& link)
{
    iid_part(link.hop_sr);
    iid_part(link.hop_rd);
    return e2e_cdf_dominant_fixed(x, link);
}

double e2e_cdf_rayleigh_iid(double x, const RelayLink& link)
{
    if (!(x >= 0.0)) {
        throw DomainError("e2e_cdf_rayleigh_iid: x must be nonnegative");
    }
    if (link.hop_sr.signal_m != 1 || link.hop_rd.signal_m != 1) {
        throw DomainError("e2e_cdf_rayleigh_iid: both hops need Rayleigh signal fading (m = 1)");
    }
    const IidField fi = iid_part(link.hop_sr);
    const IidField fv = iid_part(link.hop_rd);
    if (x == 0.0) {
        return 0.0;
    }
    const double ws = link.hop_sr.signal_omega;
    const double wd = link.hop_rd.signal_omega;
    const double si = fi.count * fi.fading_m;  // total interference shape, source side
    const double sv = fv.count * fv.fading_m;
    const double oi = fi.omega;
    const double ov = fv.omega;
    const double ratio = oi * ov * x * (x + 1.0) / ((fi.fading_m * ws + oi * x) * (fv.fading_m * wd + ov * x));
    const double hyp = gauss_2f1_complement(sv + 1.0, si + 1.0, si + sv + 1.0, ratio);
    const double lv = std::log(si) + sv * std::log(wd) + si * std::log(ws) + lgam(sv + 1.0) + lgam(si) -
                      lgam(sv + si + 1.0) - sv * std::log(ov * x / fv.fading_m + wd) -
                      si * std::log(oi * x / fi.fading_m + ws) + std::log(ratio);
    return std::clamp(1.0 - std::exp(lv) * hyp, 0.0, 1.0);
}

double e2e_cdf_rayleigh_highsinr(double x, const RelayLink& link)
{
    if (!(x >= 0.0)) {
        throw DomainError("e2e_cdf_rayleigh_highsinr: x must be nonnegative");
    }
    if (link.hop_sr.signal_m != 1 || link.hop_rd.signal_m != 1) {
        throw DomainError("e2e_cdf_rayleigh_highsinr: both hops need Rayleigh signal fading (m = 1)");
    }
    const IidField fi = iid_part(link.hop_sr);
    const IidField fv = iid_part(link.hop_rd);
    const double ws = link.hop_sr.signal_omega;
    const double wd = link.hop_rd.signal_omega;
    const double si = fi.count * fi.fading_m;
    const double sv = fv.count * fv.fading_m;
    const double lv = -si * std::log1p(fi.omega * x / (ws * fi.fading_m)) -
                      sv * std::log1p(fv.omega * x / (wd * fv.fading_m));
    return -std::expm1(lv);
}

double e2e_lb_fixed(double x, const RelayLink& link)
{
    if (!(x >= 0.0)) {
        throw DomainError("e2e_lb_fixed: x must be nonnegative");
    }
    const FixedHop s(link.hop_sr);
    const FixedHop d(link.hop_rd);
    return std::clamp(1.0 - s.ccdf(x) * d.ccdf(x), 0.0, 1.0);
}

double e2e_lb_iid(double x, const RelayLink& link)
{
    if (!(x >= 0.0)) {
        throw DomainError("e2e_lb_iid: x must be nonnegative");
    }
    const IidField fi = iid_part(link.hop_sr);
    const IidField fv = iid_part(link.hop_rd);
    if (x == 0.0) {
        return 0.0;
    }
    const int ms = link.hop_sr.signal_m;
    const int md = link.hop_rd.signal_m;
    const double ws = link.hop_sr.signal_omega / ms;  // Omega_s / m_s
    const double wd = link.hop_rd.signal_omega / md;
    const double ns = link.hop_sr.noise_power;
    const double nd = link.hop_rd.noise_power;
    const double si = fi.count * fi.fading_m;
    const double sv = fv.count * fv.fading_m;
    const double bi = fi.omega / fi.fading_m;  // Omega_i / m_i
    const double bv = fv.omega / fv.fading_m;
    const double log_front = -sv * std::log(bv) - si * std::log(bi) - nd * x / wd - ns * x / ws - lgam(sv) - lgam(si);
    long double sum = 0.0L;
    for (int v1 = 0; v1 < ms; ++v1) {
        for (int v2 = 0; v2 < md; ++v2) {
            for (int s1 = 0; s1 <= v1; ++s1) {
                for (int s2 = 0; s2 <= v2; ++s2) {
                    if ((ns == 0.0 && v1 > s1) || (nd == 0.0 && v2 > s2)) {
                        continue;
                    }
                    double lv = log_front - v2 * std::log(wd) - v1 * std::log(ws) + lgam(sv + s2) + lgam(si + s1) -
                                lfact(s1) - lfact(s2) - lfact(v1 - s1) - lfact(v2 - s2) + (v1 + v2) * std::log(x) -
                                (sv + s2) * std::log(x / wd + 1.0 / bv) - (si + s1) * std::log(1.0 / bi + x / ws);
                    if (v2 > s2) {
                        lv += (v2 - s2) * std::log(nd);
                    }
                    if (v1 > s1) {
                        lv += (v1 - s1) * std::log(ns);
                    }
                    sum += std::exp(static_cast<long double>(lv));
                }
            }
        }
    }
    return std::clamp(1.0 - static_cast<double>(sum), 0.0, 1.0);
}

Approximation e2e_asymptotic_fixed(double x, const RelayLink& link, const SeriesOrder& source,
                                   const SeriesOrder& dest)
{
    if (!(x >= 0.0)) {
        throw DomainError("e2e_asymptotic_fixed: x must be nonnegative");
    }
    const FixedHop s(link.hop_sr);
    const FixedHop d(link.hop_rd);
    return clamp_probability(1.0 - s.ccdf_series(x, source) * d.ccdf_series(x, dest));
}

Approximation e2e_asymptotic_iid(double x, const RelayLink& link, const SeriesOrder& source, const SeriesOrder& dest)
{
    if (!(x >= 0.0)) {
        throw DomainError("e2e_asymptotic_iid: x must be nonnegative");
    }
    source.validate();
    dest.validate();
    const IidField fi = iid_part(link.hop_sr);
    const IidField fv = iid_part(link.hop_rd);
    const int ms = link.hop_sr.signal_m;
    const int md = link.hop_rd.signal_m;
    const double ws = link.hop_sr.signal_omega / ms;
    const double wd = link.hop_rd.signal_omega / md;
    const double ns = link.hop_sr.noise_power;
    const double nd = link.hop_rd.noise_power;
    const double si = fi.count * fi.fading_m;
    const double sv = fv.count * fv.fading_m;
    const double bi = fi.omega / fi.fading_m;
    const double bv = fv.omega / fv.fading_m;
    double sum = 0.0;
    for (int v1 = 0; v1 < ms; ++v1) {
        for (int v2 = 0; v2 < md; ++v2) {
            for (int s1 = 0; s1 <= v1; ++s1) {
                for (int s2 = 0; s2 <= v2; ++s2) {
                    for (int n9 = 0; n9 <= source.noise_terms; ++n9) {
                        for (int n10 = 0; n10 <= dest.noise_terms; ++n10) {
                            for (int n11 = 0; n11 <= source.interference_terms; ++n11) {
                                for (int n12 = 0; n12 <= dest.interference_terms; ++n12) {
                                    const double sign = ((n9 + n10) % 2 == 0) ? 1.0 : -1.0;
                                    const double c15 =
                                        sign * std::exp(lgam(sv + s2) + lgam(si + s1) - lfact(n10) - lfact(n9) -
                                                        lfact(s1) - lfact(s2) - lfact(v1 - s1) - lfact(v2 - s2) -
                                                        lgam(sv) - lgam(si)) *
                                        binomial(-sv - s2, n12) * binomial(-si - s1, n11);
                                    const double c16 = ipow(bi, n11 + s1) * ipow(bv, n12 + s2) *
                                                       ipow(nd, n10 - s2 + v2) * ipow(ns, n9 - s1 + v1) /
                                                       (ipow(wd, n10 + n12 + v2) * ipow(ws, n11 + n9 + v1));
                                    sum += c15 * c16 * ipow(x, n9 + n10 + n11 + n12 + v1 + v2);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    return clamp_probability(1.0 - sum);
}

}  // namespace afrelay
