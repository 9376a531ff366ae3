#include "afrelay/interference.hpp"

#include <cmath>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "afrelay/errors.hpp"
#include "afrelay/specialfn.hpp"

namespace afrelay {

void PathLoss::validate() const
{
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw DomainError("PathLoss: beta must be positive");
    }
}

double PathLoss::operator()(double l) const
{
    return 1.0 / (std::pow(l, beta) + 1.0);
}

double path_loss(double l, const PathLoss& pl)
{
    pl.validate();
    if (!(l >= 0.0)) {
        throw DomainError("path_loss: distance must be nonnegative");
    }
    return pl(l);
}

DistanceLaw DistanceLaw::uniform_disc()
{
    return {[](double l, double radius) { return (l < 0.0 || l > radius) ? 0.0 : 2.0 * l / (radius * radius); },
            [](double u, double radius) { return radius * std::sqrt(u); }};
}

void RandomField::validate() const
{
    if (!(lambda_mean >= 0.0) || !std::isfinite(lambda_mean)) {
        throw DomainError("RandomField: lambda_mean must be nonnegative");
    }
    if (!(disc_radius > 0.0) || !std::isfinite(disc_radius)) {
        throw DomainError("RandomField: disc_radius must be positive");
    }
    if (!(power_product > 0.0) || !std::isfinite(power_product)) {
        throw DomainError("RandomField: power_product must be positive");
    }
    if (fading_m < 1) {
        throw DomainError("RandomField: fading_m must be >= 1");
    }
    pathloss.validate();
}

const DistanceLaw& RandomField::law() const
{
    static const DistanceLaw disc = DistanceLaw::uniform_disc();
    return distance_law ? *distance_law : disc;
}

void FixedField::validate() const
{
    if (interferers.empty()) {
        throw DomainError("FixedField: at least one interferer is required");
    }
    for (const auto& it : interferers) {
        if (!(it.distance >= 0.0) || !std::isfinite(it.distance)) {
            throw DomainError("FixedField: distances must be nonnegative");
        }
        if (!(it.power_product > 0.0) || !std::isfinite(it.power_product)) {
            throw DomainError("FixedField: powers must be positive");
        }
        if (it.fading_m < 1) {
            throw DomainError("FixedField: fading_m must be >= 1");
        }
    }
    pathloss.validate();
}

double FixedField::omega(std::size_t i) const
{
    const auto& it = interferers.at(i);
    return it.power_product * pathloss(it.distance);
}

double FixedField::mean_power() const
{
    double s = 0.0;
    for (std::size_t i = 0; i < interferers.size(); ++i) {
        s += omega(i);
    }
    return s;
}

double eta_moment(int k, const RandomField& field, const QuadratureSpec& quad)
{
    field.validate();
    if (k < 1 || k > 3) {
        throw DomainError("eta_moment: order must be 1, 2 or 3");
    }
    const DistanceLaw& law = field.law();
    const double radius = field.disc_radius;
    auto integrand = [&](double l) { return law.pdf(l, radius) * std::pow(field.pathloss(l), k); };
    QuadratureSpec spec = quad;
    spec.rel_tol = std::min(spec.rel_tol, 1e-12);
    std::vector<double> pts{0.0};
    for (double b : {0.5, 1.0, 2.0, 4.0}) {
        if (b < radius) {
            pts.push_back(b);
        }
    }
    pts.push_back(radius);
    return integrate_panels(integrand, pts, spec).value;
}

double poisson_pmf(int i, double lambda_mean)
{
    if (i < 0 || !(lambda_mean >= 0.0)) {
        throw DomainError("poisson_pmf: need i >= 0 and lambda >= 0");
    }
    if (lambda_mean == 0.0) {
        return i == 0 ? 1.0 : 0.0;
    }
    return std::exp(i * std::log(lambda_mean) - lambda_mean - boost::math::lgamma(static_cast<double>(i) + 1.0));
}

int poisson_truncation(double lambda_mean, double tail_mass)
{
    if (!(lambda_mean >= 0.0) || !(tail_mass > 0.0 && tail_mass < 1.0)) {
        throw DomainError("poisson_truncation: need lambda >= 0 and tail mass in (0,1)");
    }
    if (lambda_mean == 0.0) {
        return 0;
    }
    // P(I > N) = P(N + 1, lambda), the regularized lower incomplete Gamma.
    int n = 0;
    while (boost::math::gamma_p(static_cast<double>(n) + 1.0, lambda_mean) >= tail_mass) {
        ++n;
    }
    return n;
}

double per_interferer_fading_moment(int m, int k)
{
    if (m < 1) {
        throw DomainError("per_interferer_fading_moment: m must be >= 1");
    }
    const double md = m;
    switch (k) {
    case 1:
        return 1.0;
    case 2:
        return (md + 1.0) / md;
    case 3:
        return (md + 1.0) * (md + 2.0) / (md * md);
    default:
        throw DomainError("per_interferer_fading_moment: order must be 1, 2 or 3");
    }
}

MomentTriple aggregate_moments_random(const RandomField& field, const QuadratureSpec& quad)
{
    field.validate();
    if (field.lambda_mean == 0.0) {
        throw DegenerateMomentsError("aggregate_moments_random: empty field, interference is identically zero");
    }
    const double lam = field.lambda_mean;
    double mu[3];
    for (int k = 1; k <= 3; ++k) {
        mu[k - 1] = std::pow(field.power_product, k) * eta_moment(k, field, quad) *
                    per_interferer_fading_moment(field.fading_m, k);
    }
    const double mean = lam * mu[0];
    MomentTriple t;
    t.m1 = mean;
    t.m2 = lam * mu[1] + mean * mean;
    t.m3 = lam * mu[2] + 3.0 * lam * lam * mu[0] * mu[1] + mean * mean * mean;
    return t;
}

MomentTriple aggregate_moments_fixed(const FixedField& field)
{
    field.validate();
    // Cumulants of a sum of independent Gamma(m, Omega/m): k_n = sum m (Omega/m)^n (n-1)!.
    double k1 = 0.0, k2 = 0.0, k3 = 0.0;
    for (std::size_t i = 0; i < field.interferers.size(); ++i) {
        const double m = field.interferers[i].fading_m;
        const double scale = field.omega(i) / m;
        k1 += m * scale;
        k2 += m * scale * scale;
        k3 += 2.0 * m * scale * scale * scale;
    }
    MomentTriple t;
    t.m1 = k1;
    t.m2 = k2 + k1 * k1;
    t.m3 = k3 + 3.0 * k2 * k1 + k1 * k1 * k1;
    return t;
}

}  // namespace afrelay
