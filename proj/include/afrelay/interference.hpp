#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "afrelay/quadrature.hpp"

namespace afrelay {

/// Non-singular path loss 1 / (l^beta + 1).
struct PathLoss
{
    double beta = 3.0;

    void validate() const;
    double operator()(double l) const;
};

double path_loss(double l, const PathLoss& pl);

/// Law of an interferer's distance on (0, L). Both functions receive the disc radius.
struct DistanceLaw
{
    std::function<double(double l, double radius)> pdf;
    std::function<double(double u, double radius)> quantile;  ///< inverse CDF, u in (0,1)

    /// f(l) = 2 l / L^2, i.e. positions uniform on the disc.
    static DistanceLaw uniform_disc();
};

/// Poisson-count interferer field on a disc.
struct RandomField
{
    double lambda_mean = 0.0;    ///< mean interferer count
    double disc_radius = 1.0;    ///< L
    double power_product = 1.0;  ///< K * P of each interferer
    int fading_m = 1;
    PathLoss pathloss;
    std::optional<DistanceLaw> distance_law;  ///< uniform disc when empty

    void validate() const;
    const DistanceLaw& law() const;
};

struct FixedInterferer
{
    double distance = 0.0;
    double power_product = 1.0;
    int fading_m = 1;
};

/// Interferers with known count and positions; only the fading is random.
struct FixedField
{
    std::vector<FixedInterferer> interferers;
    PathLoss pathloss;

    void validate() const;
    /// Mean received power K * P * eta(l) of interferer i.
    double omega(std::size_t i) const;
    double mean_power() const;
};

/// Raw moments of aggregate interference power.
struct MomentTriple
{
    double m1 = 0.0;
    double m2 = 0.0;
    double m3 = 0.0;
};

/// E[eta(l)^k] under the field's distance law.
double eta_moment(int k, const RandomField& field, const QuadratureSpec& quad = {});

double poisson_pmf(int i, double lambda_mean);

/// Smallest N whose Poisson upper tail P(I > N) is below tail_mass.
int poisson_truncation(double lambda_mean, double tail_mass);

/// E[g^k] for unit-mean Gamma(m, 1/m) fading, k in {1, 2, 3}.
double per_interferer_fading_moment(int m, int k);

/// Compound-Poisson raw moments of the aggregate interference. Throws
/// DegenerateMomentsError for an empty field (lambda_mean == 0).
MomentTriple aggregate_moments_random(const RandomField& field, const QuadratureSpec& quad = {});

/// Raw moments of a sum of independent Gamma interferers.
MomentTriple aggregate_moments_fixed(const FixedField& field);

}  // namespace afrelay
