#pragma once

#include <optional>
#include <vector>

#include "afrelay/interference.hpp"

namespace afrelay {

/// weight * Gamma(shape, rate) density.
struct GammaTerm
{
    double rate = 1.0;
    int shape = 1;
    double weight = 0.0;

    /// Coefficient c of c * x^{shape-1} * exp(-rate x).
    double coeff() const;
};

/// Density of a sum of independent integer-shape Gamma variates as a signed
/// combination of Gamma densities. The weights sum to one.
struct GammaMixture
{
    std::vector<GammaTerm> terms;

    double pdf(double x) const;
    double cdf(double x) const;
    double mean() const;
    bool all_weights_nonnegative() const;
};

/// i.i.d. interferers: the sum is a single Gamma(count * m, m / omega).
struct IidField
{
    int count = 1;
    int fading_m = 1;
    double omega = 1.0;

    void validate() const;
    /// Equivalent field with every interferer at distance 0 and power omega.
    FixedField to_field() const;
};

/// Partial-fraction decomposition of prod_i (1 + s Omega_i / m_i)^{-m_i}.
/// Throws CoincidentRatesError when two rates m_i / Omega_i coincide.
GammaMixture gamma_sum_partial_fractions(const FixedField& field);

/// As above, but interferers sharing a rate are first merged by adding shapes.
GammaMixture gamma_sum_merged(const FixedField& field);

GammaMixture iid_mixture(const IidField& field);

/// The field as an IidField when every interferer has the same Omega and m.
std::optional<IidField> as_iid(const FixedField& field);

}  // namespace afrelay
