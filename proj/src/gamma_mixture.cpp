#include "afrelay/gamma_mixture.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "afrelay/errors.hpp"
#include "afrelay/specialfn.hpp"

namespace afrelay {

namespace {

using wide = boost::multiprecision::cpp_bin_float_50;

struct Pole
{
    double rate;
    int shape;
};

constexpr double kCoincidentRel = 1e-9;

bool coincide(double x, double y)
{
    return std::abs(x - y) <= kCoincidentRel * std::max(std::abs(x), std::abs(y));
}

std::vector<Pole> poles_of(const FixedField& field)
{
    field.validate();
    std::vector<Pole> poles;
    for (std::size_t i = 0; i < field.interferers.size(); ++i) {
        const int m = field.interferers[i].fading_m;
        poles.push_back({m / field.omega(i), m});
    }
    return poles;
}

GammaMixture decompose(const std::vector<Pole>& poles)
{
    GammaMixture mix;
    for (std::size_t i = 0; i < poles.size(); ++i) {
        const int ki = poles[i].shape;
        const wide li = poles[i].rate;
        // Taylor coefficients in t = s + rate_i of prod_{j != i} rate_j^k_j (delta_j + t)^{-k_j}.
        std::vector<wide> h(ki, wide(0));
        h[0] = 1;
        for (std::size_t j = 0; j < poles.size(); ++j) {
            if (j == i) {
                continue;
            }
            const int kj = poles[j].shape;
            const wide lj = poles[j].rate;
            const wide delta = lj - li;
            wide lead = 1;
            for (int e = 0; e < kj; ++e) {
                lead *= lj / delta;
            }
            std::vector<wide> factor(ki);
            wide c = lead;
            for (int n = 0; n < ki; ++n) {
                factor[n] = c;
                // C(k+n, n+1) / C(k+n-1, n) = (k+n)/(n+1), times -1/delta
                c *= -wide(kj + n) / (wide(n + 1) * delta);
            }
            std::vector<wide> next(ki, wide(0));
            for (int a = 0; a < ki; ++a) {
                for (int b = 0; a + b < ki; ++b) {
                    next[a + b] += h[a] * factor[b];
                }
            }
            h.swap(next);
        }
        for (int r = 1; r <= ki; ++r) {
            wide w = h[ki - r];
            for (int e = 0; e < ki - r; ++e) {
                w *= li;
            }
            mix.terms.push_back({poles[i].rate, r, static_cast<double>(w)});
        }
    }
    return mix;
}

}  // namespace

double GammaTerm::coeff() const
{
    return weight * std::exp(shape * std::log(rate) - boost::math::lgamma(static_cast<double>(shape)));
}

double GammaMixture::pdf(double x) const
{
    if (!(x > 0.0)) {
        double v = 0.0;
        if (x == 0.0) {
            for (const auto& t : terms) {
                if (t.shape == 1) {
                    v += t.weight * t.rate;
                }
            }
        }
        return v;
    }
    double v = 0.0;
    for (const auto& t : terms) {
        const double lv = t.shape * std::log(t.rate) + (t.shape - 1) * std::log(x) - t.rate * x -
                          boost::math::lgamma(static_cast<double>(t.shape));
        v += t.weight * std::exp(lv);
    }
    return v;
}

double GammaMixture::cdf(double x) const
{
    if (!(x > 0.0)) {
        return 0.0;
    }
    double v = 0.0;
    for (const auto& t : terms) {
        v += t.weight * boost::math::gamma_p(static_cast<double>(t.shape), t.rate * x);
    }
    return v;
}

double GammaMixture::mean() const
{
    double v = 0.0;
    for (const auto& t : terms) {
        v += t.weight * t.shape / t.rate;
    }
    return v;
}

bool GammaMixture::all_weights_nonnegative() const
{
    return std::all_of(terms.begin(), terms.end(), [](const GammaTerm& t) { return t.weight >= 0.0; });
}

void IidField::validate() const
{
    if (count < 1 || fading_m < 1 || !(omega > 0.0) || !std::isfinite(omega)) {
        throw DomainError("IidField: need count >= 1, fading_m >= 1 and omega > 0");
    }
}

FixedField IidField::to_field() const
{
    validate();
    FixedField f;
    f.interferers.assign(count, FixedInterferer{0.0, omega, fading_m});
    return f;
}

GammaMixture gamma_sum_partial_fractions(const FixedField& field)
{
    const std::vector<Pole> poles = poles_of(field);
    for (std::size_t i = 0; i < poles.size(); ++i) {
        for (std::size_t j = i + 1; j < poles.size(); ++j) {
            if (coincide(poles[i].rate, poles[j].rate)) {
                throw CoincidentRatesError("gamma_sum_partial_fractions: interferers " + std::to_string(i) + " and " +
                                           std::to_string(j) +
                                           " share the rate m/Omega; merge them by adding shapes or use the i.i.d. form");
            }
        }
    }
    return decompose(poles);
}

GammaMixture gamma_sum_merged(const FixedField& field)
{
    std::vector<Pole> merged;
    for (const Pole& p : poles_of(field)) {
        auto it = std::find_if(merged.begin(), merged.end(), [&](const Pole& q) { return coincide(p.rate, q.rate); });
        if (it == merged.end()) {
            merged.push_back(p);
        } else {
            it->shape += p.shape;
        }
    }
    return decompose(merged);
}

GammaMixture iid_mixture(const IidField& field)
{
    field.validate();
    GammaMixture mix;
    mix.terms.push_back({field.fading_m / field.omega, field.count * field.fading_m, 1.0});
    return mix;
}

std::optional<IidField> as_iid(const FixedField& field)
{
    field.validate();
    const int m = field.interferers.front().fading_m;
    const double omega = field.omega(0);
    for (std::size_t i = 1; i < field.interferers.size(); ++i) {
        if (field.interferers[i].fading_m != m || field.omega(i) != omega) {
            return std::nullopt;
        }
    }
    return IidField{static_cast<int>(field.interferers.size()), m, omega};
}

}  // namespace afrelay
