#include <doctest.h>

#include <cmath>

#include <boost/math/distributions/poisson.hpp>

#include "afrelay/errors.hpp"
#include "afrelay/gga.hpp"
#include "afrelay/interference.hpp"
#include "afrelay/montecarlo.hpp"
#include "oracles/models_oracle.hpp"
#include "test_helpers.hpp"

using namespace afrelay;
using testutil::rel_err;

namespace {

RandomField field(double lambda, double radius, double beta, int m)
{
    RandomField f;
    f.lambda_mean = lambda;
    f.disc_radius = radius;
    f.fading_m = m;
    f.pathloss = PathLoss{beta};
    return f;
}

}  // namespace

TEST_CASE("path loss")
{
    CHECK(path_loss(0.0, {3.0}) == 1.0);
    CHECK(path_loss(1.0, {3.0}) == 0.5);
    CHECK(path_loss(2.0, {3.0}) == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
    CHECK_THROWS_AS(path_loss(-1.0, {3.0}), DomainError);
    CHECK_THROWS_AS(path_loss(1.0, {0.0}), DomainError);
}

TEST_CASE("eta moments")
{
    // vanishing exponent: eta is 1/2 everywhere
    for (int k = 1; k <= 3; ++k) {
        CHECK(eta_moment(k, field(1.0, 10.0, 1e-14, 1)) == doctest::Approx(std::pow(0.5, k)).epsilon(1e-12));
    }
    for (const auto& r : oracle::models::eta_moments) {
        const double v = eta_moment(static_cast<int>(r.k), field(1.0, r.radius, r.beta, 1));
        CHECK(rel_err(v, r.value) < 1e-11);
    }
    CHECK_THROWS_AS(eta_moment(4, field(1.0, 10.0, 3.0, 1)), DomainError);
}

TEST_CASE("Poisson helpers")
{
    CHECK(poisson_pmf(0, 3.0) == doctest::Approx(std::exp(-3.0)).epsilon(1e-15));
    CHECK(poisson_pmf(0, 0.0) == 1.0);
    CHECK(poisson_pmf(2, 0.0) == 0.0);
    const boost::math::poisson_distribution<> pd(50.0);
    CHECK(rel_err(poisson_pmf(50, 50.0), boost::math::pdf(pd, 50.0)) < 1e-13);
    CHECK(poisson_truncation(0.0, 1e-12) == 0);
    // smallest N with P(I > N) < eps, checked by cumulative sum
    for (auto [lam, eps] : {std::pair{50.0, 1e-12}, std::pair{2.0, 0.5}}) {
        const int n = poisson_truncation(lam, eps);
        double cum = 0.0;
        for (int i = 0; i <= n; ++i) {
            cum += poisson_pmf(i, lam);
        }
        CHECK(1.0 - cum < eps);
        CHECK(1.0 - (cum - poisson_pmf(n, lam)) >= eps);
    }
    CHECK_THROWS_AS(poisson_pmf(-1, 1.0), DomainError);
}

TEST_CASE("fading moments")
{
    for (int m = 1; m <= 7; ++m) {
        CHECK(per_interferer_fading_moment(m, 1) == doctest::Approx(1.0));
    }
    CHECK(per_interferer_fading_moment(1, 2) == doctest::Approx(2.0));
    CHECK(per_interferer_fading_moment(3, 3) == doctest::Approx(20.0 / 9.0));
}

TEST_CASE("aggregate moments, random field")
{
    const MomentTriple t = aggregate_moments_random(field(2.0, 10.0, 1e-14, 1));
    CHECK(t.m1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t.m2 == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(t.m3 == doctest::Approx(5.5).epsilon(1e-12));
    CHECK_THROWS_AS(aggregate_moments_random(field(0.0, 10.0, 3.0, 1)), DegenerateMomentsError);
    for (const auto& r : oracle::models::aggregate) {
        const MomentTriple mt =
            aggregate_moments_random(field(r.lambda_mean, r.radius, r.beta, static_cast<int>(r.m)));
        CHECK(rel_err(mt.m1, r.m1) < 1e-11);
        CHECK(rel_err(mt.m2, r.m2) < 1e-11);
        CHECK(rel_err(mt.m3, r.m3) < 1e-11);
    }
}

TEST_CASE("aggregate moments agree with sampled field")
{
    const RandomField f = field(50.0, 10.0, 3.0, 1);
    const MomentTriple mt = aggregate_moments_random(f);
    McRng rng(7);
    const int n = 400000;
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0, s6 = 0;
    for (int i = 0; i < n; ++i) {
        const double y = sample_interference(f, rng);
        s1 += y;
        s2 += y * y;
        s3 += y * y * y;
        s4 += y * y * y * y;
        s6 += std::pow(y, 6);
    }
    s1 /= n;
    s2 /= n;
    s3 /= n;
    s4 /= n;
    s6 /= n;
    CHECK(std::abs(s1 - mt.m1) < 4.0 * std::sqrt((s2 - s1 * s1) / n));
    CHECK(std::abs(s2 - mt.m2) < 4.0 * std::sqrt((s4 - s2 * s2) / n));
    CHECK(std::abs(s3 - mt.m3) < 4.0 * std::sqrt((s6 - s3 * s3) / n));
}

TEST_CASE("aggregate moments, fixed field")
{
    FixedField f;
    f.pathloss = PathLoss{3.0};
    f.interferers = {{1.0, 1.0, 1}};
    const MomentTriple one = aggregate_moments_fixed(f);
    CHECK(one.m1 == doctest::Approx(0.5));
    CHECK(one.m2 == doctest::Approx(0.5));  // exponential: 2 mean^2
    CHECK(one.m3 == doctest::Approx(0.75));
    f.interferers.push_back({0.0, 2.0, 3});
    const MomentTriple two = aggregate_moments_fixed(f);
    CHECK(two.m1 == doctest::Approx(2.5));
    // independent sum: E[(X+Y)^2] = E X^2 + 2 E X E Y + E Y^2, E Y^2 = 4 (1 + 1/3)
    CHECK(two.m2 == doctest::Approx(0.5 + 2.0 * 0.5 * 2.0 + 4.0 * 4.0 / 3.0));
}

TEST_CASE("GG fit")
{
    // Gamma(shape 2, scale 3) is a fixed point
    FitReport g = fit_gga({6.0, 54.0, 648.0});
    CHECK(g.converged);
    CHECK(g.params.a == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(g.params.d == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(g.params.p == doctest::Approx(1.0).epsilon(1e-8));
    const double g15 = std::tgamma(1.5);
    const double g25 = std::tgamma(2.5);
    FitReport h = fit_gga({g15, 1.0, g25});
    CHECK(h.params.a == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(h.params.d == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(h.params.p == doctest::Approx(2.0).epsilon(1e-8));
    CHECK_THROWS_AS(fit_gga({2.0, 4.0, 8.0}), DegenerateMomentsError);
    CHECK_THROWS_AS(fit_gga({-1.0, 4.0, 8.0}), DegenerateMomentsError);

    for (const auto& r : oracle::models::gg_fit) {
        const MomentTriple mt =
            aggregate_moments_random(field(r.lambda_mean, r.radius, r.beta, static_cast<int>(r.m)));
        const FitReport fr = fit_gga(mt);
        INFO("L=" << r.radius << " beta=" << r.beta << " m=" << r.m);
        CHECK(fr.converged);
        CHECK(rel_err(fr.params.a, r.a) < 1e-6);
        CHECK(rel_err(fr.params.d, r.d) < 1e-6);
        CHECK(rel_err(fr.params.p, r.p) < 1e-6);
        for (double res : fr.residuals) {
            CHECK(res <= 1e-8);
        }
    }
}

TEST_CASE("GG residuals")
{
    const GGDist g{1.3, 2.1, 0.8};
    const MomentTriple mt{gg_moment(g, 1), gg_moment(g, 2), gg_moment(g, 3)};
    for (double r : gga_residual(g, mt)) {
        CHECK(r < 1e-14);
    }
    const auto r = gga_residual({1.3 * 1.01, 2.1, 0.8}, mt);
    CHECK(r[0] == doctest::Approx(0.01).epsilon(1e-10));
    CHECK(r[1] == doctest::Approx(1.01 * 1.01 - 1.0).epsilon(1e-10));
}
