#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "afrelay/errors.hpp"
#include "afrelay/montecarlo.hpp"

using namespace afrelay;

TEST_CASE("fading power moments")
{
    McRng rng(1);
    const int n = 1000000;
    for (int m : {1, 4}) {
        double s1 = 0, s2 = 0, s3 = 0;
        for (int i = 0; i < n; ++i) {
            const double g = sample_fading_power(m, rng);
            s1 += g;
            s2 += g * g;
            s3 += g * g * g;
        }
        s1 /= n;
        s2 /= n;
        s3 /= n;
        const double var = 1.0 / m;
        CHECK(std::abs(s1 - 1.0) < 3.5 * std::sqrt(var / n));
        CHECK(std::abs(s2 - 1.0 - var) < 0.01 * (1.0 + var));
        CHECK(std::abs(s3 - (m + 1.0) * (m + 2.0) / (m * m)) < 0.02 * (m + 1.0) * (m + 2.0) / (m * m));
    }
    CHECK_THROWS_AS(sample_fading_power(0, rng), DomainError);
}

TEST_CASE("interference samples")
{
    McRng rng(2);
    RandomField empty;
    empty.lambda_mean = 0.0;
    for (int i = 0; i < 100; ++i) {
        CHECK(sample_interference(empty, rng) == 0.0);
    }
    // single exponential interferer of mean 2: Kolmogorov distance small
    FixedField f;
    f.interferers = {{0.0, 2.0, 1}};
    const int n = 100000;
    std::vector<double> y(n);
    for (auto& v : y) {
        v = sample_interference(f, rng);
    }
    std::sort(y.begin(), y.end());
    double ks = 0.0;
    for (int i = 0; i < n; ++i) {
        const double F = 1.0 - std::exp(-y[i] / 2.0);
        ks = std::max({ks, std::abs(F - double(i) / n), std::abs(F - double(i + 1) / n)});
    }
    CHECK(ks < 1.63 / std::sqrt(n));  // 1% level
}

namespace {

SystemConfig small_system()
{
    HopConfig h;
    h.signal_m = 2;
    h.signal_omega = 20.0;
    h.noise_power = 0.5;
    FixedField f;
    f.pathloss = PathLoss{3.0};
    f.interferers.assign(4, FixedInterferer{1.0, 1.0, 2});
    h.interference = f;
    return SystemConfig{{{h, h}, {h, h}}, {0.01, 0.5, 2.0, 8.0, 1e9}};
}

}  // namespace

TEST_CASE("outage estimates are independent of thread count")
{
    const SystemConfig sys = small_system();
    McSpec a;
    a.trials = 50000;
    a.batch = 4096;
    a.seed = 42;
    a.threads = 1;
    McSpec b = a;
    b.threads = 4;
    const auto ea = estimate_outage(sys, a);
    const auto eb = estimate_outage(sys, b);
    for (std::size_t i = 0; i < ea.size(); ++i) {
        CHECK(ea[i].outage == eb[i].outage);
    }
    CHECK(ea.back().outage == 1.0);
    CHECK(ea.front().outage < ea[1].outage);
    McSpec c = a;
    c.seed = 43;
    CHECK(estimate_outage(sys, c)[2].outage != ea[2].outage);
}

TEST_CASE("outage tends to zero at small thresholds")
{
    SystemConfig sys = small_system();
    sys.thresholds = {1e-9, 1e12};
    McSpec mc;
    mc.trials = 10000;
    const auto e = estimate_outage(sys, mc);
    CHECK(e[0].outage == 0.0);
    CHECK(e[1].outage == 1.0);
    mc.trials = 0;
    CHECK_THROWS_AS(estimate_outage(sys, mc), DomainError);
}
