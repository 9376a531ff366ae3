#include "afrelay/gga.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <boost/math/special_functions/gamma.hpp>

namespace afrelay {

namespace {

double lg(double x)
{
    return boost::math::lgamma(x);
}

// Shape variables: k = d/p (Gamma shape of (Y/a)^p) and q = 1/p.
struct Targets
{
    double ratio2;  // ln(m2 / m1^2)
    double ratio3;  // ln(m3 / (m1 m2))
};

std::array<double, 2> equations(double k, double q, const Targets& t)
{
    const double g0 = lg(k);
    const double g1 = lg(k + q);
    const double g2 = lg(k + 2.0 * q);
    const double g3 = lg(k + 3.0 * q);
    return {g2 + g0 - 2.0 * g1 - t.ratio2, g3 + g0 - g1 - g2 - t.ratio3};
}

GGDist params_from(double k, double q, const MomentTriple& m)
{
    GGDist g;
    g.p = 1.0 / q;
    g.d = k / q;
    g.a = std::exp(std::log(m.m1) + lg(k) - lg(k + q));
    return g;
}

// Solve the second-moment equation for k at fixed q; it decreases in k.
std::optional<double> k_for_q(double q, const Targets& t)
{
    auto f = [&](double lk) {
        const double k = std::exp(lk);
        return lg(k + 2.0 * q) + lg(k) - 2.0 * lg(k + q) - t.ratio2;
    };
    double lo = std::log(1e-8);
    double hi = std::log(1e8);
    if (f(lo) < 0.0 || f(hi) > 0.0) {
        return std::nullopt;
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return std::exp(0.5 * (lo + hi));
}

double max_of(const std::array<double, 3>& r)
{
    return std::max({r[0], r[1], r[2]});
}

FitReport newton_from(double k0, double q0, const MomentTriple& m, const Targets& t, double tol, int max_iter)
{
    double x0 = std::log(k0);
    double x1 = std::log(q0);
    auto eval = [&](double a, double b) { return equations(std::exp(a), std::exp(b), t); };
    auto norm = [](const std::array<double, 2>& g) { return std::hypot(g[0], g[1]); };

    FitReport rep;
    std::array<double, 2> g = eval(x0, x1);
    for (int it = 0; it <= max_iter; ++it) {
        rep.iterations = it;
        rep.params = params_from(std::exp(x0), std::exp(x1), m);
        rep.residuals = gga_residual(rep.params, m);
        if (std::isfinite(max_of(rep.residuals)) && max_of(rep.residuals) <= tol) {
            rep.converged = true;
            return rep;
        }
        if (it == max_iter) {
            break;
        }
        constexpr double h = 1e-6;
        const auto gp0 = eval(x0 + h, x1);
        const auto gm0 = eval(x0 - h, x1);
        const auto gp1 = eval(x0, x1 + h);
        const auto gm1 = eval(x0, x1 - h);
        const double j00 = (gp0[0] - gm0[0]) / (2 * h);
        const double j10 = (gp0[1] - gm0[1]) / (2 * h);
        const double j01 = (gp1[0] - gm1[0]) / (2 * h);
        const double j11 = (gp1[1] - gm1[1]) / (2 * h);
        const double det = j00 * j11 - j01 * j10;
        if (!std::isfinite(det) || det == 0.0) {
            break;
        }
        double d0 = -(j11 * g[0] - j01 * g[1]) / det;
        double d1 = -(-j10 * g[0] + j00 * g[1]) / det;
        const double len = std::hypot(d0, d1);
        if (len > 2.0) {
            d0 *= 2.0 / len;
            d1 *= 2.0 / len;
        }
        const double n0 = norm(g);
        double step = 1.0;
        bool moved = false;
        for (int ls = 0; ls < 40; ++ls) {
            const double y0 = x0 + step * d0;
            const double y1 = x1 + step * d1;
            if (std::abs(y0) < 700 && std::abs(y1) < 700) {
                const auto gy = eval(y0, y1);
                if (std::isfinite(gy[0]) && std::isfinite(gy[1]) && norm(gy) < n0) {
                    x0 = y0;
                    x1 = y1;
                    g = gy;
                    moved = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!moved) {
            // Round-off floor: accept the iterate as is and report.
            break;
        }
    }
    rep.params = params_from(std::exp(x0), std::exp(x1), m);
    rep.residuals = gga_residual(rep.params, m);
    rep.converged = std::isfinite(max_of(rep.residuals)) && max_of(rep.residuals) <= tol;
    return rep;
}

}  // namespace

std::array<double, 3> gga_residual(const GGDist& params, const MomentTriple& moments)
{
    return {std::abs(gg_moment(params, 1.0) - moments.m1) / moments.m1,
            std::abs(gg_moment(params, 2.0) - moments.m2) / moments.m2,
            std::abs(gg_moment(params, 3.0) - moments.m3) / moments.m3};
}

FitReport fit_gga(const MomentTriple& moments, double tol, int max_iter)
{
    if (!(moments.m1 > 0.0) || !std::isfinite(moments.m1) || !std::isfinite(moments.m2) ||
        !std::isfinite(moments.m3)) {
        throw DegenerateMomentsError("fit_gga: first moment must be positive and all moments finite");
    }
    if (!(moments.m2 > moments.m1 * moments.m1) || !(moments.m3 > moments.m1 * moments.m2)) {
        throw DegenerateMomentsError("fit_gga: moments need m2 > m1^2 and m3 > m1*m2");
    }
    if (!(tol > 0.0) || max_iter < 1) {
        throw DomainError("fit_gga: tol must be positive and max_iter >= 1");
    }
    const Targets t{std::log(moments.m2 / (moments.m1 * moments.m1)),
                    std::log(moments.m3 / (moments.m1 * moments.m2))};

    std::optional<FitReport> best;
    std::optional<FitReport> best_failed;
    auto consider = [&](const FitReport& r) {
        auto& slot = r.converged ? best : best_failed;
        // Among converged roots prefer the smallest third-moment residual.
        const bool better = !slot || (r.converged ? r.residuals[2] < slot->residuals[2]
                                                  : max_of(r.residuals) < max_of(slot->residuals));
        if (better) {
            slot = r;
        }
    };

    const double gamma_k = moments.m1 * moments.m1 / (moments.m2 - moments.m1 * moments.m1);
    consider(newton_from(gamma_k, 1.0, moments, t, tol, max_iter));
    if (!best) {
        for (double q0 : {0.5, 2.0, 0.25, 4.0, 0.125, 8.0, 0.05, 20.0}) {
            if (auto k0 = k_for_q(q0, t)) {
                consider(newton_from(*k0, q0, moments, t, tol, max_iter));
            }
            if (best) {
                break;
            }
        }
    }
    if (best) {
        return *best;
    }
    FitReport fallback = best_failed.value_or(FitReport{});
    throw GgaFitError("fit_gga: no start point converged", fallback);
}

}  // namespace afrelay
