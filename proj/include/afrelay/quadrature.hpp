#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "afrelay/errors.hpp"

namespace afrelay {

struct QuadratureSpec
{
    double rel_tol = 1e-9;
    double abs_tol = 1e-30;
    int max_subdivisions = 500;
    /// Probability mass allowed to be dropped when an infinite range is cut to a finite one.
    double tail_cutoff_mass = 1e-15;

    bool operator==(const QuadratureSpec&) const = default;

    void validate() const
    {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(tail_cutoff_mass > 0.0) || max_subdivisions < 1) {
            throw DomainError("QuadratureSpec: tolerances must be positive and max_subdivisions >= 1");
        }
    }

    QuadratureSpec tightened(double factor) const
    {
        QuadratureSpec s = *this;
        s.rel_tol *= factor;
        s.abs_tol *= factor;
        return s;
    }
};

struct QuadratureResult
{
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
};

namespace detail {

// Kronrod 21-point nodes (positive half) and weights, with the embedded 10-point Gauss weights.
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980629063, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel
{
    double a;
    double b;
    double value;
    double error;
    double abs_value;

    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk21(F& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double resg = 0.0;
    double resk = kWgk[10] * fc;
    double resabs = std::abs(resk);
    std::array<double, 10> f1{};
    std::array<double, 10> f2{};
    for (int j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        const double v1 = f(center - dx);
        const double v2 = f(center + dx);
        f1[j] = v1;
        f2[j] = v2;
        resk += kWgk[j] * (v1 + v2);
        resabs += kWgk[j] * (std::abs(v1) + std::abs(v2));
        if (j % 2 == 1) {
            resg += kWg[j / 2] * (v1 + v2);
        }
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[10] * std::abs(fc - mean);
    for (int j = 0; j < 10; ++j) {
        resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }
    const double ah = std::abs(half);
    double err = std::abs((resk - resg) * half);
    resasc *= ah;
    resabs *= ah;
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(50.0 * eps * resabs, err);
    }
    if (!std::isfinite(resk)) {
        err = std::numeric_limits<double>::infinity();
    }
    return {a, b, resk * half, err, resabs};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration over [points.front(), points.back()],
/// starting from the panels given by consecutive points.
template <class F>
QuadratureResult integrate_panels(F&& f, const std::vector<double>& points, const QuadratureSpec& spec)
{
    spec.validate();
    if (points.size() < 2) {
        throw DomainError("integrate_panels: need at least two points");
    }
    std::priority_queue<detail::Panel> heap;
    double total = 0.0;
    double total_err = 0.0;
    double total_abs = 0.0;
    int count = 0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (!(points[i] < points[i + 1])) {
            if (points[i] == points[i + 1]) {
                continue;
            }
            throw DomainError("integrate_panels: points must be ascending");
        }
        detail::Panel p = detail::gk21(f, points[i], points[i + 1]);
        total += p.value;
        total_err += p.error;
        total_abs += p.abs_value;
        heap.push(p);
        ++count;
    }
    if (count == 0) {
        return {};
    }
    const int limit = std::max(spec.max_subdivisions, count);
    constexpr double eps = std::numeric_limits<double>::epsilon();
    auto tolerance = [&] {
        return std::max({spec.abs_tol, spec.rel_tol * std::abs(total), 50.0 * eps * total_abs});
    };
    while (total_err > tolerance() && count < limit) {
        const detail::Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) ||
            (worst.b - worst.a) <= 100.0 * eps * std::max(std::abs(worst.a), std::abs(worst.b))) {
            break;
        }
        heap.pop();
        const detail::Panel left = detail::gk21(f, worst.a, mid);
        const detail::Panel right = detail::gk21(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_abs += left.abs_value + right.abs_value - worst.abs_value;
        heap.push(left);
        heap.push(right);
        ++count;
        // Re-sum errors to avoid drift from repeated subtraction.
        total_err += left.error + right.error - worst.error;
        if (count % 64 == 0) {
            auto copy = heap;
            total = 0.0;
            total_err = 0.0;
            while (!copy.empty()) {
                total += copy.top().value;
                total_err += copy.top().error;
                copy.pop();
            }
        }
    }
    {
        auto copy = heap;
        total = 0.0;
        total_err = 0.0;
        while (!copy.empty()) {
            total += copy.top().value;
            total_err += copy.top().error;
            copy.pop();
        }
    }
    if (!std::isfinite(total) || total_err > tolerance()) {
        throw ConvergenceError("quadrature did not reach tolerance (error " + std::to_string(total_err) + ")",
                               total, total_err);
    }
    return {total, total_err, count};
}

template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureSpec& spec)
{
    if (a == b) {
        return {};
    }
    if (a > b) {
        QuadratureResult r = integrate(f, b, a, spec);
        r.value = -r.value;
        return r;
    }
    return integrate_panels(f, {a, b}, spec);
}

/// Integral of f over (0, inf) with x = scale * t / (1 - t).
template <class F>
QuadratureResult integrate_semi_infinite(F&& f, const QuadratureSpec& spec, double scale = 1.0)
{
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw DomainError("integrate_semi_infinite: scale must be positive");
    }
    auto mapped = [&](double t) {
        if (t <= 0.0 || t >= 1.0) {
            return 0.0;
        }
        const double one_minus = 1.0 - t;
        const double x = scale * t / one_minus;
        const double jac = scale / (one_minus * one_minus);
        const double v = f(x);
        return v == 0.0 ? 0.0 : v * jac;
    };
    return integrate_panels(mapped, {0.0, 0.25, 0.5, 0.75, 1.0}, spec);
}

/// Integral of f over (0, inf) for integrands spread over many decades.
/// Works in s = ln x, with s = ln(center) + v / (1 - v^2) for v in (-1, 1).
template <class F>
QuadratureResult integrate_log_scale(F&& f, double center, const QuadratureSpec& spec)
{
    if (!(center > 0.0) || !std::isfinite(center)) {
        throw DomainError("integrate_log_scale: center must be positive");
    }
    const double ln_center = std::log(center);
    auto mapped = [&](double v) {
        const double d = 1.0 - v * v;
        if (d <= 0.0) {
            return 0.0;
        }
        const double s = ln_center + v / d;
        if (s > 700.0 || s < -700.0) {
            return 0.0;
        }
        const double x = std::exp(s);
        const double val = f(x);
        if (val == 0.0) {
            return 0.0;
        }
        return val * x * (1.0 + v * v) / (d * d);
    };
    std::vector<double> pts;
    for (int i = -8; i <= 8; ++i) {
        pts.push_back(i / 8.0);
    }
    return integrate_panels(mapped, pts, spec);
}

}  // namespace afrelay
