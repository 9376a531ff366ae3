#include "afrelay/specialfn.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "afrelay/errors.hpp"

namespace afrelay {

namespace {

using real = long double;

constexpr int kMaxSeriesTerms = 200000;
constexpr real kSeriesEps = std::numeric_limits<double>::epsilon() * 1e-2L;

bool is_nonpositive_integer(double x)
{
    return x <= 0.0 && x == std::floor(x);
}

bool nearly_integer(double x, long long& rounded)
{
    const double r = std::round(x);
    if (std::abs(x - r) <= 1e-12 * std::max(1.0, std::abs(x))) {
        rounded = static_cast<long long>(r);
        return true;
    }
    return false;
}

// log|Gamma(x)| together with the sign of Gamma(x); x must not be a pole.
real signed_lgamma(double x, int& sign)
{
    int s = 1;
    const double v = boost::math::lgamma(x, &s);
    sign = s;
    return static_cast<real>(v);
}

// 1/Gamma(x) as (log magnitude, sign); sign == 0 at the poles of Gamma.
struct RecipGamma
{
    real log_mag = 0;
    int sign = 0;
};

RecipGamma recip_gamma(double x)
{
    if (is_nonpositive_integer(x)) {
        return {};
    }
    int s = 1;
    const real lg = signed_lgamma(x, s);
    return {-lg, s};
}

// Plain hypergeometric series. Terminates for nonpositive-integer a or b.
real series_2f1(double a, double b, double c, real z)
{
    real term = 1;
    real sum = 1;
    int settled = 0;
    for (int k = 0; k < kMaxSeriesTerms; ++k) {
        const real ratio = (a + k) * static_cast<real>(b + k) / ((c + k) * static_cast<real>(k + 1)) * z;
        term *= ratio;
        if (term == 0) {
            return sum;
        }
        sum += term;
        if (std::fabs(term) <= kSeriesEps * std::fabs(sum) && std::fabs(ratio) < 1) {
            if (++settled >= 3) {
                return sum;
            }
        } else {
            settled = 0;
        }
    }
    throw ConvergenceError("gauss_2f1: power series did not converge", static_cast<double>(sum),
                           static_cast<double>(std::fabs(term)));
}

// 2F1(a, b; a + b + m; z) for integer m >= 0 and w = 1 - z in (0, 1).
real log_connection(double a, double b, long long m, real w)
{
    const double c = a + b + static_cast<double>(m);
    int sc = 1;
    const real lgc = signed_lgamma(c, sc);

    // Finite part: sum_{k<m} (a)_k (b)_k (m-k-1)! / k! (z-1)^k.
    real finite = 0;
    if (m > 0) {
        real poch = 1;  // (a)_k (b)_k / k!
        real zm1_pow = 1;
        for (long long k = 0; k < m; ++k) {
            finite += poch * std::tgamma(static_cast<real>(m - k)) * zm1_pow;
            poch *= (a + k) * static_cast<real>(b + k) / static_cast<real>(k + 1);
            zm1_pow *= -w;
        }
    }
    const RecipGamma ra = recip_gamma(a + static_cast<double>(m));
    const RecipGamma rb = recip_gamma(b + static_cast<double>(m));
    real part1 = 0;
    if (ra.sign != 0 && rb.sign != 0 && finite != 0) {
        part1 = sc * ra.sign * rb.sign * std::exp(lgc + ra.log_mag + rb.log_mag) * finite;
    }

    // Logarithmic series.
    const RecipGamma ra0 = recip_gamma(a);
    const RecipGamma rb0 = recip_gamma(b);
    if (ra0.sign == 0 || rb0.sign == 0) {
        return part1;
    }
    const real lnw = std::log(w);
    real psi_k1 = boost::math::digamma(1.0L);
    real psi_km1 = boost::math::digamma(static_cast<real>(m + 1));
    real psi_a = boost::math::digamma(static_cast<real>(a) + m);
    real psi_b = boost::math::digamma(static_cast<real>(b) + m);
    real coeff = 1 / std::tgamma(static_cast<real>(m + 1));
    real sum = 0;
    int settled = 0;
    bool done = false;
    for (long long k = 0; k < kMaxSeriesTerms; ++k) {
        const real term = coeff * (lnw - psi_k1 - psi_km1 + psi_a + psi_b);
        sum += term;
        const real ratio = (a + m + k) * static_cast<real>(b + m + k) /
                           (static_cast<real>(k + 1) * static_cast<real>(k + m + 1)) * w;
        if (std::fabs(term) <= kSeriesEps * std::fabs(sum) && std::fabs(ratio) < 1) {
            if (++settled >= 3) {
                done = true;
                break;
            }
        } else {
            settled = 0;
        }
        coeff *= ratio;
        if (coeff == 0) {
            done = true;
            break;
        }
        psi_k1 += 1.0L / (k + 1);
        psi_km1 += 1.0L / (k + m + 1);
        psi_a += 1.0L / (static_cast<real>(a) + m + k);
        psi_b += 1.0L / (static_cast<real>(b) + m + k);
    }
    if (!done) {
        throw ConvergenceError("gauss_2f1: logarithmic series did not converge", 0.0, 0.0);
    }
    // (z - 1)^m = (-w)^m
    const real sign_m = (m % 2 == 0) ? 1 : -1;
    const real part2 = sign_m * sc * ra0.sign * rb0.sign *
                       std::exp(lgc + ra0.log_mag + rb0.log_mag + static_cast<real>(m) * lnw) * sum;
    return part1 - part2;
}

// 2F1 for 1/2 < z < 1 through the connection formulas at z = 1; w = 1 - z.
real connection_2f1(double a, double b, double c, real w)
{
    long long m = 0;
    if (nearly_integer(c - a - b, m)) {
        if (m >= 0) {
            return log_connection(a, b, m, w);
        }
        // Euler: F(a,b;c;z) = (1-z)^{c-a-b} F(c-a, c-b; c; z), which flips the sign of m.
        return std::pow(w, static_cast<real>(m)) * log_connection(c - a, c - b, -m, w);
    }
    const double s = c - a - b;
    int sc = 1;
    const real lgc = signed_lgamma(c, sc);
    real result = 0;
    {
        int sg = 1;
        const real lg = signed_lgamma(s, sg);
        const RecipGamma r1 = recip_gamma(c - a);
        const RecipGamma r2 = recip_gamma(c - b);
        if (r1.sign != 0 && r2.sign != 0) {
            result += sc * sg * r1.sign * r2.sign * std::exp(lgc + lg + r1.log_mag + r2.log_mag) *
                      series_2f1(a, b, 1 - s, w);
        }
    }
    {
        int sg = 1;
        const real lg = signed_lgamma(-s, sg);
        const RecipGamma r1 = recip_gamma(a);
        const RecipGamma r2 = recip_gamma(b);
        if (r1.sign != 0 && r2.sign != 0) {
            result += sc * sg * r1.sign * r2.sign *
                      std::exp(lgc + lg + r1.log_mag + r2.log_mag + s * std::log(w)) *
                      series_2f1(c - a, c - b, 1 + s, w);
        }
    }
    return result;
}

// Beyond this the all-positive series needs more than ~1e5 terms.
constexpr real kDirectSeriesMaxZ = 0.9995L;

// 0 < z < 1, with w = 1 - z supplied separately so it keeps its relative precision.
real positive_2f1(double a, double b, double c, real z, real w)
{
    if (z <= 0.5L) {
        return series_2f1(a, b, c, z);
    }
    // With positive parameters every term is positive, so the plain sum cannot cancel; the
    // connection formulas can, badly, once a and b are large.
    if (a > 0.0 && b > 0.0 && c > 0.0 && z <= kDirectSeriesMaxZ) {
        return series_2f1(a, b, c, z);
    }
    return connection_2f1(a, b, c, w);
}

void require_positive(double x, const char* what)
{
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError(std::string(what) + ": argument must be positive and finite");
    }
}

}  // namespace

double ln_gamma(double x)
{
    require_positive(x, "ln_gamma");
    return boost::math::lgamma(x);
}

double lower_incomplete_gamma_regularized(double s, double x)
{
    require_positive(s, "lower_incomplete_gamma_regularized");
    if (!(x >= 0.0)) {
        throw DomainError("lower_incomplete_gamma_regularized: x must be nonnegative");
    }
    if (x == 0.0) {
        return 0.0;
    }
    if (std::isinf(x)) {
        return 1.0;
    }
    return boost::math::gamma_p(s, x);
}

double upper_incomplete_gamma_regularized(double s, double x)
{
    require_positive(s, "upper_incomplete_gamma_regularized");
    if (!(x >= 0.0)) {
        throw DomainError("upper_incomplete_gamma_regularized: x must be nonnegative");
    }
    if (x == 0.0) {
        return 1.0;
    }
    if (std::isinf(x)) {
        return 0.0;
    }
    return boost::math::gamma_q(s, x);
}

double beta(double a, double b)
{
    require_positive(a, "beta");
    require_positive(b, "beta");
    return boost::math::beta(a, b);
}

double gauss_2f1(double a, double b, double c, double z)
{
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(z)) {
        throw DomainError("gauss_2f1: arguments must be finite");
    }
    if (is_nonpositive_integer(c)) {
        throw DomainError("gauss_2f1: c must not be a nonpositive integer");
    }
    if (z > 1.0) {
        throw DomainError("gauss_2f1: z must not exceed 1");
    }
    if (z == 0.0 || a == 0.0 || b == 0.0) {
        return 1.0;
    }
    if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) {
        return static_cast<double>(series_2f1(a, b, c, z));
    }
    if (z == 1.0) {
        // Gauss summation.
        if (!(c - a - b > 0.0)) {
            throw DomainError("gauss_2f1: series diverges at z = 1 unless c - a - b > 0");
        }
        int s1 = 1, s2 = 1, s3 = 1, s4 = 1;
        const real v = signed_lgamma(c, s1) + signed_lgamma(c - a - b, s2) - signed_lgamma(c - a, s3) -
                       signed_lgamma(c - b, s4);
        return static_cast<double>(s1 * s2 * s3 * s4 * std::exp(v));
    }
    if (z > 0.0) {
        return static_cast<double>(positive_2f1(a, b, c, z, 1.0L - static_cast<real>(z)));
    }
    // Pfaff: F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; z/(z-1)); keep a terminating form if there is one.
    const real zl = z;
    const real w = zl / (zl - 1);
    const real wc = 1 / (1 - zl);
    const real log1mz = std::log1p(-zl);
    if (is_nonpositive_integer(c - a) && !is_nonpositive_integer(c - b)) {
        return static_cast<double>(std::exp(-b * log1mz) * positive_2f1(c - a, b, c, w, wc));
    }
    return static_cast<double>(std::exp(-a * log1mz) * positive_2f1(a, c - b, c, w, wc));
}

double gauss_2f1_complement(double a, double b, double c, double one_minus_z)
{
    if (!(one_minus_z >= 0.0)) {
        throw DomainError("gauss_2f1_complement: 1 - z must be nonnegative");
    }
    if (one_minus_z == 0.0 || one_minus_z >= 0.5 || !std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) ||
        is_nonpositive_integer(c) || a == 0.0 || b == 0.0 || is_nonpositive_integer(a) || is_nonpositive_integer(b)) {
        return gauss_2f1(a, b, c, 1.0 - one_minus_z);
    }
    const real w = one_minus_z;
    return static_cast<double>(positive_2f1(a, b, c, 1 - w, w));
}

void GGDist::validate() const
{
    if (!(a > 0.0) || !(d > 0.0) || !(p > 0.0) || !std::isfinite(a) || !std::isfinite(d) ||
        !std::isfinite(p)) {
        throw DomainError("GGDist: a, d, p must be positive and finite");
    }
}

double gg_moment(const GGDist& dist, double c)
{
    dist.validate();
    if (!(c >= 0.0)) {
        throw DomainError("gg_moment: order must be nonnegative");
    }
    if (c == 0.0) {
        return 1.0;
    }
    return std::exp(c * std::log(dist.a) + ln_gamma((dist.d + c) / dist.p) - ln_gamma(dist.gamma_shape()));
}

double gg_pdf(const GGDist& dist, double x)
{
    dist.validate();
    if (!(x >= 0.0)) {
        throw DomainError("gg_pdf: x must be nonnegative");
    }
    if (x == 0.0) {
        if (dist.d > 1.0) {
            return 0.0;
        }
        if (dist.d < 1.0) {
            return std::numeric_limits<double>::infinity();
        }
        return dist.p / (dist.a * std::exp(ln_gamma(1.0 / dist.p)));
    }
    if (std::isinf(x)) {
        return 0.0;
    }
    const double log_ratio = std::log(x / dist.a);
    const double lv = std::log(dist.p) - std::log(dist.a) + (dist.d - 1.0) * log_ratio -
                      std::exp(dist.p * log_ratio) - ln_gamma(dist.gamma_shape());
    return std::exp(lv);
}

double gg_cdf(const GGDist& dist, double x)
{
    dist.validate();
    if (!(x > 0.0)) {
        return 0.0;
    }
    return lower_incomplete_gamma_regularized(dist.gamma_shape(), std::pow(x / dist.a, dist.p));
}

double binomial(double n, int k)
{
    if (k < 0) {
        return 0.0;
    }
    double v = 1.0;
    for (int i = 0; i < k; ++i) {
        v *= (n - i) / static_cast<double>(i + 1);
    }
    return v;
}

}  // namespace afrelay
