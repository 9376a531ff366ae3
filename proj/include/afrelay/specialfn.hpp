#pragma once

namespace afrelay {

/// Natural log of |Gamma(x)| for x > 0.
double ln_gamma(double x);

/// Regularized lower incomplete Gamma function gamma(s, x) / Gamma(s).
double lower_incomplete_gamma_regularized(double s, double x);

/// Complement of lower_incomplete_gamma_regularized, Gamma(s, x) / Gamma(s).
double upper_incomplete_gamma_regularized(double s, double x);

/// Euler Beta function B(a, b).
double beta(double a, double b);

/// Gauss hypergeometric function 2F1(a, b; c; z) for real arguments with z <= 1.
///
/// Uses the power series for 0 <= z <= 1/2, Pfaff's transformation for
/// negative z, and the connection formulas around z = 1 otherwise. When
/// c - a - b is an integer the logarithmic connection formula is used.
/// Throws DomainError for nonpositive-integer c or z > 1, and
/// ConvergenceError if a series fails to settle.
double gauss_2f1(double a, double b, double c, double z);

/// 2F1(a, b; c; 1 - w) given w directly, for arguments close to 1 where
/// forming z = 1 - w in floating point would discard most digits of w.
double gauss_2f1_complement(double a, double b, double c, double one_minus_z);

/// Generalized Gamma law with density
///   p a^{-d} x^{d-1} exp(-(x/a)^p) / Gamma(d/p),  x > 0.
/// With p = 1 it is Gamma(shape d, scale a).
struct GGDist
{
    double a = 1.0;  ///< scale
    double d = 1.0;  ///< shape
    double p = 1.0;  ///< power shape

    /// Shape of the Gamma variate (x/a)^p.
    double gamma_shape() const noexcept { return d / p; }

    /// Throws DomainError unless a, d, p are positive and finite.
    void validate() const;
};

/// E[Y^c] = a^c Gamma((d + c)/p) / Gamma(d/p), c >= 0.
double gg_moment(const GGDist& dist, double c);

double gg_pdf(const GGDist& dist, double x);

/// P(Y <= x) = P(d/p, (x/a)^p).
double gg_cdf(const GGDist& dist, double x);

/// Generalized binomial coefficient C(n, k) for real n and integer k >= 0.
double binomial(double n, int k);

}  // namespace afrelay
