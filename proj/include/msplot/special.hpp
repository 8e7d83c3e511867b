#pragma once

namespace msplot {

/// Modified Bessel function of the second kind K_nu(x), nu >= 0, x > 0.
/// Temme's series for x < 2 and Steed's continued fraction otherwise, at
/// order |mu| <= 1/2, followed by upward recurrence to nu.
/// Throws DomainError for x <= 0 or nu < 0.
double bessel_k(double nu, double x);

/// Matern correlation 2^{1-nu} / Gamma(nu) (alpha h)^nu K_nu(alpha h);
/// equals 1 at h = 0. alpha multiplies the lag.
double matern(double h, double nu, double alpha);

}  // namespace msplot
