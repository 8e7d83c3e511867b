#include "msplot/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "msplot/error.hpp"

namespace msplot {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 10000;

// Taylor coefficients of 1/Gamma(z) about 0, starting at z^1.
constexpr std::array<double, 16> kRecipGamma = {
    1.0,
    0.57721566490153286,
    -0.65587807152025388,
    -0.042002635034095236,
    0.16653861138229149,
    -0.042197734555544337,
    -0.0096219715278769736,
    0.0072189432466630995,
    -0.0011651675918590651,
    -0.00021524167411495097,
    0.00012805028238811619,
    -2.0134854780788239e-5,
    -1.2504934821426707e-6,
    1.1330272319816959e-6,
    -2.0563384169776071e-7,
    6.1160951044814158e-9,
};

// gam1 = (1/G(1-mu) - 1/G(1+mu)) / (2 mu), gam2 = (1/G(1-mu) + 1/G(1+mu)) / 2
struct TemmeGammas {
  double gam1, gam2, gampl, gammi;
};

TemmeGammas temme_gammas(double mu) {
  TemmeGammas g{};
  if (std::abs(mu) < 0.1) {
    // 1/G(1+z) = sum_k kRecipGamma[k] z^k; split into even and odd parts
    const double mu2 = mu * mu;
    double even = 0.0, odd = 0.0, pw = 1.0;
    for (std::size_t k = 0; k + 1 < kRecipGamma.size(); k += 2) {
      even += kRecipGamma[k] * pw;
      odd += kRecipGamma[k + 1] * pw;
      pw *= mu2;
    }
    g.gam2 = even;
    g.gam1 = -odd;
    g.gampl = g.gam2 - mu * g.gam1;
    g.gammi = g.gam2 + mu * g.gam1;
  } else {
    g.gampl = 1.0 / std::tgamma(1.0 + mu);
    g.gammi = 1.0 / std::tgamma(1.0 - mu);
    g.gam1 = (g.gammi - g.gampl) / (2.0 * mu);
    g.gam2 = 0.5 * (g.gammi + g.gampl);
  }
  return g;
}

// K_mu(x) and K_{mu+1}(x) for |mu| <= 1/2
void bessel_k_pair(double mu, double x, double& k_mu, double& k_mu1) {
  constexpr double pi = std::numbers::pi;
  const double mu2 = mu * mu;
  if (x < 2.0) {
    const double half = 0.5 * x;
    const double pimu = pi * mu;
    const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
    const double d = -std::log(half);
    double e = mu * d;
    const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
    const auto g = temme_gammas(mu);
    double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / g.gampl;
    double q = 0.5 / (e * g.gammi);
    double c = 1.0;
    const double dd = half * half;
    double sum1 = p;
    for (int i = 1; i <= kMaxIter; ++i) {
      const double di = static_cast<double>(i);
      ff = (di * ff + p + q) / (di * di - mu2);
      c *= dd / di;
      p /= di - mu;
      q /= di + mu;
      const double del = c * ff;
      sum += del;
      sum1 += c * (p - di * ff);
      if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    k_mu = sum;
    k_mu1 = sum1 * 2.0 / x;
    return;
  }

  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25 - mu2;
  double q = a1, c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i <= kMaxIter; ++i) {
    const double di = static_cast<double>(i);
    a -= 2.0 * (di - 1.0);
    c = -a * c / di;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  h *= a1;
  k_mu = std::sqrt(pi / (2.0 * x)) * std::exp(-x) / s;
  k_mu1 = k_mu * (mu + x + 0.5 - h) / x;
}

}  // namespace

double bessel_k(double nu, double x) {
  if (!(x > 0)) throw Error(Errc::DomainError, "K_nu(x) requires x > 0");
  if (!(nu >= 0) || !std::isfinite(nu)) throw Error(Errc::DomainError, "K_nu(x) requires finite nu >= 0");
  const int steps = static_cast<int>(nu + 0.5);
  const double mu = nu - steps;
  double k_mu = 0.0, k_mu1 = 0.0;
  bessel_k_pair(mu, x, k_mu, k_mu1);
  for (int i = 1; i <= steps; ++i) {
    const double next = (mu + i) * (2.0 / x) * k_mu1 + k_mu;
    k_mu = k_mu1;
    k_mu1 = next;
  }
  return k_mu;
}

double matern(double h, double nu, double alpha) {
  if (!(nu > 0) || !(alpha > 0)) throw Error(Errc::DomainError, "Matern parameters must be positive");
  const double r = alpha * std::abs(h);
  if (r == 0.0) return 1.0;
  const double log_scale = (1.0 - nu) * std::log(2.0) - std::lgamma(nu) + nu * std::log(r);
  return std::exp(log_scale) * bessel_k(nu, r);
}

}  // namespace msplot
