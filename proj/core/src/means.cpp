#include "gini/means.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gini/tolerances.hpp"
#include "summation.hpp"

namespace gini {
namespace {

void require_params(ParamPair params) {
  if (!params.finite()) throw DomainError("Gini parameters must be finite");
}

void require_positive(double t, const char* what) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError(std::string(what) + " must be positive and finite");
}

std::vector<double> sorted_sample(std::span<const double> x) {
  if (x.empty()) throw DomainError("sample must be non-empty");
  std::vector<double> out(x.begin(), x.end());
  for (double v : out) require_positive(v, "sample entries");
  std::sort(out.begin(), out.end());
  return out;
}

// log sum_i exp(e * b_i)
double log_sum_exp(double e, std::span<const double> b) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : b) hi = std::max(hi, e * v);
  if (!std::isfinite(hi)) throw DomainError("log-sum-exp argument overflow");
  detail::CompensatedSum acc;
  for (double v : b) acc.add(std::exp(e * v - hi));
  return hi + std::log(acc.value());
}

// softmax(e * b)
std::vector<double> softmax(double e, std::span<const double> b) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : b) hi = std::max(hi, e * v);
  if (!std::isfinite(hi)) throw DomainError("softmax argument overflow");
  std::vector<double> w(b.size());
  detail::CompensatedSum acc;
  for (std::size_t i = 0; i < b.size(); ++i) {
    w[i] = std::exp(e * b[i] - hi);
    acc.add(w[i]);
  }
  const double z = acc.value();
  for (double& v : w) v /= z;
  return w;
}

}  // namespace

double gini_mean(ParamPair params, std::span<const double> x) {
  require_params(params);
  const std::vector<double> xs = sorted_sample(x);
  const double lo = xs.front();
  const double hi = xs.back();
  if (lo == hi) return lo;

  // Work with b_i = ln x_i - shift, centred so that |b_i| <= half_span.
  const double log_lo = std::log(lo);
  const double log_hi = std::log(hi);
  const double shift = 0.5 * (log_lo + log_hi);
  const double half_span = 0.5 * (log_hi - log_lo);
  std::vector<double> b(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) b[i] = std::log(xs[i]) - shift;

  const double p = params.p;
  const double q = params.q;
  double log_mean = 0.0;
  if (p == q) {
    const std::vector<double> w = softmax(p, b);
    detail::CompensatedSum acc;
    for (std::size_t i = 0; i < b.size(); ++i) acc.add(w[i] * b[i]);
    log_mean = acc.value();
  } else {
    const double mid = 0.5 * (p + q);
    const double half = 0.5 * (p - q);
    if (std::abs(half) * half_span <= 1.0) {
      // Near the diagonal: ln(sum w e^{d b}) - ln(sum w e^{-d b}) with
      // w = softmax(mid * b), expanded through expm1/log1p.
      const std::vector<double> w = softmax(mid, b);
      detail::CompensatedSum up;
      detail::CompensatedSum down;
      for (std::size_t i = 0; i < b.size(); ++i) {
        up.add(w[i] * std::expm1(half * b[i]));
        down.add(w[i] * std::expm1(-half * b[i]));
      }
      log_mean = (std::log1p(up.value()) - std::log1p(down.value())) / (p - q);
    } else {
      log_mean = (log_sum_exp(p, b) - log_sum_exp(q, b)) / (p - q);
    }
  }
  if (!std::isfinite(log_mean)) throw DomainError("Gini mean evaluation overflow");

  // The mean lies in [min, max]; rounding may push it a few ulps outside.
  return std::clamp(std::exp(shift + log_mean), lo, hi);
}

double chi(ParamPair params, double t) {
  require_params(params);
  require_positive(t, "chi argument");
  const double log_t = std::log(t);
  if (params.p == params.q) return std::pow(t, params.p) * log_t;
  const double lo = std::min(params.p, params.q);
  const double hi = std::max(params.p, params.q);
  const double gap = hi - lo;
  // Factor out the dominant power so expm1 sees a non-positive argument.
  if (log_t > 0.0) return -std::pow(t, hi) * std::expm1(-gap * log_t) / gap;
  return std::pow(t, lo) * std::expm1(gap * log_t) / gap;
}

double chi_prime(ParamPair params, double t) {
  require_params(params);
  require_positive(t, "chi_prime argument");
  const double log_t = std::log(t);
  if (params.p == params.q) return std::pow(t, params.p - 1.0) * (params.p * log_t + 1.0);
  // (p t^{p-1} - q t^{q-1}) / (p - q)
  //   = t^{lo-1} (1 + hi * expm1(gap ln t) / gap)    for t <= 1
  //   = t^{hi-1} (1 - lo * expm1(-gap ln t) / gap)   for t > 1
  const double lo = std::min(params.p, params.q);
  const double hi = std::max(params.p, params.q);
  const double gap = hi - lo;
  if (log_t > 0.0) return std::pow(t, hi - 1.0) * (1.0 - lo * std::expm1(-gap * log_t) / gap);
  return std::pow(t, lo - 1.0) * (1.0 + hi * std::expm1(gap * log_t) / gap);
}

double lambda_fn(double u, double v) {
  if (u >= 0.0 && v >= 0.0) return std::min(u, v);
  if (u <= 0.0 && v <= 0.0) return std::max(u, v);
  return 0.0;
}

double mu_fn(double u, double v) {
  if (u != v) return (std::abs(u) - std::abs(v)) / (u - v);
  return static_cast<double>((u > 0.0) - (u < 0.0));
}

ChiSignSum sign_sum_chi(ParamPair params, double t, std::span<const double> x) {
  require_positive(t, "comparison point");
  const std::vector<double> xs = sorted_sample(x);
  detail::CompensatedSum sum;
  detail::CompensatedSum mag;
  for (double v : xs) {
    const double c = chi(params, v / t);
    sum.add(c);
    mag.add(std::abs(c));
  }
  ChiSignSum out;
  out.sum = sum.value();
  out.magnitude = mag.value();
  if (std::abs(out.sum) > tol::sign_band(out.magnitude)) out.sign = out.sum > 0.0 ? 1 : -1;
  return out;
}

MeanComparison compare_means(const ComparisonQuad& quad, std::span<const double> x) {
  MeanComparison out;
  out.lhs = gini_mean(quad.lower, x);
  out.rhs = gini_mean(quad.upper, x);
  const tol::Cmp c = tol::compare_le(out.lhs, out.rhs);
  out.violated = c == tol::Cmp::Fails;
  out.boundary = c == tol::Cmp::Boundary;
  return out;
}

}  // namespace gini
