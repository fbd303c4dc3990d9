#include "brdlab/lemma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "brdlab/errors.hpp"

namespace brdlab {

namespace {

void check_lemma_params(const LemmaParams& p) {
  if (p.mu < 1) throw ValidationError("mu must be at least 1");
  if (!(p.alpha >= 1.0)) throw ValidationError("alpha must be at least 1");
  if (!(p.beta >= 0.0)) throw ValidationError("beta must be nonnegative");
  if (!(p.phi >= 1.0)) throw ValidationError("phi must be at least 1");
}

}  // namespace

double lemma_bound_rhs(const LemmaParams& p) {
  check_lemma_params(p);
  const double mu = static_cast<double>(p.mu);
  return p.phi * p.alpha * (p.beta + 1.0) * mu * std::log(mu) + 1.0;
}

void McAccumulator::add(double x) {
  ++count_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
}

void McAccumulator::merge(const McAccumulator& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double delta = other.mean_ - mean_;
  mean_ += delta * nb / (na + nb);
  m2_ += other.m2_ + delta * delta * na * nb / (na + nb);
  count_ += other.count_;
}

double McAccumulator::sample_variance() const {
  if (count_ < 2) return 0.0;
  return m2_ / static_cast<double>(count_ - 1);
}

double McAccumulator::stderr_of_mean() const {
  if (count_ < 1) return 0.0;
  return std::sqrt(sample_variance() / static_cast<double>(count_));
}

McEstimate lemma_mc_estimate(const LemmaParams& p, const PhiSmoothFamily& family, std::int64_t trials,
                             std::uint64_t seed) {
  check_lemma_params(p);
  if (trials < 1000) throw ValidationError("trials must be at least 1000");
  const double mu_beta = std::pow(static_cast<double>(p.mu), p.beta);

  McAccumulator acc;
  for (std::int64_t t = 0; t < trials; ++t) {
    // Trial t draws mu variables from stream (seed, t); pairing two estimates
    // on the same seed couples them draw for draw.
    CounterRng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    double min_x = 1.0;
    for (std::int64_t i = 0; i < p.mu; ++i) {
      min_x = std::min(min_x, sample_phi_smooth(family, rng));
    }
    const double ratio = min_x > 0.0 ? p.alpha / min_x : std::numeric_limits<double>::infinity();
    acc.add(std::min(ratio, mu_beta));
  }
  return {acc.mean(), acc.stderr_of_mean(), acc.count()};
}

LemmaParams bound_query_params(const BoundQuery& q) {
  if (q.n < 1 || q.m < 1) throw ValidationError("n and m must be positive");
  if (!(q.epsilon > 0.0)) throw ValidationError("epsilon must be positive");
  if (!(q.phi >= 1.0)) throw ValidationError("phi must be at least 1");
  const double inv = 1.0 + 1.0 / q.epsilon;
  const double n = q.n;
  const double m = q.m;

  auto log_beta = [&](std::int64_t mu) {
    if (mu < 2) {
      throw ValidationError("beta substitution needs at least 2 perturbed parameters (got " +
                            std::to_string(mu) + "); the bound is undefined below that");
    }
    return m * std::log(n + 1.0) / std::log(static_cast<double>(mu));
  };

  LemmaParams p;
  p.phi = q.phi;
  switch (q.model) {
    case ModelKind::Tabular: {
      p.mu = static_cast<std::int64_t>(q.n) * q.m;
      p.alpha = inv * n * m;
      p.beta = m;
      break;
    }
    case ModelKind::StepFunction: {
      p.mu = q.total_breaks;
      p.alpha = inv * n * static_cast<double>(q.total_breaks);
      p.beta = log_beta(p.mu);
      break;
    }
    case ModelKind::Polynomial: {
      p.mu = q.total_terms;
      p.alpha = inv * static_cast<double>(q.total_terms) * std::pow(n, q.degree + 1.0);
      p.beta = log_beta(p.mu);
      break;
    }
    case ModelKind::CostSharing: {
      p.mu = q.m;
      p.alpha = inv * n * m * harmonic_number(q.n);
      p.beta = log_beta(p.mu);
      break;
    }
  }
  return p;
}

IterationBound iteration_bound(const BoundQuery& q) {
  const LemmaParams p = bound_query_params(q);
  IterationBound out;
  out.exhaustive_cap = std::pow(static_cast<double>(q.n) + 1.0, static_cast<double>(q.m));
  out.smoothed_bound = lemma_bound_rhs(p);
  return out;
}

double eq9_realized_cap(int n, int m, double epsilon, double min_cost) {
  if (!(epsilon > 0.0)) throw ValidationError("epsilon must be positive");
  if (!(min_cost > 0.0)) throw ValidationError("min cost must be positive");
  const double ratio = (1.0 + 1.0 / epsilon) * static_cast<double>(n) * static_cast<double>(m) / min_cost;
  const double loads = std::pow(static_cast<double>(n) * static_cast<double>(m), static_cast<double>(m));
  return std::min(ratio, loads);
}

}  // namespace brdlab
