// Copyright 2026 The brickwork Authors
// SPDX-License-Identifier: Apache-2.0

#include "brickwork/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "brickwork/analytic.hpp"
#include "brickwork/errors.hpp"

namespace brickwork
{

Observable observable_e3()
{
  ComplexMatrix up = ComplexMatrix::Zero(2, 2);
  up(0, 0) = 1.0;
  return {"e3", kron(pauli::plus(), up)};
}

Observable observable_e9()
{
  return {"e9", observable_e3().matrix.adjoint()};
}

Observable observable_identity()
{
  return {"identity", ComplexMatrix::Identity(4, 4)};
}

Observable observable_by_name(std::string_view name)
{
  if (name == "e3")
  {
    return observable_e3();
  }
  if (name == "e9")
  {
    return observable_e9();
  }
  if (name == "identity")
  {
    return observable_identity();
  }
  throw InvalidArgument("unknown observable '" + std::string(name) + "'");
}

cplx expectation(const ComplexMatrix &g, const ComplexMatrix &rho)
{
  if (g.rows() != rho.cols() || g.cols() != rho.rows())
  {
    throw DimensionMismatch("expectation: shapes do not compose");
  }
  return (g * rho).trace();
}

void validate_density_matrix(const ComplexMatrix &rho, const Tolerances &tol)
{
  if (rho.rows() != 4 || rho.cols() != 4)
  {
    throw InvalidState("initial state must be 4x4");
  }
  if (!rho.allFinite())
  {
    throw InvalidState("initial state has non-finite entries");
  }
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.state_validity)
  {
    throw InvalidState("initial state is not Hermitian");
  }
  if (std::abs(rho.trace() - 1.0) > tol.state_validity)
  {
    throw InvalidState("initial state does not have unit trace");
  }
  const ComplexMatrix h = 0.5 * (rho + rho.adjoint());
  const double lo = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(h).eigenvalues().minCoeff();
  if (lo < -tol.state_validity)
  {
    throw InvalidState("initial state is not positive semidefinite");
  }
}

std::vector<ComplexMatrix> evolve(const Superoperator &s, const ComplexMatrix &rho0,
                                  std::size_t n_max, const Tolerances &tol)
{
  validate_density_matrix(rho0, tol);
  std::vector<ComplexMatrix> out;
  out.reserve(n_max + 1);
  ComplexVector v = vectorize(rho0);
  out.push_back(rho0);
  for (std::size_t n = 1; n <= n_max; ++n)
  {
    v = s.T * v;
    out.push_back(devectorize(v));
    if (s.cptp_guaranteed)
    {
      const ComplexMatrix &r = out.back();
      if (std::abs(r.trace() - 1.0) > 1e-11 || (r - r.adjoint()).cwiseAbs().maxCoeff() > 1e-11)
      {
        throw NumericalFailure("evolve: trace or Hermiticity drift at step " +
                               std::to_string(n));
      }
    }
  }
  return out;
}

ComplexMatrix matrix_power(const ComplexMatrix &T, std::size_t n)
{
  require_square(T, "matrix_power");
  ComplexMatrix result = ComplexMatrix::Identity(T.rows(), T.cols());
  ComplexMatrix base = T;
  while (n > 0)
  {
    if (n & 1U)
    {
      result = result * base;
    }
    n >>= 1U;
    if (n > 0)
    {
      base = base * base;
    }
  }
  return result;
}

ComplexMatrix evolve_power(const Superoperator &s, const ComplexMatrix &rho0, std::size_t n,
                           const Tolerances &tol)
{
  validate_density_matrix(rho0, tol);
  return devectorize(matrix_power(s.T, n) * vectorize(rho0));
}

std::string_view to_string(EPRegime r)
{
  switch (r)
  {
    case EPRegime::BelowEP:
      return "BelowEP";
    case EPRegime::AtEP:
      return "AtEP";
    case EPRegime::AboveEP:
      return "AboveEP";
    case EPRegime::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

cplx default_mu_rescale(const Superoperator &s, const Tolerances &tol)
{
  if (s.point.theta() == 0.0)
  {
    const AnalyticSpectrum spec = analytic_spectrum(s.point, tol);
    return std::abs(spec.at(9)) >= std::abs(spec.at(10)) ? spec.at(9) : spec.at(10);
  }
  const ComplexVector mu = eigenvalues(s.tau_minus);
  Index k = 0;
  mu.cwiseAbs().maxCoeff(&k);
  return mu(k);
}

namespace
{

bool inside_ep_collar(const ParameterPoint &p, const Tolerances &tol)
{
  const auto r = analytic_regime(p, tol);
  return r && *r == EPRegime::AtEP;
}

}  // namespace

TrajectoryRecord observable_series(const Superoperator &s, const ComplexMatrix &rho0,
                                   const Observable &g, std::size_t n_max,
                                   std::optional<cplx> mu_rescale, const Tolerances &tol)
{
  validate_density_matrix(rho0, tol);
  if (g.matrix.rows() != 4 || g.matrix.cols() != 4)
  {
    throw DimensionMismatch("observable must be 4x4");
  }
  TrajectoryRecord rec;
  rec.n_max = n_max;
  rec.observable = g.label;
  rec.initial_state = rho0;
  rec.mu_rescale = mu_rescale ? *mu_rescale : default_mu_rescale(s, tol);

  // Tr(g rho) = vec(g^T) . vec(rho) under row-major stacking.
  const ComplexVector probe = vectorize(g.matrix.transpose());
  ComplexVector v = vectorize(rho0);
  rec.values.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n)
  {
    if (n > 0)
    {
      v = s.T * v;
    }
    rec.values.push_back(probe.transpose() * v);
  }

  const double inv = 1.0 / std::abs(rec.mu_rescale);
  rec.rescaled.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n)
  {
    rec.rescaled.push_back(std::pow(inv, static_cast<double>(n)) * std::abs(rec.values[n]));
  }

  if (inside_ep_collar(s.point, tol))
  {
    return rec;
  }
  const EigenSystem es = eig_general(s.T, tol);
  if (es.near_defective)
  {
    return rec;
  }
  // <g[n]> = sum_j mu_j^n (w_j^H vec rho0) (probe . v_j).
  const ComplexVector x0 = vectorize(rho0);
  const ComplexVector weights =
      (es.left.adjoint() * x0).cwiseProduct(es.right.transpose() * probe);
  ComplexVector powers = ComplexVector::Ones(es.dim);
  double peak = 0.0;
  double worst = 0.0;
  for (std::size_t n = 0; n <= n_max; ++n)
  {
    if (n > 0)
    {
      powers = powers.cwiseProduct(es.eigenvalues);
    }
    const cplx approx = (powers.array() * weights.array()).sum();
    worst = std::max(worst, std::abs(approx - rec.values[n]));
    peak = std::max(peak, std::abs(rec.values[n]));
  }
  rec.expansion_checked = true;
  rec.expansion_error = peak > 0.0 ? worst / peak : worst;
  if (rec.expansion_error > tol.expansion_agreement)
  {
    throw NumericalFailure("biorthogonal expansion disagrees with direct evolution by " +
                           std::to_string(rec.expansion_error));
  }
  return rec;
}

std::vector<double> jordan_growth(cplx mu0, const ComplexVector &psi, std::size_t n_max)
{
  if (mu0 == 0.0)
  {
    throw InvalidArgument("jordan_growth: mu0 must be nonzero");
  }
  if (psi.size() != 2)
  {
    throw DimensionMismatch("jordan_growth: psi must have two components");
  }
  // y_n = mu0^{-n} B^n psi obeys y_{n+1} = [[1, 1/mu0], [0, 1]] y_n.
  const cplx step = 1.0 / mu0;
  cplx a = psi(0);
  const cplx b = psi(1);
  std::vector<double> out;
  out.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n)
  {
    if (n > 0)
    {
      a += step * b;
    }
    out.push_back(std::sqrt(std::norm(a) + std::norm(b)));
  }
  return out;
}

std::optional<EPRegime> analytic_regime(const ParameterPoint &p, const Tolerances &tol)
{
  if (p.theta() != 0.0 || p.regime() != Regime::EasyPlane || std::abs(std::sin(p.gamma())) < 1e-12)
  {
    return std::nullopt;
  }
  const auto eps_ep = epsilon_EP(p.x(), p.gamma());
  if (eps_ep && std::abs(p.epsilon() - *eps_ep) < tol.ep_collar)
  {
    return EPRegime::AtEP;
  }
  const double a = discriminant_A(p.x(), p.gamma(), p.epsilon());
  if (a < 0.0)
  {
    return EPRegime::BelowEP;
  }
  if (a > 0.0)
  {
    return EPRegime::AboveEP;
  }
  return EPRegime::AtEP;
}

RegimeClassification classify_regime(const ParameterPoint &p, const TrajectoryRecord &series,
                                     const Tolerances &tol)
{
  RegimeClassification c;
  c.analytic_regime = analytic_regime(p, tol);
  if (series.n_max < 200 || series.rescaled.size() != series.n_max + 1)
  {
    c.message = "series too short: n_max must be at least 200";
    return c;
  }
  const std::size_t start = series.n_max / 2;
  const std::size_t len = series.n_max + 1 - start;
  const auto first = series.rescaled.begin() + static_cast<std::ptrdiff_t>(start);
  const auto last = series.rescaled.end();
  const auto [lo, hi] = std::minmax_element(first, last);
  double mean = 0.0;
  double nbar = 0.0;
  for (std::size_t k = 0; k < len; ++k)
  {
    mean += first[static_cast<std::ptrdiff_t>(k)];
    nbar += static_cast<double>(start + k);
  }
  mean /= static_cast<double>(len);
  nbar /= static_cast<double>(len);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < len; ++k)
  {
    const double dx = static_cast<double>(start + k) - nbar;
    const double dy = first[static_cast<std::ptrdiff_t>(k)] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  c.peak_to_peak = *hi - *lo;
  c.drift = mean != 0.0 ? c.peak_to_peak / std::abs(mean) : 0.0;
  c.slope = sxy / sxx;
  c.intercept = mean - c.slope * nbar;
  c.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  const auto mid = first + static_cast<std::ptrdiff_t>(len / 2);
  const double early = *std::max_element(first, mid);
  const double late = *std::max_element(mid, last);
  c.growth_ratio = early > 0.0 ? late / early : 0.0;
  c.trend = c.peak_to_peak > 0.0
                ? std::abs(c.slope) * static_cast<double>(len - 1) / c.peak_to_peak
                : 0.0;

  if (c.drift < tol.below_ep_drift)
  {
    c.series_regime = EPRegime::BelowEP;
  }
  else if (c.r_squared > tol.at_ep_r_squared && c.slope > 0.0)
  {
    c.series_regime = EPRegime::AtEP;
  }
  else if (c.peak_to_peak > 0.0 && c.growth_ratio <= tol.above_ep_growth &&
           c.trend <= tol.above_ep_trend)
  {
    c.series_regime = EPRegime::AboveEP;
  }

  std::ostringstream msg;
  msg << "series " << to_string(c.series_regime);
  if (c.analytic_regime)
  {
    msg << ", analytic " << to_string(*c.analytic_regime);
    c.consistent = c.series_regime == *c.analytic_regime;
  }
  else
  {
    msg << ", analytic unavailable";
    c.consistent = c.series_regime != EPRegime::Inconclusive;
  }
  c.regime = c.consistent ? c.series_regime : EPRegime::Inconclusive;
  if (!c.consistent)
  {
    msg << "; reported Inconclusive";
  }
  c.message = msg.str();
  return c;
}

ProbeResult sensitivity_probe(const ParameterPoint &p, double delta, const Observable &g,
                              const ComplexMatrix &rho0, std::size_t n_max, const Tolerances &tol)
{
  const double e0 = p.epsilon();
  if (!(delta >= 0.0) || !(e0 - delta > 0.0) || !(e0 + delta <= 1.0))
  {
    throw OutOfRange("sensitivity_probe: eps0 +- delta must stay in (0, 1]");
  }
  auto run = [&](double e)
  {
    const ParameterPoint pe = p.with_epsilon(e);
    TrajectoryRecord r =
        observable_series(build_superoperator(pe, tol), rho0, g, n_max, std::nullopt, tol);
    r.classification = classify_regime(pe, r, tol);
    return r;
  };
  ProbeResult out;
  out.delta = delta;
  out.center = run(e0);
  out.plus = run(e0 + delta);
  out.minus = run(e0 - delta);
  return out;
}

}  // namespace brickwork
