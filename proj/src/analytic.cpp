// Copyright 2026 The brickwork Authors
// SPDX-License-Identifier: Apache-2.0

#include "brickwork/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "brickwork/errors.hpp"
#include "brickwork/parallel.hpp"

namespace brickwork
{

ComplexVector AnalyticSpectrum::values() const
{
  return Eigen::Map<const ComplexVector>(mu.data(), 16);
}

ComplexVector AnalyticSpectrum::sector_values(Sector s) const
{
  return Eigen::Map<const ComplexVector>(mu.data() + (s == Sector::Plus ? 0 : 8), 8);
}

cplx q_radicand(cplx q, cplx lambda, double epsilon)
{
  const cplx q2 = q * q;
  const cplx l2 = lambda * lambda;
  const double e = epsilon;
  return l2 * (e - 1.0) * (e - 1.0) * (q2 * q2 + 1.0) +
         2.0 * q2 * (2.0 * l2 * l2 * e - l2 * (e + 1.0) * (e + 1.0) + 2.0 * e);
}

double discriminant_A(double x, double gamma, double epsilon)
{
  const double e = epsilon;
  return 2.0 * ((e - 1.0) * (e - 1.0) * std::cos(2.0 * gamma) + 4.0 * e * std::cosh(2.0 * x) -
                (e + 1.0) * (e + 1.0));
}

cplx branch_Q(const ParameterPoint &p)
{
  if (p.regime() == Regime::EasyPlane)
  {
    const double a = discriminant_A(p.x(), p.gamma(), p.epsilon());
    const cplx root = a >= 0.0 ? cplx(std::sqrt(a), 0.0) : cplx(0.0, std::sqrt(-a));
    return p.lambda() * p.q() * root;
  }
  return std::sqrt(q_radicand(p.q(), p.lambda(), p.epsilon()));
}

namespace
{

void require_superintegrable(const ParameterPoint &p, const char *what)
{
  if (p.theta() != 0.0)
  {
    throw UnsupportedAnalytic(std::string(what) + " has closed forms only for theta = 0");
  }
  // The closed forms use conj(U(q, lambda)) = U(1/q, 1/lambda), true only where U is unitary.
  if (!p.unitary_regime())
  {
    throw UnsupportedAnalytic(std::string(what) + " has closed forms only in the unitary regimes");
  }
}

void require_lambda_not_unit(const ParameterPoint &p, const Tolerances &tol)
{
  if (std::abs(p.lambda() * p.lambda() - 1.0) < tol.singular_denominator)
  {
    throw SingularGate("lambda^2 - 1 vanishes");
  }
}

}  // namespace

AnalyticSpectrum analytic_spectrum(const ParameterPoint &p, const Tolerances &tol)
{
  require_superintegrable(p, "analytic_spectrum");
  build_gate_U(p, tol);
  const cplx q2 = p.q() * p.q();
  const cplx lam = p.lambda();
  const cplx l2 = lam * lam;
  const double e = p.epsilon();

  AnalyticSpectrum s;
  s.point = p;
  s.f = (q2 - 1.0) * (e + 1.0);
  s.Q = branch_Q(p);
  if (p.regime() == Regime::EasyPlane)
  {
    s.A = discriminant_A(p.x(), p.gamma(), e);
  }
  const cplx fl = s.f * lam;
  const cplx r = l2 * q2 - 1.0;
  const cplx t = q2 - l2;
  auto &mu = s.mu;
  mu[0] = 1.0;
  mu[1] = e * e;
  mu[2] = mu[3] = mu[4] = mu[5] = e;
  mu[6] = (s.Q - fl) * (s.Q - fl) / (4.0 * t * r);
  mu[7] = (s.Q + fl) * (s.Q + fl) / (4.0 * t * r);
  mu[8] = (fl - s.Q) / (2.0 * r);
  mu[9] = (fl + s.Q) / (2.0 * r);
  mu[10] = e * mu[8];
  mu[11] = e * mu[9];
  mu[12] = (fl - s.Q) / (2.0 * t);
  mu[13] = (fl + s.Q) / (2.0 * t);
  mu[14] = e * mu[12];
  mu[15] = e * mu[13];
  return s;
}

std::optional<double> epsilon_EP(double x, double gamma)
{
  const double s = std::sin(gamma);
  if (std::abs(s) < 1e-12)
  {
    throw OutOfRange("epsilon_EP: sin(gamma) vanishes");
  }
  // A = 0 is eps^2 - 2 B eps + 1 = 0 with B = 1 + 2 sinh^2(x) / sin^2(gamma). The roots
  // multiply to one; the smaller is taken in the cancellation-free form 1 / (B + sqrt(B^2 - 1)).
  const double sh = std::sinh(x);
  const double bm1 = 2.0 * sh * sh / (s * s);
  const double value = 1.0 / (1.0 + bm1 + std::sqrt(bm1 * (bm1 + 2.0)));
  if (!(value > 0.0 && value <= 1.0))
  {
    return std::nullopt;
  }
  return value;
}

std::optional<double> x_EP(double epsilon, double gamma)
{
  require_epsilon(epsilon);
  const double rhs = ((epsilon + 1.0) * (epsilon + 1.0) -
                      (epsilon - 1.0) * (epsilon - 1.0) * std::cos(2.0 * gamma)) /
                     (4.0 * epsilon);
  if (rhs < 1.0)
  {
    return std::nullopt;
  }
  return 0.5 * std::acosh(rhs);
}

namespace
{

// k-th smallest singular value (k = 1 is the smallest).
double kth_smallest_singular(const ComplexMatrix &m, Index k)
{
  const RealVector sv = Eigen::JacobiSVD<ComplexMatrix>(m).singularValues();
  return sv(sv.size() - k);
}

}  // namespace

EPRecord certify_ep(const ParameterPoint &p, const Tolerances &tol)
{
  const AnalyticSpectrum spec = analytic_spectrum(p, tol);
  const Superoperator s = build_superoperator(p, tol);

  EPRecord rec;
  rec.point = p;
  rec.sector = Sector::Minus;
  rec.mu0 = 0.5 * (spec.at(9) + spec.at(10));
  auto &cert = rec.certificate;
  cert.discriminant = spec.A.value_or(std::abs(spec.Q));
  cert.analytic_ok = std::abs(cert.discriminant) <= tol.ep_discriminant;

  const EigenSystem es = eig_general(s.tau_minus, tol);
  std::vector<Index> order(8);
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(),
            [&](Index i, Index j)
            {
              return std::abs(es.eigenvalues(i) - rec.mu0) < std::abs(es.eigenvalues(j) - rec.mu0);
            });
  cert.splitting = std::abs(es.eigenvalues(order[0]) - es.eigenvalues(order[1]));
  cert.min_overlap = std::min(es.overlap(order[0]), es.overlap(order[1]));

  const ComplexMatrix n = s.tau_minus - rec.mu0 * ComplexMatrix::Identity(8, 8);
  const ComplexMatrix n2 = n * n;
  cert.geometric_gap = kth_smallest_singular(n, 2) / std::max(spectral_norm(n), 1e-300);
  cert.nilpotent_residual = kth_smallest_singular(n2, 2) / std::max(spectral_norm(n2), 1e-300);
  cert.numeric_ok = cert.splitting <= tol.ep_coalescence && cert.min_overlap < tol.defect_overlap;
  rec.certified = cert.analytic_ok && cert.numeric_ok;
  return rec;
}

std::vector<EPRecord> ep_scan(std::span<const double> gamma_grid, std::span<const double> x_grid,
                              const Tolerances &tol)
{
  std::vector<double> gammas(gamma_grid.begin(), gamma_grid.end());
  std::vector<double> xs(x_grid.begin(), x_grid.end());
  std::sort(gammas.begin(), gammas.end());
  std::sort(xs.begin(), xs.end());
  for (const double g : gammas)
  {
    if (std::abs(std::sin(g)) < 1e-12)
    {
      throw OutOfRange("ep_scan: gamma = " + std::to_string(g) + " makes sin(gamma) vanish");
    }
  }
  const std::size_t total = gammas.size() * xs.size();
  std::vector<std::optional<EPRecord>> slots(total);
  parallel_for(total,
               [&](std::size_t k)
               {
                 const double g = gammas[k / xs.size()];
                 const double x = xs[k % xs.size()];
                 if (const auto e = epsilon_EP(x, g))
                 {
                   slots[k] = certify_ep(ParameterPoint::easy_plane(x, g, *e), tol);
                 }
               });
  std::vector<EPRecord> out;
  for (auto &slot : slots)
  {
    if (slot)
    {
      out.push_back(std::move(*slot));
    }
  }
  return out;
}

ComplexVector basis_vector(int j)
{
  if (j < 1 || j > 16)
  {
    throw OutOfRange("basis_vector index must be in 1..16");
  }
  ComplexVector v = ComplexVector::Zero(16);
  v(j - 1) = 1.0;
  return v;
}

ComplexMatrix sensing_initial_state()
{
  ComplexVector psi = ComplexVector::Zero(4);
  psi(0) = psi(2) = 1.0 / std::sqrt(2.0);
  return psi * psi.adjoint();
}

namespace
{

cplx f_pm(const ParameterPoint &p, cplx Q, double sign)
{
  const cplx q = p.q();
  const cplx lam = p.lambda();
  const double e = p.epsilon();
  return (lam * (q * q - 1.0) * (e - 1.0) + sign * Q) / (2.0 * (lam * lam - 1.0) * q);
}

// Fills the e14, e15 components of a left row r = base + a e14 + b e15 so that r (T - mu) = 0.
ComplexVector complete_left_row(const ComplexMatrix &T, cplx mu, const ComplexVector &base,
                                const Tolerances &tol)
{
  const ComplexMatrix b = (T - mu * ComplexMatrix::Identity(16, 16)).transpose();
  ComplexMatrix cols(16, 2);
  cols.col(0) = b.col(13);
  cols.col(1) = b.col(14);
  const ComplexVector rhs = -(b * base);
  const ComplexVector y = cols.colPivHouseholderQr().solve(rhs);
  ComplexVector r = base;
  r(13) += y(0);
  r(14) += y(1);
  const double residual = (b * r).norm();
  if (residual > tol.eig_residual * std::max(1.0, T.norm()) * r.norm())
  {
    throw NumericalFailure("left eigenvector completion failed: residual " +
                           std::to_string(residual));
  }
  return r;
}

}  // namespace

AnalyticEigenvectors analytic_eigenvectors(const ParameterPoint &p, const Tolerances &tol)
{
  require_superintegrable(p, "analytic_eigenvectors");
  require_lambda_not_unit(p, tol);
  const AnalyticSpectrum spec = analytic_spectrum(p, tol);
  const cplx q = p.q();
  const cplx lam = p.lambda();
  const cplx q2 = q * q;
  const cplx l2 = lam * lam;
  const double e = p.epsilon();
  const cplx Q = spec.Q;
  auto E = basis_vector;

  AnalyticEigenvectors out;
  if (p.regime() == Regime::EasyPlane)
  {
    const auto eps_ep = epsilon_EP(p.x(), p.gamma());
    out.coalesced = eps_ep && std::abs(e - *eps_ep) < tol.ep_collar;
  }
  else
  {
    out.coalesced = std::abs(Q) < 1e-8 * std::max(1.0, std::abs(spec.f * lam));
  }

  const cplx F = (1.0 - q2) * (e - 1.0) * lam / (q * (l2 - 1.0));
  const cplx c9 = (Q - lam * (q2 - 1.0) * (e - 1.0)) / (2.0 * (l2 - 1.0) * q * e);
  auto &v = out.right;
  v[0] = E(1);
  v[1] = ComplexVector(E(1) - E(6) - E(11) + E(16));
  v[2] = ComplexVector((1.0 + e) * E(1) - e * E(6) + F * E(10) - E(11));
  v[3] = E(4);
  v[4] = ComplexVector((1.0 + e) * E(1) - e * E(6) - F * E(7) - E(11));
  v[5] = E(13);
  v[8] = ComplexVector(E(5) - c9 * E(9));
  v[12] = ComplexVector(E(2) + c9 * E(3));
  v[13] = ComplexVector(*v[12] + Q / (q * e * (1.0 - l2)) * E(3));

  const Superoperator s = build_superoperator(p, tol);
  if (out.coalesced)
  {
    const cplx mu0 = 0.5 * (spec.at(9) + spec.at(10));
    const ComplexMatrix n = s.T - mu0 * ComplexMatrix::Identity(16, 16);
    out.generalized = n.completeOrthogonalDecomposition().solve(*v[8]);
    return out;
  }
  v[9] = ComplexVector(*v[8] + Q / ((l2 - 1.0) * q * e) * E(9));

  const cplx fm = f_pm(p, Q, -1.0);
  const cplx fp = f_pm(p, Q, +1.0);
  const ComplexVector r15 = q * (l2 - 1.0) / Q * (E(14) - fm * E(15));
  const ComplexVector r16 = -q * (l2 - 1.0) / Q * (E(14) - fp * E(15));
  const ComplexVector r9 =
      complete_left_row(s.T, spec.at(9), (E(5) + fm * E(9)) / (1.0 + fm * fm / e), tol);
  const ComplexVector r10 =
      complete_left_row(s.T, spec.at(10), (E(5) + fp * E(9)) / (1.0 + fp * fp / e), tol);
  out.left[8] = ComplexVector(r9.conjugate());
  out.left[9] = ComplexVector(r10.conjugate());
  out.left[14] = ComplexVector(r15.conjugate());
  out.left[15] = ComplexVector(r16.conjugate());
  return out;
}

SensingCoefficients sensing_coefficients(const ParameterPoint &p, const Tolerances &tol)
{
  require_superintegrable(p, "sensing_coefficients");
  require_lambda_not_unit(p, tol);
  build_gate_U(p, tol);
  const cplx q = p.q();
  const cplx lam = p.lambda();
  const double e = p.epsilon();
  const cplx Q = branch_Q(p);
  const cplx base = lam * (q * q - 1.0) * (e - 1.0);
  const cplx den = (lam * lam - 1.0) * (lam * lam - 1.0) * q * q * e;

  SensingCoefficients c;
  c.f_plus = f_pm(p, Q, +1.0);
  c.f_minus = f_pm(p, Q, -1.0);
  c.g_plus = (base + Q) * (base + Q) / den;
  c.g_minus = (base - Q) * (base - Q) / den;
  c.gamma9 = c.g_minus / (2.0 * (4.0 + c.g_minus));
  c.gamma10 = c.g_plus / (2.0 * (4.0 + c.g_plus));
  c.identity_residual =
      std::max(std::abs(c.g_plus - 4.0 * c.f_plus * c.f_plus / e) / std::max(1.0, std::abs(c.g_plus)),
               std::abs(c.g_minus - 4.0 * c.f_minus * c.f_minus / e) /
                   std::max(1.0, std::abs(c.g_minus)));
  return c;
}

}  // namespace brickwork
