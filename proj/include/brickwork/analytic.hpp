// Copyright 2026 The brickwork Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BRICKWORK_ANALYTIC_HPP
#define BRICKWORK_ANALYTIC_HPP

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "brickwork/gates.hpp"
#include "brickwork/linalg.hpp"
#include "brickwork/superop.hpp"
#include "brickwork/tolerances.hpp"

namespace brickwork
{

// Closed-form spectrum at theta = 0, indexed 1..16.
struct AnalyticSpectrum
{
  std::array<cplx, 16> mu{};
  cplx Q;
  cplx f;
  // Easy plane only: Q^2 = lambda^2 q^2 A.
  std::optional<double> A;
  ParameterPoint point;

  cplx at(int j) const { return mu.at(static_cast<std::size_t>(j - 1)); }
  ComplexVector values() const;
  // mu_1..mu_8 for the plus sector, mu_9..mu_16 for the minus sector.
  ComplexVector sector_values(Sector s) const;
};

// lambda^2 (eps-1)^2 (q^4+1) + 2 q^2 (2 lambda^4 eps - lambda^2 (eps+1)^2 + 2 eps).
cplx q_radicand(cplx q, cplx lambda, double epsilon);

// A = 2((eps-1)^2 cos 2gamma + 4 eps cosh 2x - (eps+1)^2). A < 0 below the EP, A > 0 above.
double discriminant_A(double x, double gamma, double epsilon);

// Q = lambda q sqrt(A) on the easy plane (sqrt(A) >= 0 or i sqrt(-A)), principal sqrt of the
// radicand elsewhere.
cplx branch_Q(const ParameterPoint &p);

// mu_1..6 = 1, eps^2, eps x4; mu_9,10 = (f lambda -+ Q)/(2(lambda^2 q^2 - 1));
// mu_13,14 = (f lambda -+ Q)/(2(q^2 - lambda^2)); mu_11,12 = eps mu_9,10; mu_15,16 = eps mu_13,14;
// mu_7,8 = (Q -+ f lambda)^2 / (4 (q^2 - lambda^2)(lambda^2 q^2 - 1)).
// Throws UnsupportedAnalytic for theta != 0 and SingularGate on vanishing denominators.
AnalyticSpectrum analytic_spectrum(const ParameterPoint &p, const Tolerances &tol = {});

// Root of A = 0 in epsilon on the easy plane, when it lies in (0, 1].
// Even in x with a cusp at x = 0. Throws OutOfRange when sin(gamma) vanishes.
std::optional<double> epsilon_EP(double x, double gamma);

// Nonnegative x on the manifold for a given (epsilon, gamma), when one exists:
// cosh 2x = ((eps+1)^2 - (eps-1)^2 cos 2gamma) / (4 eps).
std::optional<double> x_EP(double epsilon, double gamma);

struct EPCertificate
{
  double discriminant = 0.0;
  double splitting = 0.0;
  double min_overlap = 1.0;
  // Second-smallest singular value of N = tau_minus - mu0, relative to |N|_2.
  // Order one when the geometric multiplicity of mu0 is one.
  double geometric_gap = 0.0;
  // Second-smallest singular value of N^2 relative to |N^2|_2; near zero for a 2x2 Jordan block.
  double nilpotent_residual = 0.0;
  bool analytic_ok = false;
  bool numeric_ok = false;
};

struct EPRecord
{
  ParameterPoint point;
  cplx mu0;
  Sector sector = Sector::Minus;
  EPCertificate certificate;
  bool certified = false;
};

// Dual check of the (9, 10) coalescence at p: |A| small AND tau_minus numerically defective.
EPRecord certify_ep(const ParameterPoint &p, const Tolerances &tol = {});

// One record per (gamma, x) grid point with eps_EP in (0, 1], sorted by (gamma, x).
// Grid points are evaluated concurrently; the output order does not depend on scheduling.
std::vector<EPRecord> ep_scan(std::span<const double> gamma_grid, std::span<const double> x_grid,
                              const Tolerances &tol = {});

// Closed-form eigenvectors at theta = 0 in the row-major vectorized basis. The arbitrary
// constants of the eps eigenspace are set to zero; e4 and e13 complete that eigenspace.
// Left vectors are columns u with u^H T = mu u^H.
struct AnalyticEigenvectors
{
  std::array<std::optional<ComplexVector>, 16> right;
  std::array<std::optional<ComplexVector>, 16> left;
  // True inside the EP collar: right[10] and the left pair 9, 10 are omitted.
  bool coalesced = false;
  // Inside the collar: g with (T - mu0) g = v9 in the least-squares sense.
  std::optional<ComplexVector> generalized;

  const std::optional<ComplexVector> &v(int j) const { return right.at(j - 1); }
  const std::optional<ComplexVector> &w(int j) const { return left.at(j - 1); }
};

// Throws UnsupportedAnalytic for theta != 0 and SingularGate for lambda^2 = 1.
AnalyticEigenvectors analytic_eigenvectors(const ParameterPoint &p, const Tolerances &tol = {});

struct SensingCoefficients
{
  cplx gamma9;
  cplx gamma10;
  cplx g_plus;
  cplx g_minus;
  cplx f_plus;
  cplx f_minus;
  // max |g_pm - 4 f_pm^2 / eps| / max(1, |g_pm|).
  double identity_residual = 0.0;
};

// f_pm = (lambda (q^2-1)(eps-1) +- Q) / (2 (lambda^2-1) q), g_pm = 4 f_pm^2 / eps,
// gamma_9 = g_-/(2(4+g_-)), gamma_10 = g_+/(2(4+g_+)) for the initial state of
// sensing_initial_state(). Throws SingularGate for lambda^2 = 1.
SensingCoefficients sensing_coefficients(const ParameterPoint &p, const Tolerances &tol = {});

// psi psi^H with psi = (1, 0, 1, 0) / sqrt(2).
ComplexMatrix sensing_initial_state();

// Unit vector e_j (1-based) of the 16-dimensional vectorized space.
ComplexVector basis_vector(int j);

}  // namespace brickwork

#endif  // BRICKWORK_ANALYTIC_HPP
