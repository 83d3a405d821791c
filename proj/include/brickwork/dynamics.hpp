// Copyright 2026 The brickwork Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BRICKWORK_DYNAMICS_HPP
#define BRICKWORK_DYNAMICS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "brickwork/gates.hpp"
#include "brickwork/linalg.hpp"
#include "brickwork/superop.hpp"
#include "brickwork/tolerances.hpp"

namespace brickwork
{

struct Observable
{
  std::string label;
  ComplexMatrix matrix;
};

// |up up><down up| = sigma_plus (x) (I + sigma_z) / 2; its row-major vectorization is e3,
// so <e3[n]> = Tr(e3 rho[n]) reads the e9 component of vec(rho[n]).
Observable observable_e3();
// Adjoint of observable_e3().
Observable observable_e9();
Observable observable_identity();
// Accepts "e3", "e9", "identity".
Observable observable_by_name(std::string_view name);

// Tr(g rho).
cplx expectation(const ComplexMatrix &g, const ComplexMatrix &rho);

// Throws InvalidState unless rho is 4x4, Hermitian, unit trace and PSD within tol.state_validity.
void validate_density_matrix(const ComplexMatrix &rho, const Tolerances &tol = {});

// rho[0..n_max] by repeated one-step application.
std::vector<ComplexMatrix> evolve(const Superoperator &s, const ComplexMatrix &rho0,
                                  std::size_t n_max, const Tolerances &tol = {});

// T^n by repeated squaring.
ComplexMatrix matrix_power(const ComplexMatrix &T, std::size_t n);

// rho[n] = devec(T^n vec(rho0)) via matrix_power.
ComplexMatrix evolve_power(const Superoperator &s, const ComplexMatrix &rho0, std::size_t n,
                           const Tolerances &tol = {});

enum class EPRegime
{
  BelowEP,
  AtEP,
  AboveEP,
  Inconclusive
};

std::string_view to_string(EPRegime r);

struct RegimeClassification
{
  EPRegime regime = EPRegime::Inconclusive;
  EPRegime series_regime = EPRegime::Inconclusive;
  // From the discriminant and the EP collar; empty off the theta = 0 easy plane.
  std::optional<EPRegime> analytic_regime;
  bool consistent = false;
  // Tail statistics over the last half of the rescaled series.
  double drift = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double peak_to_peak = 0.0;
  // max over the second half of the tail / max over its first half.
  double growth_ratio = 0.0;
  // |slope| * tail length / peak_to_peak.
  double trend = 0.0;
  std::string message;
};

struct TrajectoryRecord
{
  std::size_t n_max = 0;
  std::string observable;
  std::vector<cplx> values;
  // |mu_rescale|^{-n} |values[n]|.
  std::vector<double> rescaled;
  cplx mu_rescale;
  ComplexMatrix initial_state;
  // Whether the biorthogonal expansion was evaluated alongside direct evolution,
  // and its largest deviation relative to max |values|.
  bool expansion_checked = false;
  double expansion_error = 0.0;
  std::optional<RegimeClassification> classification;
};

// The member of (mu_9, mu_10) of larger modulus at theta = 0; for theta != 0 the
// largest-modulus eigenvalue of tau_minus.
cplx default_mu_rescale(const Superoperator &s, const Tolerances &tol = {});

// Direct evolution of <g[n]>. Away from the EP the biorthogonal expansion over all
// eigenpairs is evaluated too; disagreement beyond tol.expansion_agreement throws NumericalFailure.
TrajectoryRecord observable_series(const Superoperator &s, const ComplexMatrix &rho0,
                                   const Observable &g, std::size_t n_max,
                                   std::optional<cplx> mu_rescale = std::nullopt,
                                   const Tolerances &tol = {});

// |mu0|^{-n} |B^n psi| for B = [[mu0, 1], [0, mu0]], n = 0..n_max. Throws InvalidArgument for mu0 = 0.
std::vector<double> jordan_growth(cplx mu0, const ComplexVector &psi, std::size_t n_max);

// Classifies the rescaled tail (last half, n_max >= 200) and cross-checks with the
// analytic regime. Disagreement or an unrecognised tail yields Inconclusive.
RegimeClassification classify_regime(const ParameterPoint &p, const TrajectoryRecord &series,
                                     const Tolerances &tol = {});

// Analytic regime of p: AtEP inside the collar, otherwise by the sign of the discriminant.
std::optional<EPRegime> analytic_regime(const ParameterPoint &p, const Tolerances &tol = {});

struct ProbeResult
{
  double delta = 0.0;
  TrajectoryRecord center;
  TrajectoryRecord plus;
  TrajectoryRecord minus;
};

// Series at eps0, eps0 + delta, eps0 - delta with identical protocol, each classified.
// Throws OutOfRange when a shifted epsilon leaves (0, 1].
ProbeResult sensitivity_probe(const ParameterPoint &p, double delta, const Observable &g,
                              const ComplexMatrix &rho0, std::size_t n_max,
                              const Tolerances &tol = {});

}  // namespace brickwork

#endif  // BRICKWORK_DYNAMICS_HPP
