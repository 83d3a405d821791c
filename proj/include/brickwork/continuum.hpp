// Copyright 2026 The brickwork Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BRICKWORK_CONTINUUM_HPP
#define BRICKWORK_CONTINUUM_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "brickwork/linalg.hpp"

namespace brickwork
{

// h12 = J (sx sx + sy sy + Delta (sz sz - I)), J = 1 / (2 sin gamma), Delta = cos gamma.
// a0 = cot gamma and b0 = 1 / sin gamma are the first-order coefficients of a and b.
struct XXZSpec
{
  double J;
  double Delta;
  ComplexMatrix h12;
  double a0;
  double b0;
};

// Throws OutOfRange when sin(gamma) vanishes.
XXZSpec make_xxz(double gamma);

struct XXZLimitRow
{
  double delta;
  // |U(q = e^{i gamma}, lambda = e^delta) - (I - i delta h12)|_F.
  double residual;
};

struct XXZLimitReport
{
  double gamma;
  std::vector<XXZLimitRow> rows;
  // (r_k / r_{k+1}) / (delta_k / delta_{k+1})^2 for consecutive nonzero deltas; 1 for exact O(delta^2).
  std::vector<double> normalized_ratios;
  // All normalized ratios within [0.75, 1.25].
  bool quadratic = true;
};

XXZLimitReport xxz_limit_check(double gamma, std::span<const double> deltas);

// L = sigma_plus on qubit 1 of a two-qubit system.
struct LindbladSpec
{
  double Gamma;
  ComplexMatrix jump;
};

LindbladSpec boundary_drive(double Gamma);

// D_L[rho] = 2 L rho L^H - {L^H L, rho}.
ComplexMatrix dissipator(const ComplexMatrix &L, const ComplexMatrix &rho);

// Row-major vectorized D_L.
ComplexMatrix dissipator_superop(const ComplexMatrix &L);

// -i (H (x) I - I (x) H^T) + Gamma D_L with H = sx sx + sy sy + cos gamma (sz sz - I).
ComplexMatrix lindbladian(double gamma, const LindbladSpec &spec);

// sx sx + sy sy + cos gamma (sz sz - I).
ComplexMatrix trotter_hamiltonian(double gamma);

struct SpectralMapReport
{
  double epsilon;
  // {1, eps^{2n}, eps^n, eps^n} and {1, e^{-2 Gamma t}, e^{-Gamma t}, e^{-Gamma t}}.
  std::vector<double> kraus_power_spectrum;
  std::vector<double> lindblad_spectrum;
  double spectral_difference = 0.0;
  // Eigenvalues of the numerically powered single-qubit channel against the closed form.
  double numeric_spectral_difference = 0.0;
  // max over random states of |K^n[rho] - exp(Gamma t D)[rho]|_F.
  double channel_difference = 0.0;
};

// Single-qubit channel with eps = exp(-Gamma t / n). Throws OutOfRange for Gamma t < 0 or n = 0.
SpectralMapReport kraus_lindblad_spectral_map(double Gamma, double t, std::size_t n,
                                              std::uint64_t seed = 1, std::size_t samples = 8);

struct TrotterRow
{
  std::size_t n;
  // Gamma = 0 error on the same state: |U^n rho U^{-n} - e^{-iHt} rho e^{iHt}|_F.
  double unitary_error;
  // |T^n vec rho - e^{L t} vec rho|_2.
  double composite_error;
  // composite error of the previous row divided by this one; 0 on the first row.
  double ratio;
};

struct TrotterReport
{
  std::vector<TrotterRow> rows;
  // ratio / (n_k / n_{k-1}) within [0.7, 1.3] for every row after the first.
  bool first_order = true;
};

// lambda = 1 + 2 sin(gamma) t / n, eps = exp(-Gamma t / n), theta = 0.
TrotterReport composite_trotter_check(double gamma, double Gamma, double t,
                                      std::span<const std::size_t> n_list,
                                      std::uint64_t seed = 1);

// Random density matrix G G^H / Tr(G G^H) with Gaussian G.
ComplexMatrix random_density_matrix(Index dim, std::uint64_t seed);

}  // namespace brickwork

#endif  // BRICKWORK_CONTINUUM_HPP
