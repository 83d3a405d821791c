// Copyright 2026 The brickwork Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BRICKWORK_SUPEROP_HPP
#define BRICKWORK_SUPEROP_HPP

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "brickwork/gates.hpp"
#include "brickwork/linalg.hpp"
#include "brickwork/tolerances.hpp"

namespace brickwork
{

enum class Sector
{
  Plus,
  Minus
};

std::string_view to_string(Sector s);

// Positions (0-based, into the row-major vectorized space) of the two parity sectors.
// The sets are fixed by the diagonal of Sigma_z (x) Sigma_z, Sigma_z = sigma_z (x) sigma_z.
// Within each sector the order groups the blocks A, B, C, D of the reduced matrices:
//   even: e1 e16 e13 e4 | e6 e11 e7 e10
//   odd:  e5 e12 e9 e8  | e2 e15 e14 e3        (1-based e_j)
struct SectorEmbedding
{
  std::array<Index, 8> even;
  std::array<Index, 8> odd;
  const std::array<Index, 8> &indices(Sector s) const { return s == Sector::Plus ? even : odd; }
};

const SectorEmbedding &sector_embedding();

struct SectorBlocks
{
  ComplexMatrix tau_plus;
  ComplexMatrix tau_minus;
  SectorEmbedding embedding;
  // max(|[T, Q+]|, |[T, Q-]|) in Frobenius norm.
  double commutator = 0.0;
};

struct Superoperator
{
  ComplexMatrix T;
  ParameterPoint point;
  ComplexMatrix tau_plus;
  ComplexMatrix tau_minus;
  SectorEmbedding embedding;
  // False in the general regime where U is not unitary.
  bool cptp_guaranteed = true;

  const ComplexMatrix &tau(Sector s) const { return s == Sector::Plus ? tau_plus : tau_minus; }
};

// T = (U (x) conj U) sum_j (K_j (x) V) (x) conj(K_j (x) V), acting on row-major vec(rho).
// Equivalent to rho -> U (sum_j M_j rho M_j^H) U^H with M_j = K_j (x) V.
Superoperator build_superoperator(const GateSet &g, const Tolerances &tol = {});
Superoperator build_superoperator(const ParameterPoint &p, const Tolerances &tol = {});

// One step evaluated on the density matrix directly, without vectorization.
ComplexMatrix apply_step(const GateSet &g, const ComplexMatrix &rho);

// Q+- = (I16 +- Sigma_z (x) Sigma_z) / 2.
std::pair<ComplexMatrix, ComplexMatrix> parity_projectors();

// Restriction of T to the parity sectors. Throws SymmetryViolation when T does not
// commute with the projectors within tol.symmetry_commutator.
SectorBlocks block_reduce(const ComplexMatrix &T, const Tolerances &tol = {});
SectorBlocks block_reduce(const Superoperator &s, const Tolerances &tol = {});

// Embeds tau_plus and tau_minus back into the 16-dimensional space.
ComplexMatrix lift_sectors(const SectorBlocks &blocks);

// sum_ij |i><j| (x) Phi(|i><j|) for the map Phi represented by T on d x d matrices.
ComplexMatrix choi_matrix(const ComplexMatrix &T);

// max_k |(vec(I)^T T)_k - vec(I)_k|: deviation of the trace functional from a left fixed point.
double trace_preservation_defect(const ComplexMatrix &T);

double spectral_radius(const ComplexMatrix &T);

// Devectorized right eigenvector of the eigenvalue closest to 1, scaled to unit trace.
ComplexMatrix steady_state(const Superoperator &s, const Tolerances &tol = {});

// mu^d + c[d-1] mu^{d-1} + ... + c[0].
struct MonicFactor
{
  std::string label;
  std::vector<cplx> coeffs;
  int multiplicity = 1;

  int degree() const { return static_cast<int>(coeffs.size()); }
  cplx operator()(cplx mu) const;
  std::vector<cplx> roots() const;
};

struct CharPolyFactors
{
  Sector sector;
  std::vector<MonicFactor> factors;
  ComplexVector numeric_eigenvalues;
  // max over numeric eigenvalues of min over factors |P(mu)|.
  double max_residual = 0.0;
  // match_spectra distance between all factor roots (with multiplicity) and the numeric spectrum.
  double root_match_distance = 0.0;
  bool confirmed = false;

  int total_degree() const;
};

// Factored characteristic polynomial of a sector block at theta = 0.
//   plus:  (mu - 1)(mu - eps^2)(mu - eps)^4 (mu^2 + xi mu + eps^2)
//   minus: P1 P2 P3 P4, monic quadratics whose roots are mu_13,14, mu_15,16, mu_9,10, mu_11,12.
// confirmed holds when every numeric eigenvalue is a root to within residual_bound.
// Throws UnsupportedAnalytic for theta != 0.
CharPolyFactors schur_char_poly(const ComplexMatrix &tau, Sector which, const ParameterPoint &p,
                                double residual_bound = 1e-9, const Tolerances &tol = {});

// Linear coefficient of the plus-sector quadratic.
cplx schur_xi(cplx q, cplx lambda, double epsilon);

}  // namespace brickwork

#endif  // BRICKWORK_SUPEROP_HPP
