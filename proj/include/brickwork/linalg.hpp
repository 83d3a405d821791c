// Copyright 2026 The brickwork Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BRICKWORK_LINALG_HPP
#define BRICKWORK_LINALG_HPP

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "brickwork/tolerances.hpp"

namespace brickwork
{

using cplx = std::complex<double>;
using Index = Eigen::Index;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Builds a rows x cols matrix from entries listed row by row.
// Throws DimensionMismatch on a size mismatch and InvalidArgument on non-finite entries.
ComplexMatrix make_matrix(Index rows, Index cols, std::span<const cplx> row_major);

bool all_finite(const ComplexMatrix &m);

// Throws InvalidArgument naming `what` when m holds NaN or Inf.
void require_finite(const ComplexMatrix &m, std::string_view what);

void require_square(const ComplexMatrix &m, std::string_view what);

// (a (x) b)[i rb + k, j cb + l] = a[i, j] b[k, l].
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

// Row-major stacking: vec(rho)[i d + j] = rho[i, j].
// Under this convention vec(A rho B) = (A (x) B^T) vec(rho).
ComplexVector vectorize(const ComplexMatrix &rho);
ComplexMatrix devectorize(const ComplexVector &v);

// Largest singular value.
double spectral_norm(const ComplexMatrix &m);

struct EigenSystem
{
  Index dim = 0;
  ComplexVector eigenvalues;
  // Columns v_j with A v_j = mu_j v_j, unit 2-norm.
  ComplexMatrix right;
  // Columns w_j with w_j^H A = mu_j w_j^H. Where the pair is well conditioned
  // they are scaled so that w_j^H v_k = delta_jk; otherwise they keep unit norm.
  ComplexMatrix left;
  // kappa_j = 1 / |<w_j|v_j>| for unit-norm w_j, v_j; infinite when the overlap vanishes.
  RealVector pair_condition;
  // 1 / kappa_j.
  RealVector overlap;
  double min_overlap = 1.0;
  bool near_defective = false;
  // Largest residuals |A v - mu v| and |w^H A - mu w^H| over unit vectors.
  double right_residual = 0.0;
  double left_residual = 0.0;
};

// Dense non-Hermitian eigendecomposition with left and right vectors.
// Throws InvalidArgument for a non-square or non-finite input and NumericalFailure
// when the solver does not converge or a residual exceeds tol.eig_residual |A|_F.
EigenSystem eig_general(const ComplexMatrix &a, const Tolerances &tol = {});

// Eigenvalues only, without residual bookkeeping.
ComplexVector eigenvalues(const ComplexMatrix &a);

struct SpectralMatch
{
  // numeric index i is paired with analytic index to_analytic[i].
  std::vector<Index> to_analytic;
  std::vector<double> distance;
  double max_distance = 0.0;
};

// Greedy global nearest-neighbour bijection: repeatedly pairs the closest unpaired
// numeric/analytic values. Throws DimensionMismatch for unequal lengths.
SpectralMatch match_spectra(const ComplexVector &numeric, const ComplexVector &analytic);

}  // namespace brickwork

#endif  // BRICKWORK_LINALG_HPP
