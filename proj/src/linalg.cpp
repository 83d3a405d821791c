// Copyright 2026 The brickwork Authors
// SPDX-License-Identifier: Apache-2.0

#include "brickwork/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>

#include <unsupported/Eigen/KroneckerProduct>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "brickwork/errors.hpp"

namespace brickwork
{

ComplexMatrix make_matrix(Index rows, Index cols, std::span<const cplx> row_major)
{
  if (rows < 0 || cols < 0 || static_cast<std::size_t>(rows * cols) != row_major.size())
  {
    throw DimensionMismatch("make_matrix: " + std::to_string(row_major.size()) +
                            " entries for a " + std::to_string(rows) + "x" +
                            std::to_string(cols) + " matrix");
  }
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
  {
    for (Index j = 0; j < cols; ++j)
    {
      m(i, j) = row_major[static_cast<std::size_t>(i * cols + j)];
    }
  }
  require_finite(m, "make_matrix");
  return m;
}

bool all_finite(const ComplexMatrix &m)
{
  return m.allFinite();
}

void require_finite(const ComplexMatrix &m, std::string_view what)
{
  if (!m.allFinite())
  {
    throw InvalidArgument(std::string(what) + ": non-finite entry");
  }
}

void require_square(const ComplexMatrix &m, std::string_view what)
{
  if (m.rows() != m.cols())
  {
    throw DimensionMismatch(std::string(what) + ": expected a square matrix, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b)
{
  return Eigen::kroneckerProduct(a, b).eval();
}

ComplexVector vectorize(const ComplexMatrix &rho)
{
  require_square(rho, "vectorize");
  const Index d = rho.rows();
  ComplexVector v(d * d);
  for (Index i = 0; i < d; ++i)
  {
    for (Index j = 0; j < d; ++j)
    {
      v(i * d + j) = rho(i, j);
    }
  }
  return v;
}

ComplexMatrix devectorize(const ComplexVector &v)
{
  const auto d = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (d * d != v.size())
  {
    throw DimensionMismatch("devectorize: length " + std::to_string(v.size()) +
                            " is not a perfect square");
  }
  ComplexMatrix rho(d, d);
  for (Index i = 0; i < d; ++i)
  {
    for (Index j = 0; j < d; ++j)
    {
      rho(i, j) = v(i * d + j);
    }
  }
  return rho;
}

double spectral_norm(const ComplexMatrix &m)
{
  if (m.size() == 0)
  {
    return 0.0;
  }
  return Eigen::JacobiSVD<ComplexMatrix>(m).singularValues()(0);
}

namespace
{

// Single-linkage clusters of eigenvalues closer than `gap`.
std::vector<std::vector<Index>> cluster_eigenvalues(const ComplexVector &mu, double gap)
{
  const Index n = mu.size();
  std::vector<Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index i)
  {
    while (parent[i] != i)
    {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };
  for (Index i = 0; i < n; ++i)
  {
    for (Index j = i + 1; j < n; ++j)
    {
      if (std::abs(mu(i) - mu(j)) <= gap)
      {
        parent[find(j)] = find(i);
      }
    }
  }
  std::vector<std::vector<Index>> groups;
  std::vector<Index> slot(static_cast<std::size_t>(n), -1);
  for (Index i = 0; i < n; ++i)
  {
    const Index r = find(i);
    if (slot[r] < 0)
    {
      slot[r] = static_cast<Index>(groups.size());
      groups.emplace_back();
    }
    groups[slot[r]].push_back(i);
  }
  return groups;
}

ComplexMatrix orthonormal_basis(const ComplexMatrix &cols)
{
  Eigen::HouseholderQR<ComplexMatrix> qr(cols);
  return qr.householderQ() * ComplexMatrix::Identity(cols.rows(), cols.cols());
}

// Simple pair: scale u so that w^H v = 1 when the overlap clears the threshold.
void pair_simple(EigenSystem &es, Index j, double threshold)
{
  const cplx s = es.left.col(j).dot(es.right.col(j));
  const double ov = std::abs(s);
  es.overlap(j) = ov;
  if (ov >= threshold)
  {
    es.left.col(j) /= std::conj(s);
  }
}

}  // namespace

EigenSystem eig_general(const ComplexMatrix &a, const Tolerances &tol)
{
  require_square(a, "eig_general");
  require_finite(a, "eig_general");
  const Index n = a.rows();
  EigenSystem es;
  es.dim = n;
  es.eigenvalues.resize(n);
  es.right.resize(n, n);
  es.left.resize(n, n);
  es.overlap = RealVector::Ones(n);
  es.pair_condition = RealVector::Ones(n);
  if (n == 0)
  {
    return es;
  }

  ComplexMatrix work = a;
  const auto ln = static_cast<lapack_int>(n);
  const lapack_int info =
      LAPACKE_zgeev(LAPACK_COL_MAJOR, 'V', 'V', ln, work.data(), ln, es.eigenvalues.data(),
                    es.left.data(), ln, es.right.data(), ln);
  if (info < 0)
  {
    throw NumericalFailure("zgeev: argument " + std::to_string(-info) + " rejected");
  }
  if (info > 0)
  {
    throw NumericalFailure("zgeev: QR iteration failed to converge");
  }
  es.right.colwise().normalize();
  es.left.colwise().normalize();

  const double anorm = a.norm();
  const double gap = tol.eig_cluster * std::max(1.0, anorm);
  for (const auto &members : cluster_eigenvalues(es.eigenvalues, gap))
  {
    const auto m = static_cast<Index>(members.size());
    if (m == 1)
    {
      pair_simple(es, members[0], tol.defect_overlap);
      continue;
    }
    ComplexMatrix vc(n, m), uc(n, m);
    for (Index k = 0; k < m; ++k)
    {
      vc.col(k) = es.right.col(members[k]);
      uc.col(k) = es.left.col(members[k]);
    }
    const RealVector sv = Eigen::JacobiSVD<ComplexMatrix>(vc).singularValues();
    if (sv(m - 1) < tol.defect_overlap * sv(0))
    {
      // Right vectors nearly dependent: the cluster is (close to) defective.
      for (const Index j : members)
      {
        pair_simple(es, j, std::numeric_limits<double>::infinity());
      }
      continue;
    }
    const ComplexMatrix qv = orthonormal_basis(vc);
    const ComplexMatrix qu = orthonormal_basis(uc);
    const ComplexMatrix overlap_matrix = qu.adjoint() * qv;
    const RealVector ms = Eigen::JacobiSVD<ComplexMatrix>(overlap_matrix).singularValues();
    if (ms(m - 1) < tol.defect_overlap)
    {
      for (const Index j : members)
      {
        es.overlap(j) = ms(m - 1);
      }
      continue;
    }
    const ComplexMatrix w = qu * overlap_matrix.inverse().adjoint();
    for (Index k = 0; k < m; ++k)
    {
      es.right.col(members[k]) = qv.col(k);
      es.left.col(members[k]) = w.col(k);
      es.overlap(members[k]) = 1.0 / w.col(k).norm();
    }
  }

  es.min_overlap = es.overlap.minCoeff();
  es.near_defective = es.min_overlap < tol.defect_overlap;
  for (Index j = 0; j < n; ++j)
  {
    es.pair_condition(j) = es.overlap(j) > 0.0 ? 1.0 / es.overlap(j)
                                               : std::numeric_limits<double>::infinity();
    const ComplexVector v = es.right.col(j);
    const ComplexVector u = es.left.col(j).normalized();
    es.right_residual =
        std::max(es.right_residual, (a * v - es.eigenvalues(j) * v).norm());
    es.left_residual = std::max(
        es.left_residual, (a.adjoint() * u - std::conj(es.eigenvalues(j)) * u).norm());
  }
  const double bound = tol.eig_residual * anorm;
  if (es.right_residual > bound || es.left_residual > bound)
  {
    throw NumericalFailure("eig_general: residual " +
                           std::to_string(std::max(es.right_residual, es.left_residual)) +
                           " exceeds " + std::to_string(bound));
  }
  return es;
}

ComplexVector eigenvalues(const ComplexMatrix &a)
{
  require_square(a, "eigenvalues");
  require_finite(a, "eigenvalues");
  const Index n = a.rows();
  ComplexVector mu(n);
  if (n == 0)
  {
    return mu;
  }
  ComplexMatrix work = a;
  const auto ln = static_cast<lapack_int>(n);
  const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', ln, work.data(), ln,
                                        mu.data(), nullptr, ln, nullptr, ln);
  if (info != 0)
  {
    throw NumericalFailure("zgeev: eigenvalue computation failed (info " +
                           std::to_string(info) + ")");
  }
  return mu;
}

SpectralMatch match_spectra(const ComplexVector &numeric, const ComplexVector &analytic)
{
  if (numeric.size() != analytic.size())
  {
    throw DimensionMismatch("match_spectra: lengths " + std::to_string(numeric.size()) +
                            " and " + std::to_string(analytic.size()));
  }
  const Index n = numeric.size();
  std::vector<std::tuple<double, Index, Index>> pairs;
  pairs.reserve(static_cast<std::size_t>(n * n));
  for (Index i = 0; i < n; ++i)
  {
    for (Index j = 0; j < n; ++j)
    {
      pairs.emplace_back(std::abs(numeric(i) - analytic(j)), i, j);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  SpectralMatch out;
  out.to_analytic.assign(static_cast<std::size_t>(n), -1);
  out.distance.assign(static_cast<std::size_t>(n), 0.0);
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  for (const auto &[d, i, j] : pairs)
  {
    if (out.to_analytic[i] >= 0 || taken[j])
    {
      continue;
    }
    out.to_analytic[i] = j;
    out.distance[i] = d;
    taken[j] = true;
    out.max_distance = std::max(out.max_distance, d);
  }
  return out;
}

}  // namespace brickwork
