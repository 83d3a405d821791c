// Copyright 2026 The brickwork Authors
// SPDX-License-Identifier: Apache-2.0

#include "brickwork/superop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "brickwork/errors.hpp"

namespace brickwork
{

std::string_view to_string(Sector s)
{
  return s == Sector::Plus ? "plus" : "minus";
}

const SectorEmbedding &sector_embedding()
{
  static const SectorEmbedding e{{0, 15, 12, 3, 5, 10, 6, 9}, {4, 11, 8, 7, 1, 14, 13, 2}};
  return e;
}

Superoperator build_superoperator(const GateSet &g, const Tolerances &tol)
{
  const ComplexMatrix unitary = kron(g.U, g.U.conjugate());
  ComplexMatrix kraus = ComplexMatrix::Zero(16, 16);
  for (const ComplexMatrix *k : {&g.K1, &g.K2})
  {
    const ComplexMatrix m = kron(*k, g.V);
    kraus += kron(m, m.conjugate());
  }
  Superoperator s;
  s.T = unitary * kraus;
  s.point = g.point;
  s.cptp_guaranteed = g.point.unitary_regime();
  const SectorBlocks blocks = block_reduce(s.T, tol);
  s.tau_plus = blocks.tau_plus;
  s.tau_minus = blocks.tau_minus;
  s.embedding = blocks.embedding;
  return s;
}

Superoperator build_superoperator(const ParameterPoint &p, const Tolerances &tol)
{
  return build_superoperator(build_gate_set(p, tol), tol);
}

ComplexMatrix apply_step(const GateSet &g, const ComplexMatrix &rho)
{
  if (rho.rows() != 4 || rho.cols() != 4)
  {
    throw DimensionMismatch("apply_step: expected a 4x4 density matrix");
  }
  ComplexMatrix out = ComplexMatrix::Zero(4, 4);
  for (const ComplexMatrix *k : {&g.K1, &g.K2})
  {
    const ComplexMatrix m = kron(*k, g.V);
    out += m * rho * m.adjoint();
  }
  return g.U * out * g.U.adjoint();
}

std::pair<ComplexMatrix, ComplexMatrix> parity_projectors()
{
  const ComplexMatrix sz2 = kron(pauli::z(), pauli::z());
  const ComplexMatrix s = kron(sz2, sz2);
  const ComplexMatrix id = ComplexMatrix::Identity(16, 16);
  return {0.5 * (id + s), 0.5 * (id - s)};
}

SectorBlocks block_reduce(const ComplexMatrix &T, const Tolerances &tol)
{
  if (T.rows() != 16 || T.cols() != 16)
  {
    throw DimensionMismatch("block_reduce: expected a 16x16 superoperator");
  }
  require_finite(T, "block_reduce");
  const auto [qp, qm] = parity_projectors();
  SectorBlocks b;
  b.commutator = std::max((T * qp - qp * T).norm(), (T * qm - qm * T).norm());
  if (b.commutator > tol.symmetry_commutator * std::max(1.0, T.norm()))
  {
    throw SymmetryViolation("superoperator breaks parity: commutator " +
                            std::to_string(b.commutator));
  }
  b.embedding = sector_embedding();
  b.tau_plus.resize(8, 8);
  b.tau_minus.resize(8, 8);
  for (Index i = 0; i < 8; ++i)
  {
    for (Index j = 0; j < 8; ++j)
    {
      b.tau_plus(i, j) = T(b.embedding.even[i], b.embedding.even[j]);
      b.tau_minus(i, j) = T(b.embedding.odd[i], b.embedding.odd[j]);
    }
  }
  return b;
}

SectorBlocks block_reduce(const Superoperator &s, const Tolerances &tol)
{
  return block_reduce(s.T, tol);
}

ComplexMatrix lift_sectors(const SectorBlocks &blocks)
{
  ComplexMatrix T = ComplexMatrix::Zero(16, 16);
  for (Index i = 0; i < 8; ++i)
  {
    for (Index j = 0; j < 8; ++j)
    {
      T(blocks.embedding.even[i], blocks.embedding.even[j]) = blocks.tau_plus(i, j);
      T(blocks.embedding.odd[i], blocks.embedding.odd[j]) = blocks.tau_minus(i, j);
    }
  }
  return T;
}

ComplexMatrix choi_matrix(const ComplexMatrix &T)
{
  require_square(T, "choi_matrix");
  const auto d = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(T.rows()))));
  if (d * d != T.rows())
  {
    throw DimensionMismatch("choi_matrix: dimension is not a perfect square");
  }
  ComplexMatrix choi = ComplexMatrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
  {
    for (Index j = 0; j < d; ++j)
    {
      const ComplexMatrix image = devectorize(T.col(i * d + j));
      choi.block(i * d, j * d, d, d) = image;
    }
  }
  return choi;
}

double trace_preservation_defect(const ComplexMatrix &T)
{
  require_square(T, "trace_preservation_defect");
  const auto d = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(T.rows()))));
  const ComplexVector id = vectorize(ComplexMatrix::Identity(d, d));
  return (T.transpose() * id - id).cwiseAbs().maxCoeff();
}

double spectral_radius(const ComplexMatrix &T)
{
  return eigenvalues(T).cwiseAbs().maxCoeff();
}

ComplexMatrix steady_state(const Superoperator &s, const Tolerances &tol)
{
  const EigenSystem es = eig_general(s.T, tol);
  Index k = 0;
  (es.eigenvalues.array() - 1.0).abs().minCoeff(&k);
  ComplexMatrix rho = devectorize(es.right.col(k));
  const cplx tr = rho.trace();
  if (std::abs(tr) < tol.state_validity)
  {
    throw NumericalFailure("steady state has vanishing trace");
  }
  return rho / tr;
}

cplx MonicFactor::operator()(cplx mu) const
{
  cplx acc = 1.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
  {
    acc = acc * mu + *it;
  }
  return acc;
}

std::vector<cplx> MonicFactor::roots() const
{
  if (coeffs.size() == 1)
  {
    return {-coeffs[0]};
  }
  if (coeffs.size() == 2)
  {
    // Cancellation-free quadratic roots.
    const cplx b = coeffs[1];
    const cplx c = coeffs[0];
    const cplx disc = std::sqrt(b * b - 4.0 * c);
    const cplx s = std::real(std::conj(b) * disc) >= 0.0 ? b + disc : b - disc;
    if (s == 0.0)
    {
      return {0.0, 0.0};
    }
    const cplx r1 = -s / 2.0;
    return {r1, c / r1};
  }
  throw InvalidArgument("MonicFactor::roots supports degree 1 and 2 only");
}

int CharPolyFactors::total_degree() const
{
  int n = 0;
  for (const auto &f : factors)
  {
    n += f.degree() * f.multiplicity;
  }
  return n;
}

cplx schur_xi(cplx q, cplx lambda, double epsilon)
{
  const cplx q2 = q * q;
  const cplx l2 = lambda * lambda;
  const double e = epsilon;
  const cplx num = l2 * q2 * q2 * (e * e + 1.0) +
                   2.0 * q2 * (l2 * l2 * e - l2 * (e + 1.0) * (e + 1.0) + e) + l2 * (e * e + 1.0);
  return num / ((l2 - q2) * (l2 * q2 - 1.0));
}

CharPolyFactors schur_char_poly(const ComplexMatrix &tau, Sector which, const ParameterPoint &p,
                                double residual_bound, const Tolerances &tol)
{
  if (p.theta() != 0.0)
  {
    throw UnsupportedAnalytic("factored characteristic polynomial requires theta = 0");
  }
  if (!p.unitary_regime())
  {
    throw UnsupportedAnalytic("factored characteristic polynomial requires a unitary regime");
  }
  if (tau.rows() != 8 || tau.cols() != 8)
  {
    throw DimensionMismatch("schur_char_poly: expected an 8x8 sector block");
  }
  build_gate_U(p, tol);
  const cplx q = p.q();
  const cplx lam = p.lambda();
  const double e = p.epsilon();
  const cplx q2 = q * q;
  const cplx l2 = lam * lam;

  CharPolyFactors out;
  out.sector = which;
  if (which == Sector::Plus)
  {
    out.factors = {
        {"mu-1", {-1.0}, 1},
        {"mu-eps^2", {-e * e}, 1},
        {"mu-eps", {-e}, 4},
        {"xi-quadratic", {e * e, schur_xi(q, lam, e)}, 1},
    };
  }
  else
  {
    const cplx f = (q2 - 1.0) * (e + 1.0);
    const cplx lin13 = f * lam / (l2 - q2);
    const cplx const13 = e * (l2 * q2 - 1.0) / (q2 - l2);
    const cplx lin9 = f * lam / (1.0 - l2 * q2);
    const cplx const9 = e * (q2 - l2) / (l2 * q2 - 1.0);
    out.factors = {
        {"P1", {const13, lin13}, 1},
        {"P2", {e * e * const13, e * lin13}, 1},
        {"P3", {const9, lin9}, 1},
        {"P4", {e * e * const9, e * lin9}, 1},
    };
  }

  out.numeric_eigenvalues = eigenvalues(tau);
  for (Index k = 0; k < out.numeric_eigenvalues.size(); ++k)
  {
    double best = std::numeric_limits<double>::infinity();
    for (const auto &factor : out.factors)
    {
      best = std::min(best, std::abs(factor(out.numeric_eigenvalues(k))));
    }
    out.max_residual = std::max(out.max_residual, best);
  }

  std::vector<cplx> roots;
  for (const auto &factor : out.factors)
  {
    for (int m = 0; m < factor.multiplicity; ++m)
    {
      for (const cplx r : factor.roots())
      {
        roots.push_back(r);
      }
    }
  }
  if (static_cast<Index>(roots.size()) == out.numeric_eigenvalues.size())
  {
    const ComplexVector rv = Eigen::Map<const ComplexVector>(roots.data(), roots.size());
    out.root_match_distance = match_spectra(out.numeric_eigenvalues, rv).max_distance;
  }
  else
  {
    out.root_match_distance = std::numeric_limits<double>::infinity();
  }
  out.confirmed = out.max_residual <= residual_bound && out.total_degree() == 8;
  return out;
}

}  // namespace brickwork
