// Copyright 2026 The brickwork Authors
// SPDX-License-Identifier: Apache-2.0

#include "brickwork/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "brickwork/errors.hpp"
#include "brickwork/gates.hpp"
#include "brickwork/superop.hpp"

namespace brickwork
{

namespace
{

void require_sin_gamma(double gamma)
{
  if (std::abs(std::sin(gamma)) < 1e-12)
  {
    throw OutOfRange("sin(gamma) vanishes");
  }
}

ComplexMatrix two_site(const ComplexMatrix &a, const ComplexMatrix &b)
{
  return kron(a, b);
}

}  // namespace

XXZSpec make_xxz(double gamma)
{
  require_sin_gamma(gamma);
  XXZSpec s;
  s.J = 1.0 / (2.0 * std::sin(gamma));
  s.Delta = std::cos(gamma);
  s.a0 = std::cos(gamma) / std::sin(gamma);
  s.b0 = 1.0 / std::sin(gamma);
  s.h12 = s.J * (two_site(pauli::x(), pauli::x()) + two_site(pauli::y(), pauli::y()) +
                 s.Delta * (two_site(pauli::z(), pauli::z()) - ComplexMatrix::Identity(4, 4)));
  return s;
}

XXZLimitReport xxz_limit_check(double gamma, std::span<const double> deltas)
{
  const XXZSpec spec = make_xxz(gamma);
  XXZLimitReport rep;
  rep.gamma = gamma;
  const ComplexMatrix id = ComplexMatrix::Identity(4, 4);
  for (const double d : deltas)
  {
    if (!(std::abs(d) <= 0.1))
    {
      throw OutOfRange("xxz_limit_check: |delta| must not exceed 0.1");
    }
    const ComplexMatrix U = build_gate_U(ParameterPoint::easy_plane(d, gamma, 1.0)).U;
    const ComplexMatrix linear = id - cplx(0.0, d) * spec.h12;
    rep.rows.push_back({d, (U - linear).norm()});
  }
  for (std::size_t k = 0; k + 1 < rep.rows.size(); ++k)
  {
    const auto &a = rep.rows[k];
    const auto &b = rep.rows[k + 1];
    if (a.delta == 0.0 || b.delta == 0.0 || b.residual == 0.0)
    {
      continue;
    }
    const double scale = (a.delta / b.delta) * (a.delta / b.delta);
    const double r = (a.residual / b.residual) / scale;
    rep.normalized_ratios.push_back(r);
    rep.quadratic = rep.quadratic && r >= 0.75 && r <= 1.25;
  }
  return rep;
}

LindbladSpec boundary_drive(double Gamma)
{
  return {Gamma, kron(pauli::plus(), pauli::identity())};
}

ComplexMatrix dissipator(const ComplexMatrix &L, const ComplexMatrix &rho)
{
  const ComplexMatrix ll = L.adjoint() * L;
  return 2.0 * L * rho * L.adjoint() - ll * rho - rho * ll;
}

ComplexMatrix dissipator_superop(const ComplexMatrix &L)
{
  require_square(L, "dissipator_superop");
  const ComplexMatrix id = ComplexMatrix::Identity(L.rows(), L.cols());
  const ComplexMatrix ll = L.adjoint() * L;
  return 2.0 * kron(L, L.conjugate()) - kron(ll, id) - kron(id, ll.transpose());
}

ComplexMatrix trotter_hamiltonian(double gamma)
{
  return two_site(pauli::x(), pauli::x()) + two_site(pauli::y(), pauli::y()) +
         std::cos(gamma) * (two_site(pauli::z(), pauli::z()) - ComplexMatrix::Identity(4, 4));
}

ComplexMatrix lindbladian(double gamma, const LindbladSpec &spec)
{
  const ComplexMatrix h = trotter_hamiltonian(gamma);
  const ComplexMatrix id = ComplexMatrix::Identity(4, 4);
  return cplx(0.0, -1.0) * (kron(h, id) - kron(id, h.transpose())) +
         spec.Gamma * dissipator_superop(spec.jump);
}

ComplexMatrix random_density_matrix(Index dim, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(dim, dim);
  for (Index i = 0; i < dim; ++i)
  {
    for (Index j = 0; j < dim; ++j)
    {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = cplx(re, im);
    }
  }
  const ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace();
}

SpectralMapReport kraus_lindblad_spectral_map(double Gamma, double t, std::size_t n,
                                              std::uint64_t seed, std::size_t samples)
{
  const double gt = Gamma * t;
  if (!(gt >= 0.0) || n == 0)
  {
    throw OutOfRange("kraus_lindblad_spectral_map: need Gamma t >= 0 and n >= 1");
  }
  SpectralMapReport rep;
  rep.epsilon = std::exp(-gt / static_cast<double>(n));
  const double e = rep.epsilon;
  const auto nn = static_cast<double>(n);
  rep.kraus_power_spectrum = {1.0, std::pow(e * e, nn), std::pow(e, nn), std::pow(e, nn)};
  rep.lindblad_spectrum = {1.0, std::exp(-2.0 * gt), std::exp(-gt), std::exp(-gt)};
  for (std::size_t k = 0; k < 4; ++k)
  {
    rep.spectral_difference = std::max(
        rep.spectral_difference, std::abs(rep.kraus_power_spectrum[k] - rep.lindblad_spectrum[k]));
  }

  const KrausPair kp = build_kraus(e);
  const ComplexMatrix channel = kron(kp.K1, kp.K1.conjugate()) + kron(kp.K2, kp.K2.conjugate());
  ComplexMatrix powered = ComplexMatrix::Identity(4, 4);
  for (std::size_t k = 0; k < n; ++k)
  {
    powered = channel * powered;
  }
  ComplexVector closed(4);
  for (Index k = 0; k < 4; ++k)
  {
    closed(k) = rep.lindblad_spectrum[static_cast<std::size_t>(k)];
  }
  rep.numeric_spectral_difference = match_spectra(eigenvalues(powered), closed).max_distance;

  const ComplexMatrix semigroup = (gt * dissipator_superop(pauli::plus())).exp();
  for (std::size_t s = 0; s < samples; ++s)
  {
    const ComplexVector v = vectorize(random_density_matrix(2, seed + s));
    rep.channel_difference =
        std::max(rep.channel_difference, (powered * v - semigroup * v).norm());
  }
  return rep;
}

TrotterReport composite_trotter_check(double gamma, double Gamma, double t,
                                      std::span<const std::size_t> n_list, std::uint64_t seed)
{
  require_sin_gamma(gamma);
  if (!(t >= 0.0) || !(Gamma >= 0.0))
  {
    throw OutOfRange("composite_trotter_check: need t >= 0 and Gamma >= 0");
  }
  const ComplexVector v = vectorize(random_density_matrix(4, seed));
  const ComplexMatrix exact = (t * lindbladian(gamma, boundary_drive(Gamma))).exp();
  const ComplexMatrix exact_unitary = (t * lindbladian(gamma, boundary_drive(0.0))).exp();

  TrotterReport rep;
  for (const std::size_t n : n_list)
  {
    if (n == 0)
    {
      throw OutOfRange("composite_trotter_check: n must be positive");
    }
    const double step = t / static_cast<double>(n);
    const double x = std::log1p(2.0 * std::sin(gamma) * step);
    const ParameterPoint lossy = ParameterPoint::easy_plane(x, gamma, std::exp(-Gamma * step));
    const ParameterPoint lossless = ParameterPoint::easy_plane(x, gamma, 1.0);
    ComplexVector a = v;
    ComplexVector b = v;
    const ComplexMatrix Ta = build_superoperator(lossy).T;
    const ComplexMatrix Tb = build_superoperator(lossless).T;
    for (std::size_t k = 0; k < n; ++k)
    {
      a = Ta * a;
      b = Tb * b;
    }
    TrotterRow row{n, (b - exact_unitary * v).norm(), (a - exact * v).norm(), 0.0};
    if (!rep.rows.empty())
    {
      const TrotterRow &prev = rep.rows.back();
      row.ratio = row.composite_error > 0.0 ? prev.composite_error / row.composite_error : 0.0;
      const double expected = static_cast<double>(n) / static_cast<double>(prev.n);
      const double rel = row.ratio / expected;
      rep.first_order = rep.first_order && rel >= 0.7 && rel <= 1.3;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace brickwork
