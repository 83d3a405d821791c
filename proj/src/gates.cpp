// Copyright 2026 The brickwork Authors
// SPDX-License-Identifier: Apache-2.0

#include "brickwork/gates.hpp"

#include <cmath>

#include "brickwork/errors.hpp"

namespace brickwork
{

namespace pauli
{

ComplexMatrix identity()
{
  return ComplexMatrix::Identity(2, 2);
}

ComplexMatrix x()
{
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

ComplexMatrix y()
{
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = cplx(0.0, -1.0);
  m(1, 0) = cplx(0.0, 1.0);
  return m;
}

ComplexMatrix z()
{
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

ComplexMatrix plus()
{
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

ComplexMatrix minus()
{
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

}  // namespace pauli

std::string_view to_string(Regime r)
{
  switch (r)
  {
    case Regime::EasyPlane:
      return "easy-plane";
    case Regime::EasyAxis:
      return "easy-axis";
    case Regime::General:
      return "general";
  }
  return "unknown";
}

void require_epsilon(double epsilon)
{
  if (!(epsilon > 0.0 && epsilon <= 1.0))
  {
    throw OutOfRange("epsilon must lie in (0, 1], got " + std::to_string(epsilon));
  }
}

namespace
{

void require_real(double v, const char *name)
{
  if (!std::isfinite(v))
  {
    throw InvalidArgument(std::string(name) + " must be finite");
  }
}

}  // namespace

ParameterPoint ParameterPoint::easy_plane(double x, double gamma, double epsilon, double theta)
{
  require_real(x, "x");
  require_real(gamma, "gamma");
  require_real(theta, "theta");
  require_epsilon(epsilon);
  ParameterPoint p;
  p.q_ = std::polar(1.0, gamma);
  p.lambda_ = std::exp(x);
  p.x_ = x;
  p.gamma_ = gamma;
  p.epsilon_ = epsilon;
  p.theta_ = theta;
  p.regime_ = Regime::EasyPlane;
  return p;
}

ParameterPoint ParameterPoint::easy_axis(double log_q, double phase, double epsilon, double theta)
{
  require_real(log_q, "log_q");
  require_real(phase, "phase");
  require_real(theta, "theta");
  require_epsilon(epsilon);
  ParameterPoint p;
  p.q_ = std::exp(log_q);
  p.lambda_ = std::polar(1.0, phase);
  p.x_ = phase;
  p.gamma_ = log_q;
  p.epsilon_ = epsilon;
  p.theta_ = theta;
  p.regime_ = Regime::EasyAxis;
  return p;
}

ParameterPoint ParameterPoint::general(cplx q, cplx lambda, double epsilon, double theta)
{
  if (!std::isfinite(q.real()) || !std::isfinite(q.imag()) || !std::isfinite(lambda.real()) ||
      !std::isfinite(lambda.imag()) || q == 0.0 || lambda == 0.0)
  {
    throw InvalidArgument("q and lambda must be finite and nonzero");
  }
  require_real(theta, "theta");
  require_epsilon(epsilon);
  ParameterPoint p;
  p.q_ = q;
  p.lambda_ = lambda;
  p.x_ = std::log(std::abs(lambda));
  p.gamma_ = std::arg(q);
  p.epsilon_ = epsilon;
  p.theta_ = theta;
  p.regime_ = Regime::General;
  return p;
}

ParameterPoint ParameterPoint::with_epsilon(double epsilon) const
{
  require_epsilon(epsilon);
  ParameterPoint p = *this;
  p.epsilon_ = epsilon;
  return p;
}

ParameterPoint ParameterPoint::with_theta(double theta) const
{
  require_real(theta, "theta");
  ParameterPoint p = *this;
  p.theta_ = theta;
  return p;
}

GateU build_gate_U(const ParameterPoint &p, const Tolerances &tol)
{
  const cplx q = p.q();
  const cplx lam = p.lambda();
  const cplx den = q * lam - 1.0 / (q * lam);
  if (std::abs(den) < tol.singular_denominator)
  {
    throw SingularGate("q lambda - 1/(q lambda) vanishes");
  }
  if (std::abs(q * q - lam * lam) < tol.singular_denominator)
  {
    throw SingularGate("q^2 - lambda^2 vanishes");
  }
  GateU g;
  g.a = (q - 1.0 / q) / den;
  g.b = (lam - 1.0 / lam) / den;
  g.U = ComplexMatrix::Identity(4, 4);
  g.U(1, 1) = g.a;
  g.U(2, 2) = g.a;
  g.U(1, 2) = g.b;
  g.U(2, 1) = g.b;
  return g;
}

KrausPair build_kraus(double epsilon)
{
  require_epsilon(epsilon);
  KrausPair k;
  k.K1 = std::sqrt(1.0 - epsilon * epsilon) * pauli::plus();
  k.K2 = ComplexMatrix::Zero(2, 2);
  k.K2(0, 0) = 1.0;
  k.K2(1, 1) = epsilon;
  return k;
}

ComplexMatrix build_local_V(double theta)
{
  ComplexMatrix v = ComplexMatrix::Zero(2, 2);
  v(0, 0) = std::polar(1.0, theta);
  v(1, 1) = std::polar(1.0, -theta);
  return v;
}

GateSet build_gate_set(const ParameterPoint &p, const Tolerances &tol)
{
  const GateU u = build_gate_U(p, tol);
  const KrausPair k = build_kraus(p.epsilon());
  GateSet g{p, u.U, k.K1, k.K2, build_local_V(p.theta()), u.a, u.b};

  const double completeness =
      (g.K1.adjoint() * g.K1 + g.K2.adjoint() * g.K2 - pauli::identity()).norm();
  if (completeness > 1e-13)
  {
    throw NumericalFailure("Kraus completeness violated by " + std::to_string(completeness));
  }
  if ((g.V.adjoint() * g.V - pauli::identity()).norm() > 1e-13)
  {
    throw NumericalFailure("local rotation is not unitary");
  }
  if (p.unitary_regime())
  {
    const double defect = (g.U.adjoint() * g.U - ComplexMatrix::Identity(4, 4)).norm();
    if (defect > 1e-12)
    {
      throw NumericalFailure("gate U not unitary in a unitary regime: " +
                             std::to_string(defect));
    }
  }
  return g;
}

ComplexMatrix apply_kraus(const KrausPair &k, const ComplexMatrix &rho)
{
  if (rho.rows() != 2 || rho.cols() != 2)
  {
    throw DimensionMismatch("apply_kraus: expected a 2x2 operator");
  }
  return k.K1 * rho * k.K1.adjoint() + k.K2 * rho * k.K2.adjoint();
}

std::vector<ChannelEigenpair> kraus_channel_spectrum(double epsilon)
{
  const KrausPair k = build_kraus(epsilon);
  ComplexMatrix up = ComplexMatrix::Zero(2, 2);
  up(0, 0) = 1.0;
  std::vector<ChannelEigenpair> out = {
      {"up_projector", up, 1.0, 0.0},
      {"sigma_z", pauli::z(), epsilon * epsilon, 0.0},
      {"sigma_plus", pauli::plus(), epsilon, 0.0},
      {"sigma_minus", pauli::minus(), epsilon, 0.0},
  };
  for (auto &e : out)
  {
    e.residual = (apply_kraus(k, e.op) - e.eigenvalue * e.op).norm();
    if (e.residual > 1e-13)
    {
      throw NumericalFailure("channel eigenoperator " + e.label + " fails by " +
                             std::to_string(e.residual));
    }
  }
  return out;
}

double relaxation_steps(double epsilon)
{
  if (epsilon == 1.0)
  {
    throw OutOfRange("epsilon = 1 has no relaxation: the channel is the identity");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0))
  {
    throw OutOfRange("relaxation_steps needs epsilon in (0, 1)");
  }
  return -2.0 / std::log(epsilon);
}

}  // namespace brickwork
