// Copyright 2026 The brickwork Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BRICKWORK_GATES_HPP
#define BRICKWORK_GATES_HPP

#include <string>
#include <string_view>
#include <vector>

#include "brickwork/linalg.hpp"
#include "brickwork/tolerances.hpp"

namespace brickwork
{

// Single-qubit basis |up> = (1, 0), |down> = (0, 1). sigma_plus |down> = |up>.
namespace pauli
{
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
ComplexMatrix plus();
ComplexMatrix minus();
}  // namespace pauli

enum class Regime
{
  EasyPlane,  // |q| = 1, lambda real
  EasyAxis,   // q real, |lambda| = 1
  General
};

std::string_view to_string(Regime r);

// A point (q, lambda, epsilon, theta) together with its regime tag.
class ParameterPoint
{
public:
  // lambda = 1, q = i, eps = 1: a nonsingular identity-step point.
  ParameterPoint() = default;

  // q = exp(i gamma), lambda = exp(x).
  static ParameterPoint easy_plane(double x, double gamma, double epsilon, double theta = 0.0);
  // q = exp(log_q), lambda = exp(i phase).
  static ParameterPoint easy_axis(double log_q, double phase, double epsilon, double theta = 0.0);
  static ParameterPoint general(cplx q, cplx lambda, double epsilon, double theta = 0.0);

  cplx q() const { return q_; }
  cplx lambda() const { return lambda_; }
  // Easy plane: x = log(lambda), gamma = arg(q). Easy axis: x = arg(lambda), gamma = log(q).
  double x() const { return x_; }
  double gamma() const { return gamma_; }
  double epsilon() const { return epsilon_; }
  double theta() const { return theta_; }
  Regime regime() const { return regime_; }
  bool unitary_regime() const { return regime_ != Regime::General; }

  ParameterPoint with_epsilon(double epsilon) const;
  ParameterPoint with_theta(double theta) const;

private:
  cplx q_{0.0, 1.0};
  cplx lambda_{1.0, 0.0};
  double x_ = 0.0;
  double gamma_ = 1.5707963267948966;
  double epsilon_ = 1.0;
  double theta_ = 0.0;
  Regime regime_ = Regime::EasyPlane;
};

// Throws OutOfRange unless 0 < epsilon <= 1.
void require_epsilon(double epsilon);

struct GateU
{
  ComplexMatrix U;
  cplx a;
  cplx b;
};

// U = [[1,0,0,0],[0,a,b,0],[0,b,a,0],[0,0,0,1]] with
// a = (q - 1/q) / (q lambda - 1/(q lambda)), b = (lambda - 1/lambda) / (q lambda - 1/(q lambda)).
// Throws SingularGate when |q lambda - 1/(q lambda)| or |q^2 - lambda^2| is below tolerance.
GateU build_gate_U(const ParameterPoint &p, const Tolerances &tol = {});

struct KrausPair
{
  ComplexMatrix K1;  // sqrt(1 - eps^2) sigma_plus
  ComplexMatrix K2;  // diag(1, eps)
};

KrausPair build_kraus(double epsilon);

// diag(e^{i theta}, e^{-i theta}).
ComplexMatrix build_local_V(double theta);

struct GateSet
{
  ParameterPoint point;
  ComplexMatrix U;
  ComplexMatrix K1;
  ComplexMatrix K2;
  ComplexMatrix V;
  cplx a;
  cplx b;
};

// Assembles and validates all primitives. Throws NumericalFailure when the
// completeness or unitarity invariants fail.
GateSet build_gate_set(const ParameterPoint &p, const Tolerances &tol = {});

// rho -> K1 rho K1^H + K2 rho K2^H on one qubit.
ComplexMatrix apply_kraus(const KrausPair &k, const ComplexMatrix &rho);

struct ChannelEigenpair
{
  std::string label;
  ComplexMatrix op;
  double eigenvalue;
  // |K[op] - eigenvalue op|_F from direct Kraus application.
  double residual;
};

// Eigenoperators |up><up|, sigma_z, sigma_plus, sigma_minus with eigenvalues 1, eps^2, eps, eps.
// Throws NumericalFailure if a direct application disagrees.
std::vector<ChannelEigenpair> kraus_channel_spectrum(double epsilon);

// -2 / log(eps). Throws OutOfRange for eps outside (0, 1); eps = 1 never relaxes.
double relaxation_steps(double epsilon);

}  // namespace brickwork

#endif  // BRICKWORK_GATES_HPP
