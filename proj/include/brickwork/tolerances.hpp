// Copyright 2026 The brickwork Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BRICKWORK_TOLERANCES_HPP
#define BRICKWORK_TOLERANCES_HPP

#include <string>
#include <string_view>
#include <vector>

namespace brickwork
{

// Every numerical threshold used by the library. Defaults are the contract values.
struct Tolerances
{
  // Gate and spectrum denominators |q lambda - 1/(q lambda)|, |q^2 - lambda^2|.
  double singular_denominator = 1e-12;

  // Eigensolver: residuals relative to the Frobenius norm of the input.
  double eig_residual = 1e-10;
  // Eigenvalues closer than this (relative to max(1, |A|)) are treated as one cluster.
  double eig_cluster = 1e-12;
  // Minimum unit-norm biorthogonal overlap before a system is flagged near-defective.
  double defect_overlap = 1e-6;

  double symmetry_commutator = 1e-12;
  double state_validity = 1e-10;

  // EP certificate: |A| at the record and |mu_9 - mu_10| coalescence bound.
  double ep_discriminant = 1e-10;
  double ep_coalescence = 1e-6;
  // Parameter collar |eps - eps_EP| inside which the point is treated as the EP itself.
  double ep_collar = 1e-5;

  // Agreement of direct evolution and biorthogonal expansion, relative to max|values|.
  double expansion_agreement = 1e-9;

  // Regime classifier thresholds.
  double below_ep_drift = 1e-4;
  double at_ep_r_squared = 0.999;
  double above_ep_trend = 0.1;
  double above_ep_growth = 1.25;

  // Value of a named field; throws InvalidArgument for an unknown name.
  double get(std::string_view name) const;
  void set(std::string_view name, double value);

  // Names of all fields in declaration order.
  static const std::vector<std::string> &names();

  // Parses "name=value[,name=value...]" and applies each override in order.
  void apply_overrides(std::string_view spec);
};

}  // namespace brickwork

#endif  // BRICKWORK_TOLERANCES_HPP
