// Copyright 2026 The brickwork Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BRICKWORK_ERRORS_HPP
#define BRICKWORK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace brickwork
{

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Caller supplied a malformed argument: wrong shape, out-of-range scalar, bad state.
class InvalidArgument : public Error
{
public:
  using Error::Error;
};

class DimensionMismatch : public InvalidArgument
{
public:
  using InvalidArgument::InvalidArgument;
};

class OutOfRange : public InvalidArgument
{
public:
  using InvalidArgument::InvalidArgument;
};

class InvalidState : public InvalidArgument
{
public:
  using InvalidArgument::InvalidArgument;
};

// A denominator of the gate or of the closed-form spectrum vanishes.
class SingularGate : public Error
{
public:
  using Error::Error;
};

// The superoperator does not commute with the parity projectors.
class SymmetryViolation : public Error
{
public:
  using Error::Error;
};

// Closed forms exist only for theta = 0 on the easy plane.
class UnsupportedAnalytic : public Error
{
public:
  using Error::Error;
};

// Solver did not converge or a post-condition residual check failed.
class NumericalFailure : public Error
{
public:
  using Error::Error;
};

}  // namespace brickwork

#endif  // BRICKWORK_ERRORS_HPP
