// Copyright 2026 The brickwork Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "brickwork/errors.hpp"
#include "brickwork/tolerances.hpp"

namespace brickwork
{
namespace
{

TEST(Tolerances, DefaultsAreContractValues)
{
  const Tolerances t;
  EXPECT_EQ(t.singular_denominator, 1e-12);
  EXPECT_EQ(t.eig_residual, 1e-10);
  EXPECT_EQ(t.defect_overlap, 1e-6);
  EXPECT_EQ(t.symmetry_commutator, 1e-12);
  EXPECT_EQ(t.ep_coalescence, 1e-6);
  EXPECT_EQ(t.ep_collar, 1e-5);
  EXPECT_EQ(t.expansion_agreement, 1e-9);
  EXPECT_EQ(t.below_ep_drift, 1e-4);
  EXPECT_EQ(t.at_ep_r_squared, 0.999);
}

TEST(Tolerances, NamesRoundTripThroughGetAndSet)
{
  Tolerances t;
  for (const auto &name : Tolerances::names())
  {
    const double before = t.get(name);
    t.set(name, before * 2.0);
    EXPECT_EQ(t.get(name), before * 2.0) << name;
  }
}

TEST(Tolerances, OverridesApplyInOrder)
{
  Tolerances t;
  t.apply_overrides("ep_collar=1e-3, defect_overlap=2e-6,ep_collar=5e-4");
  EXPECT_EQ(t.ep_collar, 5e-4);
  EXPECT_EQ(t.defect_overlap, 2e-6);
  t.apply_overrides("");
  EXPECT_EQ(t.ep_collar, 5e-4);
}

TEST(Tolerances, MalformedOverridesAreRejected)
{
  Tolerances t;
  EXPECT_THROW(t.apply_overrides("nope=1"), InvalidArgument);
  EXPECT_THROW(t.apply_overrides("ep_collar"), InvalidArgument);
  EXPECT_THROW(t.apply_overrides("ep_collar=abc"), InvalidArgument);
  EXPECT_THROW(t.get("missing"), InvalidArgument);
}

}  // namespace
}  // namespace brickwork
