// Copyright 2026 The brickwork Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_complex.hpp>
#include <set>

#include <unsupported/Eigen/MatrixFunctions>

#include "brickwork/analytic.hpp"
#include "brickwork/errors.hpp"
#include "brickwork/superop.hpp"
#include "closed_form_blocks.hpp"
#include "test_support.hpp"

namespace brickwork
{
namespace
{

using testing::kPi;
using testing::max_abs;

ComplexMatrix restrict_to(const ComplexMatrix &T, const std::array<Index, 8> &idx)
{
  ComplexMatrix b(8, 8);
  for (Index r = 0; r < 8; ++r)
    for (Index c = 0; c < 8; ++c)
      b(r, c) = T(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
  return b;
}

// The product with the jump factor written as K (x) (K)^H instead of K (x) conj(K).
// Not a channel; it is the form whose projection reproduces every reference block.
ComplexMatrix conjugate_transposed_variant(const ParameterPoint &p)
{
  const GateSet g = build_gate_set(p);
  ComplexMatrix s = ComplexMatrix::Zero(16, 16);
  for (const ComplexMatrix *k : {&g.K1, &g.K2})
  {
    const ComplexMatrix m = kron(*k, g.V);
    s += kron(m, m.adjoint());
  }
  return kron(g.U, g.U.conjugate()) * s;
}

TEST(Superoperator, IdentityAtTrivialPoint)
{
  const Superoperator s = build_superoperator(ParameterPoint::easy_plane(0.0, 0.8, 1.0));
  EXPECT_LE(max_abs(s.T - ComplexMatrix::Identity(16, 16)), 1e-15);
}

TEST(Superoperator, NoDissipationIsUnitaryConjugation)
{
  const ParameterPoint p = ParameterPoint::easy_plane(0.4, 1.0, 1.0);
  const Superoperator s = build_superoperator(p);
  const GateU g = build_gate_U(p);
  EXPECT_LE(max_abs(s.T - kron(g.U, g.U.conjugate())), 1e-15);
  const ComplexVector mu = eigenvalues(s.T);
  EXPECT_LE((mu.cwiseAbs().array() - 1.0).abs().maxCoeff(), 1e-12);
}

TEST(Superoperator, VectorizedMatchesDirectEvolution)
{
  std::mt19937_64 rng(31);
  const GateSet near_ep = build_gate_set(
      ParameterPoint::general(std::polar(1.0, kPi / 4.0), 1.39016, 0.4, 0.0));
  const Superoperator s_ep = build_superoperator(near_ep);
  for (int trial = 0; trial < 200; ++trial)
  {
    const ComplexMatrix rho = testing::random_state(4, rng);
    const ComplexMatrix direct = apply_step(near_ep, rho);
    EXPECT_LE(max_abs(devectorize(s_ep.T * vectorize(rho)) - direct), 1e-12);
  }
  for (int trial = 0; trial < 50; ++trial)
  {
    std::uniform_real_distribution<double> th(-kPi, kPi);
    const ParameterPoint p = testing::random_easy_plane(rng).with_theta(th(rng));
    const GateSet g = build_gate_set(p);
    const Superoperator s = build_superoperator(g);
    const ComplexMatrix rho = testing::random_state(4, rng);
    EXPECT_LE(max_abs(devectorize(s.T * vectorize(rho)) - apply_step(g, rho)), 1e-12);
  }
}

TEST(Superoperator, GeneralRegimeIsNotGuaranteedCptp)
{
  const Superoperator s =
      build_superoperator(ParameterPoint::general(cplx(1.4, 0.3), cplx(0.7, 0.2), 0.5));
  EXPECT_FALSE(s.cptp_guaranteed);
  EXPECT_TRUE(build_superoperator(testing::point_a(0.5)).cptp_guaranteed);
}

TEST(ParityProjectors, ResolveTheIdentity)
{
  const auto [qp, qm] = parity_projectors();
  const ComplexMatrix id = ComplexMatrix::Identity(16, 16);
  EXPECT_LE(max_abs(qp + qm - id), 0.0);
  EXPECT_LE(max_abs(qp * qp - qp), 0.0);
  EXPECT_LE(max_abs(qp * qm), 0.0);
  EXPECT_NEAR(qp.trace().real(), 8.0, 0.0);
  EXPECT_NEAR(qm.trace().real(), 8.0, 0.0);
}

TEST(SectorEmbedding, FollowsParityDiagonal)
{
  const ComplexMatrix z = kron(pauli::z(), pauli::z());
  const ComplexMatrix zz = kron(z, z);
  const SectorEmbedding &e = sector_embedding();
  std::set<Index> all;
  for (Index i : e.even)
  {
    EXPECT_EQ(zz(i, i), cplx(1.0));
    all.insert(i);
  }
  for (Index i : e.odd)
  {
    EXPECT_EQ(zz(i, i), cplx(-1.0));
    all.insert(i);
  }
  EXPECT_EQ(all.size(), 16u);
  EXPECT_EQ(e.even[0], 0);
  EXPECT_EQ(e.odd[2], 8);
}

TEST(BlockReduce, SectorsDoNotMix)
{
  std::mt19937_64 rng(32);
  const auto [qp, qm] = parity_projectors();
  for (int trial = 0; trial < 30; ++trial)
  {
    std::uniform_real_distribution<double> th(-kPi, kPi);
    const Superoperator s = build_superoperator(testing::random_easy_plane(rng).with_theta(th(rng)));
    EXPECT_LE(max_abs(qp * s.T * qm), 1e-13);
    EXPECT_LE(max_abs(qm * s.T * qp), 1e-13);
    const SectorBlocks b = block_reduce(s);
    EXPECT_LE(max_abs(lift_sectors(b) - s.T), 1e-15);
    EXPECT_LE(b.commutator, 1e-12);
    // The union of sector spectra is the full spectrum.
    ComplexVector both(16);
    both << eigenvalues(b.tau_plus), eigenvalues(b.tau_minus);
    EXPECT_LE(match_spectra(eigenvalues(s.T), both).max_distance, 1e-10);
  }
}

TEST(BlockReduce, PlusSectorHasFixedDiagonalBlock)
{
  const Superoperator s = build_superoperator(testing::point_a(0.37));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected.diagonal() << 1.0, 0.37 * 0.37, 0.37, 0.37;
  EXPECT_LE(max_abs(s.tau_plus.topLeftCorner(4, 4) - expected), 1e-15);
  // One population transfer, |down up> -> |up up>, couples the two halves.
  ComplexMatrix b = s.tau_plus.topRightCorner(4, 4);
  EXPECT_NEAR(b(0, 1).real(), 1.0 - 0.37 * 0.37, 1e-15);
  b(0, 1) = 0.0;
  EXPECT_LE(max_abs(b), 1e-15);
}

TEST(BlockReduce, RejectsABrokenSymmetry)
{
  ComplexMatrix T = build_superoperator(testing::point_a(0.5)).T;
  T(0, 4) += 1e-3;
  EXPECT_THROW(block_reduce(T), SymmetryViolation);
  // A local rotation about x breaks the conserved parity.
  GateSet g = build_gate_set(testing::point_a(0.5));
  g.V = ComplexMatrix((cplx(0.0, 0.3) * pauli::x()).exp());
  EXPECT_THROW(build_superoperator(g), SymmetryViolation);
}

TEST(ReferenceBlocks, DiagonalBlocksMatchProjection)
{
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 20; ++trial)
  {
    const ParameterPoint p = testing::random_easy_plane(rng);
    const Superoperator s = build_superoperator(p);
    const auto ref = testing::closed_form_sector_tables(p.q(), p.lambda(), p.epsilon());
    for (int blk = 0; blk < 2; ++blk)
    {
      const Index o = 4 * blk;
      EXPECT_LE(max_abs(s.tau_plus.block(o, o, 4, 4) - ref.plus.block(o, o, 4, 4)), 1e-12);
      EXPECT_LE(max_abs(s.tau_minus.block(o, o, 4, 4) - ref.minus.block(o, o, 4, 4)), 1e-12);
    }
  }
}

TEST(ReferenceBlocks, TranscriptionReproducesTheConjugateTransposedVariant)
{
  // Validates the transcription itself: every entry, including the off-diagonal blocks,
  // agrees with the variant whose jump factor is K (x) K^H.
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 20; ++trial)
  {
    const ParameterPoint p = testing::random_easy_plane(rng);
    const ComplexMatrix v = conjugate_transposed_variant(p);
    const auto ref = testing::closed_form_sector_tables(p.q(), p.lambda(), p.epsilon());
    const SectorEmbedding &e = sector_embedding();
    EXPECT_LE(max_abs(restrict_to(v, e.even) - ref.plus), 1e-12);
    EXPECT_LE(max_abs(restrict_to(v, e.odd) - ref.minus), 1e-12);
  }
}

TEST(ReferenceBlocks, OffDiagonalBlocksDifferFromTheChannel)
{
  // The channel moves population; the reference off-diagonal blocks move coherences.
  const ParameterPoint p = ParameterPoint::easy_plane(0.41, 0.7, 0.37);
  const Superoperator s = build_superoperator(p);
  const auto ref = testing::closed_form_sector_tables(p.q(), p.lambda(), p.epsilon());
  EXPECT_GT(max_abs(s.tau_plus.topRightCorner(4, 4) - ref.plus.topRightCorner(4, 4)), 0.5);
  EXPECT_GT(max_abs(s.tau_minus.bottomLeftCorner(4, 4) - ref.minus.bottomLeftCorner(4, 4)), 0.5);
  // The variant is not trace preserving.
  EXPECT_GT(trace_preservation_defect(conjugate_transposed_variant(p)), 1e-3);
}

TEST(Cptp, ChoiTraceAndRadiusOnRandomPoints)
{
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 40; ++trial)
  {
    std::uniform_real_distribution<double> th(-kPi, kPi);
    const Superoperator s = build_superoperator(testing::random_easy_plane(rng).with_theta(th(rng)));
    EXPECT_LE(trace_preservation_defect(s.T), 1e-12);
    const ComplexMatrix choi = choi_matrix(s.T);
    EXPECT_LE(max_abs(choi - choi.adjoint()), 1e-12);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(choi);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
    EXPECT_NEAR(spectral_radius(s.T), 1.0, 1e-10);
  }
}

TEST(Cptp, ChoiOfIdentityIsMaximallyEntangledProjector)
{
  const ComplexMatrix choi = choi_matrix(ComplexMatrix::Identity(16, 16));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(choi);
  EXPECT_NEAR(es.eigenvalues().maxCoeff(), 4.0, 1e-12);
  EXPECT_NEAR(es.eigenvalues().cwiseAbs().sum(), 4.0, 1e-12);
}

TEST(SteadyState, IsAValidFixedPoint)
{
  const Superoperator s = build_superoperator(testing::point_a(0.6));
  const ComplexMatrix rho = steady_state(s);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
  EXPECT_LE(max_abs(rho - rho.adjoint()), 1e-10);
  EXPECT_LE(max_abs(devectorize(s.T * vectorize(rho)) - rho), 1e-10);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
  EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
}

TEST(CharPoly, XiMatchesExtendedPrecisionOracle)
{
  using boost::multiprecision::cpp_complex_50;
  const cpp_complex_50 q = exp(cpp_complex_50(0.0, kPi / 4.0));
  const cpp_complex_50 l = exp(cpp_complex_50(0.3293, 0.0));
  const cpp_complex_50 e(0.4);
  const cpp_complex_50 one(1);
  const cpp_complex_50 q2 = q * q;
  const cpp_complex_50 l2 = l * l;
  const cpp_complex_50 num = l2 * q2 * q2 * (e * e + one) +
                             cpp_complex_50(2) * q2 * (l2 * l2 * e - l2 * (e + one) * (e + one) + e) +
                             l2 * (e * e + one);
  const cpp_complex_50 xi = num / ((l2 - q2) * (l2 * q2 - one));
  const cplx got = schur_xi(std::polar(1.0, kPi / 4.0), std::exp(0.3293), 0.4);
  EXPECT_LE(std::abs(got - cplx(static_cast<double>(xi.real()), static_cast<double>(xi.imag()))),
            1e-14);
  EXPECT_LE(std::abs(got - cplx(-0.80022144879629916294, 0.0)), 1e-14);
}

TEST(CharPoly, FactorsVanishOnRandomPoints)
{
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 40; ++trial)
  {
    const ParameterPoint p = testing::random_easy_plane(rng);
    const Superoperator s = build_superoperator(p);
    for (Sector sec : {Sector::Plus, Sector::Minus})
    {
      const CharPolyFactors f = schur_char_poly(s.tau(sec), sec, p);
      EXPECT_EQ(f.total_degree(), 8);
      EXPECT_TRUE(f.confirmed) << to_string(sec) << " residual " << f.max_residual;
      EXPECT_LE(f.max_residual, 1e-9);
    }
  }
}

TEST(CharPoly, XiQuadraticRootsAreMu7And8)
{
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial)
  {
    const ParameterPoint p = testing::random_easy_plane(rng);
    const double e = p.epsilon();
    const MonicFactor m{"xi", {e * e, schur_xi(p.q(), p.lambda(), e)}, 1};
    const AnalyticSpectrum a = analytic_spectrum(p);
    EXPECT_LE(std::abs(m(a.at(7))), 1e-12 * (1.0 + std::abs(a.at(7))));
    EXPECT_LE(std::abs(m(a.at(8))), 1e-12 * (1.0 + std::abs(a.at(8))));
  }
}

TEST(CharPoly, SecondFactorRootsAreScaledFirstFactorRoots)
{
  std::mt19937_64 rng(38);
  for (int trial = 0; trial < 20; ++trial)
  {
    const ParameterPoint p = testing::random_easy_plane(rng);
    const Superoperator s = build_superoperator(p);
    const CharPolyFactors f = schur_char_poly(s.tau_minus, Sector::Minus, p);
    ASSERT_EQ(f.factors.size(), 4u);
    for (int pair = 0; pair < 2; ++pair)
    {
      auto r1 = f.factors[static_cast<std::size_t>(2 * pair)].roots();
      auto r2 = f.factors[static_cast<std::size_t>(2 * pair + 1)].roots();
      ComplexVector a(2), b(2);
      a << p.epsilon() * r1[0], p.epsilon() * r1[1];
      b << r2[0], r2[1];
      EXPECT_LE(match_spectra(a, b).max_distance, 1e-12);
    }
  }
}

TEST(CharPoly, RequiresSuperintegrablePoint)
{
  const ParameterPoint p = testing::point_a(0.4).with_theta(0.1);
  const Superoperator s = build_superoperator(p);
  EXPECT_THROW(schur_char_poly(s.tau_minus, Sector::Minus, p), UnsupportedAnalytic);
  EXPECT_THROW(schur_char_poly(ComplexMatrix::Identity(4, 4), Sector::Plus, testing::point_a(0.4)),
               DimensionMismatch);
}

TEST(MonicFactor, StableQuadraticRoots)
{
  // (mu - 1e8)(mu - 1e-8) with severe cancellation in the textbook formula.
  const MonicFactor m{"wide", {1.0, -(1e8 + 1e-8)}, 1};
  auto r = m.roots();
  ASSERT_EQ(r.size(), 2u);
  const double small = std::min(std::abs(r[0]), std::abs(r[1]));
  EXPECT_NEAR(small, 1e-8, 1e-22);
}

}  // namespace
}  // namespace brickwork
