#include <algorithm>

#include "support.hpp"
#include "wpinv/ep.hpp"
#include "wpinv/geninv.hpp"
#include "wpinv/rng.hpp"
#include "wpinv/testkit.hpp"

namespace wpinv {
namespace {

using test::close;
using test::diag;
using test::mat;
using namespace testkit;

TEST(GenSpec, Validation) {
  EXPECT_THROW(random_fixed_rank({3, 4, 1.0, 0}), InvalidArgument);
  EXPECT_THROW(random_fixed_rank({3, 2, 0.5, 0}), InvalidArgument);
  EXPECT_THROW(random_hpd({0, 0, 1.0, 0}), InvalidArgument);
}

TEST(RandomUnitary, IsUnitary) {
  Rng rng(1);
  const CMatrix u = random_unitary(6, rng);
  EXPECT_LE((u.adjoint() * u - identity(6)).norm(), 1e-13);
}

TEST(RandomHpd, Examples) {
  EXPECT_TRUE(close(random_hpd({4, 4, 1.0, 3}).matrix(), identity(4), 1e-14));
  EXPECT_EQ(random_hpd({4, 4, 50.0, 3}).matrix(), random_hpd({4, 4, 50.0, 3}).matrix());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(random_hpd({2, 2, 4.0, 8}).matrix());
  EXPECT_NEAR(es.eigenvalues()(0), 1.0, 1e-13);
  EXPECT_NEAR(es.eigenvalues()(1), 4.0, 1e-13);
}

TEST(RandomHpd, ConditionMatchesTarget) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Weight w = random_hpd({5, 5, 1e3, seed});
    EXPECT_NEAR(w.condition(), 1e3, 1e-6);
  }
}

TEST(RandomFixedRank, Examples) {
  EXPECT_EQ(random_fixed_rank({4, 0, 10.0, 1}).norm(), 0.0);
  const CMatrix full = random_fixed_rank({4, 4, 10.0, 2});
  EXPECT_GT(std::abs(full.determinant()), 1e-6);
  EXPECT_EQ(random_fixed_rank({5, 3, 10.0, 2}), random_fixed_rank({5, 3, 10.0, 2}));
  for (Eigen::Index r = 0; r <= 6; ++r) {
    const CMatrix m = random_fixed_rank({6, r, 1e4, 40 + static_cast<std::uint64_t>(r)});
    EXPECT_EQ(rank(m), r);
    if (r > 0) {
      const RVector s = singular_values(m);
      EXPECT_NEAR(s(0), 1.0, 1e-12);
      if (r > 1) {
        EXPECT_NEAR(s(0) / s(r - 1), 1e4, 1e-4);
      }
    }
  }
}

TEST(RandomIndexOne, Examples) {
  EXPECT_GT(std::abs(random_index_one({3, 3, 10.0, 1}).determinant()), 1e-8);
  EXPECT_EQ(random_index_one({3, 0, 10.0, 1}).norm(), 0.0);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 5);
    const Eigen::Index r = static_cast<Eigen::Index>(seed % static_cast<std::uint64_t>(n + 1));
    const CMatrix a = random_index_one({n, r, 10.0, seed});
    EXPECT_EQ(rank(a), r);
    EXPECT_TRUE(group_inverse(a).exists) << "seed " << seed;
  }
}

TEST(RandomIndexOne, NilpotentPerturbationDestroysGroupInverse) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    const Eigen::Index n = 4;
    const Eigen::Index r = 2;
    const Invertible s = random_invertible(n, 3.0, rng);
    const Invertible c = random_invertible(r, 3.0, rng);
    CMatrix core = CMatrix::Zero(n, n);
    core.topLeftCorner(r, r) = c.m;
    EXPECT_TRUE(group_inverse(s.m * core * s.inv).exists);
    core(r, r + 1) = 1.0;  // strictly upper nilpotent block on the kernel part
    EXPECT_FALSE(group_inverse(s.m * core * s.inv).exists) << "seed " << seed;
  }
}

TEST(RandomWeightedEp, Examples) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Triple t = random_weighted_ep(3, 3, seed);
    EXPECT_EQ(rank(t.A), 3);
    EXPECT_TRUE(is_weighted_ep(t.A, t.E, t.F));
  }
  const Invertible s{identity(2), identity(2)};
  const Triple t = weighted_ep_from_blocks(s, mat({{1}}), mat({{2}}), mat({{1}}), mat({{1}}), mat({{3}}));
  EXPECT_TRUE(close(t.A, diag({1, 0}), 0.0));
  EXPECT_TRUE(close(t.E.matrix(), diag({2, 1}), 0.0));
  EXPECT_TRUE(close(t.F.matrix(), diag({1, 3}), 0.0));
  const CMatrix b = weighted_pinv(t.A, t.E, t.F).B;
  EXPECT_LE((t.A * b - b * t.A).norm(), 1e-14);
  EXPECT_TRUE(is_weighted_ep(t.A, t.E, t.F));
  EXPECT_THROW(random_weighted_ep(3, 0, 1), InvalidArgument);
  EXPECT_THROW(random_weighted_ep(3, 4, 1), InvalidArgument);
}

TEST(RandomWeightedEp, SplittingProjectorHermitianInBothWeights) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Triple t = constructed_ep_triple(5, seed);
    const GroupInvResult g = group_inverse(t.A);
    ASSERT_TRUE(g.exists);
    const CMatrix p = t.A * *g.sharp;  // spectral projector onto R(A) along N(A)
    const CMatrix ep = t.E.matrix() * p;
    const CMatrix fp = t.F.matrix() * p;
    EXPECT_LE((ep - ep.adjoint()).norm(), 1e-9 * ep.norm()) << "seed " << seed;
    EXPECT_LE((fp - fp.adjoint()).norm(), 1e-9 * fp.norm()) << "seed " << seed;
  }
}

TEST(RandomWeightedEp, BatteryAllTrue) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Triple t = constructed_ep_triple(4, seed);
    EXPECT_TRUE(is_weighted_ep(t.A, t.E, t.F));
    EXPECT_EQ(characterization_battery(t.A, t.E, t.F).consensus, Consensus::AllTrue) << "seed " << seed;
  }
}

TEST(GenericIndexOne, NotEp) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Triple t = generic_index_one_triple(4, seed);
    const Eigen::Index r = rank(t.A);
    EXPECT_GE(r, 1);
    EXPECT_LE(r, 3);
    EXPECT_FALSE(is_weighted_ep(t.A, t.E, t.F)) << "seed " << seed;
  }
  EXPECT_THROW(generic_index_one_triple(1, 0), InvalidArgument);
}

TEST(Oracle2x2, Examples) {
  const Weight e = Weight::from_matrix(mat({{2, 1}, {1, 1}}));
  EXPECT_TRUE(close(oracle_penrose_solve_2x2(diag({1, 0}), e, Weight::identity(2)), mat({{1, 0.5}, {0, 0}}), 1e-15));
  const CMatrix a = mat({{1, 2}, {3, 4}});
  EXPECT_TRUE(close(oracle_penrose_solve_2x2(a, e, e), a.inverse(), 1e-14));
  EXPECT_EQ(oracle_penrose_solve_2x2(CMatrix::Zero(2, 2), e, e).norm(), 0.0);
  EXPECT_THROW(oracle_penrose_solve_2x2(identity(3), Weight::identity(3), Weight::identity(3)), DimensionMismatch);
}

TEST(Oracle2x2, SatisfiesDefiningConditionsAndAgreesWithFormula) {
  Rng rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const Weight e = random_hpd({2, 2, rng.log_uniform(1.0, 100.0), rng.next_u64()});
    const Weight f = random_hpd({2, 2, rng.log_uniform(1.0, 100.0), rng.next_u64()});
    const CMatrix a = trial % 2 == 0 ? CMatrix(rng.complex_gaussian(2, 1) * rng.complex_gaussian(1, 2))
                                     : rng.complex_gaussian(2, 2);
    const CMatrix oracle = oracle_penrose_solve_2x2(a, e, f);
    for (double r : weighted_penrose_residuals(a, oracle, e, f)) EXPECT_LE(r, 1e-12) << "trial " << trial;
    EXPECT_LE(rel_gap(oracle, weighted_pinv(a, e, f).B), 1e-10) << "trial " << trial;
  }
}

TEST(Corpus, PenroseInstanceRanges) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Triple t = penrose_instance(seed);
    EXPECT_GE(t.A.rows(), 2);
    EXPECT_LE(t.A.rows(), 8);
    EXPECT_LE(t.E.condition(), 1e3 * (1 + 1e-9));
    EXPECT_LE(t.F.condition(), 1e3 * (1 + 1e-9));
  }
  EXPECT_EQ(penrose_instance(5, 3).A.rows(), 3);
  EXPECT_EQ(penrose_instance(5).A, penrose_instance(5).A);
}

TEST(Corpus, BlockInstancesSatisfyHypotheses) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const BlockInstance b = random_block_instance(5, 2, seed);
    EXPECT_TRUE(b.T.invariant(1e-14));
    EXPECT_EQ(b.E.upper_right().norm(), 0.0);
    EXPECT_EQ(b.F.upper_right().norm(), 0.0);
    const CMatrix pinv = weighted_pinv(b.T.matrix(), Weight::from_matrix(b.E.matrix()),
                                       Weight::from_matrix(b.F.matrix())).B;
    EXPECT_LE(pinv.bottomLeftCorner(3, 2).norm(), 1e-10 * pinv.norm()) << "seed " << seed;
  }
  EXPECT_THROW(random_block_instance(3, 3, 0), InvalidArgument);
}

TEST(Corpus, HermitianAndGeneric) {
  const CMatrix h = random_hermitian(4, 1);
  EXPECT_EQ(h, h.adjoint());
  EXPECT_NEAR(induced_norm(h, NormKind::Induced2), 1.0, 1e-12);
  EXPECT_NEAR(induced_norm(random_generic(4, 1), NormKind::Induced2), 1.0, 1e-12);
}

}  // namespace
}  // namespace wpinv
