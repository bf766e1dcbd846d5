#pragma once

// Deterministic instance generators and the independent 2×2 oracle. Every
// generator is a pure function of its arguments (see Rng for the algorithm).

#include <cstdint>

#include "wpinv/core.hpp"
#include "wpinv/rng.hpp"
#include "wpinv/structure.hpp"
#include "wpinv/weight.hpp"

namespace wpinv::testkit {

struct GenSpec {
  Eigen::Index n = 2;
  Eigen::Index rank = 2;
  double cond_target = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Haar-distributed unitary (QR of a complex Gaussian with phase fix).
CMatrix random_unitary(Eigen::Index n, Rng& rng);

/// Values log-spaced at random in [lo, hi] with both endpoints attained
/// (descending); a single value is hi.
RVector pinned_log_spectrum(Eigen::Index count, double lo, double hi, Rng& rng);

/// Q D Q* with D log-uniform in [1, cond_target], extremes pinned.
Weight random_hpd(const GenSpec& spec);

/// U_r diag(s) V_r* with s log-uniform in [1/cond_target, 1], extremes pinned.
CMatrix random_fixed_rank(const GenSpec& spec);

struct Invertible {
  CMatrix m;
  CMatrix inv;
};

/// Random invertible matrix with singular values in [1/cond, 1] and its
/// inverse assembled from the same factors.
Invertible random_invertible(Eigen::Index n, double cond, Rng& rng);

/// S block-diag(C, 0) S^{-1}: C is rank x rank with condition cond_target,
/// S has condition log-uniform in [1, 10].
CMatrix random_index_one(const GenSpec& spec);

struct Triple {
  CMatrix A;
  Weight E;
  Weight F;
};

/// A = S block-diag(C, 0) S^{-1}, E = S^{-*} block-diag(E1, E2) S^{-1} and
/// likewise F, so that the splitting projector S block-diag(I, 0) S^{-1} is
/// hermitian in both weighted algebras. Requires 1 <= r <= n.
Triple weighted_ep_from_blocks(const Invertible& s, const CMatrix& c, const CMatrix& e1,
                               const CMatrix& e2, const CMatrix& f1, const CMatrix& f2);

/// Random weighted-EP triple of rank r (S condition in [1, 4], C and the
/// weight blocks condition in [1, 10]).
Triple random_weighted_ep(Eigen::Index n, Eigen::Index r, std::uint64_t seed);

/// Closed-form weighted Moore-Penrose inverse of a 2×2 matrix obtained by
/// solving the four defining conditions directly; no SVD involved.
CMatrix oracle_penrose_solve_2x2(const CMatrix& a, const Weight& e, const Weight& f);

// Corpus instances shared by the command line and the acceptance suite.

/// rank in {0..n}, cond(A) in [1, 1e4], cond(E), cond(F) in [1, 1e3]; n is
/// drawn from {2..8} when passed as 0.
Triple penrose_instance(std::uint64_t seed, Eigen::Index n = 0);

/// Constructed weighted-EP triple, rank uniform in {1..n}.
Triple constructed_ep_triple(Eigen::Index n, std::uint64_t seed);

/// Index-one A of rank in {1..n-1} with generic weights (condition <= 100);
/// not weighted EP with probability one. Requires n >= 2.
Triple generic_index_one_triple(Eigen::Index n, std::uint64_t seed);

struct BlockInstance {
  BlockModel T;
  BlockModel E;
  BlockModel F;
};

/// Block-structured instance satisfying every hypothesis of the restriction
/// and quotient theorems: block-diagonal HPD weights and one of
///  - T block diagonal (blocks of any rank),
///  - T11 invertible, T12 = Z T22,
///  - T22 invertible, T12 = T11 Z,
/// each of which makes Y invariant for T†_{E,F} as well.
BlockInstance random_block_instance(Eigen::Index n, Eigen::Index k, std::uint64_t seed);

/// Hermitian matrix (G + G*)/2 normalized to unit spectral norm.
CMatrix random_hermitian(Eigen::Index n, std::uint64_t seed);

/// Complex Gaussian matrix normalized to unit spectral norm.
CMatrix random_generic(Eigen::Index n, std::uint64_t seed);

}  // namespace wpinv::testkit
