#include "wpinv/testkit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wpinv::testkit {

void GenSpec::validate() const {
  if (n < 1) throw InvalidArgument("GenSpec.n must be positive");
  if (rank < 0 || rank > n) throw InvalidArgument("GenSpec.rank must lie in [0, n]");
  if (!(cond_target >= 1.0)) throw InvalidArgument("GenSpec.cond_target must be >= 1");
}

CMatrix random_unitary(Eigen::Index n, Rng& rng) {
  const CMatrix g = rng.complex_gaussian(n, n);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

RVector pinned_log_spectrum(Eigen::Index count, double lo, double hi, Rng& rng) {
  RVector s(count);
  if (count == 0) return s;
  for (Eigen::Index i = 0; i < count; ++i) s(i) = rng.log_uniform(lo, hi);
  std::sort(s.data(), s.data() + count, std::greater<>());
  s(0) = hi;
  if (count > 1) s(count - 1) = lo;
  return s;
}

Weight random_hpd(const GenSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const CMatrix q = random_unitary(spec.n, rng);
  const RVector d = pinned_log_spectrum(spec.n, 1.0, spec.cond_target, rng);
  return Weight::from_matrix(q * d.asDiagonal() * q.adjoint());
}

CMatrix random_fixed_rank(const GenSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const CMatrix u = random_unitary(spec.n, rng);
  const CMatrix v = random_unitary(spec.n, rng);
  const RVector s = pinned_log_spectrum(spec.rank, 1.0 / spec.cond_target, 1.0, rng);
  const Eigen::Index r = spec.rank;
  if (r == 0) return CMatrix::Zero(spec.n, spec.n);
  const CMatrix left = u.leftCols(r) * s.asDiagonal();  // n×r
  const CMatrix right = v.leftCols(r).adjoint();        // r×n
  return left * right;
}

Invertible random_invertible(Eigen::Index n, double cond, Rng& rng) {
  const CMatrix u = random_unitary(n, rng);
  const CMatrix v = random_unitary(n, rng);
  const RVector s = pinned_log_spectrum(n, 1.0 / cond, 1.0, rng);
  return {u * s.asDiagonal() * v.adjoint(), v * s.cwiseInverse().asDiagonal() * u.adjoint()};
}

namespace {

CMatrix block_diag(const CMatrix& top, const CMatrix& bottom) {
  const Eigen::Index k = top.rows();
  const Eigen::Index m = bottom.rows();
  CMatrix out = CMatrix::Zero(k + m, k + m);
  out.topLeftCorner(k, k) = top;
  out.bottomRightCorner(m, m) = bottom;
  return out;
}

CMatrix hpd_block(Eigen::Index n, double cond, Rng& rng) {
  if (n == 0) return CMatrix(0, 0);
  const CMatrix q = random_unitary(n, rng);
  const RVector d = pinned_log_spectrum(n, 1.0, rng.log_uniform(1.0, cond), rng);
  return q * d.asDiagonal() * q.adjoint();
}

Weight hpd_weight(Eigen::Index n, double cond_max, Rng& rng) {
  return Weight::from_matrix(hpd_block(n, cond_max, rng));
}

}  // namespace

CMatrix random_index_one(const GenSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const Eigen::Index n = spec.n;
  const Eigen::Index r = spec.rank;
  const Invertible s = random_invertible(n, rng.log_uniform(1.0, 10.0), rng);
  if (r == 0) return CMatrix::Zero(n, n);
  const Invertible c = random_invertible(r, spec.cond_target, rng);
  return s.m * block_diag(c.m, CMatrix::Zero(n - r, n - r)) * s.inv;
}

Triple weighted_ep_from_blocks(const Invertible& s, const CMatrix& c, const CMatrix& e1,
                               const CMatrix& e2, const CMatrix& f1, const CMatrix& f2) {
  const Eigen::Index n = s.m.rows();
  const Eigen::Index r = c.rows();
  if (r < 1 || r > n || e1.rows() != r || f1.rows() != r || e2.rows() != n - r ||
      f2.rows() != n - r) {
    throw DimensionMismatch("block sizes do not match the splitting");
  }
  const CMatrix a = s.m * block_diag(c, CMatrix::Zero(n - r, n - r)) * s.inv;
  const CMatrix e = s.inv.adjoint() * block_diag(e1, e2) * s.inv;
  const CMatrix f = s.inv.adjoint() * block_diag(f1, f2) * s.inv;
  return {a, Weight::from_matrix(0.5 * (e + e.adjoint())),
          Weight::from_matrix(0.5 * (f + f.adjoint()))};
}

Triple random_weighted_ep(Eigen::Index n, Eigen::Index r, std::uint64_t seed) {
  if (r < 1 || r > n) throw InvalidArgument("weighted-EP rank must satisfy 1 <= r <= n");
  Rng rng(seed);
  const Invertible s = random_invertible(n, rng.log_uniform(1.0, 4.0), rng);
  const Invertible c = random_invertible(r, rng.log_uniform(1.0, 10.0), rng);
  const CMatrix e1 = hpd_block(r, 10.0, rng);
  const CMatrix e2 = hpd_block(n - r, 10.0, rng);
  const CMatrix f1 = hpd_block(r, 10.0, rng);
  const CMatrix f2 = hpd_block(n - r, 10.0, rng);
  return weighted_ep_from_blocks(s, c.m, e1, e2, f1, f2);
}

CMatrix oracle_penrose_solve_2x2(const CMatrix& a, const Weight& e, const Weight& f) {
  if (a.rows() != 2 || a.cols() != 2 || e.dim() != 2 || f.dim() != 2) {
    throw DimensionMismatch("the closed-form oracle is 2x2 only");
  }
  const auto inv2 = [](const CMatrix& m) {
    const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    CMatrix out(2, 2);
    out << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return CMatrix(out / det);
  };
  const double scale = a.norm();
  if (scale == 0.0) return CMatrix::Zero(2, 2);
  const Complex det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  if (std::abs(det) > 1e-12 * scale * scale) return inv2(a);

  // Rank one: A = u w with u a nonzero column and w = u* A / |u|².
  // E·AB hermitian forces AB = u (Eu)* / (u*Eu); F·BA hermitian forces
  // BA = (F^{-1} w*) w / (w F^{-1} w*); BAB = B then fixes the scale.
  const Eigen::Index j = a.col(0).norm() >= a.col(1).norm() ? 0 : 1;
  const CVector u = a.col(j);
  const CMatrix w = u.adjoint() * a / u.squaredNorm();  // 1×2
  const CMatrix& em = e.matrix();
  const CMatrix f_inv = inv2(f.matrix());
  const Complex ueu = (u.adjoint() * em * u)(0, 0);
  const Complex wfw = (w * f_inv * w.adjoint())(0, 0);
  if (std::abs(ueu) == 0.0 || std::abs(wfw) == 0.0) {
    throw VerificationFailure("2x2 oracle elimination degenerated");
  }
  return f_inv * w.adjoint() * u.adjoint() * em / (ueu * wfw);
}

Triple penrose_instance(std::uint64_t seed, Eigen::Index n) {
  if (n < 0) throw InvalidArgument("dimension must be nonnegative");
  Rng rng(seed);
  const auto drawn = static_cast<Eigen::Index>(rng.uniform_int(2, 8));
  if (n == 0) n = drawn;
  const auto r = static_cast<Eigen::Index>(rng.uniform_int(0, static_cast<int>(n)));
  const GenSpec a_spec{n, r, rng.log_uniform(1.0, 1e4), rng.next_u64()};
  const GenSpec e_spec{n, n, rng.log_uniform(1.0, 1e3), rng.next_u64()};
  const GenSpec f_spec{n, n, rng.log_uniform(1.0, 1e3), rng.next_u64()};
  return {random_fixed_rank(a_spec), random_hpd(e_spec), random_hpd(f_spec)};
}

Triple constructed_ep_triple(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  const auto r = static_cast<Eigen::Index>(rng.uniform_int(1, static_cast<int>(n)));
  return random_weighted_ep(n, r, rng.next_u64());
}

Triple generic_index_one_triple(Eigen::Index n, std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("a non-EP index-one matrix needs n >= 2");
  Rng rng(seed);
  const auto r = static_cast<Eigen::Index>(rng.uniform_int(1, static_cast<int>(n) - 1));
  const GenSpec a_spec{n, r, rng.log_uniform(1.0, 10.0), rng.next_u64()};
  CMatrix a = random_index_one(a_spec);
  Weight e = hpd_weight(n, 100.0, rng);
  Weight f = hpd_weight(n, 100.0, rng);
  return {std::move(a), std::move(e), std::move(f)};
}

BlockInstance random_block_instance(Eigen::Index n, Eigen::Index k, std::uint64_t seed) {
  if (k < 1 || k >= n) throw InvalidArgument("block instance needs 1 <= k < n");
  Rng rng(seed);
  const Eigen::Index m = n - k;
  const int family = rng.uniform_int(0, 2);
  auto fixed_rank = [&](Eigen::Index size) {
    const auto r = static_cast<Eigen::Index>(rng.uniform_int(0, static_cast<int>(size)));
    return random_fixed_rank({size, r, rng.log_uniform(1.0, 10.0), rng.next_u64()});
  };
  CMatrix t11, t22, t12;
  switch (family) {
    case 0:
      t11 = fixed_rank(k);
      t22 = fixed_rank(m);
      t12 = CMatrix::Zero(k, m);
      break;
    case 1:
      t11 = random_invertible(k, rng.log_uniform(1.0, 10.0), rng).m;
      t22 = fixed_rank(m);
      t12 = rng.complex_gaussian(k, m) * t22;
      break;
    default:
      t11 = fixed_rank(k);
      t22 = random_invertible(m, rng.log_uniform(1.0, 10.0), rng).m;
      t12 = t11 * rng.complex_gaussian(k, m);
      break;
  }
  CMatrix t = CMatrix::Zero(n, n);
  t.topLeftCorner(k, k) = t11;
  t.topRightCorner(k, m) = t12;
  t.bottomRightCorner(m, m) = t22;
  const CMatrix e = block_diag(hpd_block(k, 100.0, rng), hpd_block(m, 100.0, rng));
  const CMatrix f = block_diag(hpd_block(k, 100.0, rng), hpd_block(m, 100.0, rng));
  return {BlockModel(t, k), BlockModel(e, k), BlockModel(f, k)};
}

CMatrix random_hermitian(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  const CMatrix g = rng.complex_gaussian(n, n);
  const CMatrix h = 0.5 * (g + g.adjoint());
  return h / induced_norm(h, NormKind::Induced2);
}

CMatrix random_generic(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  const CMatrix g = rng.complex_gaussian(n, n);
  return g / induced_norm(g, NormKind::Induced2);
}

}  // namespace wpinv::testkit
