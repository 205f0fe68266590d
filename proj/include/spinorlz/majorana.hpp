#pragma once

#include "spinorlz/spin_algebra.hpp"

namespace spinorlz {

/// SU(2) element [[alpha, beta], [-conj(beta), conj(alpha)]].
struct TwoLevelPropagator
{
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};

  Matrix matrix() const;

  /// | |alpha|^2 + |beta|^2 - 1 |
  double norm_defect() const;

  TwoLevelPropagator transpose() const { return {alpha, -std::conj(beta)}; }

  /// Reads (alpha, beta) from the first row of a 2x2 matrix after checking it
  /// has the SU(2) form within `tol`.
  static TwoLevelPropagator from_matrix(const Matrix& m, double tol = 1e-10);
};

/// Matrix product of two SU(2) elements, kept in (alpha, beta) form.
TwoLevelPropagator operator*(const TwoLevelPropagator& a, const TwoLevelPropagator& b);

/// Image of `p` in the spin-(n-1)/2 irreducible representation (Majorana
/// lift). Basis order m = F, ..., -F. For n = 2 returns p.matrix().
/// Throws InvalidArgument if |alpha|^2 + |beta|^2 deviates from 1 by more
/// than `tol`.
Matrix lift(const TwoLevelPropagator& p, int levels, double tol = 1e-12);

/// Lift of diag(exp(-i sigma/2), exp(i sigma/2)), i.e. diag(exp(-i m sigma)).
Matrix lift_diagonal_phase(double sigma, int levels);

} // namespace spinorlz
