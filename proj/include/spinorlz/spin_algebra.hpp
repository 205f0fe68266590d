#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>

namespace spinorlz {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Angular momentum operators of the spin-(n-1)/2 representation, hbar = 1.
/// Basis order is m = F, F-1, ..., -F.
struct SpinOperators
{
  int levels = 0;
  Matrix sx;
  Matrix sy;
  Matrix sz;

  double spin() const { return 0.5 * (levels - 1); }
};

SpinOperators make_spin_operators(int levels);

/// Matrix product a*b. Throws InvalidArgument on dimension mismatch or
/// non-finite entries.
Matrix compose(const Matrix& a, const Matrix& b);

/// Ordered product factors[0] * factors[1] * ... .
Matrix compose(std::span<const Matrix> factors);

Matrix commutator(const Matrix& a, const Matrix& b);

/// max-abs entry of M^dagger M - I.
double unitarity_defect(const Matrix& m);

bool is_unitary(const Matrix& m, double tol = 1e-12);

bool is_hermitian(const Matrix& m, double tol = 1e-12);

/// exp(-i H t) for Hermitian H, via the spectral decomposition.
Matrix expm_hermitian_generator(const Matrix& h, double t);

StateVector basis_state(int levels, int index);

bool all_finite(const Matrix& m);

void require_square_finite(const Matrix& m, const char* what);

} // namespace spinorlz
