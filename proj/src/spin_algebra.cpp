#include "spinorlz/spin_algebra.hpp"

#include "spinorlz/errors.hpp"

#include <cmath>
#include <string>

namespace spinorlz {

using namespace std::complex_literals;

SpinOperators make_spin_operators(int levels)
{
  if (levels < 2)
    throw InvalidArgument("make_spin_operators: level count must be >= 2, got " +
                          std::to_string(levels));

  const double f = 0.5 * (levels - 1);
  const Matrix zero = Matrix::Zero(levels, levels);

  // S+ |m> = sqrt(F(F+1) - m(m+1)) |m+1>; row i holds m = F - i.
  Matrix raise = zero;
  for (int i = 1; i < levels; ++i)
  {
    const double m = f - i;
    raise(i - 1, i) = std::sqrt(f * (f + 1) - m * (m + 1));
  }
  const Matrix lower = raise.adjoint();

  SpinOperators ops;
  ops.levels = levels;
  ops.sx = 0.5 * (raise + lower);
  ops.sy = -0.5i * (raise - lower);
  ops.sz = zero;
  for (int i = 0; i < levels; ++i)
    ops.sz(i, i) = f - i;
  return ops;
}

bool all_finite(const Matrix& m)
{
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

void require_square_finite(const Matrix& m, const char* what)
{
  if (m.rows() < 1 || m.rows() != m.cols())
    throw InvalidArgument(std::string(what) + ": matrix must be square and non-empty");
  if (!all_finite(m))
    throw InvalidArgument(std::string(what) + ": non-finite matrix entry");
}

Matrix compose(const Matrix& a, const Matrix& b)
{
  require_square_finite(a, "compose");
  require_square_finite(b, "compose");
  if (a.rows() != b.rows())
    throw InvalidArgument("compose: dimension mismatch (" + std::to_string(a.rows()) +
                          " vs " + std::to_string(b.rows()) + ")");
  return a * b;
}

Matrix compose(std::span<const Matrix> factors)
{
  if (factors.empty())
    throw InvalidArgument("compose: empty factor list");
  Matrix product = factors.front();
  require_square_finite(product, "compose");
  for (std::size_t k = 1; k < factors.size(); ++k)
    product = compose(product, factors[k]);
  return product;
}

Matrix commutator(const Matrix& a, const Matrix& b)
{
  return compose(a, b) - compose(b, a);
}

double unitarity_defect(const Matrix& m)
{
  require_square_finite(m, "unitarity_defect");
  const Matrix defect = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
  return defect.cwiseAbs().maxCoeff();
}

bool is_unitary(const Matrix& m, double tol)
{
  if (!(tol > 0))
    throw InvalidArgument("is_unitary: tolerance must be positive");
  return unitarity_defect(m) <= tol;
}

bool is_hermitian(const Matrix& m, double tol)
{
  require_square_finite(m, "is_hermitian");
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Matrix expm_hermitian_generator(const Matrix& h, double t)
{
  require_square_finite(h, "expm_hermitian_generator");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (!is_hermitian(h, 1e-12 * scale))
    throw InvalidArgument("expm_hermitian_generator: generator is not Hermitian");

  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  if (eig.info() != Eigen::Success)
    throw NumericalError("expm_hermitian_generator: eigendecomposition failed");

  const Eigen::VectorXd& w = eig.eigenvalues();
  Eigen::VectorXcd phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k)
    phases(k) = std::polar(1.0, -w(k) * t);
  const Matrix& v = eig.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

StateVector basis_state(int levels, int index)
{
  if (levels < 1 || index < 0 || index >= levels)
    throw InvalidArgument("basis_state: index out of range");
  StateVector psi = StateVector::Zero(levels);
  psi(index) = 1.0;
  return psi;
}

} // namespace spinorlz
