#include "spinorlz/majorana.hpp"

#include "spinorlz/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spinorlz {

namespace {

Complex ipow(Complex base, int exponent)
{
  Complex result = 1.0;
  for (int k = 0; k < exponent; ++k)
    result *= base;
  return result;
}

double log_factorial(int k) { return std::lgamma(k + 1.0); }

} // namespace

Matrix TwoLevelPropagator::matrix() const
{
  Matrix m(2, 2);
  m << alpha, beta, -std::conj(beta), std::conj(alpha);
  return m;
}

double TwoLevelPropagator::norm_defect() const
{
  return std::abs(std::norm(alpha) + std::norm(beta) - 1.0);
}

TwoLevelPropagator TwoLevelPropagator::from_matrix(const Matrix& m, double tol)
{
  if (m.rows() != 2 || m.cols() != 2)
    throw InvalidArgument("TwoLevelPropagator::from_matrix: expected a 2x2 matrix");
  require_square_finite(m, "TwoLevelPropagator::from_matrix");
  TwoLevelPropagator p{m(0, 0), m(0, 1)};
  const double form = std::max(std::abs(m(1, 0) + std::conj(p.beta)),
                               std::abs(m(1, 1) - std::conj(p.alpha)));
  if (form > tol || p.norm_defect() > tol)
    throw InvalidArgument("TwoLevelPropagator::from_matrix: matrix is not in SU(2) form");
  return p;
}

TwoLevelPropagator operator*(const TwoLevelPropagator& a, const TwoLevelPropagator& b)
{
  // first row of [[a1, b1], [-b1*, a1*]] [[a2, b2], [-b2*, a2*]]
  return {a.alpha * b.alpha - a.beta * std::conj(b.beta),
          a.alpha * b.beta + a.beta * std::conj(b.alpha)};
}

Matrix lift(const TwoLevelPropagator& p, int levels, double tol)
{
  if (levels < 2)
    throw InvalidArgument("lift: level count must be >= 2, got " + std::to_string(levels));
  if (!std::isfinite(p.alpha.real()) || !std::isfinite(p.alpha.imag()) ||
      !std::isfinite(p.beta.real()) || !std::isfinite(p.beta.imag()))
    throw InvalidArgument("lift: non-finite propagator entry");
  if (p.norm_defect() > tol)
    throw InvalidArgument("lift: |alpha|^2 + |beta|^2 != 1 (defect " +
                          std::to_string(p.norm_defect()) + ")");
  if (levels == 2)
    return p.matrix();

  // Symmetric-power action on x^p y^q / sqrt(p! q!), with
  // x -> alpha x - conj(beta) y and y -> beta x + conj(alpha) y.
  const int twoF = levels - 1;
  const Complex a = p.alpha;
  const Complex b = p.beta;
  const Complex mbc = -std::conj(p.beta);
  const Complex ac = std::conj(p.alpha);

  Matrix u = Matrix::Zero(levels, levels);
  for (int col = 0; col < levels; ++col)
  {
    const int pc = twoF - col; // powers of x in the input monomial
    const int qc = col;
    for (int row = 0; row < levels; ++row)
    {
      const int pr = twoF - row; // powers of x in the output monomial
      const int qr = row;
      const double logNorm =
        0.5 * (log_factorial(pc) + log_factorial(qc) + log_factorial(pr) + log_factorial(qr));

      Complex sum = 0.0;
      const int kmin = std::max(0, pr - qc);
      const int kmax = std::min(pc, pr);
      for (int k = kmin; k <= kmax; ++k)
      {
        const double weight =
          std::exp(logNorm - log_factorial(k) - log_factorial(pc - k) -
                   log_factorial(pr - k) - log_factorial(qc - pr + k));
        sum += weight * ipow(a, k) * ipow(mbc, pc - k) * ipow(b, pr - k) *
               ipow(ac, qc - pr + k);
      }
      u(row, col) = sum;
    }
  }
  return u;
}

Matrix lift_diagonal_phase(double sigma, int levels)
{
  if (levels < 2)
    throw InvalidArgument("lift_diagonal_phase: level count must be >= 2");
  if (!std::isfinite(sigma))
    throw InvalidArgument("lift_diagonal_phase: non-finite phase");
  return lift(TwoLevelPropagator{std::polar(1.0, -0.5 * sigma), 0.0}, levels);
}

} // namespace spinorlz
