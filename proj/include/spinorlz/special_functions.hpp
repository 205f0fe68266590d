#pragma once

namespace spinorlz::special {

/// Im ln Gamma(1 - i y) on the branch continuous in y, i.e. arg Gamma(1 - i y)
/// without the wrap into (-pi, pi].
double arg_gamma_one_minus_i(double y);

} // namespace spinorlz::special
