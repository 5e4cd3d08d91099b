#pragma once

namespace ratchet {

// Standard normal CDF via erfc; good to machine precision.
double normal_cdf(double x);

// Standard normal quantile function (inverse CDF), rational-minimax
// evaluation with absolute error below 1e-15 on (0,1). Throws
// std::invalid_argument for p outside (0,1).
double normal_inv_cdf(double p);

}  // namespace ratchet
