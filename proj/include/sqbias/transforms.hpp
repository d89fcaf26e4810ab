#pragma once

#include <span>

#include "sqbias/distribution.hpp"

namespace sqbias {

// Reweights a nonnegative law by x/EX. Atoms at 0 lose all mass and are
// dropped; point masses at c > 0 are fixed points.
Distribution size_bias(const Distribution& d);

// Reweights by x^2/EX^2. Symmetric two-point laws are fixed points; atoms at
// 0 are dropped.
Distribution square_bias(const Distribution& d);

// Maps a mean-zero law to the absolutely continuous law with density
// EX 1(X > x) / EX^2. The output is piecewise polynomial; when the residual
// floating-point mean forces a renormalization its factor is written to
// *renorm (1 when no adjustment was needed).
Distribution zero_bias(const Distribution& d, double* renorm = nullptr);

// size_bias applied twice; coincides with square_bias on nonnegative laws.
Distribution double_size_bias(const Distribution& d);

// Law of U * Xsq where U is uniform on [-1, 1] independent of Xsq, the
// square-bias transform of d. Defined for purely atomic mean-zero d.
Distribution uniform_product_square_bias(const Distribution& d);

// Zero bias of a sum of independent mean-zero discrete summands, assembled
// as the mixture over i of (sum of the other summands) + zero_bias(summand i)
// with weights proportional to the summand variances.
Distribution zero_bias_decomposition(std::span<const Distribution> summands);

// Exact convolution; at least one side must be purely atomic.
Distribution convolve(const Distribution& a, const Distribution& b);

}  // namespace sqbias
