#pragma once

#include <functional>

#include "toa/common.hpp"

namespace toa {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  RealVector nodes;
  RealVector weights;

  static const GaussLegendre& rule(int order);  // cached; order in [2, 256]
};

/// Integral of f over the open triangle {-l <= q' < q <= l} using the Duffy
/// map q = -l + 2lu, q' = -l + (q+l)v on a tensor Gauss-Legendre grid. Nodes
/// never touch the diagonal, so kernels with a jump across q = q' are smooth
/// on the integration domain.
Complex integrate_lower_triangle(double l, const GaussLegendre& rule,
                                 const std::function<Complex(double, double)>& f);

/// Integral over the full square [-l,l]^2 split along the diagonal.
Complex integrate_square_split(double l, const GaussLegendre& rule,
                               const std::function<Complex(double, double)>& f);

/// Deterministic parallel loop: [0, count) is split into contiguous blocks,
/// one per worker. Work items must write only to their own slots.
void parallel_for_index(Eigen::Index count, unsigned workers,
                        const std::function<void(Eigen::Index)>& body);

/// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(const RealVector& x, const RealVector& y);

}  // namespace toa
