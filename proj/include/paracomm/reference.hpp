#pragma once

// Plain serial reference implementations of the hot kernels, kept for
// testing and benchmarking against the spectral/OpenMP production paths.
// These evaluate f(x - gamma(t)) point by point through the interpolant
// instead of batching shifts through the FFT.

#include "paracomm/operators.hpp"

namespace paracomm::ref {

/// Curve integral sum_k w_k [A(x)-A(x-gamma(t_k))] f(x-gamma(t_k)) with the
/// bracket omitted when A is null.
Field2D curve_apply(const TorusGrid& g, const SymbolA* A, const Field2D& f,
                    const Sigma& sigma, const std::vector<QuadNode>& nodes);

/// Direct spatial circular convolution sum.
Field2D convolve(const Field2D& f, const Field2D& kernel);

}  // namespace paracomm::ref
