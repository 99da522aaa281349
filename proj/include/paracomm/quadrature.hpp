#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace paracomm {

struct QuadNode {
  double t = 0.0;
  double w = 0.0;
};

/// Gauss-Legendre nodes/weights on [-1,1], by Newton iteration on P_n.
const std::vector<QuadNode>& gauss_legendre(int n);

/// Nodes/weights for [a,b] from the reference rule.
std::vector<QuadNode> gauss_panel(double a, double b, int n);

/// Composite Gauss rule: n-point panels on each [edges[k], edges[k+1]].
std::vector<QuadNode> gauss_panels(const std::vector<double>& edges, int n);

inline double integrate(const std::vector<QuadNode>& nodes,
                        const std::function<double(double)>& f) {
  double s = 0.0;
  for (const auto& q : nodes) s += q.w * f(q.t);
  return s;
}

}  // namespace paracomm
