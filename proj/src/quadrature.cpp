#include "paracomm/quadrature.hpp"

#include <map>
#include <mutex>

namespace paracomm {

static std::vector<QuadNode> make_gl(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  std::vector<QuadNode> out(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev initial guess, Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    out[i] = {-x, w};
    out[n - 1 - i] = {x, w};
  }
  if (n % 2 == 1) out[n / 2].t = 0.0;
  return out;
}

const std::vector<QuadNode>& gauss_legendre(int n) {
  static std::map<int, std::vector<QuadNode>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gl(n)).first;
  return it->second;
}

std::vector<QuadNode> gauss_panel(double a, double b, int n) {
  const auto& ref = gauss_legendre(n);
  std::vector<QuadNode> out(ref.size());
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (std::size_t i = 0; i < ref.size(); ++i)
    out[i] = {mid + half * ref[i].t, half * ref[i].w};
  return out;
}

std::vector<QuadNode> gauss_panels(const std::vector<double>& edges, int n) {
  std::vector<QuadNode> out;
  if (edges.size() < 2) return out;
  out.reserve((edges.size() - 1) * n);
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    auto panel = gauss_panel(edges[k], edges[k + 1], n);
    out.insert(out.end(), panel.begin(), panel.end());
  }
  return out;
}

}  // namespace paracomm
