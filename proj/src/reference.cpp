#include "paracomm/reference.hpp"

namespace paracomm::ref {

Field2D curve_apply(const TorusGrid& g, const SymbolA* A, const Field2D& f,
                    const Sigma& sigma, const std::vector<QuadNode>& nodes) {
  SpectralInterpolant interp(f);
  Field2D out(g);
  for (int i = 0; i < g.N1; ++i)
    for (int j = 0; j < g.N2; ++j) {
      const ParaPoint x = g.point(i, j);
      cplx acc(0.0, 0.0);
      for (const auto& q : nodes) {
        const ParaPoint y = x - curve_point(q.t, sigma);
        cplx val = interp(y) * q.w;
        if (A) val *= (*A)(x) - (*A)(y);
        acc += val;
      }
      out.at(i, j) = acc;
    }
  return out;
}

Field2D convolve(const Field2D& f, const Field2D& kernel) {
  const TorusGrid& g = f.grid;
  Field2D out(g);
  const double area = g.cell_area();
  for (int i = 0; i < g.N1; ++i)
    for (int j = 0; j < g.N2; ++j) {
      cplx acc(0.0, 0.0);
      for (int p = 0; p < g.N1; ++p)
        for (int q = 0; q < g.N2; ++q) {
          const int ii = ((i - p) % g.N1 + g.N1) % g.N1;
          const int jj = ((j - q) % g.N2 + g.N2) % g.N2;
          acc += f.at(ii, jj) * kernel.at(p, q);
        }
      out.at(i, j) = acc * area;
    }
  return out;
}

}  // namespace paracomm::ref
