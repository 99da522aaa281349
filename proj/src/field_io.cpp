#include "paracomm/field_io.hpp"

#include <fstream>
#include <sstream>

#include "paracomm/csv.hpp"

namespace paracomm {

void write_field_csv(const Field2D& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_field_csv: cannot open '" + path + "'");
  out << "# grid " << format_double(f.grid.L1) << " " << format_double(f.grid.L2) << " "
      << f.grid.N1 << " " << f.grid.N2 << "\n";
  out << "i,j,re,im\n";
  for (int i = 0; i < f.grid.N1; ++i)
    for (int j = 0; j < f.grid.N2; ++j)
      out << i << "," << j << "," << format_double(f.at(i, j).real()) << ","
          << format_double(f.at(i, j).imag()) << "\n";
}

Field2D read_field_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_field_csv: cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line.rfind("# grid", 0) != 0)
    throw std::runtime_error("read_field_csv: missing grid line");
  std::istringstream gl(line.substr(6));
  double L1, L2;
  int N1, N2;
  if (!(gl >> L1 >> L2 >> N1 >> N2)) throw std::runtime_error("read_field_csv: bad grid line");
  Field2D f(TorusGrid(L1, L2, N1, N2));
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    int idx[2];
    double val[2];
    for (int c = 0; c < 2; ++c) {
      if (!std::getline(ss, cell, ',')) throw std::runtime_error("read_field_csv: short row");
      idx[c] = std::stoi(cell);
    }
    for (int c = 0; c < 2; ++c) {
      if (!std::getline(ss, cell, ',')) throw std::runtime_error("read_field_csv: short row");
      val[c] = std::stod(cell);
    }
    f.at(idx[0], idx[1]) = cplx(val[0], val[1]);
  }
  return f;
}

}  // namespace paracomm
