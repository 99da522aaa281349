#pragma once

// Field2D serialization as CSV rows (i, j, re, im), with the grid on a
// leading comment line. Used by the golden-fixture tests.

#include <string>

#include "paracomm/grid.hpp"

namespace paracomm {

void write_field_csv(const Field2D& f, const std::string& path);
Field2D read_field_csv(const std::string& path);

}  // namespace paracomm
