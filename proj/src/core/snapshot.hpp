#pragma once

#include <string>
#include <vector>

#include "core/eos.hpp"
#include "core/grid.hpp"

namespace esfv {

// Conserved-component names for the system, e.g. rho,m1,m2,E.
std::vector<std::string> component_names(const EulerModel& model);

struct Snapshot {
  GridSpec grid;
  int components = 0;
  double time = 0.0;
  std::vector<std::string> names;
  Field field;
};

// Self-describing binary container: magic + header {dim, n, M, time,
// component names} followed by the cell values in lexicographic order.
void write_snapshot(const std::string& path, const Field& field, double time,
                    const std::vector<std::string>& names);
Snapshot read_snapshot(const std::string& path);

// One row per cell: multi-index, cell-center coordinates, components.
void write_field_csv(const std::string& path, const Field& field,
                     const std::vector<std::string>& names);

}  // namespace esfv
