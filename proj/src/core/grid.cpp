#include "core/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace esfv {

std::int64_t GridSpec::cell_count() const {
  std::int64_t count = 1;
  for (int a = 0; a < dim; ++a) {
    count *= n;
  }
  return count;
}

std::int64_t GridSpec::stride(int axis) const {
  std::int64_t s = 1;
  for (int a = axis + 1; a < dim; ++a) {
    s *= n;
  }
  return s;
}

std::array<int, 3> GridSpec::coords(std::int64_t cell) const {
  std::array<int, 3> ijk = {0, 0, 0};
  for (int a = dim - 1; a >= 0; --a) {
    ijk[a] = static_cast<int>(cell % n);
    cell /= n;
  }
  return ijk;
}

std::int64_t GridSpec::index(const std::array<int, 3>& ijk) const {
  std::int64_t cell = 0;
  for (int a = 0; a < dim; ++a) {
    cell = cell * n + ijk[a];
  }
  return cell;
}

std::int64_t GridSpec::neighbor(std::int64_t cell, int axis, int offset) const {
  const std::int64_t s = stride(axis);
  const int i = static_cast<int>((cell / s) % n);
  int j = (i + offset) % n;
  if (j < 0) {
    j += n;
  }
  return cell + static_cast<std::int64_t>(j - i) * s;
}

std::array<double, 3> GridSpec::center(std::int64_t cell) const {
  const std::array<int, 3> ijk = coords(cell);
  const double h = cell_width();
  std::array<double, 3> x = {0.0, 0.0, 0.0};
  for (int a = 0; a < dim; ++a) {
    x[a] = (ijk[a] + 0.5) * h;
  }
  return x;
}

Field Field::zeros(const GridSpec& grid, int components) {
  Field f;
  f.grid = grid;
  f.components = components;
  f.values.assign(static_cast<std::size_t>(grid.cell_count()) * components, 0.0);
  return f;
}

bool Field::all_finite() const {
  for (double v : values) {
    if (!std::isfinite(v)) {
      return false;
    }
  }
  return true;
}

Field project(const PointSampler& sampler, const GridSpec& grid, int components) {
  Field out = Field::zeros(grid, components);
  const double h = grid.cell_width();
  // Gauss-Legendre 2-point nodes relative to the cell center.
  const double node = h * 0.5 / std::sqrt(3.0);
  const int points_per_axis = 2;
  int point_count = 1;
  for (int a = 0; a < grid.dim; ++a) {
    point_count *= points_per_axis;
  }
  std::vector<double> sample(components);
  const std::int64_t cells = grid.cell_count();
  for (std::int64_t k = 0; k < cells; ++k) {
    const std::array<double, 3> c = grid.center(k);
    for (int p = 0; p < point_count; ++p) {
      std::array<double, 3> x = c;
      int bits = p;
      for (int a = 0; a < grid.dim; ++a) {
        x[a] += ((bits & 1) ? node : -node);
        bits >>= 1;
      }
      sampler(x, sample);
      for (int m = 0; m < components; ++m) {
        out.at(k, m) += sample[m];
      }
    }
    const double w = 1.0 / point_count;
    for (int m = 0; m < components; ++m) {
      out.at(k, m) *= w;
    }
  }
  return out;
}

Field diff(const Field& field, int axis, DiffMode mode) {
  const GridSpec& g = field.grid;
  Field out = Field::zeros(g, field.components);
  const double h = g.cell_width();
  const std::int64_t cells = g.cell_count();
  for (std::int64_t k = 0; k < cells; ++k) {
    const std::int64_t fwd = g.neighbor(k, axis, +1);
    const std::int64_t bwd = g.neighbor(k, axis, -1);
    for (int m = 0; m < field.components; ++m) {
      double d = 0.0;
      switch (mode) {
        case DiffMode::Central:
          d = (field.at(fwd, m) - field.at(bwd, m)) / (2.0 * h);
          break;
        case DiffMode::Forward:
          d = (field.at(fwd, m) - field.at(k, m)) / h;
          break;
        case DiffMode::Backward:
          d = (field.at(k, m) - field.at(bwd, m)) / h;
          break;
      }
      out.at(k, m) = d;
    }
  }
  return out;
}

Field laplacian_h(const Field& field) {
  const GridSpec& g = field.grid;
  Field out = Field::zeros(g, field.components);
  const double h2 = g.cell_width() * g.cell_width();
  const std::int64_t cells = g.cell_count();
  for (std::int64_t k = 0; k < cells; ++k) {
    for (int a = 0; a < g.dim; ++a) {
      const std::int64_t fwd = g.neighbor(k, a, +1);
      const std::int64_t bwd = g.neighbor(k, a, -1);
      for (int m = 0; m < field.components; ++m) {
        out.at(k, m) += (field.at(fwd, m) - 2.0 * field.at(k, m) + field.at(bwd, m)) / h2;
      }
    }
  }
  return out;
}

Field div_central(const Field& vfield) {
  const GridSpec& g = vfield.grid;
  if (vfield.components != g.dim) {
    throw std::logic_error("div_central: field must have one component per axis");
  }
  Field out = Field::zeros(g, 1);
  const double h = g.cell_width();
  const std::int64_t cells = g.cell_count();
  for (std::int64_t k = 0; k < cells; ++k) {
    double d = 0.0;
    for (int a = 0; a < g.dim; ++a) {
      const std::int64_t fwd = g.neighbor(k, a, +1);
      const std::int64_t bwd = g.neighbor(k, a, -1);
      d += (vfield.at(fwd, a) - vfield.at(bwd, a)) / (2.0 * h);
    }
    out.at(k, 0) = d;
  }
  return out;
}

std::vector<double> jump(const Field& field, const FaceRef& face) {
  const std::int64_t other = field.grid.neighbor(face.cell, face.axis, face.orientation);
  std::vector<double> out(field.components);
  for (int m = 0; m < field.components; ++m) {
    out[m] = field.at(other, m) - field.at(face.cell, m);
  }
  return out;
}

std::vector<double> avg(const Field& field, const FaceRef& face) {
  const std::int64_t other = field.grid.neighbor(face.cell, face.axis, face.orientation);
  std::vector<double> out(field.components);
  for (int m = 0; m < field.components; ++m) {
    out[m] = 0.5 * (field.at(other, m) + field.at(face.cell, m));
  }
  return out;
}

std::vector<double> integrate(const Field& field) {
  std::vector<double> total(field.components, 0.0);
  const std::int64_t cells = field.grid.cell_count();
  for (std::int64_t k = 0; k < cells; ++k) {
    for (int m = 0; m < field.components; ++m) {
      total[m] += field.at(k, m);
    }
  }
  double vol = 1.0;
  for (int a = 0; a < field.grid.dim; ++a) {
    vol *= field.grid.cell_width();
  }
  for (double& t : total) {
    t *= vol;
  }
  return total;
}

Field cyclic_shift(const Field& field, const std::array<int, 3>& offset) {
  const GridSpec& g = field.grid;
  Field out = Field::zeros(g, field.components);
  const std::int64_t cells = g.cell_count();
  for (std::int64_t k = 0; k < cells; ++k) {
    std::array<int, 3> ijk = g.coords(k);
    for (int a = 0; a < g.dim; ++a) {
      int j = (ijk[a] + offset[a]) % g.n;
      if (j < 0) {
        j += g.n;
      }
      ijk[a] = j;
    }
    const std::int64_t dst = g.index(ijk);
    for (int m = 0; m < field.components; ++m) {
      out.at(dst, m) = field.at(k, m);
    }
  }
  return out;
}

Field restrict_to(const Field& field, int coarse_n) {
  const GridSpec& g = field.grid;
  if (coarse_n < 1 || g.n % coarse_n != 0) {
    throw std::logic_error("restrict_to: fine n must be a multiple of coarse n");
  }
  const int ratio = g.n / coarse_n;
  GridSpec coarse{g.dim, coarse_n};
  Field out = Field::zeros(coarse, field.components);
  const std::int64_t cells = g.cell_count();
  double block = 1.0;
  for (int a = 0; a < g.dim; ++a) {
    block *= ratio;
  }
  const double w = 1.0 / block;
  for (std::int64_t k = 0; k < cells; ++k) {
    std::array<int, 3> ijk = g.coords(k);
    for (int a = 0; a < g.dim; ++a) {
      ijk[a] /= ratio;
    }
    const std::int64_t dst = coarse.index(ijk);
    for (int m = 0; m < field.components; ++m) {
      out.at(dst, m) += w * field.at(k, m);
    }
  }
  return out;
}

}  // namespace esfv
