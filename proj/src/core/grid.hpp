#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace esfv {

// Structured periodic mesh on the unit torus [0,1]^dim with n cells per axis.
// Cells are addressed by a linear index in lexicographic order, last axis
// fastest. All wraparound is modular; there are no ghost layers.
struct GridSpec {
  int dim = 1;  // 1, 2, or 3
  int n = 1;    // cells per axis

  double cell_width() const { return 1.0 / n; }
  std::int64_t cell_count() const;
  std::int64_t stride(int axis) const;

  std::array<int, 3> coords(std::int64_t cell) const;
  std::int64_t index(const std::array<int, 3>& ijk) const;
  // Periodic neighbor `offset` cells away along `axis`.
  std::int64_t neighbor(std::int64_t cell, int axis, int offset) const;
  // Cell center S_K.
  std::array<double, 3> center(std::int64_t cell) const;

  bool valid() const { return (dim >= 1 && dim <= 3) && n >= 1; }
};

// Piecewise-constant multi-component cell data, the discrete space X(T_h).
// Storage is cell-major: values[cell * components + c].
struct Field {
  GridSpec grid;
  int components = 1;
  std::vector<double> values;

  static Field zeros(const GridSpec& grid, int components);

  double& at(std::int64_t cell, int c) { return values[cell * components + c]; }
  double at(std::int64_t cell, int c) const { return values[cell * components + c]; }
  std::span<const double> cell_values(std::int64_t cell) const {
    return {values.data() + cell * components, static_cast<std::size_t>(components)};
  }
  std::span<double> cell_values(std::int64_t cell) {
    return {values.data() + cell * components, static_cast<std::size_t>(components)};
  }
  bool all_finite() const;
};

// A face seen from one side: the face of `cell` in +/- e_axis direction.
// Every interior face is reachable from exactly two such triples.
struct FaceRef {
  std::int64_t cell = 0;
  int axis = 0;
  int orientation = +1;  // +1 or -1
};

enum class DiffMode { Central, Forward, Backward };

// Pointwise sampler on the torus; unused coordinates are zero. Writes the
// M components of the sampled state into `out`.
using PointSampler = std::function<void(const std::array<double, 3>& x, std::span<double> out)>;

// Cell averages of `sampler` via tensor-product 2-point Gauss-Legendre
// quadrature per axis (exact for per-axis cubics).
Field project(const PointSampler& sampler, const GridSpec& grid, int components);

// Discrete difference along `axis`: central (g_L - g_J)/(2h), forward
// (g_L - g_K)/h, backward (g_K - g_J)/h, with periodic wrap.
Field diff(const Field& field, int axis, DiffMode mode);

// Discrete Laplacian: (1/h^2) sum over the 2*dim periodic neighbors of
// (g_L - g_K).
Field laplacian_h(const Field& field);

// Central discrete divergence of a vector field with components == dim.
Field div_central(const Field& vfield);

// Signed jump (outside - inside) and arithmetic mean across a face.
std::vector<double> jump(const Field& field, const FaceRef& face);
std::vector<double> avg(const Field& field, const FaceRef& face);

// h^dim times the component-wise sum over cells, in fixed lexicographic
// order so results are reproducible.
std::vector<double> integrate(const Field& field);

// Field shifted by whole cells along each axis (periodic).
Field cyclic_shift(const Field& field, const std::array<int, 3>& offset);

// Block-average restriction onto a coarser grid with the same dim;
// requires field.grid.n to be a multiple of coarse_n.
Field restrict_to(const Field& field, int coarse_n);

}  // namespace esfv
