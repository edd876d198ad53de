#include "core/snapshot.hpp"

#include <cstdint>
#include <fmt/format.h>
#include <fstream>

#include "core/errors.hpp"

namespace esfv {

namespace {

constexpr char kMagic[8] = {'E', 'S', 'F', 'V', 'S', 'N', 'P', '1'};

template <typename T>
void write_pod(std::ofstream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::ifstream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  return value;
}

}  // namespace

std::vector<std::string> component_names(const EulerModel& model) {
  std::vector<std::string> names = {"rho"};
  for (int i = 0; i < model.dim; ++i) {
    names.push_back(fmt::format("m{}", i + 1));
  }
  if (model.system == System::Complete) {
    names.push_back("E");
  }
  return names;
}

void write_snapshot(const std::string& path, const Field& field, double time,
                    const std::vector<std::string>& names) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw error(errc::io, fmt::format("cannot open '{}' for writing", path));
  }
  out.write(kMagic, sizeof(kMagic));
  write_pod(out, static_cast<std::int32_t>(field.grid.dim));
  write_pod(out, static_cast<std::int32_t>(field.grid.n));
  write_pod(out, static_cast<std::int32_t>(field.components));
  write_pod(out, time);
  for (int c = 0; c < field.components; ++c) {
    const std::string& name = c < static_cast<int>(names.size()) ? names[c] : "";
    write_pod(out, static_cast<std::uint32_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
  }
  out.write(reinterpret_cast<const char*>(field.values.data()),
            static_cast<std::streamsize>(field.values.size() * sizeof(double)));
  if (!out) {
    throw error(errc::io, fmt::format("failed writing snapshot '{}'", path));
  }
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw error(errc::io, fmt::format("cannot open snapshot '{}'", path));
  }
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw error(errc::io, fmt::format("'{}' is not a snapshot file", path));
  }
  Snapshot snap;
  snap.grid.dim = read_pod<std::int32_t>(in);
  snap.grid.n = read_pod<std::int32_t>(in);
  snap.components = read_pod<std::int32_t>(in);
  snap.time = read_pod<double>(in);
  if (!snap.grid.valid() || snap.components < 1 || snap.components > 5) {
    throw error(errc::io, fmt::format("snapshot '{}' has an invalid header", path));
  }
  for (int c = 0; c < snap.components; ++c) {
    const auto len = read_pod<std::uint32_t>(in);
    std::string name(len, '\0');
    in.read(name.data(), len);
    snap.names.push_back(std::move(name));
  }
  snap.field = Field::zeros(snap.grid, snap.components);
  in.read(reinterpret_cast<char*>(snap.field.values.data()),
          static_cast<std::streamsize>(snap.field.values.size() * sizeof(double)));
  if (!in) {
    throw error(errc::io, fmt::format("snapshot '{}' is truncated", path));
  }
  return snap;
}

void write_field_csv(const std::string& path, const Field& field,
                     const std::vector<std::string>& names) {
  std::ofstream out(path);
  if (!out) {
    throw error(errc::io, fmt::format("cannot open '{}' for writing", path));
  }
  const GridSpec& g = field.grid;
  out << "i";
  if (g.dim > 1) {
    out << ",j";
  }
  if (g.dim > 2) {
    out << ",k";
  }
  for (int a = 0; a < g.dim; ++a) {
    out << ",x" << (a + 1);
  }
  for (int c = 0; c < field.components; ++c) {
    out << "," << (c < static_cast<int>(names.size()) ? names[c] : fmt::format("c{}", c));
  }
  out << "\n";
  const std::int64_t cells = g.cell_count();
  for (std::int64_t k = 0; k < cells; ++k) {
    const std::array<int, 3> ijk = g.coords(k);
    const std::array<double, 3> x = g.center(k);
    for (int a = 0; a < g.dim; ++a) {
      out << (a ? "," : "") << ijk[a];
    }
    for (int a = 0; a < g.dim; ++a) {
      out << fmt::format(",{:.17g}", x[a]);
    }
    for (int c = 0; c < field.components; ++c) {
      out << fmt::format(",{:.17g}", field.at(k, c));
    }
    out << "\n";
  }
  if (!out) {
    throw error(errc::io, fmt::format("failed writing '{}'", path));
  }
}

}  // namespace esfv
