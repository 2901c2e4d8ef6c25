#include "parobs/pfld.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "parobs/errors.hpp"

namespace parobs {

namespace {

constexpr std::uint32_t kVersion = 1;

template <typename T>
void put_le(std::ofstream& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  }
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get_le(std::ifstream& in) {
  unsigned char bytes[sizeof(T)];
  in.read(reinterpret_cast<char*>(bytes), sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  }
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void write_pfld(const std::filesystem::path& path, const Field& field) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("write_pfld: cannot open " + path.string());
  out.write("PFLD", 4);
  put_le<std::uint32_t>(out, kVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(field.grid.dim()));
  for (int i = 0; i < field.grid.dim(); ++i)
    put_le<std::uint64_t>(out, static_cast<std::uint64_t>(field.grid.points(i)));
  for (int i = 0; i < field.grid.dim(); ++i) put_le<double>(out, field.grid.extent(i));
  for (const auto& v : field.values) {
    put_le<double>(out, v.real());
    put_le<double>(out, v.imag());
  }
  if (!out) throw Error("write_pfld: short write to " + path.string());
}

Field read_pfld(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("read_pfld: cannot open " + path.string());
  char magic[4] = {};
  in.read(magic, 4);
  if (std::memcmp(magic, "PFLD", 4) != 0) throw Error("read_pfld: bad magic in " + path.string());
  if (get_le<std::uint32_t>(in) != kVersion)
    throw Error("read_pfld: unsupported version in " + path.string());
  const auto dim = get_le<std::uint32_t>(in);
  if (dim < 1 || dim > kMaxDim) throw Error("read_pfld: bad dimension in " + path.string());
  std::vector<std::size_t> points(dim);
  std::vector<double> extents(dim);
  for (auto& n : points) n = static_cast<std::size_t>(get_le<std::uint64_t>(in));
  for (auto& e : extents) e = get_le<double>(in);
  Field field = Field::zeros(Grid(points, extents), Space::Physical);
  for (auto& v : field.values) {
    const double re = get_le<double>(in);
    const double im = get_le<double>(in);
    v = {re, im};
  }
  if (!in) throw Error("read_pfld: truncated file " + path.string());
  return field;
}

}  // namespace parobs
