#include "gpe/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include "gpe/error.hpp"

namespace gpe {
namespace {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

constexpr std::array<char, 8> kMagic = {'G', 'P', 'E', 'C', 'K', 'P', 'T', '\0'};

template <class T>
void put(std::ofstream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get(std::ifstream& in, const std::filesystem::path& path) {
  T value{};
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) {
    throw IoError("truncated checkpoint " + path.string());
  }
  return value;
}

}  // namespace

Wavefunction Checkpoint::wavefunction() const {
  return Wavefunction(make_grid(grid_length, static_cast<std::size_t>(points)), amplitudes);
}

void save_checkpoint(const std::filesystem::path& path, const Wavefunction& psi, double g_eff, double quartic_K,
                     double energy) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, Checkpoint::kFormatVersion);
  put<std::uint32_t>(out, 0);
  put<std::uint64_t>(out, psi.grid().points());
  put<double>(out, psi.grid().length());
  put<double>(out, g_eff);
  put<double>(out, quartic_K);
  put<double>(out, energy);
  const auto amp = psi.amplitudes();
  out.write(reinterpret_cast<const char*>(amp.data()), static_cast<std::streamsize>(amp.size_bytes()));
  if (!out) throw IoError("failed writing checkpoint " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint " + path.string());
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw IoError(path.string() + " is not a gpe checkpoint");
  }
  const auto version = get<std::uint32_t>(in, path);
  if (version != Checkpoint::kFormatVersion) {
    throw IoError("unsupported checkpoint version " + std::to_string(version) + " in " + path.string());
  }
  (void)get<std::uint32_t>(in, path);
  Checkpoint c;
  c.points = get<std::uint64_t>(in, path);
  c.grid_length = get<double>(in, path);
  c.g_eff = get<double>(in, path);
  c.quartic_K = get<double>(in, path);
  c.energy = get<double>(in, path);
  if (c.points == 0 || c.points > (std::uint64_t{1} << 30)) {
    throw IoError("implausible point count in " + path.string());
  }
  c.amplitudes.resize(static_cast<std::size_t>(c.points));
  const auto bytes = static_cast<std::streamsize>(c.amplitudes.size() * sizeof(Complex));
  if (!in.read(reinterpret_cast<char*>(c.amplitudes.data()), bytes)) {
    throw IoError("truncated checkpoint " + path.string());
  }
  return c;
}

}  // namespace gpe
