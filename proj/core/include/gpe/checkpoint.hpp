#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "gpe/wavefunction.hpp"

namespace gpe {

/// Binary state record. Layout (little-endian):
///
///   offset  size  field
///   0       8     magic "GPECKPT\0"
///   8       4     format version (uint32, currently 1)
///   12      4     reserved, zero
///   16      8     grid points (uint64)
///   24      8     grid length (float64)
///   32      8     g_eff (float64)
///   40      8     quartic K (float64)
///   48      8     energy (float64)
///   56      16*n  amplitudes as (re, im) float64 pairs
///
/// Doubles are stored as their raw bit patterns so a reload is bit-exact.
struct Checkpoint {
  static constexpr std::uint32_t kFormatVersion = 1;

  double grid_length = 0.0;
  std::uint64_t points = 0;
  double g_eff = 0.0;
  double quartic_K = 0.0;
  double energy = 0.0;
  std::vector<Complex> amplitudes;

  /// Rebuilds the state on a fresh grid with the recorded parameters.
  Wavefunction wavefunction() const;
};

void save_checkpoint(const std::filesystem::path& path, const Wavefunction& psi, double g_eff, double quartic_K,
                     double energy);

/// Throws IoError on unreadable files, bad magic, unknown version or truncation.
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace gpe
