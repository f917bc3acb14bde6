#pragma once

#include <cstdint>
#include <string>

#include "mhdadm/models.hpp"

namespace mhdadm {

// Snapshot layout (all little endian):
//   char[8]  magic "MHDADM01"
//   u32      version = 1
//   u32      n
//   f64      L
//   f64      t
//   u32      field count = 2
//   then per field: char[16] zero-padded name ("w", "b"), followed by
//   n^3 * 3 complex coefficients as (f64 re, f64 im), C order over
//   (kx index, ky index, kz index, component).
// Files whose header reads as byte-swapped are accepted and swapped.

inline constexpr char kSnapshotMagic[8] = {'M', 'H', 'D', 'A', 'D', 'M', '0', '1'};
inline constexpr std::uint32_t kSnapshotVersion = 1;

void write_snapshot(const SolverState& s, const std::string& path);

/// The returned state has zero forcing. Throws SnapshotError on magic or
/// version mismatch, short files and non-Hermitian fields.
SolverState read_snapshot(const std::string& path);

}  // namespace mhdadm
