#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "finsm/machine.hpp"

namespace finsm {

struct TikzDocument {
  std::string source;
  std::map<StateId, std::string> node_names;
  double scale = 1.0;
};

struct ExportOptions {
  /// One canvas unit becomes `scale` centimetres.
  double scale = 1.0;
  /// Grid pitch in canvas units; 0 disables snapping.
  double grid_snap = 0.0;
  /// Seed for node identifiers. Unset means a fresh random nonce per export.
  std::optional<std::string> nonce;
};

/// Degrees of `bend` per canvas unit of transition curve.
inline constexpr double kBendDegreesPerUnit = 40.0;
inline constexpr double kMaxBendDegrees = 80.0;

/// Eight lowercase letters derived from a 64-bit FNV-1a hash of
/// (nonce, state id, attempt). Attempts > 0 are used for collision
/// resolution and carry the attempt number as a numeric suffix.
std::string hash_node_name(StateId state, std::string_view nonce, std::uint32_t attempt = 0);

/// Rounds each coordinate to the nearest multiple of `grid`, halves away
/// from zero. Throws InvalidArgument unless grid > 0.
Position snap_to_grid(Position pos, double grid);

/// Bend angle in whole degrees for a curve offset, clamped to +-80.
int bend_degrees(double curve);

/// Throws InvalidArgument for a non-positive scale or negative grid.
TikzDocument export_tikz(const Machine& m, const ExportOptions& opts = {});

std::string random_nonce();

}  // namespace finsm
