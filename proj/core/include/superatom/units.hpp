#pragma once

#include <string_view>

namespace superatom {

/// The library is unit-agnostic; a unit system only pins hbar and labels.
struct UnitSystem {
  std::string_view name;
  double hbar;
  std::string_view length;
  std::string_view time;
};

inline constexpr UnitSystem kNaturalUnits{"natural", 1.0, "1", "1"};
/// Lengths in micrometres, times in microseconds, energies in hbar * us^-1.
inline constexpr UnitSystem kMicrometreMicrosecond{"um-us", 1.0, "um", "us"};

/// Looks up "natural" or "um-us". Throws DomainError otherwise.
UnitSystem unit_system(std::string_view name);

}  // namespace superatom
