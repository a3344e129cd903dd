#pragma once

namespace fragsim::phys {

// CODATA 2018
inline constexpr double hbar = 1.054571817e-34;               // J s
inline constexpr double atomic_mass_unit = 1.66053906660e-27; // kg

} // namespace fragsim::phys
