#pragma once

namespace qotto {

// Physical constants bundle. SI values are CODATA 2018; the natural-units
// variant sets hbar = k_B = 1 for dimensionless studies.
struct Units {
    double hbar;  // J*s
    double k_b;   // J/K
};

constexpr Units si_units() { return {1.054571817e-34, 1.380649e-23}; }
constexpr Units natural_units() { return {1.0, 1.0}; }

}  // namespace qotto
