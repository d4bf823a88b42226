#pragma once

#include <string>
#include <vector>

#include "qotto/state.hpp"
#include "qotto/thermo.hpp"

// Four-stroke Otto engine: rotate at omega_2 (compression), cold isochore,
// rotate at omega_1 (expansion), hot isochore; efficiency, entropy
// generation, effective temperatures and quantum-adiabatic reference limits.

namespace qotto {

// lambda counts rotating-frame Rabi periods per stroke. "stage" binds each
// stroke to its own drive (tau1 from the omega_2 drive, tau2 from the
// omega_1 drive), which makes integer lambda close both Rabi periods at
// once; "swapped" exchanges the two associations.
enum class LambdaBinding { stage, swapped };

struct CycleParams {
    double omega1;  // rad/s, > 0; hot-side field intensity
    double omega2;  // rad/s, > 0; cold-side field intensity
    double alpha;   // rad, [0, pi/2]
    double omega;   // rad/s, signed rotation rate
    double lambda;  // >= 0, stroke length in Rabi periods
    BathSpec hot;
    BathSpec cold;
    LambdaBinding binding = LambdaBinding::stage;
    Units units = si_units();
};

void validate(const CycleParams& cp);

// {tau1, tau2} derived from lambda under cp.binding. A degenerate zero Rabi
// frequency (alpha = 0 with omega = omega_j) makes the stroke trivial for
// any duration; its tau is pinned to 0.
std::array<double, 2> stroke_durations(const CycleParams& cp);

struct CycleReport {
    double w_net;        // J, work done ON the atom over the cycle
    double w_l;          // J, coherence part of w_net
    double w_s;          // J, sudden-switch part of w_net
    double q_h;          // J, heat absorbed from the hot bath
    double q_c;          // J, heat absorbed from the cold bath
    double eta;          // -w_net/q_h; NaN when q_h <= 0 (not an engine)
    double eta_otto;     // 1 - omega2/omega1
    double t2_eff;       // K, effective temperature entering the cold isochore
    double t4_eff;       // K, effective temperature entering the hot isochore
    double entropy_gen;  // J/K
    bool positive_work;  // true when the cycle outputs work (w_net < 0, q_h > 0)
};

struct OttoLimit {
    double q_h;
    double w;
    double eta_otto;
    bool positive_work_condition;  // omega2/omega1 > beta_h/beta_c
};

CycleReport run_cycle(const CycleParams& cp);

// Quantum-adiabatic closed forms (the alpha = 0 cycle).
OttoLimit otto_limit(const CycleParams& cp);

// -q_h/T_h - q_c/T_c
double entropy_generation(double q_h, double q_c, const BathSpec& hot, const BathSpec& cold);

// Sweep over lambda x omega x alpha (row-major, alpha fastest). Grid axes
// replace the corresponding scalar in the base parameters.
struct SweepGrid {
    std::vector<double> lambda;
    std::vector<double> omega;
    std::vector<double> alpha;
};

struct SweepPoint {
    double lambda;
    double omega;
    double alpha;
    CycleReport report;
    bool ok;
    std::string error;  // empty when ok
};

// Serial reference implementation.
std::vector<SweepPoint> sweep_reference(const CycleParams& base, const SweepGrid& grid);

// OpenMP kernel; jobs <= 0 uses all available threads, jobs == 1 runs the
// serial reference. Output order and values are identical to the reference.
std::vector<SweepPoint> sweep(const CycleParams& base, const SweepGrid& grid, int jobs = 0);

}  // namespace qotto
