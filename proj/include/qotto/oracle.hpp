#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qotto/state.hpp"

// Independent brute-force validators for the closed forms: a fixed-step RK4
// integrator of the Liouville-von Neumann equation, adaptive Simpson
// quadrature of the coherence power, finite-difference population rates and
// a seeded ensemble check suite.

namespace qotto {

struct IntegratorConfig {
    // Steps per period of the fastest frequency among the Rabi frequency,
    // |omega| and omega_j (classic fixed-step RK4).
    int steps_per_period = 2000;
    double trace_drift_tol = 1e-10;
};

void validate(const IntegratorConfig& cfg);

class integrator_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct LvnResult {
    DensityMatrix state;
    double trace_drift;  // max |Tr rho - 1| seen along the run
    long steps;
};

// RK4 on rho' = -(i/hbar)[H(t), rho] with re-Hermitization each step; the
// trace is monitored, never renormalized. Throws integrator_error when the
// drift exceeds cfg.trace_drift_tol.
LvnResult integrate_lvn(const FieldProtocol& p, const DensityMatrix& rho0, double t,
                        const IntegratorConfig& cfg = {}, Units u = si_units());

// Adaptive Simpson quadrature of coherence_power over [0, t] along the
// trajectory evolved from the thermal state at omega_start.
double quad_coherence_work(const FieldProtocol& p, const BathSpec& bath, double omega_start,
                           double t, double rel_tol = 1e-10, Units u = si_units());

// Central-difference sum_n d/dt(rho_nn) E_n at time t on the trajectory
// evolved from rho_start.
double fd_population_rate(const FieldProtocol& p, const DensityMatrix& rho_start, double t,
                          double h, Units u = si_units());

// One random parameter draw: alpha in (0, pi/2], lambda in (0, 2],
// omega in [-20, 20] GHz, with the published intensities and baths.
struct EnsembleDraw {
    double alpha;
    double lambda;
    double omega;
};

std::vector<EnsembleDraw> draw_ensemble(std::uint64_t seed, int n);

struct CheckResult {
    std::string name;
    int cases;
    double max_err;
    double tol;
    bool pass;
    // Parameters of the worst case, for failure triage.
    double worst_alpha;
    double worst_lambda;
    double worst_omega;
};

// Full oracle suite over a seeded ensemble; inject_error perturbs the first
// check as a negative control for the test harness.
std::vector<CheckResult> run_validation(std::uint64_t seed, int ensemble_size,
                                        bool inject_error = false, int jobs = 0,
                                        Units u = si_units());

}  // namespace qotto
