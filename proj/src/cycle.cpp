#include "qotto/cycle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qotto {

namespace {

void validate_bath(const BathSpec& bath, const Units& u, const char* which) {
    if (!std::isfinite(bath.temperature) || bath.temperature <= 0.0 ||
        !std::isfinite(bath.beta) || bath.beta <= 0.0 ||
        std::abs(bath.beta * u.k_b * bath.temperature - 1.0) > 1e-12) {
        throw std::invalid_argument(std::string("CycleParams: inconsistent ") + which +
                                    " bath (use make_bath)");
    }
}

double stroke_tau(double rabi, double lambda) {
    if (rabi == 0.0) {
        return 0.0;
    }
    return 2.0 * std::numbers::pi * lambda / rabi;
}

double mean_energy(double omega_j, const DensityMatrix& rho, Units u) {
    return 0.5 * u.hbar * omega_j * (rho.population_up() - rho.population_down());
}

void validate_grid(const SweepGrid& grid) {
    if (grid.lambda.empty() || grid.omega.empty() || grid.alpha.empty()) {
        throw std::invalid_argument("sweep: every grid axis needs at least one point");
    }
}

SweepPoint evaluate_point(const CycleParams& base, double lambda, double omega, double alpha) {
    SweepPoint pt;
    pt.lambda = lambda;
    pt.omega = omega;
    pt.alpha = alpha;
    try {
        CycleParams cp = base;
        cp.lambda = lambda;
        cp.omega = omega;
        cp.alpha = alpha;
        pt.report = run_cycle(cp);
        pt.ok = true;
    } catch (const std::exception& e) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        pt.report = {nan, nan, nan, nan, nan, nan, nan, nan, nan, nan, false};
        pt.ok = false;
        pt.error = e.what();
    }
    return pt;
}

}  // namespace

void validate(const CycleParams& cp) {
    if (!std::isfinite(cp.omega1) || cp.omega1 <= 0.0 || !std::isfinite(cp.omega2) ||
        cp.omega2 <= 0.0) {
        throw std::invalid_argument("CycleParams: omega1 and omega2 must be finite and > 0");
    }
    if (!std::isfinite(cp.alpha) || cp.alpha < 0.0 || cp.alpha > std::numbers::pi / 2.0) {
        throw std::invalid_argument("CycleParams: alpha must lie in [0, pi/2]");
    }
    if (!std::isfinite(cp.omega)) {
        throw std::invalid_argument("CycleParams: omega must be finite");
    }
    if (!std::isfinite(cp.lambda) || cp.lambda < 0.0) {
        throw std::invalid_argument("CycleParams: lambda must be finite and >= 0");
    }
    validate_bath(cp.hot, cp.units, "hot");
    validate_bath(cp.cold, cp.units, "cold");
    if (!(cp.hot.temperature > cp.cold.temperature)) {
        throw std::invalid_argument("CycleParams: hot.temperature must exceed cold.temperature");
    }
}

std::array<double, 2> stroke_durations(const CycleParams& cp) {
    validate(cp);
    const double rabi_compress = rabi_omega({cp.omega2, cp.alpha, cp.omega, 0.0});
    const double rabi_expand = rabi_omega({cp.omega1, cp.alpha, cp.omega, 0.0});
    if (cp.binding == LambdaBinding::stage) {
        return {stroke_tau(rabi_compress, cp.lambda), stroke_tau(rabi_expand, cp.lambda)};
    }
    return {stroke_tau(rabi_expand, cp.lambda), stroke_tau(rabi_compress, cp.lambda)};
}

CycleReport run_cycle(const CycleParams& cp) {
    validate(cp);
    const Units u = cp.units;
    const auto tau = stroke_durations(cp);
    const FieldProtocol compress = make_protocol(cp.omega2, cp.alpha, cp.omega, tau[0]);
    const FieldProtocol expand = make_protocol(cp.omega1, cp.alpha, cp.omega, tau[1]);

    const DensityMatrix rho1 = thermal_state(cp.omega1, cp.hot, u);
    const DensityMatrix rho2 = evolve_stroke(compress, rho1, tau[0]);
    const DensityMatrix rho3 = thermal_state(cp.omega2, cp.cold, u);
    const DensityMatrix rho4 = evolve_stroke(expand, rho3, tau[1]);

    CycleReport r;
    r.q_c = mean_energy(cp.omega2, rho3, u) - mean_energy(cp.omega2, rho2, u);
    r.q_h = mean_energy(cp.omega1, rho1, u) - mean_energy(cp.omega1, rho4, u);
    r.w_l = coherence_work(cp.omega2, cp.omega1, cp.alpha, cp.hot, tau[0], cp.omega, u) +
            coherence_work(cp.omega1, cp.omega2, cp.alpha, cp.cold, tau[1], cp.omega, u);
    r.w_s = sudden_work(cp.omega2, cp.omega1, cp.alpha, cp.hot, tau[0], cp.omega, u) +
            sudden_work(cp.omega1, cp.omega2, cp.alpha, cp.cold, tau[1], cp.omega, u);
    r.w_net = r.w_l + r.w_s;
    r.eta = r.q_h > 0.0 ? -r.w_net / r.q_h : std::numeric_limits<double>::quiet_NaN();
    r.eta_otto = 1.0 - cp.omega2 / cp.omega1;
    r.t2_eff = effective_temperature(u.hbar * cp.omega2,
                                     rho2.population_up() / rho2.population_down(), u);
    r.t4_eff = effective_temperature(u.hbar * cp.omega1,
                                     rho4.population_up() / rho4.population_down(), u);
    r.entropy_gen = entropy_generation(r.q_h, r.q_c, cp.hot, cp.cold);
    r.positive_work = r.q_h > 0.0 && r.w_net < 0.0;
    return r;
}

OttoLimit otto_limit(const CycleParams& cp) {
    validate(cp);
    const Units u = cp.units;
    const double tanh_hot = std::tanh(0.5 * cp.hot.beta * u.hbar * cp.omega1);
    const double tanh_cold = std::tanh(0.5 * cp.cold.beta * u.hbar * cp.omega2);
    return {0.5 * u.hbar * cp.omega1 * (tanh_cold - tanh_hot),
            0.5 * u.hbar * (cp.omega1 - cp.omega2) * (tanh_hot - tanh_cold),
            1.0 - cp.omega2 / cp.omega1, cp.omega2 / cp.omega1 > cp.hot.beta / cp.cold.beta};
}

double entropy_generation(double q_h, double q_c, const BathSpec& hot, const BathSpec& cold) {
    return -q_h / hot.temperature - q_c / cold.temperature;
}

std::vector<SweepPoint> sweep_reference(const CycleParams& base, const SweepGrid& grid) {
    validate_grid(grid);
    std::vector<SweepPoint> out;
    out.reserve(grid.lambda.size() * grid.omega.size() * grid.alpha.size());
    for (double lambda : grid.lambda) {
        for (double omega : grid.omega) {
            for (double alpha : grid.alpha) {
                out.push_back(evaluate_point(base, lambda, omega, alpha));
            }
        }
    }
    return out;
}

std::vector<SweepPoint> sweep(const CycleParams& base, const SweepGrid& grid, int jobs) {
    if (jobs == 1) {
        return sweep_reference(base, grid);
    }
    validate_grid(grid);
    const std::size_t n_omega = grid.omega.size();
    const std::size_t n_alpha = grid.alpha.size();
    const std::size_t total = grid.lambda.size() * n_omega * n_alpha;
    std::vector<SweepPoint> out(total);
#ifdef _OPENMP
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
    for (long long i = 0; i < static_cast<long long>(total); ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        const std::size_t il = k / (n_omega * n_alpha);
        const std::size_t iw = (k / n_alpha) % n_omega;
        const std::size_t ia = k % n_alpha;
        out[k] = evaluate_point(base, grid.lambda[il], grid.omega[iw], grid.alpha[ia]);
    }
    return out;
}

}  // namespace qotto
