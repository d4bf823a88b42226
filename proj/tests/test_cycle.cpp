#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qotto/cycle.hpp"

using qotto::CycleParams;
using qotto::CycleReport;

namespace {

constexpr double k_pi = std::numbers::pi;
const qotto::Units k_si = qotto::si_units();

CycleParams paper_params(double alpha, double lambda) {
    return {6e9,
            1e9,
            alpha,
            -6e9,
            lambda,
            qotto::make_bath(1.0, k_si),
            qotto::make_bath(0.1, k_si),
            qotto::LambdaBinding::stage,
            k_si};
}

// Transition probability of the rotating-frame SU(2) rotation: axis
// (omega_j sin(a), 0, omega_j cos(a) - omega)/Omega, angle Omega*tau.
double flip_probability(double omega_j, double alpha, double omega, double tau) {
    const double rabi = qotto::rabi_omega({omega_j, alpha, omega, 0.0});
    if (rabi == 0.0) return 0.0;
    const double s = omega_j * std::sin(alpha) / rabi;
    const double half = std::sin(0.5 * rabi * tau);
    return s * s * half * half;
}

// Closed-form cycle ledger built from Boltzmann factors and the flip
// probability alone; shares no code path with run_cycle's propagators.
struct ClosedCycle {
    double q_h, q_c, w_net, entropy;
};

ClosedCycle closed_cycle(const CycleParams& cp) {
    const auto tau = qotto::stroke_durations(cp);
    const double tanh_h = std::tanh(0.5 * cp.hot.beta * cp.units.hbar * cp.omega1);
    const double tanh_c = std::tanh(0.5 * cp.cold.beta * cp.units.hbar * cp.omega2);
    const double p1 = flip_probability(cp.omega2, cp.alpha, cp.omega, tau[0]);
    const double p2 = flip_probability(cp.omega1, cp.alpha, cp.omega, tau[1]);
    ClosedCycle c;
    c.q_c = 0.5 * cp.units.hbar * cp.omega2 * (tanh_h - tanh_c) -
            cp.units.hbar * cp.omega2 * tanh_h * p1;
    c.q_h = 0.5 * cp.units.hbar * cp.omega1 * (tanh_c - tanh_h) -
            cp.units.hbar * cp.omega1 * tanh_c * p2;
    c.w_net = -(c.q_h + c.q_c);
    c.entropy = -c.q_h / cp.hot.temperature - c.q_c / cp.cold.temperature;
    return c;
}

double report_gap(const CycleReport& a, const CycleReport& b, double energy_floor,
                  double temp_floor) {
    auto gap = [](double x, double y, double floor) {
        const bool xn = std::isnan(x);
        const bool yn = std::isnan(y);
        if (xn && yn) return 0.0;
        if (xn || yn) return 1.0;
        if (x == y) return 0.0;
        return std::abs(x - y) / std::max({std::abs(x), std::abs(y), floor});
    };
    double worst = 0.0;
    for (double g : {gap(a.w_net, b.w_net, energy_floor), gap(a.w_l, b.w_l, energy_floor),
                     gap(a.w_s, b.w_s, energy_floor), gap(a.q_h, b.q_h, energy_floor),
                     gap(a.q_c, b.q_c, energy_floor), gap(a.eta, b.eta, 1.0),
                     gap(a.eta_otto, b.eta_otto, 1.0), gap(a.t2_eff, b.t2_eff, temp_floor),
                     gap(a.t4_eff, b.t4_eff, temp_floor),
                     gap(a.entropy_gen, b.entropy_gen, energy_floor / temp_floor)}) {
        worst = std::max(worst, g);
    }
    if (a.positive_work != b.positive_work) worst = std::max(worst, 1.0);
    return worst;
}

}  // namespace

TEST_CASE("aligned-field cycle reproduces the frozen Otto values") {
    const CycleReport r = qotto::run_cycle(paper_params(0.0, 0.5));
    CHECK(r.w_net == doctest::Approx(-4.023697083589328e-27).epsilon(1e-12));
    CHECK(r.q_h == doctest::Approx(4.828436500307195e-27).epsilon(1e-12));
    CHECK(r.entropy_gen == doctest::Approx(3.2189576668714632e-27).epsilon(1e-12));
    CHECK(std::abs(r.eta - 5.0 / 6.0) < 1e-12);
    CHECK(r.eta_otto == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
    CHECK(r.t2_eff == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(r.t4_eff == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(r.w_l == 0.0);
    CHECK(r.positive_work);
}

TEST_CASE("tilted-field cycle reproduces the frozen half-period values") {
    const CycleReport r = qotto::run_cycle(paper_params(k_pi / 4.0, 0.5));
    CHECK(r.eta == doctest::Approx(0.35620402286790109).epsilon(1e-12));
    CHECK(r.w_l == doctest::Approx(-3.6965458350319645e-27).epsilon(1e-12));
    CHECK(r.t2_eff == doctest::Approx(0.17041452142866087).epsilon(1e-12));
    CHECK(r.t4_eff == doctest::Approx(0.84873442970106394).epsilon(1e-12));
    CHECK(r.entropy_gen == doctest::Approx(7.0217399150974115e-27).epsilon(1e-12));
    CHECK(r.eta < r.eta_otto);
    CHECK(r.entropy_gen > 0.0);
}

TEST_CASE("run_cycle matches the closed-form flip-probability ledger") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> ua(1e-3, k_pi / 2.0);
    std::uniform_real_distribution<double> ul(1e-3, 2.0);
    std::uniform_real_distribution<double> uw(-20e9, 20e9);
    const double floor = k_si.hbar * 6e9;
    for (int i = 0; i < 25; ++i) {
        CycleParams cp = paper_params(ua(gen), ul(gen));
        cp.omega = uw(gen);
        const CycleReport r = qotto::run_cycle(cp);
        const ClosedCycle c = closed_cycle(cp);
        CHECK(std::abs(r.q_h - c.q_h) < 1e-12 * floor);
        CHECK(std::abs(r.q_c - c.q_c) < 1e-12 * floor);
        CHECK(std::abs(r.w_net - c.w_net) < 1e-10 * floor);
        CHECK(std::abs(r.entropy_gen - c.entropy) < 1e-10 * floor / 0.1);
    }
}

TEST_CASE("integer lambda reproduces the aligned-field report") {
    const CycleReport base = qotto::run_cycle(paper_params(0.0, 1.0));
    for (double alpha : {k_pi / 15.0, k_pi / 6.0, k_pi / 4.0}) {
        for (double lambda : {0.0, 1.0}) {
            const CycleReport r = qotto::run_cycle(paper_params(alpha, lambda));
            CHECK(report_gap(r, base, k_si.hbar * 6e9, 1.0) < 1e-9);
        }
    }
}

TEST_CASE("cycle reports are periodic in lambda") {
    for (double lambda : {0.1, 0.35, 0.72}) {
        const CycleReport a = qotto::run_cycle(paper_params(k_pi / 4.0, lambda));
        const CycleReport b = qotto::run_cycle(paper_params(k_pi / 4.0, lambda + 1.0));
        CHECK(report_gap(a, b, k_si.hbar * 6e9, 1.0) < 1e-10);
    }
}

TEST_CASE("stroke durations follow the lambda binding") {
    CycleParams cp = paper_params(k_pi / 4.0, 0.5);
    const double rabi_c = qotto::rabi_omega({1e9, k_pi / 4.0, -6e9, 0.0});
    const double rabi_e = qotto::rabi_omega({6e9, k_pi / 4.0, -6e9, 0.0});
    const auto stage = qotto::stroke_durations(cp);
    CHECK(stage[0] == doctest::Approx(k_pi / rabi_c).epsilon(1e-15));
    CHECK(stage[1] == doctest::Approx(k_pi / rabi_e).epsilon(1e-15));
    cp.binding = qotto::LambdaBinding::swapped;
    const auto swapped = qotto::stroke_durations(cp);
    CHECK(swapped[0] == stage[1]);
    CHECK(swapped[1] == stage[0]);
    CHECK_NOTHROW((void)qotto::run_cycle(cp));
}

TEST_CASE("bindings agree for an aligned field at integer lambda") {
    CycleParams stage_cp = paper_params(0.0, 1.0);
    CycleParams swapped_cp = stage_cp;
    swapped_cp.binding = qotto::LambdaBinding::swapped;
    const CycleReport a = qotto::run_cycle(stage_cp);
    const CycleReport b = qotto::run_cycle(swapped_cp);
    CHECK(report_gap(a, b, k_si.hbar * 6e9, 1.0) < 1e-12);
}

TEST_CASE("degenerate Rabi frequency collapses the stroke to zero length") {
    CycleParams cp{6e9,    3e9, 0.0, 3e9, 0.7, qotto::make_bath(1.0, k_si),
                   qotto::make_bath(0.1, k_si), qotto::LambdaBinding::stage, k_si};
    const auto tau = qotto::stroke_durations(cp);
    CHECK(tau[0] == 0.0);
    CHECK(tau[1] > 0.0);
    CHECK_NOTHROW((void)qotto::run_cycle(cp));
}

TEST_CASE("below the engine window the efficiency is undefined") {
    CycleParams cp{6e9,    0.55e9, 0.0, -6e9, 0.5, qotto::make_bath(1.0, k_si),
                   qotto::make_bath(0.1, k_si), qotto::LambdaBinding::stage, k_si};
    const CycleReport r = qotto::run_cycle(cp);
    CHECK(r.q_h < 0.0);
    CHECK(std::isnan(r.eta));
    CHECK_FALSE(r.positive_work);
    CHECK_FALSE(qotto::otto_limit(cp).positive_work_condition);
}

TEST_CASE("otto_limit matches the aligned-field cycle") {
    const CycleParams cp = paper_params(0.0, 0.5);
    const auto lim = qotto::otto_limit(cp);
    const CycleReport r = qotto::run_cycle(cp);
    CHECK(r.q_h == doctest::Approx(lim.q_h).epsilon(1e-13));
    CHECK(r.w_net == doctest::Approx(lim.w).epsilon(1e-13));
    CHECK(lim.eta_otto == 1.0 - 1.0 / 6.0);
    CHECK(lim.positive_work_condition);
}

TEST_CASE("natural units preserve the Otto ratio") {
    const qotto::Units nat = qotto::natural_units();
    const CycleParams cp{6.0,  1.0, 0.0, -6.0, 0.5, qotto::make_bath(2.0, nat),
                         qotto::make_bath(0.1, nat), qotto::LambdaBinding::stage, nat};
    const CycleReport r = qotto::run_cycle(cp);
    CHECK(std::abs(r.eta - 5.0 / 6.0) < 1e-12);
    CHECK(r.positive_work);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((void)qotto::run_cycle(paper_params(2.0, 0.5)), std::invalid_argument);
    CHECK_THROWS_AS((void)qotto::run_cycle(paper_params(0.0, -0.5)), std::invalid_argument);
    CycleParams bad_omega = paper_params(0.0, 0.5);
    bad_omega.omega2 = 0.0;
    CHECK_THROWS_AS((void)qotto::run_cycle(bad_omega), std::invalid_argument);
    CycleParams bad_bath = paper_params(0.0, 0.5);
    bad_bath.hot.beta *= 2.0;
    CHECK_THROWS_AS((void)qotto::run_cycle(bad_bath), std::invalid_argument);
    CycleParams inverted = paper_params(0.0, 0.5);
    std::swap(inverted.hot, inverted.cold);
    CHECK_THROWS_AS((void)qotto::run_cycle(inverted), std::invalid_argument);
}

TEST_CASE("entropy_generation arithmetic") {
    const auto hot = qotto::make_bath(2.0, k_si);
    const auto cold = qotto::make_bath(0.5, k_si);
    CHECK(qotto::entropy_generation(4.0, -1.0, hot, cold) == doctest::Approx(0.0));
    CHECK(qotto::entropy_generation(2.0, -1.5, hot, cold) == doctest::Approx(2.0));
}

TEST_CASE("in the engine regime efficiency stays below the Otto limit") {
    for (double alpha : {k_pi / 15.0, k_pi / 6.0, k_pi / 4.0}) {
        for (double lambda : {0.2, 0.5, 0.85}) {
            const CycleReport r = qotto::run_cycle(paper_params(alpha, lambda));
            if (r.positive_work) {
                CHECK(r.eta <= r.eta_otto + 1e-12);
            }
        }
    }
}
