#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qotto/oracle.hpp"
#include "qotto/thermo.hpp"

namespace {

constexpr double k_pi = std::numbers::pi;
const qotto::Units k_si = qotto::si_units();
const qotto::BathSpec k_hot = qotto::make_bath(1.0, k_si);

}  // namespace

TEST_CASE("integrator config validation") {
    CHECK_NOTHROW(qotto::validate(qotto::IntegratorConfig{}));
    CHECK_THROWS_AS(qotto::validate(qotto::IntegratorConfig{50, 1e-10}), std::invalid_argument);
    CHECK_THROWS_AS(qotto::validate(qotto::IntegratorConfig{2000, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(qotto::validate(qotto::IntegratorConfig{2000, std::nan("")}),
                    std::invalid_argument);
}

TEST_CASE("integrator leaves an aligned-field thermal state unchanged") {
    const auto p = qotto::make_protocol(1e9, 0.0, -6e9, 1e-9);
    const auto rho0 = qotto::thermal_state(6e9, k_hot, k_si);
    const auto res = qotto::integrate_lvn(p, rho0, 8e-10, {}, k_si);
    CHECK(qotto::trace_distance(res.state, rho0) < 1e-12);
    CHECK(res.trace_drift < 1e-13);
    CHECK(res.steps > 0);
}

TEST_CASE("integrator matches the analytic propagator") {
    const auto p = qotto::make_protocol(1e9, k_pi / 4.0, -6e9, 2e-9);
    const auto rho0 = qotto::thermal_state(6e9, k_hot, k_si);
    const double t = 2.0 * k_pi / qotto::rabi_omega(p);
    const auto res = qotto::integrate_lvn(p, rho0, t, {}, k_si);
    const auto exact = qotto::evolve_stroke(p, rho0, t);
    CHECK(qotto::trace_distance(res.state, exact) < 1e-10);
}

TEST_CASE("integrator error decreases at fourth order in the step") {
    const auto p = qotto::make_protocol(1e9, k_pi / 4.0, -6e9, 2e-9);
    const auto rho0 = qotto::thermal_state(6e9, k_hot, k_si);
    const double t = 2.0 * k_pi / qotto::rabi_omega(p);
    const auto exact = qotto::evolve_stroke(p, rho0, t);
    const double e_coarse =
        qotto::trace_distance(qotto::integrate_lvn(p, rho0, t, {100, 1e-8}, k_si).state, exact);
    const double e_fine =
        qotto::trace_distance(qotto::integrate_lvn(p, rho0, t, {200, 1e-8}, k_si).state, exact);
    const double order = std::log2(e_coarse / e_fine);
    CHECK(order > 3.0);
    CHECK(order < 5.0);
}

TEST_CASE("integrator rejects an unpayable step budget") {
    const auto p = qotto::make_protocol(1e9, k_pi / 4.0, -6e9, 1.0);
    const auto rho0 = qotto::thermal_state(6e9, k_hot, k_si);
    CHECK_THROWS_AS((void)qotto::integrate_lvn(p, rho0, 1.0, {}, k_si), qotto::integrator_error);
}

TEST_CASE("quadrature reproduces the closed-form coherence work") {
    const double rabi = qotto::rabi_omega({1e9, k_pi / 4.0, -6e9, 0.0});
    for (double lambda : {0.3, 0.5, 1.0}) {
        const double tau = 2.0 * k_pi * lambda / rabi;
        const auto p = qotto::make_protocol(1e9, k_pi / 4.0, -6e9, tau);
        const double quad = qotto::quad_coherence_work(p, k_hot, 6e9, tau, 1e-10, k_si);
        const double closed = qotto::coherence_work(1e9, 6e9, k_pi / 4.0, k_hot, tau, -6e9, k_si);
        CHECK(std::abs(quad - closed) < 1e-10 * k_si.hbar * 6e9);
    }
}

TEST_CASE("quadrature of an aligned-field stroke is zero") {
    const auto p = qotto::make_protocol(1e9, 0.0, -6e9, 1e-9);
    CHECK(qotto::quad_coherence_work(p, k_hot, 6e9, 1e-9, 1e-10, k_si) == 0.0);
}

TEST_CASE("finite-difference population rate converges at second order") {
    const auto p = qotto::make_protocol(1e9, k_pi / 4.0, -6e9, 2e-9);
    const auto rho0 = qotto::thermal_state(6e9, k_hot, k_si);
    const double t = 3.7e-10;
    const double exact = qotto::coherence_power(p, qotto::evolve_stroke(p, rho0, t), t, k_si);
    const double h = 1e-3 / qotto::rabi_omega(p);
    const double e_coarse = std::abs(qotto::fd_population_rate(p, rho0, t, 2.0 * h, k_si) - exact);
    const double e_fine = std::abs(qotto::fd_population_rate(p, rho0, t, h, k_si) - exact);
    CHECK(e_coarse / e_fine == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("ensemble draws are deterministic and in range") {
    const auto a = qotto::draw_ensemble(424242, 100);
    const auto b = qotto::draw_ensemble(424242, 100);
    REQUIRE(a.size() == 100);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].alpha == b[i].alpha);
        CHECK(a[i].lambda == b[i].lambda);
        CHECK(a[i].omega == b[i].omega);
        CHECK(a[i].alpha > 0.0);
        CHECK(a[i].alpha <= 0.5 * k_pi);
        CHECK(a[i].lambda > 0.0);
        CHECK(a[i].lambda <= 2.0);
        CHECK(a[i].omega >= -20.0);
        CHECK(a[i].omega <= 20.0);
    }
    const auto c = qotto::draw_ensemble(7, 100);
    CHECK(c[0].alpha != a[0].alpha);
}

TEST_CASE("validation suite passes on the documented seed") {
    const auto checks = qotto::run_validation(424242, 40, false, 0, k_si);
    CHECK(checks.size() == 15);
    for (const auto& c : checks) {
        INFO(c.name, " max_err=", c.max_err, " tol=", c.tol);
        CHECK(c.pass);
        CHECK(c.cases > 0);
        CHECK(c.max_err < c.tol);
    }
}

TEST_CASE("injected error trips exactly one check") {
    const auto checks = qotto::run_validation(424242, 40, true, 0, k_si);
    int failures = 0;
    for (const auto& c : checks) {
        if (!c.pass) {
            ++failures;
            CHECK(c.name == "first_law_stroke");
        }
    }
    CHECK(failures == 1);
}

TEST_CASE("validation results do not depend on the job count") {
    const auto serial = qotto::run_validation(424242, 20, false, 1, k_si);
    const auto parallel = qotto::run_validation(424242, 20, false, 4, k_si);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].name == parallel[i].name);
        CHECK(serial[i].max_err == parallel[i].max_err);
        CHECK(serial[i].pass == parallel[i].pass);
    }
}
