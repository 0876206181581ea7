#include <catch2/catch_amalgamated.hpp>

#include "qchaos/model.hpp"
#include "qchaos/rng.hpp"
#include "support/oracles.hpp"

using namespace qchaos;

namespace {

PotentialCoeffs random_coeffs(Rng& rng) {
    PotentialCoeffs c;
    c.v0 = rng.uniform(-1.0, 1.0);
    c.v11 = rng.uniform(-0.3, 0.3);
    c.v2 = rng.uniform(0.2, 1.0);
    c.v22 = rng.uniform(0.0, 0.5);
    c.v13 = rng.uniform(-0.2, 0.2);
    c.v4 = rng.uniform(-0.05, 0.05);
    c.v24 = rng.uniform(-0.05, 0.05);
    c.v44 = rng.uniform(-0.02, 0.02);
    return c;
}

} // namespace

TEST_CASE("potential evaluation matches hand values") {
    const PotentialCoeffs c = coupled_oscillator(0.5, 0.25);
    CHECK(eval_potential(c, 0.0, 0.0) == 0.0);
    CHECK(eval_potential(c, 1.0, 1.0) == Catch::Approx(1.25).margin(1e-15));
}

TEST_CASE("gradient matches hand values and vanishes at the origin") {
    const PotentialCoeffs c = coupled_oscillator(0.5, 0.25);
    const auto g0 = grad_potential(c, 0.0, 0.0);
    CHECK(g0[0] == 0.0);
    CHECK(g0[1] == 0.0);
    const auto g1 = grad_potential(c, 1.0, 0.0);
    CHECK(g1[0] == Catch::Approx(1.0).margin(1e-15));
    CHECK(g1[1] == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("hessian at origin is 2 v2 times identity") {
    const PotentialCoeffs c = coupled_oscillator(0.5, 0.25);
    const auto h = hessian_potential(c, 0.0, 0.0);
    CHECK(h.xx == Catch::Approx(1.0));
    CHECK(h.yy == Catch::Approx(1.0));
    CHECK(h.xy == 0.0);
}

TEST_CASE("gradient agrees with central finite differences") {
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const PotentialCoeffs c = random_coeffs(rng);
        const double x = rng.uniform(-2.0, 2.0), y = rng.uniform(-2.0, 2.0);
        const auto ga = grad_potential(c, x, y);
        const auto gf = oracles::grad_fd(c, x, y);
        const double scale = std::max({1.0, std::fabs(ga[0]), std::fabs(ga[1])});
        CHECK(std::fabs(ga[0] - gf[0]) / scale < 1e-6);
        CHECK(std::fabs(ga[1] - gf[1]) / scale < 1e-6);
    }
}

TEST_CASE("hessian agrees with finite differences of the gradient") {
    Rng rng(43);
    for (int trial = 0; trial < 50; ++trial) {
        const PotentialCoeffs c = random_coeffs(rng);
        const double x = rng.uniform(-2.0, 2.0), y = rng.uniform(-2.0, 2.0);
        const auto ha = hessian_potential(c, x, y);
        const auto hf = oracles::hessian_fd(c, x, y);
        const double scale = std::max({1.0, std::fabs(ha.xx), std::fabs(ha.yy)});
        CHECK(std::fabs(ha.xx - hf.xx) / scale < 1e-5);
        CHECK(std::fabs(ha.yy - hf.yy) / scale < 1e-5);
        CHECK(std::fabs(ha.xy - hf.xy) / scale < 1e-5);
    }
}

TEST_CASE("x-y exchange symmetry holds for every coefficient set") {
    Rng rng(44);
    for (int trial = 0; trial < 100; ++trial) {
        const PotentialCoeffs c = random_coeffs(rng);
        const double x = rng.uniform(-3.0, 3.0), y = rng.uniform(-3.0, 3.0);
        CHECK(eval_potential(c, x, y) == Catch::Approx(eval_potential(c, y, x)).margin(1e-12));
    }
}

TEST_CASE("parity: even potential when odd couplings vanish") {
    Rng rng(45);
    for (int trial = 0; trial < 100; ++trial) {
        PotentialCoeffs c = random_coeffs(rng);
        c.v11 = 0.0;
        c.v13 = 0.0;
        const double x = rng.uniform(-3.0, 3.0), y = rng.uniform(-3.0, 3.0);
        const double v = eval_potential(c, x, y);
        CHECK(eval_potential(c, -x, -y) == Catch::Approx(v).margin(1e-12));
        CHECK(eval_potential(c, -x, y) == Catch::Approx(v).margin(1e-12));
    }
}

TEST_CASE("action params validate and round-trip through key-value form") {
    ActionParams p;
    p.mass = 0.976;
    p.log_norm = -1.25;
    p.coeffs = coupled_oscillator(0.5684, 0.2469);
    p.coeffs.v4 = -6.7e-4;
    const auto kv = action_to_kv(p);
    const ActionParams q = action_from_kv(kv);
    CHECK(q.mass == p.mass);
    CHECK(q.log_norm == p.log_norm);
    CHECK(q.coeffs.v2 == p.coeffs.v2);
    CHECK(q.coeffs.v4 == p.coeffs.v4);

    ActionParams bad;
    bad.mass = -1.0;
    CHECK_THROWS_AS(bad.validate(), config_error);
}
