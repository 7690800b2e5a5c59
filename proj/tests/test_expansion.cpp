#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "p1bounds/expansion.hpp"
#include "p1bounds/mesh.hpp"

using namespace p1bounds;

namespace {

SmoothFunction affine() {
    return make_function("affine", [](double x) { return 2.0 * x + 1.0; },
                         [](double) { return 2.0; }, [](double) { return 0.0; }, 0.0, 0.0);
}

// independent composite trapezoid approximation of int_a^{a+h} g
double trapezoid(const std::function<double(double)>& g, double a, double h, int n) {
    const double w = h / n;
    double sum = 0.5 * (g(a) + g(a + h));
    for (int k = 1; k < n; ++k)
        sum += g(a + k * w);
    return sum * w;
}

} // namespace

TEST_CASE("taylor step spot values") {
    SECTION("x^2 over the whole interval") {
        const ExpansionResult r = taylor_step(preset("quadratic"), 0.0, 1.0);
        CHECK(r.increment == 0.0);
        CHECK(r.remainder == 1.0);
        CHECK(r.bound == 1.0);
    }
    SECTION("x^3 over the whole interval") {
        const ExpansionResult r = taylor_step(preset("cubic"), 0.0, 1.0);
        CHECK(r.remainder == 1.0);
        CHECK(r.bound == 3.0);
    }
    SECTION("affine functions expand exactly") {
        const Mesh1D m = uniform_mesh(7);
        for (std::size_t cell = 0; cell < m.num_cells(); ++cell) {
            const ExpansionResult r = taylor_step(affine(), m.node(cell), m.cell_width(cell));
            CHECK(std::abs(r.remainder) <= 1e-13);
            CHECK(r.bound == 0.0);
        }
    }
}

TEST_CASE("taylor-like step spot values") {
    SECTION("quadratic: trapezoid of a linear derivative is exact") {
        for (int n : {1, 2, 3, 8}) {
            const ExpansionResult r = taylor_like_step(preset("quadratic"), 0.25, 0.5, n);
            CHECK(std::abs(r.remainder) <= 1e-13);
            CHECK(r.bound == 0.0);
        }
    }
    SECTION("cubic, n = 1: two-endpoint average") {
        const ExpansionResult r = taylor_like_step(preset("cubic"), 0.0, 1.0, 1);
        CHECK(r.remainder == -0.5);
        CHECK(r.bound == 0.75);
    }
    SECTION("cubic, n = 2") {
        const ExpansionResult r = taylor_like_step(preset("cubic"), 0.0, 1.0, 2);
        CHECK(r.remainder == -0.125);
        CHECK(r.bound == 0.375);
    }
}

TEST_CASE("n = 1 reduces to the endpoint average") {
    for (auto name : preset_names()) {
        const SmoothFunction f = preset(name);
        const Mesh1D m = uniform_mesh(5);
        for (std::size_t cell = 0; cell < m.num_cells(); ++cell) {
            const double a = m.node(cell);
            const double h = m.cell_width(cell);
            const ExpansionResult r = taylor_like_step(f, a, h, 1);
            CHECK(r.increment == h * (f.d1(a) + f.d1(a + h)) / 2.0);
        }
    }
}

TEST_CASE("increment equals the composite trapezoid sum of u'") {
    for (auto name : preset_names()) {
        const SmoothFunction f = preset(name);
        const Mesh1D m = uniform_mesh(5);
        for (std::size_t cell = 0; cell < m.num_cells(); ++cell) {
            for (int n : {1, 2, 3, 7, 16}) {
                const ExpansionResult r =
                    taylor_like_step(f, m.node(cell), m.cell_width(cell), n);
                const double t = trapezoid(f.d1, m.node(cell), m.cell_width(cell), n);
                CHECK(r.increment == Catch::Approx(t).epsilon(1e-14).margin(1e-16));
            }
        }
    }
}

TEST_CASE("remainders stay inside their guaranteed bounds") {
    for (auto name : preset_names()) {
        const SmoothFunction f = preset(name);
        for (const Mesh1D& m : {uniform_mesh(16), perturbed_mesh(16, 0.3, 1)}) {
            for (std::size_t cell = 0; cell < m.num_cells(); ++cell) {
                const double a = m.node(cell);
                const double h = m.cell_width(cell);
                CHECK(std::abs(taylor_step(f, a, h).remainder) <=
                      taylor_step(f, a, h).bound + 1e-12);
                for (int n = 1; n <= 8; ++n) {
                    const ExpansionResult r = taylor_like_step(f, a, h, n);
                    CHECK(std::abs(r.remainder) <= r.bound + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("cubic remainder decays monotonically in n") {
    // the trapezoid error of u' = 3x^2 is -h^2/(2n^2) on any cell, so halving
    // is exact for this preset; checked on [0,1] and on an interior cell
    const SmoothFunction f = preset("cubic");
    struct Cell {
        double a, h;
    };
    for (const Cell cell : {Cell{0.0, 1.0}, Cell{3.0 / 16.0, 1.0 / 16.0}}) {
        double prev = std::abs(taylor_like_step(f, cell.a, cell.h, 1).remainder);
        for (int n = 2; n <= 32; ++n) {
            const double cur = std::abs(taylor_like_step(f, cell.a, cell.h, n).remainder);
            CHECK(cur <= prev);
            prev = cur;
        }
        for (int n : {1, 2, 4, 8, 16}) {
            const double e_n = std::abs(taylor_like_step(f, cell.a, cell.h, n).remainder);
            const double e_2n = std::abs(taylor_like_step(f, cell.a, cell.h, 2 * n).remainder);
            CHECK(e_2n <= e_n);
        }
    }
}

TEST_CASE("expansion argument validation") {
    const SmoothFunction f = preset("quadratic");
    CHECK_THROWS_AS(taylor_step(f, -0.1, 0.5), std::domain_error);
    CHECK_THROWS_AS(taylor_step(f, 0.8, 0.3), std::domain_error);
    CHECK_THROWS_AS(taylor_step(f, 0.2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(taylor_like_step(f, -0.1, 0.5, 2), std::domain_error);
    CHECK_THROWS_AS(taylor_like_step(f, 0.2, 0.3, 0), std::invalid_argument);
}
