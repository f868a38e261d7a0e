#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

#include "varigrid/metrics.hpp"
#include "varigrid/rng.hpp"
#include "varigrid/synth.hpp"

using namespace varigrid;

namespace {

Transformation rigid(const Transformation& t, double angle_rad, double dx, double dy) {
    const double c = std::cos(angle_rad), s = std::sin(angle_rad);
    Transformation out(t.spec());
    for (int j = 0; j < t.spec().ny; ++j)
        for (int i = 0; i < t.spec().nx; ++i) {
            const double x = t.pos.x(i, j), y = t.pos.y(i, j);
            out.pos.x(i, j) = c * x - s * y + dx;
            out.pos.y(i, j) = s * x + c * y + dy;
        }
    return out;
}

}  // namespace

TEST_CASE("distance_stats basics") {
    const GridSpec s = make_uniform_grid(5, 5, 0, 4, 0, 4);
    const Transformation t0 = default_fixed_boundary_map(s, 0.6);

    const DistanceStats zero = distance_stats(t0, t0);
    CHECK(zero.max == 0.0);
    CHECK(zero.avg == 0.0);

    Transformation shifted = t0;
    for (double& v : shifted.pos.x.values()) v += 0.3;
    for (double& v : shifted.pos.y.values()) v += 0.4;
    const DistanceStats offs = distance_stats(shifted, t0);
    CHECK(offs.max == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(offs.avg == doctest::Approx(0.5).epsilon(1e-14));

    Transformation one = t0;
    one.pos.x(2, 3) += 0.25;  // single node moved by d = 0.25
    const DistanceStats single = distance_stats(one, t0);
    CHECK(single.max == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(single.avg == doctest::Approx(0.25 / s.node_count()).epsilon(1e-12));
}

TEST_CASE("distance_stats is symmetric and rejects mismatched specs") {
    const GridSpec s = make_uniform_grid(7, 9, 0, 1, 0, 1);
    const Transformation a = default_fixed_boundary_map(s, 0.5);
    const Transformation b = identity_map(s);
    const DistanceStats ab = distance_stats(a, b);
    const DistanceStats ba = distance_stats(b, a);
    CHECK(ab.max == ba.max);
    CHECK(ab.avg == ba.avg);
    CHECK_THROWS_AS(
        distance_stats(a, identity_map(make_uniform_grid(7, 8, 0, 1, 0, 1))),
        std::invalid_argument);
}

TEST_CASE("angle_stats is zero for identical and rigidly-moved grids") {
    const GridSpec s = make_uniform_grid(9, 9, 0, 1, 0, 1);
    const Transformation t0 = default_fixed_boundary_map(s, 0.8);
    const AngleStats same = angle_stats(t0, t0);
    CHECK(same.max_deg == 0.0);
    CHECK(same.avg_deg == 0.0);

    const AngleStats rot = angle_stats(rigid(t0, 0.7, 2.5, -1.0), t0);
    CHECK(rot.max_deg <= 1e-10);
    CHECK(rot.avg_deg <= 1e-10);
}

TEST_CASE("angle_stats of sheared unit cells against hand trigonometry") {
    // One-cell grid; identity reference has four right angles.
    const GridSpec s = make_uniform_grid(3, 3, 0, 2, 0, 2);
    const Transformation id = identity_map(s);

    auto shear = [&](double k) {
        Transformation t(s);
        for (int j = 0; j < s.ny; ++j)
            for (int i = 0; i < s.nx; ++i) {
                t.pos.x(i, j) = s.x(i) + k * s.y(j);
                t.pos.y(i, j) = s.y(j);
            }
        return t;
    };

    // Shear strength 1: cell angles become 45 and 135 degrees.
    const AngleStats s1 = angle_stats(shear(1.0), id);
    CHECK(s1.max_deg == doctest::Approx(45.0).epsilon(1e-9));
    CHECK(s1.avg_deg == doctest::Approx(45.0).epsilon(1e-9));

    // Shear strength 0.5: angles are 90 -/+ atan(...), diff acos-based.
    const double expected =
        90.0 - std::acos(0.5 / std::sqrt(1.25)) * 180.0 / std::numbers::pi;
    const AngleStats s05 = angle_stats(shear(0.5), id);
    CHECK(s05.max_deg == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("angle_stats reports degenerate cells") {
    const GridSpec s = make_uniform_grid(3, 3, 0, 2, 0, 2);
    Transformation t = identity_map(s);
    t.pos.x(1, 0) = t.pos.x(0, 0);  // collapse one edge
    t.pos.y(1, 0) = t.pos.y(0, 0);
    CHECK_THROWS_AS(angle_stats(t, identity_map(s)), std::domain_error);
}

TEST_CASE("avg never exceeds max") {
    const GridSpec s = make_uniform_grid(11, 13, 0, 1, 0, 1);
    Rng rng(55);
    Transformation a = default_fixed_boundary_map(s, 0.7);
    Transformation b = identity_map(s);
    for (int j = 1; j < s.ny - 1; ++j)
        for (int i = 1; i < s.nx - 1; ++i) {
            b.pos.x(i, j) += 0.002 * rng.uniform(-1, 1);
            b.pos.y(i, j) += 0.002 * rng.uniform(-1, 1);
        }
    const DistanceStats d = distance_stats(a, b);
    const AngleStats an = angle_stats(a, b);
    CHECK(d.avg <= d.max);
    CHECK(an.avg_deg <= an.max_deg);
}

TEST_CASE("compare_report composes the individual metrics") {
    const GridSpec s = make_uniform_grid(17, 17, 1, 17, 1, 17);
    const Transformation t0 = default_fixed_boundary_map(s, 1.2);
    const MonitorPair monitors = monitors_from_map(t0);
    const Transformation t = default_fixed_boundary_map(s, 1.0);

    const ComparisonReport r = compare_report(t, t0, monitors, 2.0);
    const ObjectiveReport obj = evaluate_ssd(t, monitors, 2.0);
    const DistanceStats d = distance_stats(t, t0);
    const AngleStats a = angle_stats(t, t0);
    CHECK(r.ssd_J == obj.ssd_J);
    CHECK(r.ssd == obj.ssd);
    CHECK(r.max_distance == d.max);
    CHECK(r.avg_distance == d.avg);
    CHECK(r.max_angle_diff == a.max_deg);
    CHECK(r.avg_angle_diff == a.avg_deg);

    const ComparisonReport self = compare_report(t0, t0, monitors, 1.0);
    CHECK(self.ssd == 0.0);
    CHECK(self.max_distance == 0.0);
    CHECK(self.max_angle_diff == 0.0);
}
