#include "varigrid/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace varigrid {

DistanceStats distance_stats(const Transformation& T, const Transformation& T0) {
    if (!(T.spec() == T0.spec()))
        throw std::invalid_argument("distance_stats: spec mismatch");
    const GridSpec& s = T.spec();
    DistanceStats st;
    double sum = 0.0;
    for (int j = 0; j < s.ny; ++j)
        for (int i = 0; i < s.nx; ++i) {
            const double d = std::hypot(T.pos.x(i, j) - T0.pos.x(i, j),
                                        T.pos.y(i, j) - T0.pos.y(i, j));
            st.max = std::max(st.max, d);
            sum += d;
        }
    st.avg = sum / s.node_count();
    return st;
}

namespace {

struct Pt {
    double x, y;
};

// Interior angle at corner p between edges toward a and b, in degrees.
double corner_angle_deg(const Pt& p, const Pt& a, const Pt& b, int ci, int cj) {
    const double ux = a.x - p.x, uy = a.y - p.y;
    const double vx = b.x - p.x, vy = b.y - p.y;
    const double nu = std::hypot(ux, uy), nv = std::hypot(vx, vy);
    if (nu == 0.0 || nv == 0.0)
        throw std::domain_error("angle_stats: degenerate cell (" +
                                std::to_string(ci) + "," + std::to_string(cj) +
                                "): zero-length edge");
    const double c = std::clamp((ux * vx + uy * vy) / (nu * nv), -1.0, 1.0);
    return std::acos(c) * 180.0 / std::numbers::pi;
}

}  // namespace

AngleStats angle_stats(const Transformation& T, const Transformation& T0) {
    if (!(T.spec() == T0.spec()))
        throw std::invalid_argument("angle_stats: spec mismatch");
    const GridSpec& s = T.spec();
    AngleStats st;
    double sum = 0.0;
    long count = 0;
    for (int cj = 0; cj < s.ny - 1; ++cj)
        for (int ci = 0; ci < s.nx - 1; ++ci) {
            // Cell corners in cyclic order.
            const int vi[4] = {ci, ci + 1, ci + 1, ci};
            const int vj[4] = {cj, cj, cj + 1, cj + 1};
            for (int k = 0; k < 4; ++k) {
                const int kp = (k + 3) % 4, kn = (k + 1) % 4;
                const Pt p{T.pos.x(vi[k], vj[k]), T.pos.y(vi[k], vj[k])};
                const Pt a{T.pos.x(vi[kp], vj[kp]), T.pos.y(vi[kp], vj[kp])};
                const Pt b{T.pos.x(vi[kn], vj[kn]), T.pos.y(vi[kn], vj[kn])};
                const Pt p0{T0.pos.x(vi[k], vj[k]), T0.pos.y(vi[k], vj[k])};
                const Pt a0{T0.pos.x(vi[kp], vj[kp]), T0.pos.y(vi[kp], vj[kp])};
                const Pt b0{T0.pos.x(vi[kn], vj[kn]), T0.pos.y(vi[kn], vj[kn])};
                const double d = std::abs(corner_angle_deg(p, a, b, ci, cj) -
                                          corner_angle_deg(p0, a0, b0, ci, cj));
                st.max_deg = std::max(st.max_deg, d);
                sum += d;
                ++count;
            }
        }
    st.avg_deg = sum / count;
    return st;
}

ComparisonReport compare_report(const Transformation& T, const Transformation& T0,
                                const MonitorPair& monitors, double alpha) {
    const ObjectiveReport obj = evaluate_ssd(T, monitors, alpha);
    const DistanceStats d = distance_stats(T, T0);
    const AngleStats a = angle_stats(T, T0);
    ComparisonReport r;
    r.ssd_J = obj.ssd_J;
    r.ssd = obj.ssd;
    r.max_distance = d.max;
    r.avg_distance = d.avg;
    r.max_angle_diff = a.max_deg;
    r.avg_angle_diff = a.avg_deg;
    return r;
}

}  // namespace varigrid
