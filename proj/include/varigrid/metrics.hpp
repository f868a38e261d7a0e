#pragma once

#include "varigrid/objective.hpp"

namespace varigrid {

struct DistanceStats {
    double max = 0.0;
    double avg = 0.0;
};

struct AngleStats {
    double max_deg = 0.0;
    double avg_deg = 0.0;
};

/// The comparison columns of a recovery experiment, in report order.
struct ComparisonReport {
    double ssd_J = 0.0;
    double ssd = 0.0;
    double max_distance = 0.0;
    double avg_distance = 0.0;
    double max_angle_diff = 0.0;  // degrees
    double avg_angle_diff = 0.0;  // degrees
};

/// Euclidean distance |T(x)-T0(x)| per node; max and mean over all nodes
/// (boundary included, so moving-boundary runs also measure the match there).
DistanceStats distance_stats(const Transformation& T, const Transformation& T0);

/// For each grid cell, the absolute difference of the four interior angles
/// of the quadrilateral under T and under T0, in degrees; max and mean over
/// all cells x 4 corners. Angles come from the arccosine of the normalized
/// dot product of the two incident edge vectors, clamped to [-1,1].
/// Throws std::domain_error naming the cell if an edge has zero length.
AngleStats angle_stats(const Transformation& T, const Transformation& T0);

/// evaluate_ssd components plus both statistic pairs in one record.
ComparisonReport compare_report(const Transformation& T, const Transformation& T0,
                                const MonitorPair& monitors, double alpha);

}  // namespace varigrid
