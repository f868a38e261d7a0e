#pragma once

#include <string>
#include <utility>
#include <vector>

#include "varigrid/field.hpp"
#include "varigrid/metrics.hpp"
#include "varigrid/optimizer.hpp"

namespace varigrid {

/// Writes the two position components in the field CSV format to
/// <prefix>_x.csv and <prefix>_y.csv.
void write_transformation_csv(const Transformation& T, const std::string& prefix);
Transformation read_transformation_csv(const std::string& prefix);

/// Legacy VTK ASCII structured grid of the transformed nodes, with the
/// full-field Jacobian determinant and curl attached as point data (boundary
/// values there come from the one-sided diagnostic stencils).
void write_vtk(const Transformation& T, const std::string& path,
               const std::string& title = "varigrid transformation");

/// Static SVG plot of both families of grid lines of T; when t0 is given its
/// nodes are overlaid as star markers.
void write_grid_svg(const Transformation& T, const std::string& path,
                    const Transformation* t0 = nullptr);

/// One "iter,ssd,ssd_J,ssd_curl,max_grad" row per recorded iteration.
void write_history_csv(const std::vector<HistoryRow>& history,
                       const std::string& path);

/// Header plus one row with the comparison columns in table order:
/// ssd_J,ssd,max_distance,avg_distance,max_angle_diff,avg_angle_diff.
void write_report_csv(const ComparisonReport& r, const std::string& path);

std::string report_table(const ComparisonReport& r, const std::string& label);

/// Plain key=value run manifest, one pair per line, in the given order.
void write_manifest(const std::vector<std::pair<std::string, std::string>>& kv,
                    const std::string& path);

}  // namespace varigrid
