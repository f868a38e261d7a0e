#include "varigrid/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "varigrid/diffops.hpp"

namespace varigrid {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    return os;
}

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

void write_transformation_csv(const Transformation& T, const std::string& prefix) {
    write_field_csv(T.pos.x, prefix + "_x.csv");
    write_field_csv(T.pos.y, prefix + "_y.csv");
}

Transformation read_transformation_csv(const std::string& prefix) {
    ScalarField cx = read_field_csv(prefix + "_x.csv");
    ScalarField cy = read_field_csv(prefix + "_y.csv");
    return Transformation(VectorField(std::move(cx), std::move(cy)));
}

void write_vtk(const Transformation& T, const std::string& path,
               const std::string& title) {
    const GridSpec& s = T.spec();
    std::ofstream os = open_out(path);
    os << "# vtk DataFile Version 3.0\n"
       << title << '\n'
       << "ASCII\n"
       << "DATASET STRUCTURED_GRID\n"
       << "DIMENSIONS " << s.nx << ' ' << s.ny << " 1\n"
       << "POINTS " << s.node_count() << " double\n";
    for (int j = 0; j < s.ny; ++j)
        for (int i = 0; i < s.nx; ++i)
            os << fmt17(T.pos.x(i, j)) << ' ' << fmt17(T.pos.y(i, j)) << " 0\n";
    const ScalarField J = jacobian_det(T);
    const ScalarField c = curl2d(T);
    os << "POINT_DATA " << s.node_count() << '\n';
    os << "SCALARS jacobian double 1\nLOOKUP_TABLE default\n";
    for (double v : J.values()) os << fmt17(v) << '\n';
    os << "SCALARS curl double 1\nLOOKUP_TABLE default\n";
    for (double v : c.values()) os << fmt17(v) << '\n';
    if (!os) throw std::runtime_error("write failed for " + path);
}

void write_grid_svg(const Transformation& T, const std::string& path,
                    const Transformation* t0) {
    const GridSpec& s = T.spec();
    double lo_x = T.pos.x(0, 0), hi_x = lo_x, lo_y = T.pos.y(0, 0), hi_y = lo_y;
    auto widen = [&](const Transformation& t) {
        for (double v : t.pos.x.values()) {
            lo_x = std::min(lo_x, v);
            hi_x = std::max(hi_x, v);
        }
        for (double v : t.pos.y.values()) {
            lo_y = std::min(lo_y, v);
            hi_y = std::max(hi_y, v);
        }
    };
    widen(T);
    if (t0) widen(*t0);
    const double margin = 0.04 * std::max(hi_x - lo_x, hi_y - lo_y);
    lo_x -= margin;
    hi_x += margin;
    lo_y -= margin;
    hi_y += margin;

    const double width = 720.0;
    const double scale = width / (hi_x - lo_x);
    const double height = (hi_y - lo_y) * scale;
    auto px = [&](double x) { return (x - lo_x) * scale; };
    auto py = [&](double y) { return height - (y - lo_y) * scale; };  // y up

    std::ofstream os = open_out(path);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width)
       << "\" height=\"" << fmt(height) << "\" viewBox=\"0 0 " << fmt(width)
       << ' ' << fmt(height) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<g fill=\"none\" stroke=\"#c0392b\" stroke-width=\"0.8\">\n";
    for (int j = 0; j < s.ny; ++j) {
        os << "<polyline points=\"";
        for (int i = 0; i < s.nx; ++i)
            os << fmt(px(T.pos.x(i, j))) << ',' << fmt(py(T.pos.y(i, j))) << ' ';
        os << "\"/>\n";
    }
    for (int i = 0; i < s.nx; ++i) {
        os << "<polyline points=\"";
        for (int j = 0; j < s.ny; ++j)
            os << fmt(px(T.pos.x(i, j))) << ',' << fmt(py(T.pos.y(i, j))) << ' ';
        os << "\"/>\n";
    }
    os << "</g>\n";
    if (t0) {
        const double r = 1.6;
        os << "<g stroke=\"black\" stroke-width=\"0.7\">\n";
        for (int j = 0; j < s.ny; ++j)
            for (int i = 0; i < s.nx; ++i) {
                const double cx = px(t0->pos.x(i, j)), cy = py(t0->pos.y(i, j));
                os << "<path d=\"M" << fmt(cx - r) << ' ' << fmt(cy) << "H"
                   << fmt(cx + r) << "M" << fmt(cx) << ' ' << fmt(cy - r) << "V"
                   << fmt(cy + r) << "M" << fmt(cx - 0.7 * r) << ' '
                   << fmt(cy - 0.7 * r) << "L" << fmt(cx + 0.7 * r) << ' '
                   << fmt(cy + 0.7 * r) << "M" << fmt(cx - 0.7 * r) << ' '
                   << fmt(cy + 0.7 * r) << "L" << fmt(cx + 0.7 * r) << ' '
                   << fmt(cy - 0.7 * r) << "\"/>\n";
            }
        os << "</g>\n";
    }
    os << "</svg>\n";
    if (!os) throw std::runtime_error("write failed for " + path);
}

void write_history_csv(const std::vector<HistoryRow>& history,
                       const std::string& path) {
    std::ofstream os = open_out(path);
    os << "iter,ssd,ssd_J,ssd_curl,max_grad\n";
    for (const HistoryRow& r : history)
        os << r.iteration << ',' << fmt17(r.ssd) << ',' << fmt17(r.ssd_J) << ','
           << fmt17(r.ssd_curl) << ',' << fmt17(r.max_grad) << '\n';
    if (!os) throw std::runtime_error("write failed for " + path);
}

void write_report_csv(const ComparisonReport& r, const std::string& path) {
    std::ofstream os = open_out(path);
    os << "ssd_J,ssd,max_distance,avg_distance,max_angle_diff,avg_angle_diff\n";
    os << fmt17(r.ssd_J) << ',' << fmt17(r.ssd) << ',' << fmt17(r.max_distance)
       << ',' << fmt17(r.avg_distance) << ',' << fmt17(r.max_angle_diff) << ','
       << fmt17(r.avg_angle_diff) << '\n';
    if (!os) throw std::runtime_error("write failed for " + path);
}

std::string report_table(const ComparisonReport& r, const std::string& label) {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "%-24s %10s %10s %10s %10s %10s %10s\n"
                  "%-24s %10.4f %10.4f %10.4f %10.4f %10.4f %10.4f\n",
                  "", "ssd_J", "ssd", "max_dist", "avg_dist", "max_angle",
                  "avg_angle", label.c_str(), r.ssd_J, r.ssd, r.max_distance,
                  r.avg_distance, r.max_angle_diff, r.avg_angle_diff);
    return buf;
}

void write_manifest(const std::vector<std::pair<std::string, std::string>>& kv,
                    const std::string& path) {
    std::ofstream os = open_out(path);
    for (const auto& [k, v] : kv) os << k << '=' << v << '\n';
    if (!os) throw std::runtime_error("write failed for " + path);
}

}  // namespace varigrid
