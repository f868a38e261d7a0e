#include "varigrid/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace varigrid {

GridSpec make_uniform_grid(int nx, int ny, double xmin, double xmax,
                           double ymin, double ymax) {
    if (nx < 3 || ny < 3)
        throw std::invalid_argument("make_uniform_grid: node counts must be >= 3");
    if (!(xmax > xmin) || !(ymax > ymin))
        throw std::invalid_argument("make_uniform_grid: inverted or empty bounds");
    GridSpec s;
    s.nx = nx;
    s.ny = ny;
    s.xmin = xmin;
    s.xmax = xmax;
    s.ymin = ymin;
    s.ymax = ymax;
    s.hx = (xmax - xmin) / (nx - 1);
    s.hy = (ymax - ymin) / (ny - 1);
    return s;
}

ScalarField::ScalarField(const GridSpec& spec, double fill)
    : spec_(spec), v_(static_cast<std::size_t>(spec.node_count()), fill) {
    if (spec.nx < 3 || spec.ny < 3)
        throw std::invalid_argument("ScalarField: invalid GridSpec");
}

void ScalarField::fill(double c) { std::fill(v_.begin(), v_.end(), c); }

void ScalarField::zero_boundary() {
    const int nx = spec_.nx, ny = spec_.ny;
    for (int i = 0; i < nx; ++i) {
        (*this)(i, 0) = 0.0;
        (*this)(i, ny - 1) = 0.0;
    }
    for (int j = 0; j < ny; ++j) {
        (*this)(0, j) = 0.0;
        (*this)(nx - 1, j) = 0.0;
    }
}

VectorField::VectorField(ScalarField cx, ScalarField cy)
    : x(std::move(cx)), y(std::move(cy)) {
    if (!x.same_spec(y))
        throw std::invalid_argument("VectorField: components on different grids");
}

Transformation identity_map(const GridSpec& spec) {
    Transformation t(spec);
    for (int j = 0; j < spec.ny; ++j)
        for (int i = 0; i < spec.nx; ++i) {
            t.pos.x(i, j) = spec.x(i);
            t.pos.y(i, j) = spec.y(j);
        }
    return t;
}

double weighted_l2_inner(const ScalarField& a, const ScalarField& b) {
    if (!a.same_spec(b))
        throw std::invalid_argument("weighted_l2_inner: spec mismatch");
    const GridSpec& s = a.spec();
    double sum = 0.0;
    for (int j = 1; j < s.ny - 1; ++j)
        for (int i = 1; i < s.nx - 1; ++i) sum += a(i, j) * b(i, j);
    return sum * s.cell_weight();
}

void axpy(double alpha, const ScalarField& x, ScalarField& y) {
    if (!x.same_spec(y)) throw std::invalid_argument("axpy: spec mismatch");
    const double* xs = x.data();
    double* ys = y.data();
    const std::size_t n = x.values().size();
    for (std::size_t k = 0; k < n; ++k) ys[k] += alpha * xs[k];
}

void axpy(double alpha, const VectorField& x, VectorField& y) {
    axpy(alpha, x.x, y.x);
    axpy(alpha, x.y, y.y);
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

double max_abs(const VectorField& f) {
    return std::max(max_abs(f.x), max_abs(f.y));
}

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void write_field_csv(const ScalarField& f, std::ostream& os) {
    const GridSpec& s = f.spec();
    os << s.nx << ',' << s.ny << ',' << fmt17(s.xmin) << ',' << fmt17(s.xmax)
       << ',' << fmt17(s.ymin) << ',' << fmt17(s.ymax) << '\n';
    for (int j = 0; j < s.ny; ++j)
        for (int i = 0; i < s.nx; ++i)
            os << i << ',' << j << ',' << fmt17(f(i, j)) << '\n';
}

void write_field_csv(const ScalarField& f, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_field_csv: cannot open " + path);
    write_field_csv(f, os);
    if (!os) throw std::runtime_error("write_field_csv: write failed for " + path);
}

ScalarField read_field_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line))
        throw std::runtime_error("read_field_csv: missing header line");
    int nx = 0, ny = 0;
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf,%lf,%lf", &nx, &ny, &xmin,
                    &xmax, &ymin, &ymax) != 6)
        throw std::runtime_error("read_field_csv: malformed header: " + line);
    ScalarField f(make_uniform_grid(nx, ny, xmin, xmax, ymin, ymax));
    std::vector<char> seen(static_cast<std::size_t>(nx) * ny, 0);
    int count = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        int i = 0, j = 0;
        double v = 0;
        if (std::sscanf(line.c_str(), "%d,%d,%lf", &i, &j, &v) != 3)
            throw std::runtime_error("read_field_csv: malformed line: " + line);
        if (i < 0 || i >= nx || j < 0 || j >= ny)
            throw std::runtime_error("read_field_csv: node index out of range: " + line);
        if (!std::isfinite(v))
            throw std::runtime_error("read_field_csv: non-finite value: " + line);
        f(i, j) = v;
        std::size_t k = static_cast<std::size_t>(j) * nx + i;
        if (!seen[k]) {
            seen[k] = 1;
            ++count;
        }
    }
    if (count != nx * ny)
        throw std::runtime_error("read_field_csv: incomplete field (" +
                                 std::to_string(count) + " of " +
                                 std::to_string(nx * ny) + " nodes)");
    return f;
}

ScalarField read_field_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("read_field_csv: cannot open " + path);
    return read_field_csv(is);
}

}  // namespace varigrid
