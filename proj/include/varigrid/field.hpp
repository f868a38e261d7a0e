#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace varigrid {

/// Uniform node-centered grid on [xmin,xmax] x [ymin,ymax].
///
/// Node (i,j) sits at (xmin + i*hx, ymin + j*hy) for 0 <= i < nx, 0 <= j < ny.
/// All field storage is x-fastest: flat index k = j*nx + i. Every module in
/// this project uses this ordering.
struct GridSpec {
    int nx = 0;
    int ny = 0;
    double xmin = 0.0, xmax = 0.0;
    double ymin = 0.0, ymax = 0.0;
    double hx = 0.0, hy = 0.0;

    double x(int i) const { return xmin + i * hx; }
    double y(int j) const { return ymin + j * hy; }

    int node_count() const { return nx * ny; }
    int interior_count() const { return (nx - 2) * (ny - 2); }

    bool is_interior(int i, int j) const {
        return i > 0 && i < nx - 1 && j > 0 && j < ny - 1;
    }

    /// Quadrature weight of one node in the interior midpoint rule.
    double cell_weight() const { return hx * hy; }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Builds a GridSpec with derived spacings.
/// Throws std::invalid_argument for node counts below 3 or inverted bounds.
GridSpec make_uniform_grid(int nx, int ny, double xmin, double xmax,
                           double ymin, double ymax);

/// Node-indexed scalar values over a GridSpec.
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(const GridSpec& spec, double fill = 0.0);

    const GridSpec& spec() const { return spec_; }

    double& operator()(int i, int j) {
        return v_[static_cast<std::size_t>(j) * spec_.nx + i];
    }
    double operator()(int i, int j) const {
        return v_[static_cast<std::size_t>(j) * spec_.nx + i];
    }

    double* data() { return v_.data(); }
    const double* data() const { return v_.data(); }
    std::vector<double>& values() { return v_; }
    const std::vector<double>& values() const { return v_; }

    void fill(double c);
    /// Sets every boundary entry to zero, leaving interior values untouched.
    void zero_boundary();

    bool same_spec(const ScalarField& other) const { return spec_ == other.spec_; }

private:
    GridSpec spec_;
    std::vector<double> v_;
};

/// Two scalar components over a shared GridSpec.
struct VectorField {
    ScalarField x;
    ScalarField y;

    VectorField() = default;
    explicit VectorField(const GridSpec& spec, double fill = 0.0)
        : x(spec, fill), y(spec, fill) {}
    VectorField(ScalarField cx, ScalarField cy);

    const GridSpec& spec() const { return x.spec(); }
};

/// Node positions (T1,T2) of a grid transformation.
struct Transformation {
    VectorField pos;

    Transformation() = default;
    explicit Transformation(const GridSpec& spec) : pos(spec) {}
    explicit Transformation(VectorField positions) : pos(std::move(positions)) {}

    const GridSpec& spec() const { return pos.spec(); }
};

/// The identity transformation: node positions equal grid coordinates.
Transformation identity_map(const GridSpec& spec);

/// Interior midpoint quadrature of a*b:  sum over interior nodes of
/// a(i,j)*b(i,j)*hx*hy. Boundary entries never contribute; they are inert
/// under the fixed-boundary Poisson control, so this is the inner product
/// the whole gradient chain is adjoint-consistent with.
double weighted_l2_inner(const ScalarField& a, const ScalarField& b);

/// y := y + alpha*x, elementwise over all nodes.
void axpy(double alpha, const ScalarField& x, ScalarField& y);
void axpy(double alpha, const VectorField& x, VectorField& y);

double max_abs(const ScalarField& f);
double max_abs(const VectorField& f);

/// Field CSV format: one header line "nx,ny,xmin,xmax,ymin,ymax" (values),
/// then one "i,j,value" line per node. Values are printed with 17 significant
/// digits so a write/read round trip is bit-exact.
void write_field_csv(const ScalarField& f, std::ostream& os);
void write_field_csv(const ScalarField& f, const std::string& path);
ScalarField read_field_csv(std::istream& is);
ScalarField read_field_csv(const std::string& path);

}  // namespace varigrid
