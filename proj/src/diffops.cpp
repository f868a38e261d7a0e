#include "varigrid/diffops.hpp"

namespace varigrid {

PartialPair partials(const ScalarField& f) {
    const GridSpec& s = f.spec();
    const int nx = s.nx, ny = s.ny;
    const double ix = 1.0 / (2.0 * s.hx), iy = 1.0 / (2.0 * s.hy);
    PartialPair p{ScalarField(s), ScalarField(s)};
    for (int j = 0; j < ny; ++j) {
        p.fx(0, j) = (-3.0 * f(0, j) + 4.0 * f(1, j) - f(2, j)) * ix;
        for (int i = 1; i < nx - 1; ++i)
            p.fx(i, j) = (f(i + 1, j) - f(i - 1, j)) * ix;
        p.fx(nx - 1, j) =
            (3.0 * f(nx - 1, j) - 4.0 * f(nx - 2, j) + f(nx - 3, j)) * ix;
    }
    for (int i = 0; i < nx; ++i) {
        p.fy(i, 0) = (-3.0 * f(i, 0) + 4.0 * f(i, 1) - f(i, 2)) * iy;
        p.fy(i, ny - 1) =
            (3.0 * f(i, ny - 1) - 4.0 * f(i, ny - 2) + f(i, ny - 3)) * iy;
    }
    for (int j = 1; j < ny - 1; ++j)
        for (int i = 0; i < nx; ++i)
            p.fy(i, j) = (f(i, j + 1) - f(i, j - 1)) * iy;
    return p;
}

ScalarField jacobian_det(const Transformation& T) {
    const PartialPair d1 = partials(T.pos.x);
    const PartialPair d2 = partials(T.pos.y);
    const GridSpec& s = T.spec();
    ScalarField J(s);
    for (int j = 0; j < s.ny; ++j)
        for (int i = 0; i < s.nx; ++i)
            J(i, j) = d1.fx(i, j) * d2.fy(i, j) - d1.fy(i, j) * d2.fx(i, j);
    return J;
}

ScalarField curl2d(const Transformation& T) {
    const PartialPair d1 = partials(T.pos.x);
    const PartialPair d2 = partials(T.pos.y);
    const GridSpec& s = T.spec();
    ScalarField c(s);
    for (int j = 0; j < s.ny; ++j)
        for (int i = 0; i < s.nx; ++i)
            c(i, j) = d2.fx(i, j) - d1.fy(i, j);
    return c;
}

ScalarField adjoint_divergence(const VectorField& a) {
    const GridSpec& s = a.spec();
    const int nx = s.nx, ny = s.ny;
    const double ix = 1.0 / (2.0 * s.hx), iy = 1.0 / (2.0 * s.hy);
    ScalarField div(s);
    // a entries on the boundary are masked to zero; see header.
    for (int j = 1; j < ny - 1; ++j) {
        for (int i = 1; i < nx - 1; ++i) {
            const double ax_e = (i + 1 < nx - 1) ? a.x(i + 1, j) : 0.0;
            const double ax_w = (i - 1 > 0) ? a.x(i - 1, j) : 0.0;
            const double ay_n = (j + 1 < ny - 1) ? a.y(i, j + 1) : 0.0;
            const double ay_s = (j - 1 > 0) ? a.y(i, j - 1) : 0.0;
            div(i, j) = (ax_e - ax_w) * ix + (ay_n - ay_s) * iy;
        }
    }
    return div;
}

}  // namespace varigrid
