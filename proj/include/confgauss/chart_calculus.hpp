#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <type_traits>
#include <vector>

#include "confgauss/model_spaces.hpp"

namespace confgauss {

struct Domain {
    double u0 = -1, u1 = 1, v0 = -1, v1 = 1;
};

// Samples on an N x N node lattice over a chart rectangle; node (i, j) sits at (u_i, v_j).
template <class T>
struct Field {
    int n = 0;
    Domain dom;
    std::vector<T> data;

    Field() = default;
    Field(int n_, const Domain& d) : n(n_), dom(d), data(static_cast<std::size_t>(n_) * n_) {}
    Field(int n_, const Domain& d, const T& fill) : n(n_), dom(d), data(static_cast<std::size_t>(n_) * n_, fill) {}

    T& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * n + j]; }
    const T& operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * n + j]; }
    double hu() const { return (dom.u1 - dom.u0) / (n - 1); }
    double hv() const { return (dom.v1 - dom.v0) / (n - 1); }
    double u(int i) const { return dom.u0 + i * hu(); }
    double v(int j) const { return dom.v0 + j * hv(); }

    template <class F>
    auto map(F f) const {
        using R = std::decay_t<decltype(f((*this)(0, 0)))>;
        Field<R> out(n, dom);
        for (std::size_t k = 0; k < data.size(); ++k) out.data[k] = f(data[k]);
        return out;
    }
};

template <class T, class U, class F>
auto zip(const Field<T>& a, const Field<U>& b, F f) {
    using R = std::decay_t<decltype(f(a.data[0], b.data[0]))>;
    Field<R> out(a.n, a.dom);
    for (std::size_t k = 0; k < a.data.size(); ++k) out.data[k] = f(a.data[k], b.data[k]);
    return out;
}

template <class T>
struct complexify {
    using type = std::complex<T>;
};
template <>
struct complexify<cd> {
    using type = cd;
};
template <int R, int C>
struct complexify<Eigen::Matrix<double, R, C>> {
    using type = Eigen::Matrix<cd, R, C>;
};
template <int R, int C>
struct complexify<Eigen::Matrix<cd, R, C>> {
    using type = Eigen::Matrix<cd, R, C>;
};
template <class T>
using complex_t = typename complexify<T>::type;

inline cd to_complex(double x) { return {x, 0.0}; }
inline cd to_complex(cd x) { return x; }
template <class S, int R, int C>
Eigen::Matrix<cd, R, C> to_complex(const Eigen::Matrix<S, R, C>& m) {
    return m.template cast<cd>();
}

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(cd x) { return std::abs(x); }
template <class Derived>
double magnitude(const Eigen::MatrixBase<Derived>& m) {
    return m.norm();
}

inline cd conj_of(cd x) { return std::conj(x); }
template <int R, int C>
Eigen::Matrix<cd, R, C> conj_of(const Eigen::Matrix<cd, R, C>& m) {
    return m.conjugate();
}

constexpr int kMinGrid = 9;
constexpr int kBoundaryBand = 2;

namespace stencil {

// 4th-order first derivative along one lattice line: samples at s(k), k in [0, n).
template <class T, class Get>
T first(Get s, int k, int n, double h) {
    const double c = 1.0 / (12.0 * h);
    T r;
    if (k == 0) {
        r = s(0) * -25.0;
        r += s(1) * 48.0; r += s(2) * -36.0; r += s(3) * 16.0; r += s(4) * -3.0;
    } else if (k == 1) {
        r = s(0) * -3.0;
        r += s(1) * -10.0; r += s(2) * 18.0; r += s(3) * -6.0; r += s(4) * 1.0;
    } else if (k == n - 2) {
        r = s(n - 1) * 3.0;
        r += s(n - 2) * 10.0; r += s(n - 3) * -18.0; r += s(n - 4) * 6.0; r += s(n - 5) * -1.0;
    } else if (k == n - 1) {
        r = s(n - 1) * 25.0;
        r += s(n - 2) * -48.0; r += s(n - 3) * 36.0; r += s(n - 4) * -16.0; r += s(n - 5) * 3.0;
    } else {
        r = s(k - 2) * 1.0;
        r += s(k - 1) * -8.0; r += s(k + 1) * 8.0; r += s(k + 2) * -1.0;
    }
    return r * c;
}

// 4th-order second derivative along one lattice line.
template <class T, class Get>
T second(Get s, int k, int n, double h) {
    const double c = 1.0 / (12.0 * h * h);
    T r;
    if (k == 0) {
        r = s(0) * 45.0;
        r += s(1) * -154.0; r += s(2) * 214.0; r += s(3) * -156.0; r += s(4) * 61.0; r += s(5) * -10.0;
    } else if (k == 1) {
        r = s(0) * 10.0;
        r += s(1) * -15.0; r += s(2) * -4.0; r += s(3) * 14.0; r += s(4) * -6.0; r += s(5) * 1.0;
    } else if (k == n - 2) {
        r = s(n - 1) * 10.0;
        r += s(n - 2) * -15.0; r += s(n - 3) * -4.0; r += s(n - 4) * 14.0; r += s(n - 5) * -6.0; r += s(n - 6) * 1.0;
    } else if (k == n - 1) {
        r = s(n - 1) * 45.0;
        r += s(n - 2) * -154.0; r += s(n - 3) * 214.0; r += s(n - 4) * -156.0; r += s(n - 5) * 61.0; r += s(n - 6) * -10.0;
    } else {
        r = s(k - 2) * -1.0;
        r += s(k - 1) * 16.0; r += s(k) * -30.0; r += s(k + 1) * 16.0; r += s(k + 2) * -1.0;
    }
    return r * c;
}

inline void require_size(int n) {
    if (n < kMinGrid) throw GeometryError("grid too small (N must be at least 9)");
}

}  // namespace stencil

template <class T>
Field<T> d_u(const Field<T>& f) {
    stencil::require_size(f.n);
    Field<T> out(f.n, f.dom);
    const double h = f.hu();
    for (int j = 0; j < f.n; ++j)
        for (int i = 0; i < f.n; ++i)
            out(i, j) = stencil::first<T>([&](int k) -> const T& { return f(k, j); }, i, f.n, h);
    return out;
}

template <class T>
Field<T> d_v(const Field<T>& f) {
    stencil::require_size(f.n);
    Field<T> out(f.n, f.dom);
    const double h = f.hv();
    for (int i = 0; i < f.n; ++i)
        for (int j = 0; j < f.n; ++j)
            out(i, j) = stencil::first<T>([&](int k) -> const T& { return f(i, k); }, j, f.n, h);
    return out;
}

template <class T>
Field<T> d_uu(const Field<T>& f) {
    stencil::require_size(f.n);
    Field<T> out(f.n, f.dom);
    const double h = f.hu();
    for (int j = 0; j < f.n; ++j)
        for (int i = 0; i < f.n; ++i)
            out(i, j) = stencil::second<T>([&](int k) -> const T& { return f(k, j); }, i, f.n, h);
    return out;
}

template <class T>
Field<T> d_vv(const Field<T>& f) {
    stencil::require_size(f.n);
    Field<T> out(f.n, f.dom);
    const double h = f.hv();
    for (int i = 0; i < f.n; ++i)
        for (int j = 0; j < f.n; ++j)
            out(i, j) = stencil::second<T>([&](int k) -> const T& { return f(i, k); }, j, f.n, h);
    return out;
}

template <class T>
Field<T> d_uv(const Field<T>& f) {
    return d_u(d_v(f));
}

// Wirtinger derivatives: dz = (d_u - i d_v)/2, dzbar = (d_u + i d_v)/2.
template <class T>
Field<complex_t<T>> dz(const Field<T>& f) {
    const Field<T> fu = d_u(f), fv = d_v(f);
    const cd i(0, 1);
    Field<complex_t<T>> out(f.n, f.dom);
    for (std::size_t k = 0; k < f.data.size(); ++k)
        out.data[k] = (to_complex(fu.data[k]) - to_complex(fv.data[k]) * i) * 0.5;
    return out;
}

template <class T>
Field<complex_t<T>> dzbar(const Field<T>& f) {
    const Field<T> fu = d_u(f), fv = d_v(f);
    const cd i(0, 1);
    Field<complex_t<T>> out(f.n, f.dom);
    for (std::size_t k = 0; k < f.data.size(); ++k)
        out.data[k] = (to_complex(fu.data[k]) + to_complex(fv.data[k]) * i) * 0.5;
    return out;
}

// d_z d_z f = (f_uu - f_vv - 2i f_uv)/4 with direct second-derivative stencils.
template <class T>
Field<complex_t<T>> dzz(const Field<T>& f) {
    const Field<T> fuu = d_uu(f), fvv = d_vv(f), fuv = d_uv(f);
    const cd i(0, 1);
    Field<complex_t<T>> out(f.n, f.dom);
    for (std::size_t k = 0; k < f.data.size(); ++k)
        out.data[k] = (to_complex(fuu.data[k]) - to_complex(fvv.data[k]) - to_complex(fuv.data[k]) * (2.0 * i)) * 0.25;
    return out;
}

// d_z d_zbar f = (f_uu + f_vv)/4.
template <class T>
Field<T> dzzbar(const Field<T>& f) {
    const Field<T> fuu = d_uu(f), fvv = d_vv(f);
    Field<T> out(f.n, f.dom);
    for (std::size_t k = 0; k < f.data.size(); ++k) {
        out.data[k] = fuu.data[k];
        out.data[k] += fvv.data[k];
        out.data[k] *= 0.25;
    }
    return out;
}

// Max-norm over nodes at least `band` away from the boundary.
template <class T>
double interior_max(const Field<T>& f, int band = kBoundaryBand) {
    double m = 0;
    for (int i = band; i < f.n - band; ++i)
        for (int j = band; j < f.n - band; ++j) m = std::max(m, magnitude(f(i, j)));
    return m;
}

template <class T>
double interior_min(const Field<T>& f, int band = kBoundaryBand) {
    double m = INFINITY;
    for (int i = band; i < f.n - band; ++i)
        for (int j = band; j < f.n - band; ++j) m = std::min(m, magnitude(f(i, j)));
    return m;
}

template <class T, class U>
double max_difference(const Field<T>& a, const Field<U>& b, int band = kBoundaryBand) {
    double m = 0;
    for (int i = band; i < a.n - band; ++i)
        for (int j = band; j < a.n - band; ++j) m = std::max(m, magnitude(a(i, j) - b(i, j)));
    return m;
}

// Grid of analytic 2-jets. R3 positions carry a zero fourth component.
struct ChartGrid {
    Model model = Model::R3;
    Field<Jet4> jets;

    int n() const { return jets.n; }
    const Domain& domain() const { return jets.dom; }
};

// Apply a jet map node by node (chain rule through the map).
ChartGrid push_jets(const ChartGrid& g, Model target, const std::function<Jet4(const Jet4&)>& f);
// Convert between model spaces through the stereographic / Poincaré projections.
ChartGrid to_model(const ChartGrid& g, Model target);

struct FundamentalData {
    Model model = Model::R3;
    Field<Vec4> pos, xu, xv, xzzb;
    Field<CVec4> xz, xzz;
    Field<double> lambda, e2l, H;
    Field<Vec4> normal;
    Field<CVec4> normal_z;  // from the 2-jets, not from stencils
    Field<cd> lambda_z;
    Field<cd> Omega;
    Field<char> umbilic;

    int n() const { return pos.n; }
    const Domain& domain() const { return pos.dom; }
    bool any_umbilic() const;
    PointData at(int i, int j) const;
    // Real tracefree form: Å = [[a, phi], [phi, -a]].
    double a_coef(int i, int j) const;
    double phi_coef(int i, int j) const;
};

// Ambient product of the model (Euclidean for R3/S3, Minkowski for H3).
double ambient_product(Model m, const Vec4& a, const Vec4& b);
cd ambient_product(Model m, const CVec4& a, const CVec4& b);

constexpr double kUmbilicTol = 1e-7;

FundamentalData fundamental_data(const ChartGrid& grid);

Field<cd> gauss_codazzi_residual(const FundamentalData& data);

struct StructureResiduals {
    double normal_derivative = 0;  // n_z equation
    double laplacian = 0;          // x_{z zbar} equation
    double hessian = 0;            // x_{zz} equation
    double max() const { return std::max({normal_derivative, laplacian, hessian}); }
};
StructureResiduals structure_residuals(const FundamentalData& data);

// Conformality defect |<x_z, x_z>| / <x_z, x_zbar> over all nodes.
double conformality_defect(const ChartGrid& grid);

inline std::vector<double> flatten(double x) { return {x}; }
inline std::vector<double> flatten(cd x) { return {x.real(), x.imag()}; }
template <int R, int C>
std::vector<double> flatten(const Eigen::Matrix<double, R, C>& m) {
    return std::vector<double>(m.data(), m.data() + m.size());
}
template <int R, int C>
std::vector<double> flatten(const Eigen::Matrix<cd, R, C>& m) {
    std::vector<double> out;
    for (int k = 0; k < m.size(); ++k) {
        out.push_back(m.data()[k].real());
        out.push_back(m.data()[k].imag());
    }
    return out;
}

void write_csv_rows(const std::string& path, const Domain& dom, int n, const std::vector<std::string>& columns,
                    const std::function<std::vector<double>(int, int)>& row);

template <class T>
void write_csv(const std::string& path, const Field<T>& f, const std::vector<std::string>& columns) {
    write_csv_rows(path, f.dom, f.n, columns, [&](int i, int j) { return flatten(f(i, j)); });
}

}  // namespace confgauss
