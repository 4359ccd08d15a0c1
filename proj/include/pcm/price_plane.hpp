#pragma once

#include <array>

namespace pcm {

/// The EA's price pair for one hour.
struct IncentivePair {
    double r_wp = 0.0;  // EUR/MWh
    double r_ls = 0.0;  // EUR/MWh

    friend bool operator==(const IncentivePair&, const IncentivePair&) = default;
};

/// n R_WP + (N - n) R_LS, written as N R_LS + n (R_WP - R_LS) so that the
/// value is monotone in n under rounding and exactly constant in n on the
/// diagonal.
inline double package_load(int size, int n, IncentivePair p) {
    return size * p.r_ls + n * (p.r_wp - p.r_ls);
}

/// c0 + cw R_WP + cl R_LS.
struct Affine2 {
    double c0 = 0.0;
    double cw = 0.0;
    double cl = 0.0;

    double operator()(IncentivePair p) const { return c0 + cw * p.r_wp + cl * p.r_ls; }

    Affine2 operator+(const Affine2& o) const { return {c0 + o.c0, cw + o.cw, cl + o.cl}; }
    Affine2 operator-(const Affine2& o) const { return {c0 - o.c0, cw - o.cw, cl - o.cl}; }
    Affine2 operator*(double s) const { return {c0 * s, cw * s, cl * s}; }
};

/// ww R_WP^2 + wl R_WP R_LS + ll R_LS^2 + w R_WP + l R_LS + c.
struct Quadratic2 {
    double ww = 0.0;
    double wl = 0.0;
    double ll = 0.0;
    double w = 0.0;
    double l = 0.0;
    double c = 0.0;

    double operator()(IncentivePair p) const {
        return (ww * p.r_wp + wl * p.r_ls + w) * p.r_wp + (ll * p.r_ls + l) * p.r_ls + c;
    }
    std::array<double, 2> gradient(IncentivePair p) const {
        return {2.0 * ww * p.r_wp + wl * p.r_ls + w, wl * p.r_wp + 2.0 * ll * p.r_ls + l};
    }
    /// Row-major symmetric Hessian {h11, h12, h22}.
    std::array<double, 3> hessian() const { return {2.0 * ww, wl, 2.0 * ll}; }

    Quadratic2& operator+=(const Quadratic2& o) {
        ww += o.ww; wl += o.wl; ll += o.ll; w += o.w; l += o.l; c += o.c;
        return *this;
    }
    Quadratic2 operator*(double s) const { return {ww * s, wl * s, ll * s, w * s, l * s, c * s}; }
};

inline Quadratic2 lift(const Affine2& f) {
    return {0.0, 0.0, 0.0, f.cw, f.cl, f.c0};
}

inline Quadratic2 product(const Affine2& f, const Affine2& g) {
    return {f.cw * g.cw,
            f.cw * g.cl + f.cl * g.cw,
            f.cl * g.cl,
            f.c0 * g.cw + f.cw * g.c0,
            f.c0 * g.cl + f.cl * g.c0,
            f.c0 * g.c0};
}

}  // namespace pcm
