#pragma once

#include <functional>
#include <vector>

#include "rmhd/vec.hpp"

namespace rmhd {

// Dense antiderivative table for y' = g(r) with cubic Hermite evaluation
// between nodes (exact derivatives at nodes). Outside [lo, hi] the curve is
// extended linearly with the endpoint slope, which keeps Newton iterates
// smooth; validity windows are reported separately.
template <typename T>
class CurveTable {
public:
    CurveTable() = default;
    CurveTable(std::function<T(double)> g, T y0, double r0, double lo, double hi, int n = 16384)
        : g_(std::move(g)), lo_(lo), hi_(hi), n_(n) {
        h_ = (hi - lo) / n;
        y_.resize(n + 1);
        // Simpson accumulation from r0 outward in table steps.
        int i0 = (int)std::lround((r0 - lo) / h_);
        if (i0 < 0) i0 = 0;
        if (i0 > n) i0 = n;
        const double rr0 = lo + i0 * h_;
        y_[i0] = y0 + step(r0, rr0);
        for (int i = i0; i < n; ++i) y_[i + 1] = y_[i] + step(lo + i * h_, lo + (i + 1) * h_);
        for (int i = i0; i > 0; --i) y_[i - 1] = y_[i] + step(lo + i * h_, lo + (i - 1) * h_);
    }

    T eval(double r) const {
        if (r <= lo_) return y_.front() + (r - lo_) * g_(lo_);
        if (r >= hi_) return y_.back() + (r - hi_) * g_(hi_);
        const double u = (r - lo_) / h_;
        int i = (int)u;
        if (i >= n_) i = n_ - 1;
        const double t = u - i;
        const T ya = y_[i], yb = y_[i + 1];
        const T ga = g_(lo_ + i * h_), gb = g_(lo_ + (i + 1) * h_);
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * ya + (t3 - 2 * t2 + t) * h_ * ga +
               (-2 * t3 + 3 * t2) * yb + (t3 - t2) * h_ * gb;
    }

private:
    T step(double a, double b) const {
        const double m = 0.5 * (a + b);
        return ((b - a) / 6.0) * (g_(a) + 4.0 * g_(m) + g_(b));
    }

    std::function<T(double)> g_;
    double lo_ = 0.0, hi_ = 1.0, h_ = 1.0;
    int n_ = 0;
    std::vector<T> y_;
};

} // namespace rmhd
