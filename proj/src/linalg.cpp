#include "rmhd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rmhd {

Matrix8 mat8_zero() {
    Matrix8 m{};
    for (auto& row : m) row.fill(0.0);
    return m;
}

Matrix8 mat8_identity() {
    Matrix8 m = mat8_zero();
    for (int i = 0; i < 8; ++i) m[i][i] = 1.0;
    return m;
}

Matrix8 mat8_mul(const Matrix8& a, const Matrix8& b) {
    Matrix8 c = mat8_zero();
    for (int i = 0; i < 8; ++i)
        for (int k = 0; k < 8; ++k) {
            const double aik = a[i][k];
            if (aik == 0.0) continue;
            for (int j = 0; j < 8; ++j) c[i][j] += aik * b[k][j];
        }
    return c;
}

std::array<double, 8> mat8_apply(const Matrix8& a, const std::array<double, 8>& x) {
    std::array<double, 8> y{};
    for (int i = 0; i < 8; ++i) {
        double s = 0.0;
        for (int j = 0; j < 8; ++j) s += a[i][j] * x[j];
        y[i] = s;
    }
    return y;
}

double mat8_det(Matrix8 a) {
    double det = 1.0;
    for (int col = 0; col < 8; ++col) {
        int piv = col;
        for (int r = col + 1; r < 8; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        if (a[piv][col] == 0.0) return 0.0;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (int r = col + 1; r < 8; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < 8; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return det;
}

std::vector<double> singular_values(const std::vector<double>& a, int m, int n) {
    if ((int)a.size() != m * n) throw std::invalid_argument("singular_values: bad shape");
    // Work on columns; transpose if wide so rows >= cols.
    int rows = m, cols = n;
    std::vector<double> w;
    if (m >= n) {
        w = a;
    } else {
        rows = n;
        cols = m;
        w.resize(a.size());
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) w[j * cols + i] = a[i * n + j];
    }
    auto col = [&](int j, int i) -> double& { return w[i * cols + j]; };

    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < cols - 1; ++p) {
            for (int q = p + 1; q < cols; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (int i = 0; i < rows; ++i) {
                    app += col(p, i) * col(p, i);
                    aqq += col(q, i) * col(q, i);
                    apq += col(p, i) * col(q, i);
                }
                off = std::max(off, std::fabs(apq) / std::max(1e-300, std::sqrt(app * aqq)));
                if (std::fabs(apq) < 1e-300) continue;
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (int i = 0; i < rows; ++i) {
                    const double vp = col(p, i), vq = col(q, i);
                    col(p, i) = c * vp - s * vq;
                    col(q, i) = s * vp + c * vq;
                }
            }
        }
        if (off < 1e-15) break;
    }
    std::vector<double> sv(cols);
    for (int j = 0; j < cols; ++j) {
        double s = 0.0;
        for (int i = 0; i < rows; ++i) s += col(j, i) * col(j, i);
        sv[j] = std::sqrt(s);
    }
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    return sv;
}

int numerical_rank(const std::vector<double>& a, int m, int n, double tol) {
    const auto sv = singular_values(a, m, n);
    if (sv.empty() || sv[0] == 0.0) return 0;
    int r = 0;
    for (double s : sv)
        if (s > tol * sv[0]) ++r;
    return r;
}

std::array<double, 9> charpoly8(const Matrix8& m) {
    // Faddeev-LeVerrier: M1 = M, c1 = -tr(M1); Mk = M (M_{k-1} + c_{k-1} I).
    std::array<double, 9> c{};
    c[0] = 1.0;
    Matrix8 mk = m;
    for (int k = 1; k <= 8; ++k) {
        double tr = 0.0;
        for (int i = 0; i < 8; ++i) tr += mk[i][i];
        c[k] = -tr / k;
        if (k == 8) break;
        Matrix8 shifted = mk;
        for (int i = 0; i < 8; ++i) shifted[i][i] += c[k];
        mk = mat8_mul(m, shifted);
    }
    return c;
}

std::vector<std::complex<double>> poly_roots(const std::vector<double>& coeff) {
    using cd = std::complex<double>;
    const int n = (int)coeff.size() - 1;
    if (n < 1) return {};
    auto eval = [&](cd x, cd& dp) {
        cd p = coeff[0];
        dp = 0.0;
        for (int i = 1; i <= n; ++i) {
            dp = dp * x + p;
            p = p * x + coeff[i];
        }
        return p;
    };
    double radius = 0.0;
    for (int i = 1; i <= n; ++i)
        radius = std::max(radius, std::pow(std::fabs(coeff[i]), 1.0 / i));
    radius = 2.0 * radius + 1.0;

    std::vector<cd> z(n);
    for (int i = 0; i < n; ++i) {
        const double th = 2.0 * M_PI * i / n + 0.4; // fixed offset avoids symmetry stalls
        z[i] = radius * cd(std::cos(th), std::sin(th));
    }
    for (int iter = 0; iter < 500; ++iter) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            cd dp;
            const cd p = eval(z[i], dp);
            cd sum = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i) sum += 1.0 / (z[i] - z[j]);
            const cd newton = (dp != cd(0.0)) ? p / dp : p;
            const cd denom = 1.0 - newton * sum;
            const cd step = (std::abs(denom) > 1e-300) ? newton / denom : newton;
            z[i] -= step;
            worst = std::max(worst, std::abs(step));
        }
        if (worst < 1e-14 * radius) break;
    }
    return z;
}

std::vector<std::complex<double>> real_eigenvalues(std::vector<double> a, int n) {
    auto at = [&](int i, int j) -> double& { return a[i * n + j]; };

    // Householder reduction to upper Hessenberg.
    for (int col = 0; col < n - 2; ++col) {
        double nrm = 0.0;
        for (int i = col + 1; i < n; ++i) nrm += at(i, col) * at(i, col);
        nrm = std::sqrt(nrm);
        if (nrm < 1e-300) continue;
        std::vector<double> v(n, 0.0);
        const double alpha = at(col + 1, col) >= 0.0 ? -nrm : nrm;
        v[col + 1] = at(col + 1, col) - alpha;
        for (int i = col + 2; i < n; ++i) v[i] = at(i, col);
        double vv = 0.0;
        for (int i = col + 1; i < n; ++i) vv += v[i] * v[i];
        if (vv < 1e-300) continue;
        // A <- (I - 2 v v^T / v^T v) A (I - 2 v v^T / v^T v)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int i = col + 1; i < n; ++i) s += v[i] * at(i, j);
            s *= 2.0 / vv;
            for (int i = col + 1; i < n; ++i) at(i, j) -= s * v[i];
        }
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = col + 1; j < n; ++j) s += at(i, j) * v[j];
            s *= 2.0 / vv;
            for (int j = col + 1; j < n; ++j) at(i, j) -= s * v[j];
        }
    }

    std::vector<std::complex<double>> eig;
    eig.reserve(n);
    double scale = 1e-300;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::fabs(at(i, j)));

    auto eig2x2 = [&](int i) {
        const double p = at(i, i), q = at(i, i + 1), r = at(i + 1, i), s = at(i + 1, i + 1);
        const double tr = p + s, det = p * s - q * r;
        const double disc = tr * tr / 4.0 - det;
        if (disc >= 0.0) {
            const double root = std::sqrt(disc);
            eig.push_back(tr / 2.0 + root);
            eig.push_back(tr / 2.0 - root);
        } else {
            const double root = std::sqrt(-disc);
            eig.emplace_back(tr / 2.0, root);
            eig.emplace_back(tr / 2.0, -root);
        }
    };

    int hi = n - 1;
    int iters = 0;
    while (hi >= 0 && iters < 600) {
        // deflate converged subdiagonals
        int lo = hi;
        while (lo > 0) {
            const double off = std::fabs(at(lo, lo - 1));
            if (off <= 1e-15 * (std::fabs(at(lo - 1, lo - 1)) + std::fabs(at(lo, lo)) + scale * 1e-3)) {
                at(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            eig.push_back(at(hi, hi));
            --hi;
            continue;
        }
        if (lo == hi - 1) {
            eig2x2(lo);
            hi -= 2;
            continue;
        }
        ++iters;
        // Wilkinson shift from the trailing 2x2 (real part when complex).
        const double p = at(hi - 1, hi - 1), q = at(hi - 1, hi), r = at(hi, hi - 1),
                     s = at(hi, hi);
        const double tr = p + s, det = p * s - q * r;
        const double disc = tr * tr / 4.0 - det;
        double shift = tr / 2.0;
        if (disc >= 0.0) {
            const double root = std::sqrt(disc);
            const double e1 = tr / 2.0 + root, e2 = tr / 2.0 - root;
            shift = std::fabs(e1 - s) < std::fabs(e2 - s) ? e1 : e2;
        }
        // implicit single-shift QR sweep on the active Hessenberg block
        for (int i = lo; i < hi; ++i) {
            double x, z;
            if (i == lo) {
                x = at(lo, lo) - shift;
                z = at(lo + 1, lo);
            } else {
                x = at(i, i - 1);
                z = at(i + 1, i - 1);
            }
            const double norm = std::hypot(x, z);
            if (norm < 1e-300) continue;
            const double c = x / norm, sn = z / norm;
            const int jstart = i > lo ? i - 1 : lo;
            for (int j = jstart; j <= hi; ++j) {
                const double t1 = at(i, j), t2 = at(i + 1, j);
                at(i, j) = c * t1 + sn * t2;
                at(i + 1, j) = -sn * t1 + c * t2;
            }
            const int iend = std::min(hi, i + 2);
            for (int k = lo; k <= iend; ++k) {
                const double t1 = at(k, i), t2 = at(k, i + 1);
                at(k, i) = c * t1 + sn * t2;
                at(k, i + 1) = -sn * t1 + c * t2;
            }
        }
    }
    while (hi >= 0) { // iteration guard tripped: report the diagonal
        eig.push_back(at(hi, hi));
        --hi;
    }
    return eig;
}

std::vector<std::complex<double>> eigenvalues8(const Matrix8& m) {
    std::vector<double> a(64);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) a[i * 8 + j] = m[i][j];
    return real_eigenvalues(std::move(a), 8);
}

} // namespace rmhd
