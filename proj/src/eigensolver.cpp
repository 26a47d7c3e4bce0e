#include "rdos/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

namespace rdos {

namespace {

struct SturmContext {
    const double* diag = nullptr;
    std::vector<double> e2; // squared off-diagonal entries
    std::size_t n = 0;
    double pivmin = 0.0;
    double lo = 0.0, hi = 0.0; // Gershgorin bounds
};

SturmContext make_context(const SymTridiagonal& m) {
    SturmContext ctx;
    ctx.n = m.size();
    ctx.diag = m.diag.data();
    ctx.e2.resize(ctx.n > 0 ? ctx.n - 1 : 0);
    double max_e2 = 1.0;
    for (std::size_t i = 0; i + 1 < ctx.n; ++i) {
        ctx.e2[i] = m.offdiag[i] * m.offdiag[i];
        max_e2 = std::max(max_e2, ctx.e2[i]);
    }
    ctx.pivmin = std::numeric_limits<double>::min() * max_e2;

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < ctx.n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(m.offdiag[i - 1]);
        if (i + 1 < ctx.n) r += std::abs(m.offdiag[i]);
        lo = std::min(lo, m.diag[i] - r);
        hi = std::max(hi, m.diag[i] + r);
    }
    const double pad = 2.0 * std::numeric_limits<double>::epsilon() *
                           std::max(std::abs(lo), std::abs(hi)) +
                       2.0 * ctx.pivmin;
    ctx.lo = lo - pad;
    ctx.hi = hi + pad;
    return ctx;
}

int count_one(const SturmContext& ctx, double x) {
    double t = ctx.diag[0] - x;
    if (std::abs(t) <= ctx.pivmin) t = -ctx.pivmin;
    int cnt = t <= 0.0 ? 1 : 0;
    for (std::size_t i = 1; i < ctx.n; ++i) {
        t = ctx.diag[i] - ctx.e2[i - 1] / t - x;
        if (std::abs(t) <= ctx.pivmin) t = -ctx.pivmin;
        if (t <= 0.0) ++cnt;
    }
    return cnt;
}

// One matrix pass for a block of B shifts; the inner loop vectorises.
template <int B>
void count_block(const SturmContext& ctx, const double* x, int* cnt) {
    double t[B];
    int c[B];
    for (int b = 0; b < B; ++b) {
        t[b] = ctx.diag[0] - x[b];
        if (std::abs(t[b]) <= ctx.pivmin) t[b] = -ctx.pivmin;
        c[b] = t[b] <= 0.0 ? 1 : 0;
    }
    for (std::size_t i = 1; i < ctx.n; ++i) {
        const double di = ctx.diag[i];
        const double ei = ctx.e2[i - 1];
        for (int b = 0; b < B; ++b) {
            double v = di - ei / t[b] - x[b];
            if (std::abs(v) <= ctx.pivmin) v = -ctx.pivmin;
            c[b] += v <= 0.0 ? 1 : 0;
            t[b] = v;
        }
    }
    for (int b = 0; b < B; ++b) cnt[b] = c[b];
}

constexpr int kBatch = 8;

// Bisects eigenvalues first..first+count-1 (ascending index, 0-based), all
// bracketed by [lo0, hi0]. Lockstep over a batch so the Sturm counts share
// matrix passes. Returns false when the sweep budget ran out.
bool bisect_batch(const SturmContext& ctx, int first, int count, double lo0, double hi0,
                  double tol, std::size_t max_sweeps, double* out) {
    double lo[kBatch], hi[kBatch], mid[kBatch];
    int cnt[kBatch];
    for (int b = 0; b < count; ++b) {
        lo[b] = lo0;
        hi[b] = hi0;
    }
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        bool all_done = true;
        for (int b = 0; b < count; ++b) {
            mid[b] = 0.5 * (lo[b] + hi[b]);
            if (hi[b] - lo[b] > tol) all_done = false;
        }
        if (all_done) break;
        if (count == kBatch) {
            count_block<kBatch>(ctx, mid, cnt);
        } else {
            for (int b = 0; b < count; ++b) cnt[b] = count_one(ctx, mid[b]);
        }
        for (int b = 0; b < count; ++b) {
            if (cnt[b] >= first + b + 1) {
                hi[b] = mid[b];
            } else {
                lo[b] = mid[b];
            }
        }
    }
    bool converged = true;
    for (int b = 0; b < count; ++b) {
        if (hi[b] - lo[b] > tol) converged = false;
        out[b] = 0.5 * (lo[b] + hi[b]);
    }
    return converged;
}

Spectrum bisect_range(const SymTridiagonal& m, const SturmContext& ctx, int first,
                      int last, double lo0, double hi0, const EigOptions& opts,
                      bool parallel) {
    if (!(opts.abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be positive");
    const int k = last - first;
    Spectrum spec;
    spec.values.assign(static_cast<std::size_t>(std::max(k, 0)), 0.0);
    if (k <= 0) return spec;

    const double norm = std::max({std::abs(ctx.lo), std::abs(ctx.hi), 1e-300});
    const double tol = std::max(opts.abs_tol * norm,
                                4.0 * std::numeric_limits<double>::epsilon() * norm);
    const std::size_t max_sweeps =
        opts.max_iterations > 0 ? opts.max_iterations : 100 * std::max<std::size_t>(m.size(), 1);

    const int nblocks = (k + kBatch - 1) / kBatch;
    bool ok = true;

    if (parallel) {
#pragma omp parallel for schedule(dynamic) reduction(&& : ok)
        for (int blk = 0; blk < nblocks; ++blk) {
            const int b0 = blk * kBatch;
            const int cnt = std::min(kBatch, k - b0);
            ok = bisect_batch(ctx, first + b0, cnt, lo0, hi0, tol, max_sweeps,
                              spec.values.data() + b0) &&
                 ok;
        }
    } else {
        for (int blk = 0; blk < nblocks; ++blk) {
            const int b0 = blk * kBatch;
            const int cnt = std::min(kBatch, k - b0);
            ok = bisect_batch(ctx, first + b0, cnt, lo0, hi0, tol, max_sweeps,
                              spec.values.data() + b0) &&
                 ok;
        }
    }
    std::sort(spec.values.begin(), spec.values.end());
    if (!ok) {
        throw SolverError("bisection did not converge within max_iterations", spec);
    }
    return spec;
}

// Implicit-shift QL on a real symmetric tridiagonal (EISPACK tql1 lineage).
// d is the diagonal, e the off-diagonal (e has size n, last entry scratch).
void ql_implicit(std::vector<double>& d, std::vector<double>& e, std::size_t budget) {
    const std::size_t n = d.size();
    if (n == 0) return;
    e.push_back(0.0);
    const double eps = std::numeric_limits<double>::epsilon();
    for (std::size_t l = 0; l < n; ++l) {
        std::size_t iter = 0;
        std::size_t msplit;
        do {
            for (msplit = l; msplit + 1 < n; ++msplit) {
                const double dd = std::abs(d[msplit]) + std::abs(d[msplit + 1]);
                if (std::abs(e[msplit]) <= eps * dd) break;
            }
            if (msplit != l) {
                if (iter++ >= std::max<std::size_t>(budget, 30)) {
                    Spectrum partial;
                    partial.values.assign(d.begin(), d.begin() + static_cast<long>(l));
                    std::sort(partial.values.begin(), partial.values.end());
                    throw SolverError("QL iteration did not converge", partial);
                }
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[msplit] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (std::size_t i1 = msplit; i1-- > l;) {
                    double f = s * e[i1];
                    const double b = c * e[i1];
                    r = std::hypot(f, g);
                    e[i1 + 1] = r;
                    if (r == 0.0) {
                        d[i1 + 1] -= p;
                        e[msplit] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i1 + 1] - p;
                    r = (d[i1] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i1 + 1] = g + p;
                    g = c * r - b;
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[msplit] = 0.0;
            }
        } while (msplit != l);
    }
}

// Householder reduction of a dense Hermitian matrix (row-major) to real
// symmetric tridiagonal form. Only magnitudes of the subdiagonal are kept;
// the phase factors amount to a diagonal unitary similarity.
void hermitian_to_tridiagonal(std::vector<std::complex<double>>& a, std::size_t n,
                              std::vector<double>& d, std::vector<double>& e) {
    using cd = std::complex<double>;
    d.assign(n, 0.0);
    e.assign(n > 0 ? n - 1 : 0, 0.0);
    std::vector<cd> v(n), p(n), q(n);
    auto at = [&](std::size_t i, std::size_t j) -> cd& { return a[i * n + j]; };

    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - k - 1; // rows k+1..n-1
        double sigma2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) sigma2 += std::norm(at(i, k));
        const double sigma = std::sqrt(sigma2);
        if (sigma == 0.0) continue;

        const cd alpha = at(k + 1, k);
        const double aabs = std::abs(alpha);
        const cd phase = aabs > 0.0 ? alpha / aabs : cd(1.0, 0.0);

        // w = x + phase*sigma*e1, v = w/|w|; then (I-2vv^H)x = -phase*sigma*e1
        double wnorm2 = 2.0 * (sigma2 + sigma * aabs);
        if (wnorm2 == 0.0) continue;
        const double wnorm = std::sqrt(wnorm2);
        for (std::size_t i = 0; i < m; ++i) v[i] = at(k + 1 + i, k);
        v[0] += phase * sigma;
        for (std::size_t i = 0; i < m; ++i) v[i] /= wnorm;

        at(k + 1, k) = -phase * sigma;
        at(k, k + 1) = std::conj(at(k + 1, k));
        for (std::size_t i = k + 2; i < n; ++i) {
            at(i, k) = 0.0;
            at(k, i) = 0.0;
        }

        // rank-2 update of the trailing block: A <- A - v q^H - q v^H
        for (std::size_t i = 0; i < m; ++i) {
            cd acc(0.0, 0.0);
            for (std::size_t j = 0; j < m; ++j) acc += at(k + 1 + i, k + 1 + j) * v[j];
            p[i] = 2.0 * acc;
        }
        cd vhp(0.0, 0.0);
        for (std::size_t i = 0; i < m; ++i) vhp += std::conj(v[i]) * p[i];
        for (std::size_t i = 0; i < m; ++i) q[i] = p[i] - vhp * v[i];
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                at(k + 1 + i, k + 1 + j) -=
                    v[i] * std::conj(q[j]) + q[i] * std::conj(v[j]);
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i) d[i] = at(i, i).real();
    for (std::size_t i = 0; i + 1 < n; ++i) e[i] = std::abs(at(i + 1, i));
}

} // namespace

int sturm_count(const SymTridiagonal& m, double x) {
    if (m.size() == 0) return 0;
    const SturmContext ctx = make_context(m);
    return count_one(ctx, x);
}

Spectrum eig_sym_tridiag(const SymTridiagonal& m, const EigOptions& opts) {
    if (m.size() == 0) return {};
    const SturmContext ctx = make_context(m);
    return bisect_range(m, ctx, 0, static_cast<int>(m.size()), ctx.lo, ctx.hi, opts,
                        /*parallel=*/true);
}

Spectrum eig_sym_tridiag_range(const SymTridiagonal& m, double lo, double hi,
                               const EigOptions& opts) {
    if (m.size() == 0 || !(lo < hi)) return {};
    const SturmContext ctx = make_context(m);
    const double l0 = std::max(lo, ctx.lo);
    const double h0 = std::min(hi, ctx.hi);
    if (!(l0 < h0)) return {};
    const int first = count_one(ctx, l0);
    const int last = count_one(ctx, h0);
    Spectrum spec = bisect_range(m, ctx, first, last, l0, h0, opts, /*parallel=*/true);
    std::erase_if(spec.values, [&](double v) { return !(v > lo && v < hi); });
    return spec;
}

Spectrum eig_hermitian_dense(const HermitianPeriodicTridiagonal& m, const EigOptions& opts) {
    if (!(opts.abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be positive");
    const std::size_t n = m.size();
    if (n == 0) return {};
    std::vector<double> d, e;
    if (m.corner == std::complex<double>(0.0, 0.0) || n == 1) {
        d = m.diag;
        e = m.offdiag;
    } else {
        std::vector<std::complex<double>> a(n * n, std::complex<double>(0.0, 0.0));
        auto at = [&](std::size_t i, std::size_t j) -> std::complex<double>& {
            return a[i * n + j];
        };
        for (std::size_t i = 0; i < n; ++i) at(i, i) = m.diag[i];
        for (std::size_t i = 0; i + 1 < n; ++i) {
            at(i, i + 1) = m.offdiag[i];
            at(i + 1, i) = m.offdiag[i];
        }
        at(0, n - 1) += m.corner;
        at(n - 1, 0) += std::conj(m.corner);
        hermitian_to_tridiagonal(a, n, d, e);
    }
    const std::size_t budget = opts.max_iterations > 0 ? opts.max_iterations : 100 * n;
    ql_implicit(d, e, budget);
    Spectrum spec;
    spec.values = std::move(d);
    std::sort(spec.values.begin(), spec.values.end());
    return spec;
}

namespace serial {

Spectrum eig_sym_tridiag(const SymTridiagonal& m, const EigOptions& opts) {
    if (!(opts.abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be positive");
    const std::size_t n = m.size();
    if (n == 0) return {};
    const SturmContext ctx = make_context(m);
    const double norm = std::max({std::abs(ctx.lo), std::abs(ctx.hi), 1e-300});
    const double tol = std::max(opts.abs_tol * norm,
                                4.0 * std::numeric_limits<double>::epsilon() * norm);
    const std::size_t max_sweeps = opts.max_iterations > 0 ? opts.max_iterations : 100 * n;

    Spectrum spec;
    spec.values.assign(n, 0.0);
    bool ok = true;
    for (std::size_t k = 0; k < n; ++k) {
        double lo = ctx.lo, hi = ctx.hi;
        std::size_t sweep = 0;
        while (hi - lo > tol && sweep++ < max_sweeps) {
            const double mid = 0.5 * (lo + hi);
            if (count_one(ctx, mid) >= static_cast<int>(k) + 1) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        if (hi - lo > tol) ok = false;
        spec.values[k] = 0.5 * (lo + hi);
    }
    if (!ok) throw SolverError("bisection did not converge within max_iterations", spec);
    return spec;
}

} // namespace serial

} // namespace rdos
