#include "distlab/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "distlab/errors.hpp"

namespace distlab {

namespace {

// Rotation annihilating the (p,q) entry of a symmetric matrix: classic
// symmetric Schur decomposition, smaller-angle root.
struct Rotation {
    std::size_t p, q;
    double c, s, t;
};

Rotation make_rotation(std::size_t p, std::size_t q, double app, double aqq, double apq) {
    const double tau = (aqq - app) / (2.0 * apq);
    const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    return Rotation{p, q, c, t * c, t};
}

double off_diagonal_norm(const std::vector<double>& a, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) sum += a[i * n + j] * a[i * n + j];
    return std::sqrt(sum);
}

JacobiResult finish(std::vector<double>& a, std::size_t n, int sweeps, double off) {
    JacobiResult r;
    r.eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.eigenvalues[i] = a[i * n + i];
    std::sort(r.eigenvalues.begin(), r.eigenvalues.end(), std::greater<double>());
    r.sweeps = sweeps;
    r.off_norm = off;
    return r;
}

}  // namespace

JacobiResult jacobi_eigenvalues_serial(std::vector<double> a, std::size_t n, double tol,
                                       int max_sweeps) {
    if (n == 0) return JacobiResult{};
    double off = off_diagonal_norm(a, n);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off <= tol) return finish(a, n, sweep, off);
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const Rotation r = make_rotation(p, q, a[p * n + p], a[q * n + q], apq);
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    const double np = r.c * akp - r.s * akq;
                    const double nq = r.s * akp + r.c * akq;
                    a[k * n + p] = a[p * n + k] = np;
                    a[k * n + q] = a[q * n + k] = nq;
                }
                a[p * n + p] -= r.t * apq;
                a[q * n + q] += r.t * apq;
                a[p * n + q] = a[q * n + p] = 0.0;
            }
        }
        off = off_diagonal_norm(a, n);
    }
    if (off <= tol) return finish(a, n, max_sweeps, off);
    throw ConvergenceFailure("jacobi: off-norm " + std::to_string(off) + " above tolerance " +
                             std::to_string(tol) + " after " + std::to_string(max_sweeps) +
                             " sweeps");
}

JacobiResult jacobi_eigenvalues(std::vector<double> a, std::size_t n, double tol,
                                int max_sweeps) {
    if (n == 0) return JacobiResult{};
    if (n == 1) return finish(a, n, 0, 0.0);

    // Circle-method schedule: players 0..P-1 with P even (player n is a bye
    // when n is odd); P-1 rounds cover every unordered pair exactly once.
    const std::size_t P = (n % 2 == 0) ? n : n + 1;
    std::vector<std::size_t> rot_p, rot_q;
    std::vector<double> rot_c, rot_s;

    double off = off_diagonal_norm(a, n);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off <= tol) return finish(a, n, sweep, off);
        for (std::size_t round = 0; round < P - 1; ++round) {
            rot_p.clear();
            rot_q.clear();
            rot_c.clear();
            rot_s.clear();
            auto player = [&](std::size_t slot) -> std::size_t {
                return slot == 0 ? 0 : 1 + (slot - 1 + round) % (P - 1);
            };
            for (std::size_t j = 0; j < P / 2; ++j) {
                std::size_t p = player(j);
                std::size_t q = player(P - 1 - j);
                if (p == n || q == n) continue;  // bye
                if (p > q) std::swap(p, q);
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const Rotation r = make_rotation(p, q, a[p * n + p], a[q * n + q], apq);
                rot_p.push_back(p);
                rot_q.push_back(q);
                rot_c.push_back(r.c);
                rot_s.push_back(r.s);
            }
            const std::int64_t nrot = static_cast<std::int64_t>(rot_p.size());
            if (nrot == 0) continue;

            // Pass 1: left-multiply. Each rotation owns its two rows.
            #pragma omp parallel for schedule(static)
            for (std::int64_t r = 0; r < nrot; ++r) {
                double* rp = &a[rot_p[r] * n];
                double* rq = &a[rot_q[r] * n];
                const double c = rot_c[r], s = rot_s[r];
                for (std::size_t k = 0; k < n; ++k) {
                    const double vp = rp[k], vq = rq[k];
                    rp[k] = c * vp - s * vq;
                    rq[k] = s * vp + c * vq;
                }
            }
            // Pass 2: right-multiply, expressed row-wise so access stays
            // contiguous. Each matrix row is independent.
            #pragma omp parallel for schedule(static)
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
                double* row = &a[static_cast<std::size_t>(i) * n];
                for (std::int64_t r = 0; r < nrot; ++r) {
                    const double vp = row[rot_p[r]], vq = row[rot_q[r]];
                    const double c = rot_c[r], s = rot_s[r];
                    row[rot_p[r]] = c * vp - s * vq;
                    row[rot_q[r]] = s * vp + c * vq;
                }
            }
            for (std::int64_t r = 0; r < nrot; ++r) {
                a[rot_p[r] * n + rot_q[r]] = 0.0;
                a[rot_q[r] * n + rot_p[r]] = 0.0;
            }
        }
        off = off_diagonal_norm(a, n);
    }
    if (off <= tol) return finish(a, n, max_sweeps, off);
    throw ConvergenceFailure("jacobi: off-norm " + std::to_string(off) + " above tolerance " +
                             std::to_string(tol) + " after " + std::to_string(max_sweeps) +
                             " sweeps");
}

}  // namespace distlab
