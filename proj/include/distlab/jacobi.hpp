#pragma once

#include <cstddef>
#include <vector>

namespace distlab {

struct JacobiResult {
    std::vector<double> eigenvalues;  // descending
    int sweeps = 0;
    double off_norm = 0.0;  // final off-diagonal Frobenius norm
};

/// Cyclic Jacobi on a dense symmetric matrix (row-major, n x n). Rotations
/// run pair by pair in row-cyclic order; single-threaded reference.
/// Converged when the off-diagonal Frobenius norm drops below tol; throws
/// ConvergenceFailure after max_sweeps sweeps.
JacobiResult jacobi_eigenvalues_serial(std::vector<double> a, std::size_t n, double tol,
                                       int max_sweeps);

/// Jacobi with the round-robin tournament ordering: every round annihilates
/// a maximal set of disjoint pivot planes. Disjoint-plane rotations commute,
/// so a round is one orthogonal similarity applied as two contiguous passes
/// (rows, then columns row-wise); both passes parallelize over independent
/// data and the result does not depend on the thread count.
JacobiResult jacobi_eigenvalues(std::vector<double> a, std::size_t n, double tol,
                                int max_sweeps);

}  // namespace distlab
