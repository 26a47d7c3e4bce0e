#pragma once

#include <stdexcept>
#include <string>

#include "rdos/capacitance.hpp"

namespace rdos {

struct EigOptions {
    /// Eigenvalue tolerance relative to the matrix norm.
    double abs_tol = 1e-12;
    /// Iteration budget per eigenvalue; 0 means 100 * N.
    std::size_t max_iterations = 0;
};

/// Thrown when an iteration budget is exhausted; carries whatever part of
/// the spectrum had converged.
class SolverError : public std::runtime_error {
  public:
    SolverError(const std::string& what, Spectrum partial)
        : std::runtime_error(what), partial_result(std::move(partial)) {}

    Spectrum partial_result;
};

/// Number of eigenvalues of m below x (Sturm sequence / LDL^T pivot count).
int sturm_count(const SymTridiagonal& m, double x);

/// All N eigenvalues, ascending, by Sturm-sequence bisection. Parallelises
/// over spectrum slices; the result is identical for any thread count.
Spectrum eig_sym_tridiag(const SymTridiagonal& m, const EigOptions& opts = {});

/// Eigenvalues inside the open interval (lo, hi), same algorithm. Only the
/// requested slice is ever refined, so the cost scales with the number of
/// eigenvalues in the window.
Spectrum eig_sym_tridiag_range(const SymTridiagonal& m, double lo, double hi,
                               const EigOptions& opts = {});

/// All eigenvalues of the Hermitian periodic tridiagonal: dense Householder
/// reduction to a real symmetric tridiagonal followed by implicit-shift QL.
/// Distinct algorithm from the bisection solver, so the two can act as each
/// other's oracle. Intended for moderate N (guideline N <= 2000).
Spectrum eig_hermitian_dense(const HermitianPeriodicTridiagonal& m,
                             const EigOptions& opts = {});

namespace serial {

/// Reference implementation: straightforward one-eigenvalue-at-a-time
/// bisection, no batching, no OpenMP. Kept for tests and benchmarks.
Spectrum eig_sym_tridiag(const SymTridiagonal& m, const EigOptions& opts = {});

} // namespace serial

} // namespace rdos
