#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "rdos/geometry.hpp"

namespace rdos {

/// Symmetric tridiagonal matrix. offdiag stores the actual matrix entries
/// (for capacitance matrices these are the negated couplings -1/s_i).
struct SymTridiagonal {
    std::vector<double> diag;
    std::vector<double> offdiag;

    std::size_t size() const { return diag.size(); }
};

/// Hermitian matrix that is tridiagonal plus conjugate corner entries.
/// corner is the top-right entry; the bottom-left is its conjugate.
struct HermitianPeriodicTridiagonal {
    std::vector<double> diag;
    std::vector<double> offdiag;
    std::complex<double> corner{0.0, 0.0};
    bool wrapped_alpha = false;

    std::size_t size() const { return diag.size(); }
};

/// Sorted list of real eigenvalues, ascending.
struct Spectrum {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
};

/// Finite free-ended capacitance matrix. Uses spacings 1..N-1 only; every
/// row sums to zero. N = 1 gives the 1x1 zero matrix.
SymTridiagonal capacitance_matrix(const ResonatorArray& array);

/// Diagonal of the material matrix, entry i = v_i^2 / l_i.
std::vector<double> material_matrix(const ResonatorArray& array);

/// V^{1/2} C V^{1/2}: same spectrum as VC, but symmetric. Interior row i
/// has diagonal (v_i^2/l_i)(1/s_{i-1} + 1/s_i) and coupling to row i+1 of
/// -v_i v_{i+1} / (s_i sqrt(l_i l_{i+1})), with s_i the spacing between
/// resonators i and i+1 (0-based: spacings[i]).
SymTridiagonal symmetrized_capacitance(const ResonatorArray& array);

/// V^{1/2} C^alpha V^{1/2} for the unit cell periodised with the trailing
/// spacing. alpha outside [-pi/L, pi/L] is wrapped into the Brillouin zone
/// and flagged. For N = 1 the corner terms merge into the single diagonal
/// entry and corner is returned as 0.
HermitianPeriodicTridiagonal quasiperiodic_capacitance(const ResonatorArray& array,
                                                       double alpha);

/// Leading-order resonant frequency sqrt(delta * lambda). Throws
/// std::domain_error for negative lambda.
double convert_frequency(double lambda, double delta);

/// Plain-text triplet export, one "row,col,value" line per stored entry
/// (1-based indices; complex values as re+imj).
void write_triplets(std::ostream& out, const SymTridiagonal& m);
void write_triplets(std::ostream& out, const HermitianPeriodicTridiagonal& m);

} // namespace rdos
