#include "rdos/capacitance.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace rdos {

SymTridiagonal capacitance_matrix(const ResonatorArray& array) {
    const std::size_t n = array.size();
    if (n == 0) throw std::invalid_argument("empty resonator array");
    SymTridiagonal m;
    m.diag.assign(n, 0.0);
    m.offdiag.assign(n > 0 ? n - 1 : 0, 0.0);
    if (n == 1) return m; // isolated resonator: zero row sum convention
    const auto& s = array.spacings;
    m.diag[0] = 1.0 / s[0];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        m.diag[i] = 1.0 / s[i - 1] + 1.0 / s[i];
    }
    m.diag[n - 1] = 1.0 / s[n - 2];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        m.offdiag[i] = -1.0 / s[i];
    }
    return m;
}

std::vector<double> material_matrix(const ResonatorArray& array) {
    std::vector<double> v(array.size());
    for (std::size_t i = 0; i < array.size(); ++i) {
        v[i] = array.speeds[i] * array.speeds[i] / array.lengths[i];
    }
    return v;
}

SymTridiagonal symmetrized_capacitance(const ResonatorArray& array) {
    SymTridiagonal m = capacitance_matrix(array);
    const std::vector<double> v = material_matrix(array);
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) m.diag[i] *= v[i];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        m.offdiag[i] *= std::sqrt(v[i] * v[i + 1]);
    }
    return m;
}

HermitianPeriodicTridiagonal quasiperiodic_capacitance(const ResonatorArray& array,
                                                       double alpha) {
    const std::size_t n = array.size();
    if (n == 0) throw std::invalid_argument("empty resonator array");
    const double cell = total_length(array);
    const double period = 2.0 * M_PI / cell;
    HermitianPeriodicTridiagonal m;
    double wrapped = std::remainder(alpha, period);
    if (std::abs(wrapped - alpha) > 1e-15 * std::max(1.0, std::abs(alpha))) {
        m.wrapped_alpha = true;
        alpha = wrapped;
    }
    const std::vector<double> v = material_matrix(array);
    const auto& s = array.spacings;
    const double s_last = s[n - 1];

    if (n == 1) {
        // ring with a single resonator: both corner terms land on the diagonal
        m.diag.assign(1, v[0] * 2.0 * (1.0 - std::cos(alpha * cell)) / s_last);
        return m;
    }

    m.diag.assign(n, 0.0);
    m.offdiag.assign(n - 1, 0.0);
    m.diag[0] = 1.0 / s_last + 1.0 / s[0];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        m.diag[i] = 1.0 / s[i - 1] + 1.0 / s[i];
    }
    m.diag[n - 1] = 1.0 / s[n - 2] + 1.0 / s_last;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        m.offdiag[i] = -1.0 / s[i];
    }
    m.corner = -std::exp(std::complex<double>(0.0, -alpha * cell)) / s_last;

    // symmetrise with V^{1/2}
    for (std::size_t i = 0; i < n; ++i) m.diag[i] *= v[i];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        m.offdiag[i] *= std::sqrt(v[i] * v[i + 1]);
    }
    m.corner *= std::sqrt(v[0] * v[n - 1]);
    return m;
}

double convert_frequency(double lambda, double delta) {
    if (lambda < 0.0) throw std::domain_error("convert_frequency: negative lambda");
    if (!(delta > 0.0)) throw std::domain_error("convert_frequency: contrast must be positive");
    return std::sqrt(delta * lambda);
}

namespace {

void triplet_line(std::ostream& out, std::size_t row, std::size_t col, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g\n", row, col, value);
    out << buf;
}

void triplet_line(std::ostream& out, std::size_t row, std::size_t col,
                  std::complex<double> value) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g%+.17gj\n", row, col, value.real(),
                  value.imag());
    out << buf;
}

} // namespace

void write_triplets(std::ostream& out, const SymTridiagonal& m) {
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i > 0) triplet_line(out, i + 1, i, m.offdiag[i - 1]);
        triplet_line(out, i + 1, i + 1, m.diag[i]);
        if (i + 1 < m.size()) triplet_line(out, i + 1, i + 2, m.offdiag[i]);
    }
}

void write_triplets(std::ostream& out, const HermitianPeriodicTridiagonal& m) {
    const std::size_t n = m.size();
    const bool corner = n > 1 && m.corner != std::complex<double>(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (i + 1 == n && corner) triplet_line(out, n, std::size_t{1}, std::conj(m.corner));
        if (i > 0) triplet_line(out, i + 1, i, std::complex<double>(m.offdiag[i - 1], 0.0));
        triplet_line(out, i + 1, i + 1, std::complex<double>(m.diag[i], 0.0));
        if (i + 1 < n) triplet_line(out, i + 1, i + 2, std::complex<double>(m.offdiag[i], 0.0));
        if (i == 0 && corner) triplet_line(out, std::size_t{1}, n, m.corner);
    }
}

} // namespace rdos
