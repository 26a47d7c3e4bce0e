#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <sstream>

#include "rdos/capacitance.hpp"
#include "rdos/eigensolver.hpp"
#include "rdos/sampling.hpp"
#include "support/test_support.hpp"

using namespace rdos;

namespace {

ResonatorArray random_array(std::size_t blocks_count, std::uint64_t seed) {
    SamplerSpec spec;
    spec.kind = SamplerKind::Iid;
    spec.probs = {0.5, 0.5};
    return assemble(make_standard_blocks(), sample_iid(spec, blocks_count, seed));
}

} // namespace

TEST_SUITE("capacitance") {

TEST_CASE("capacitance matrix entries for small chains") {
    ResonatorArray two{{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}};
    const SymTridiagonal c2 = capacitance_matrix(two);
    CHECK(c2.diag == std::vector<double>{1.0, 1.0});
    CHECK(c2.offdiag == std::vector<double>{-1.0});

    ResonatorArray three{{1.0, 1.0, 1.0}, {1.0, 2.0, 1.0}, {1.0, 1.0, 1.0}};
    const SymTridiagonal c3 = capacitance_matrix(three);
    CHECK(c3.diag == std::vector<double>{1.0, 1.5, 0.5});
    CHECK(c3.offdiag == std::vector<double>{-1.0, -0.5});
}

TEST_CASE("single resonator gives the 1x1 zero matrix") {
    ResonatorArray one{{2.0}, {2.0}, {1.0}};
    const SymTridiagonal c = capacitance_matrix(one);
    REQUIRE(c.size() == 1);
    CHECK(c.diag[0] == 0.0);
}

TEST_CASE("row sums vanish") {
    const ResonatorArray array = random_array(40, 3);
    const SymTridiagonal c = capacitance_matrix(array);
    for (std::size_t i = 0; i < c.size(); ++i) {
        double row = c.diag[i];
        if (i > 0) row += c.offdiag[i - 1];
        if (i + 1 < c.size()) row += c.offdiag[i];
        CHECK(std::abs(row) < 1e-14);
    }
}

TEST_CASE("material matrix") {
    ResonatorArray array{{2.0, 1.0}, {1.0, 1.0}, {1.0, 2.0}};
    const std::vector<double> v = material_matrix(array);
    CHECK(v[0] == doctest::Approx(0.5));
    CHECK(v[1] == doctest::Approx(4.0));

    const ResonatorArray dimer =
        assemble(make_standard_blocks(), BlockSequence{{2}, {}});
    CHECK(material_matrix(dimer) == std::vector<double>{1.0, 1.0});
}

TEST_CASE("symmetrised interior rows follow the Jacobi coefficients") {
    // uniform chain: q = 2, coupling 1 (stored entry -1)
    ResonatorArray uniform{{1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}};
    const SymTridiagonal j = symmetrized_capacitance(uniform);
    for (std::size_t i = 1; i + 1 < j.size(); ++i) {
        CHECK(j.diag[i] == doctest::Approx(2.0).epsilon(1e-14));
    }
    for (std::size_t i = 1; i + 2 < j.size(); ++i) {
        CHECK(j.offdiag[i] == doctest::Approx(-1.0).epsilon(1e-14));
    }

    // general interior rows: s^{(i)} = v_{i-1} v_i / (s_{i-1} sqrt(l_{i-1} l_i)),
    // q^{(i)} = (v_i^2 / l_i)(1/s_{i-1} + 1/s_i)
    const ResonatorArray array = random_array(20, 11);
    const SymTridiagonal jr = symmetrized_capacitance(array);
    for (std::size_t i = 1; i + 1 < jr.size(); ++i) {
        const double q = array.speeds[i] * array.speeds[i] / array.lengths[i] *
                         (1.0 / array.spacings[i - 1] + 1.0 / array.spacings[i]);
        CHECK(jr.diag[i] == doctest::Approx(q).epsilon(1e-14));
        const double coupling =
            array.speeds[i] * array.speeds[i + 1] /
            (array.spacings[i] * std::sqrt(array.lengths[i] * array.lengths[i + 1]));
        CHECK(jr.offdiag[i] == doctest::Approx(-coupling).epsilon(1e-14));
    }
}

TEST_CASE("dimer alone has eigenvalues 0 and 2") {
    const ResonatorArray dimer =
        assemble(make_standard_blocks(), BlockSequence{{2}, {}});
    const Spectrum s = eig_sym_tridiag(symmetrized_capacitance(dimer));
    REQUIRE(s.size() == 2);
    CHECK(s.values[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.values[1] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("similarity: symmetrised eigenpairs solve the VC problem") {
    // eigenvector u of J = V^{1/2} C V^{1/2} maps to V^{1/2} u for VC; the
    // VC action is assembled independently in the test
    const ResonatorArray array = random_array(15, 29);
    const SymTridiagonal j = symmetrized_capacitance(array);
    const Spectrum s = eig_sym_tridiag(j);
    const std::vector<double> v = material_matrix(array);
    for (std::size_t k = 0; k < s.size(); k += 3) {
        const std::vector<double> u =
            testsupport::tridiag_eigenvector(j.diag, j.offdiag, s.values[k]);
        std::vector<double> w(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) w[i] = std::sqrt(v[i]) * u[i];
        const std::vector<double> vcw = testsupport::generalized_capacitance_apply(array, w);
        double residual = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            residual += (vcw[i] - s.values[k] * w[i]) * (vcw[i] - s.values[k] * w[i]);
        }
        residual = std::sqrt(residual) / testsupport::l2_norm(w);
        CHECK(residual < 1e-8);
    }
}

TEST_CASE("PSD and zero mode invariants on random arrays") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const ResonatorArray array = random_array(2 + seed % 15, 100 + seed);
        const Spectrum s = eig_sym_tridiag(symmetrized_capacitance(array));
        CHECK(s.values.front() > -1e-10);
        CHECK(std::abs(s.values.front()) < 1e-10); // constant vector in the kernel
    }
}

TEST_CASE("quasiperiodic matrix structure") {
    const ResonatorArray array = random_array(6, 5);
    const double cell = total_length(array);
    const double alpha = 0.3 / cell;
    const HermitianPeriodicTridiagonal m = quasiperiodic_capacitance(array, alpha);
    REQUIRE(m.size() == array.size());
    CHECK(!m.wrapped_alpha);

    const std::vector<double> v = material_matrix(array);
    const std::size_t n = array.size();
    const double s_last = array.spacings[n - 1];
    CHECK(m.diag[0] ==
          doctest::Approx(v[0] * (1.0 / s_last + 1.0 / array.spacings[0])));
    CHECK(m.diag[n - 1] == doctest::Approx(v[n - 1] * (1.0 / array.spacings[n - 2] +
                                                       1.0 / s_last)));
    const std::complex<double> expected_corner =
        -std::exp(std::complex<double>(0.0, -alpha * cell)) / s_last *
        std::sqrt(v[0] * v[n - 1]);
    CHECK(std::abs(m.corner - expected_corner) < 1e-14);
}

TEST_CASE("quasiperiodic 1x1 closed form") {
    const ResonatorArray one =
        assemble(make_standard_blocks(), BlockSequence{{1}, {}});
    for (double alpha : {0.0, 0.1, 0.39, M_PI / 4.0}) {
        const HermitianPeriodicTridiagonal m = quasiperiodic_capacitance(one, alpha);
        REQUIRE(m.size() == 1);
        CHECK(m.diag[0] ==
              doctest::Approx((1.0 - std::cos(4.0 * alpha)) / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("quasiperiodic spectrum at alpha 0 contains the zero mode") {
    const ResonatorArray array = random_array(8, 9);
    const Spectrum s = eig_hermitian_dense(quasiperiodic_capacitance(array, 0.0));
    CHECK(std::abs(s.values.front()) < 1e-10);
    // row sums: constant vector is in the kernel at alpha = 0
    const HermitianPeriodicTridiagonal m = quasiperiodic_capacitance(array, 0.0);
    const std::vector<double> v = material_matrix(array);
    for (std::size_t i = 0; i < m.size(); ++i) {
        double row = m.diag[i] / std::sqrt(v[i]);
        if (i > 0) row += m.offdiag[i - 1] / std::sqrt(v[i - 1]);
        if (i + 1 < m.size()) row += m.offdiag[i] / std::sqrt(v[i + 1]);
        if (i == 0) row += (m.corner / std::sqrt(v[m.size() - 1])).real();
        if (i + 1 == m.size()) row += (std::conj(m.corner) / std::sqrt(v[0])).real();
        CHECK(std::abs(row) < 1e-12);
    }
}

TEST_CASE("spectra at +alpha and -alpha coincide") {
    const ResonatorArray array = random_array(7, 31);
    const double alpha = 0.21 / total_length(array);
    const Spectrum plus = eig_hermitian_dense(quasiperiodic_capacitance(array, alpha));
    const Spectrum minus = eig_hermitian_dense(quasiperiodic_capacitance(array, -alpha));
    REQUIRE(plus.size() == minus.size());
    for (std::size_t i = 0; i < plus.size(); ++i) {
        CHECK(plus.values[i] == doctest::Approx(minus.values[i]).epsilon(1e-10));
    }
}

TEST_CASE("alpha outside the Brillouin zone wraps with a flag") {
    const ResonatorArray array = random_array(4, 13);
    const double cell = total_length(array);
    const double alpha = 0.2 / cell;
    const HermitianPeriodicTridiagonal inside = quasiperiodic_capacitance(array, alpha);
    const HermitianPeriodicTridiagonal outside =
        quasiperiodic_capacitance(array, alpha + 2.0 * M_PI / cell);
    CHECK(!inside.wrapped_alpha);
    CHECK(outside.wrapped_alpha);
    CHECK(std::abs(inside.corner - outside.corner) < 1e-10);
}

TEST_CASE("convert_frequency") {
    CHECK(convert_frequency(0.0, 1e-4) == 0.0);
    CHECK(convert_frequency(1.0, 1e-4) == doctest::Approx(1e-2));
    CHECK(convert_frequency(4.0, 0.25) == doctest::Approx(1.0));
    CHECK_THROWS_AS(convert_frequency(-1.0, 0.1), std::domain_error);
}

TEST_CASE("triplet export") {
    ResonatorArray two{{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}};
    std::ostringstream out;
    write_triplets(out, capacitance_matrix(two));
    CHECK(out.str() == "1,1,1\n1,2,-1\n2,1,-1\n2,2,1\n");

    ResonatorArray three{{1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}};
    std::ostringstream qp;
    write_triplets(qp, quasiperiodic_capacitance(three, 0.1));
    const std::string text = qp.str();
    CHECK(text.rfind("1,1,", 0) == 0);
    CHECK(text.find("\n1,3,") != std::string::npos); // corner
    CHECK(text.find("\n3,1,") != std::string::npos); // conjugate corner
    std::size_t rows = 0;
    for (char ch : text) rows += ch == '\n' ? 1 : 0;
    CHECK(rows == 9); // 3 diag + 4 offdiag + 2 corner
}

} // TEST_SUITE
