#include "cqed/operators.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace cqed;

namespace {

// Independent Poisson-series oracle for coherent-state moments:
// <a^dag a> = sum_n n P(n) with P(n) = e^{-|a|^2} |a|^{2n} / n!, truncated.
double poisson_mean_photon(double nbar, int n_max) {
    double p = std::exp(-nbar);  // P(0)
    double mean = 0.0;
    for (int n = 1; n < n_max; ++n) {
        p *= nbar / n;
        mean += n * p;
    }
    return mean;
}

}  // namespace

TEST_CASE("destroy lowers Fock states by one") {
    const Operator a = destroy(3);
    const QuantumState two = fock_state(3, 2);
    Vector out = a.matrix * two.vec;
    Vector expected = std::sqrt(2.0) * fock_state(3, 1).vec;
    REQUIRE((out - expected).norm() < 1e-15);

    Vector vac_out = a.matrix * fock_state(3, 0).vec;
    REQUIRE(vac_out.norm() == 0.0);
}

TEST_CASE("destroy rejects invalid truncation") {
    REQUIRE_THROWS_AS(destroy(1), std::invalid_argument);
}

TEST_CASE("truncated ladder commutator is identity with a corner defect") {
    const int n = 10;
    const Operator c = commutator(destroy(n), create(n));
    Matrix expected = Matrix::Identity(n, n);
    expected(n - 1, n - 1) -= static_cast<double>(n);  // I - n |n-1><n-1|
    REQUIRE((c.matrix - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("create is the exact adjoint of destroy") {
    for (int n : {2, 4, 7}) {
        REQUIRE((dagger(destroy(n)).matrix - create(n).matrix).cwiseAbs().maxCoeff() == 0.0);
    }
    // truncation top absorbs
    Vector top_out = create(3).matrix * fock_state(3, 2).vec;
    REQUIRE(top_out.norm() == 0.0);
    Vector up = create(3).matrix * fock_state(3, 0).vec;
    REQUIRE((up - fock_state(3, 1).vec).norm() < 1e-15);
}

TEST_CASE("number operator") {
    const Operator n3 = number(3);
    REQUIRE(n3.matrix(0, 0) == Complex(0.0));
    REQUIRE(n3.matrix(1, 1) == Complex(1.0));
    REQUIRE(n3.matrix(2, 2) == Complex(2.0));
    const Operator nd = create(6) * destroy(6);
    REQUIRE((nd.matrix - number(6).matrix).cwiseAbs().maxCoeff() < 1e-14);
    REQUIRE(expectation(number(10), fock_state(10, 5)) == Catch::Approx(5.0));
}

TEST_CASE("pauli matrices follow the declared conventions") {
    REQUIRE(((sigma_plus() * sigma_minus()).matrix - projector(2, 1).matrix)
                .cwiseAbs().maxCoeff() == 0.0);
    // ground state |0> is the +1 eigenstate of sigma_z
    Vector ground = fock_state(2, 0).vec;
    REQUIRE(((sigma_z().matrix * ground) - ground).norm() == 0.0);
    REQUIRE(is_hermitian(sigma_plus() + sigma_minus()));
}

TEST_CASE("tensor products") {
    REQUIRE((tensor(identity(2), identity(3)).matrix - Matrix::Identity(6, 6))
                .cwiseAbs().maxCoeff() == 0.0);

    const Operator a = tensor(destroy(3), identity(2));
    const Operator z = tensor(identity(3), sigma_z());
    REQUIRE(commutator(a, z).matrix.cwiseAbs().maxCoeff() == 0.0);

    const Operator t = tensor(destroy(3), sigma_z());
    REQUIRE(t.dims.dims == std::vector<int>{3, 2});

    REQUIRE_THROWS_AS(tensor(std::vector<Operator>{}), std::invalid_argument);
}

TEST_CASE("tensor with identity preserves spectrum of the other factor") {
    const Operator h = 0.7 * number(4) + 0.1 * (create(4) + destroy(4));
    const auto bare = eigen_hermitian(h);
    const auto lifted = eigen_hermitian(tensor(h, identity(2)));
    for (int i = 0; i < 4; ++i) {
        // each bare eigenvalue appears twice
        REQUIRE(lifted.values(2 * i) == Catch::Approx(bare.values(i)).margin(1e-12));
        REQUIRE(lifted.values(2 * i + 1) == Catch::Approx(bare.values(i)).margin(1e-12));
    }
}

TEST_CASE("expectation values") {
    REQUIRE(expectation(number(10), fock_state(10, 0)) == 0.0);
    REQUIRE(expectation(sigma_z(), fock_state(2, 1)) == Catch::Approx(-1.0));
    REQUIRE_THROWS_AS(expectation(number(3), fock_state(4, 0)), std::invalid_argument);

    // mixed-state path: Tr(rho n) on an even photon-number mixture
    Matrix rho = Matrix::Zero(4, 4);
    rho(0, 0) = 0.5;
    rho(2, 2) = 0.5;
    const QuantumState mixed = QuantumState::mixed(DimensionList{4}, rho);
    REQUIRE(expectation(number(4), mixed) == Catch::Approx(1.0));
}

TEST_CASE("coherent state moments match the Poisson-series oracle") {
    const int N = 20;
    for (double nbar : {0.25, 1.0, 2.0}) {
        const double alpha = std::sqrt(nbar);
        const QuantumState cs = coherent_state(N, alpha);
        const double oracle = poisson_mean_photon(nbar, N);
        REQUIRE(expectation(create(N) * destroy(N), cs) == Catch::Approx(oracle).margin(1e-9));
        REQUIRE(std::abs(oracle - nbar) < 1e-6);  // truncation negligible at N = 20
    }
    // <a> on a real coherent state
    const QuantumState cs = coherent_state(20, Complex{1.0, 0.0});
    REQUIRE(expectation_complex(destroy(20), cs).real() == Catch::Approx(1.0).margin(1e-6));
    REQUIRE(expectation_complex(destroy(20), cs).imag() == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("coherent state edge cases") {
    const QuantumState vac = coherent_state(10, 0.0);
    REQUIRE((vac.vec - fock_state(10, 0).vec).norm() == 0.0);
    REQUIRE(coherent_state(12, Complex{1.3, -0.4}).vec.norm() == Catch::Approx(1.0).margin(1e-12));

    std::vector<std::string> warnings;
    coherent_state(4, 2.0, &warnings);  // |alpha|^2 = 4 > 4/4
    REQUIRE_FALSE(warnings.empty());
}

TEST_CASE("eigen_hermitian basics") {
    const auto z = eigen_hermitian(sigma_z());
    REQUIRE(z.values(0) == Catch::Approx(-1.0));
    REQUIRE(z.values(1) == Catch::Approx(1.0));

    const auto n = eigen_hermitian(number(4));
    for (int i = 0; i < 4; ++i) REQUIRE(n.values(i) == Catch::Approx(i).margin(1e-13));

    Matrix skew = Matrix::Zero(2, 2);
    skew(0, 1) = 1.0;
    REQUIRE_THROWS_AS(eigen_hermitian(Operator{DimensionList{2}, skew}), ContractError);
}

TEST_CASE("eigen_hermitian reconstructs a random seeded Hermitian matrix") {
    std::mt19937 rng(12345);
    std::normal_distribution<double> dist(0.0, 1.0);
    const int n = 12;
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Complex{dist(rng), dist(rng)};
    Matrix h = 0.5 * (m + m.adjoint());
    const Operator op{DimensionList{n}, h};
    const auto es = eigen_hermitian(op);
    const Matrix rebuilt =
        es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint();
    const double scale = h.cwiseAbs().maxCoeff();
    REQUIRE((rebuilt - h).cwiseAbs().maxCoeff() < 1e-9 * scale);
    for (int i = 0; i < n; ++i) {
        const Vector v = es.vectors.col(i);
        REQUIRE((h * v - es.values(i) * v).norm() < 1e-9 * scale);
    }
}

TEST_CASE("state constructors enforce their invariants") {
    Vector bad(2);
    bad << 1.0, 1.0;  // norm sqrt(2)
    REQUIRE_THROWS_AS(QuantumState::pure(DimensionList{2}, bad), ContractError);

    Matrix not_normalized = 2.0 * Matrix::Identity(2, 2);
    REQUIRE_THROWS_AS(QuantumState::mixed(DimensionList{2}, not_normalized), ContractError);

    Matrix negative = Matrix::Zero(2, 2);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    REQUIRE_THROWS_AS(QuantumState::mixed(DimensionList{2}, negative), ContractError);

    REQUIRE_THROWS_AS(DimensionList({2, 0}), std::invalid_argument);
}
