#pragma once

// Truncated-Hilbert-space operator algebra: dense complex operators and
// states over a fixed list of subsystem dimensions. Tensor convention
// repo-wide: cavity first, qubit second.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace cqed {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

constexpr Complex kI{0.0, 1.0};

// Default numeric tolerances; overridable per call where it matters.
namespace tol {
constexpr double hermiticity = 1e-12;
constexpr double normalization = 1e-10;
constexpr double positivity_slack = -1e-8;
}  // namespace tol

// Raised when a numerical contract (Hermiticity, trace, positivity,
// step-size) is violated. Maps to CLI exit code 3.
struct ContractError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ordered subsystem truncation sizes; order is significant.
struct DimensionList {
    std::vector<int> dims;

    DimensionList() = default;
    DimensionList(std::initializer_list<int> d) : dims(d) { validate(); }
    explicit DimensionList(std::vector<int> d) : dims(std::move(d)) { validate(); }

    int total() const {
        int t = 1;
        for (int d : dims) t *= d;
        return t;
    }

    bool operator==(const DimensionList& o) const { return dims == o.dims; }
    bool operator!=(const DimensionList& o) const { return !(*this == o); }

private:
    void validate() const {
        if (dims.empty())
            throw std::invalid_argument("DimensionList: empty dimension list");
        for (int d : dims)
            if (d < 1)
                throw std::invalid_argument("DimensionList: every entry must be >= 1");
    }
};

struct Operator {
    DimensionList dims;
    Matrix matrix;

    Operator() = default;
    Operator(DimensionList d, Matrix m) : dims(std::move(d)), matrix(std::move(m)) {
        if (matrix.rows() != matrix.cols() || matrix.rows() != dims.total())
            throw std::invalid_argument("Operator: matrix side must equal dims.total()");
    }

    int size() const { return static_cast<int>(matrix.rows()); }
};

inline Operator operator+(const Operator& a, const Operator& b) {
    if (a.dims != b.dims) throw std::invalid_argument("Operator+: dims mismatch");
    return {a.dims, a.matrix + b.matrix};
}

inline Operator operator-(const Operator& a, const Operator& b) {
    if (a.dims != b.dims) throw std::invalid_argument("Operator-: dims mismatch");
    return {a.dims, a.matrix - b.matrix};
}

inline Operator operator*(const Operator& a, const Operator& b) {
    if (a.dims != b.dims) throw std::invalid_argument("Operator*: dims mismatch");
    return {a.dims, a.matrix * b.matrix};
}

inline Operator operator*(Complex c, const Operator& a) { return {a.dims, c * a.matrix}; }
inline Operator operator*(double c, const Operator& a) { return {a.dims, c * a.matrix}; }
inline Operator operator-(const Operator& a) { return {a.dims, -a.matrix}; }

inline Operator dagger(const Operator& a) { return {a.dims, a.matrix.adjoint()}; }

inline Operator commutator(const Operator& a, const Operator& b) {
    return a * b - b * a;
}

inline bool is_hermitian(const Matrix& m, double eps = tol::hermiticity) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= eps;
}

inline bool is_hermitian(const Operator& a, double eps = tol::hermiticity) {
    return is_hermitian(a.matrix, eps);
}

// Either a pure state vector or a density matrix over the same dims.
struct QuantumState {
    enum class Kind { Pure, Mixed };

    DimensionList dims;
    Kind kind = Kind::Pure;
    Vector vec;   // valid when pure
    Matrix rho;   // valid when mixed

    static QuantumState pure(DimensionList d, Vector psi) {
        if (psi.size() != d.total())
            throw std::invalid_argument("QuantumState: vector length must equal dims.total()");
        double n = psi.norm();
        if (std::abs(n - 1.0) > tol::normalization)
            throw ContractError("QuantumState: pure state norm deviates from 1 by " +
                                std::to_string(std::abs(n - 1.0)));
        QuantumState s;
        s.dims = std::move(d);
        s.kind = Kind::Pure;
        s.vec = std::move(psi);
        return s;
    }

    static QuantumState mixed(DimensionList d, Matrix density) {
        if (density.rows() != d.total() || density.cols() != d.total())
            throw std::invalid_argument("QuantumState: density matrix side must equal dims.total()");
        double tr_dev = std::abs(density.trace() - Complex{1.0, 0.0});
        if (tr_dev > tol::normalization)
            throw ContractError("QuantumState: trace deviates from 1 by " + std::to_string(tr_dev));
        if (!is_hermitian(density))
            throw ContractError("QuantumState: density matrix is not Hermitian");
        Eigen::SelfAdjointEigenSolver<Matrix> es(density, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < tol::positivity_slack)
            throw ContractError("QuantumState: density matrix has eigenvalue below positivity slack");
        QuantumState s;
        s.dims = std::move(d);
        s.kind = Kind::Mixed;
        s.rho = std::move(density);
        return s;
    }

    // Density matrix view regardless of kind.
    Matrix density() const {
        if (kind == Kind::Pure) return vec * vec.adjoint();
        return rho;
    }
};

// Fock basis vector |k> in an n-dimensional truncation.
inline QuantumState fock_state(int n, int k) {
    if (k < 0 || k >= n) throw std::invalid_argument("fock_state: index out of range");
    Vector v = Vector::Zero(n);
    v(k) = 1.0;
    return QuantumState::pure(DimensionList{n}, std::move(v));
}

// Product Fock state over a composite space, indices in dims order.
inline QuantumState product_fock_state(const DimensionList& dims, const std::vector<int>& ks) {
    if (ks.size() != dims.dims.size())
        throw std::invalid_argument("product_fock_state: index count must match dims");
    int idx = 0;
    for (size_t i = 0; i < ks.size(); ++i) {
        if (ks[i] < 0 || ks[i] >= dims.dims[i])
            throw std::invalid_argument("product_fock_state: index out of range");
        idx = idx * dims.dims[i] + ks[i];
    }
    Vector v = Vector::Zero(dims.total());
    v(idx) = 1.0;
    return QuantumState::pure(dims, std::move(v));
}

inline Operator identity(int n) {
    if (n < 1) throw std::invalid_argument("identity: dimension must be >= 1");
    return {DimensionList{n}, Matrix::Identity(n, n)};
}

// Annihilation operator on an n-dimensional Fock truncation:
// <k-1|a|k> = sqrt(k).
inline Operator destroy(int n) {
    if (n < 2) throw std::invalid_argument("destroy: truncation size must be >= 2");
    Matrix m = Matrix::Zero(n, n);
    for (int k = 1; k < n; ++k) m(k - 1, k) = std::sqrt(static_cast<double>(k));
    return {DimensionList{n}, std::move(m)};
}

// Creation operator; create(n)|n-1> = 0 (no wraparound at the truncation top).
inline Operator create(int n) { return dagger(destroy(n)); }

inline Operator number(int n) {
    if (n < 2) throw std::invalid_argument("number: truncation size must be >= 2");
    Matrix m = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k) m(k, k) = static_cast<double>(k);
    return {DimensionList{n}, std::move(m)};
}

// Projector |k><k| in an n-dimensional space.
inline Operator projector(int n, int k) {
    if (k < 0 || k >= n) throw std::invalid_argument("projector: index out of range");
    Matrix m = Matrix::Zero(n, n);
    m(k, k) = 1.0;
    return {DimensionList{n}, std::move(m)};
}

enum class Pauli { Z, Plus, Minus };

// Basis order |0> = ground, |1> = excited. Sign convention:
// sigma_z = |0><0| - |1><1|, so the ground state is the +1 eigenstate and
// -(omega/2) sigma_z puts it at the lower energy.
inline Operator pauli(Pauli which) {
    Matrix m = Matrix::Zero(2, 2);
    switch (which) {
        case Pauli::Z:
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
        case Pauli::Plus:
            m(1, 0) = 1.0;  // |1><0|
            break;
        case Pauli::Minus:
            m(0, 1) = 1.0;  // |0><1|
            break;
    }
    return {DimensionList{2}, std::move(m)};
}

inline Operator sigma_z() { return pauli(Pauli::Z); }
inline Operator sigma_plus() { return pauli(Pauli::Plus); }
inline Operator sigma_minus() { return pauli(Pauli::Minus); }

// Kronecker product in list order; dims concatenate.
inline Operator tensor(const std::vector<Operator>& ops) {
    if (ops.empty()) throw std::invalid_argument("tensor: empty operator list");
    Matrix acc = ops[0].matrix;
    std::vector<int> dims = ops[0].dims.dims;
    for (size_t i = 1; i < ops.size(); ++i) {
        const Matrix& b = ops[i].matrix;
        Matrix next(acc.rows() * b.rows(), acc.cols() * b.cols());
        for (Eigen::Index r = 0; r < acc.rows(); ++r)
            for (Eigen::Index c = 0; c < acc.cols(); ++c)
                next.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = acc(r, c) * b;
        acc = std::move(next);
        dims.insert(dims.end(), ops[i].dims.dims.begin(), ops[i].dims.dims.end());
    }
    return {DimensionList{std::move(dims)}, std::move(acc)};
}

inline Operator tensor(const Operator& a, const Operator& b) { return tensor({a, b}); }

// <psi|O|psi> or Tr(rho O).
inline Complex expectation_complex(const Operator& obs, const QuantumState& state) {
    if (obs.dims != state.dims)
        throw std::invalid_argument("expectation: operator/state dims mismatch");
    if (state.kind == QuantumState::Kind::Pure)
        return state.vec.dot(obs.matrix * state.vec);
    return (state.rho * obs.matrix).trace();
}

// Real expectation of a Hermitian observable; the imaginary residue is a
// contract, not silently dropped.
inline double expectation(const Operator& obs, const QuantumState& state) {
    Complex v = expectation_complex(obs, state);
    if (std::abs(v.imag()) > 1e-9)
        throw ContractError("expectation: Hermitian observable returned imaginary residue " +
                            std::to_string(v.imag()));
    return v.real();
}

struct EigenSystem {
    Eigen::VectorXd values;   // ascending
    Matrix vectors;           // columns, orthonormal
};

inline EigenSystem eigen_hermitian(const Operator& op, double herm_eps = 1e-10) {
    if (!is_hermitian(op, herm_eps))
        throw ContractError("eigen_hermitian: input is not Hermitian within tolerance");
    Eigen::SelfAdjointEigenSolver<Matrix> es(op.matrix);
    if (es.info() != Eigen::Success)
        throw ContractError("eigen_hermitian: diagonalization failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

// Truncated coherent-state expansion |alpha>, renormalized. The Fock
// amplitudes follow the Poisson weights; a warning is collected when the
// mean photon number crowds the truncation.
inline QuantumState coherent_state(int n, Complex alpha,
                                   std::vector<std::string>* warnings = nullptr) {
    if (n < 2) throw std::invalid_argument("coherent_state: truncation size must be >= 2");
    double nbar = std::norm(alpha);
    if (warnings && nbar > n / 4.0)
        warnings->push_back("coherent_state: |alpha|^2 = " + std::to_string(nbar) +
                            " is large for truncation " + std::to_string(n));
    Vector v(n);
    // amplitude_k = alpha^k / sqrt(k!), built iteratively; global factor
    // e^{-|alpha|^2/2} absorbed by the final renormalization.
    Complex amp = 1.0;
    for (int k = 0; k < n; ++k) {
        v(k) = amp;
        amp *= alpha / std::sqrt(static_cast<double>(k + 1));
    }
    v /= v.norm();
    return QuantumState::pure(DimensionList{n}, std::move(v));
}

}  // namespace cqed
