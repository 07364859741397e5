#pragma once

// Static-plus-time-dependent Hamiltonian container. Each time term is an
// operator with a scalar complex coefficient c(t); H(t) = H0 + sum c_k(t) O_k.
// The terms need not be individually Hermitian (drive terms come in
// conjugate pairs), but the sum at any t must be.

#include "cqed/operators.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace cqed {

using TimeCoefficient = std::function<Complex(double)>;

struct HamiltonianSpec {
    Operator static_part;
    std::vector<std::pair<Operator, TimeCoefficient>> time_terms;

    explicit HamiltonianSpec(Operator h0) : static_part(std::move(h0)) {}

    void add_term(Operator op, TimeCoefficient coeff) {
        if (op.dims != static_part.dims)
            throw std::invalid_argument("HamiltonianSpec: term dims mismatch");
        time_terms.emplace_back(std::move(op), std::move(coeff));
    }

    bool is_static() const { return time_terms.empty(); }

    const DimensionList& dims() const { return static_part.dims; }

    // Full Hamiltonian matrix at time t.
    Matrix at(double t) const {
        if (time_terms.empty()) return static_part.matrix;
        Matrix h = static_part.matrix;
        for (const auto& [op, coeff] : time_terms) h += coeff(t) * op.matrix;
        return h;
    }
};

}  // namespace cqed
