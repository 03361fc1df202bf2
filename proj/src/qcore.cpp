// Copyright 2026 The twostate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "twostate/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "twostate/errors.hpp"

namespace twostate {

namespace {

void require_unique(const std::vector<BasisLabel> &basis) {
    std::vector<BasisLabel> sorted = basis;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InvalidArgument("basis labels must be unique");
    }
}

double max_abs(const CMatrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

std::string BasisLabel::to_string() const {
    std::string out;
    for (const auto &[particle, value] : tags) {
        if (!out.empty()) {
            out += ',';
        }
        out += particle;
        out += ':';
        out += value;
    }
    return out;
}

std::vector<BasisLabel> indexed_basis(std::size_t dim, const std::string &particle) {
    std::vector<BasisLabel> basis(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        basis[i].tags.emplace_back(particle, std::to_string(i));
    }
    return basis;
}

StateVector::StateVector(CVector amplitudes, std::vector<BasisLabel> basis)
    : amplitudes_(std::move(amplitudes)), basis_(std::move(basis)) {
    if (amplitudes_.size() == 0) {
        throw InvalidArgument("state vector must have positive dimension");
    }
    if (basis_.size() != static_cast<std::size_t>(amplitudes_.size())) {
        throw DimensionMismatch("basis size " + std::to_string(basis_.size()) + " != dimension " +
                                std::to_string(amplitudes_.size()));
    }
    require_unique(basis_);
}

StateVector::StateVector(CVector amplitudes)
    : StateVector(amplitudes, indexed_basis(static_cast<std::size_t>(amplitudes.size()))) {}

StateVector::StateVector(std::initializer_list<Complex> amplitudes)
    : StateVector(Eigen::Map<const CVector>(amplitudes.begin(), static_cast<Eigen::Index>(amplitudes.size()))) {}

bool StateVector::is_normalized(double tolerance) const {
    return std::abs(amplitudes_.squaredNorm() - 1.0) <= tolerance;
}

StateVector StateVector::normalized() const {
    double n = norm();
    if (n == 0.0) {
        throw InvalidArgument("cannot normalize the zero vector");
    }
    return StateVector(amplitudes_ / n, basis_);
}

std::size_t StateVector::index_of(const BasisLabel &label) const {
    auto it = std::find(basis_.begin(), basis_.end(), label);
    if (it == basis_.end()) {
        throw InvalidArgument("unknown basis label " + label.to_string());
    }
    return static_cast<std::size_t>(it - basis_.begin());
}

Observable::Observable(CMatrix matrix, std::vector<SpectralComponent> spectrum, std::string name)
    : matrix_(std::move(matrix)), spectrum_(std::move(spectrum)), name_(std::move(name)) {}

Observable Observable::from_spectrum(std::vector<SpectralComponent> components, std::string name) {
    if (components.empty()) {
        throw InvalidArgument("observable needs at least one spectral component");
    }
    const Eigen::Index dim = components.front().projector.rows();
    for (const auto &c : components) {
        if (c.projector.rows() != dim || c.projector.cols() != dim) {
            throw DimensionMismatch("spectral projectors must share one square dimension");
        }
        if (!std::isfinite(c.eigenvalue)) {
            throw InvalidArgument("eigenvalues must be finite");
        }
    }

    std::sort(components.begin(), components.end(),
              [](const auto &a, const auto &b) { return a.eigenvalue < b.eigenvalue; });
    std::vector<SpectralComponent> merged;
    for (auto &c : components) {
        if (c.projector.trace().real() < 0.5) {
            continue;  // zero projector
        }
        if (!merged.empty() && std::abs(c.eigenvalue - merged.back().eigenvalue) <= kEigenvalueGrouping) {
            merged.back().projector += c.projector;
        } else {
            merged.push_back(std::move(c));
        }
    }
    if (merged.empty()) {
        throw InvalidArgument("all spectral projectors vanish");
    }

    const CMatrix id = CMatrix::Identity(dim, dim);
    CMatrix total = CMatrix::Zero(dim, dim);
    CMatrix matrix = CMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < merged.size(); ++i) {
        const CMatrix &p = merged[i].projector;
        if (max_abs(p - p.adjoint()) > kExactTolerance) {
            throw NotHermitian("spectral projector is not Hermitian");
        }
        for (std::size_t j = 0; j < merged.size(); ++j) {
            CMatrix expected = i == j ? p : CMatrix::Zero(dim, dim);
            if (max_abs(p * merged[j].projector - expected) > kExactTolerance) {
                throw InvalidArgument("spectral projectors are not mutually orthogonal idempotents");
            }
        }
        total += p;
        matrix += merged[i].eigenvalue * p;
    }
    if (max_abs(total - id) > kExactTolerance) {
        throw InvalidArgument("spectral projectors do not resolve the identity");
    }
    return Observable(std::move(matrix), std::move(merged), std::move(name));
}

Observable Observable::from_hermitian(const CMatrix &matrix, std::string name) {
    if (matrix.rows() != matrix.cols() || matrix.rows() == 0) {
        throw DimensionMismatch("observable matrix must be square and non-empty");
    }
    if (max_abs(matrix - matrix.adjoint()) > kExactTolerance) {
        throw NotHermitian("matrix is not Hermitian within 1e-12");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(matrix);
    const auto &values = solver.eigenvalues();
    const auto &vectors = solver.eigenvectors();
    std::vector<SpectralComponent> components;
    for (Eigen::Index k = 0; k < values.size(); ++k) {
        components.push_back({values[k], vectors.col(k) * vectors.col(k).adjoint()});
    }
    // from_spectrum re-checks the algebra; the eigensolver's own projectors
    // are accurate to ~1e-15 so the 1e-12 gate holds for dim <= 64.
    Observable out = from_spectrum(std::move(components), std::move(name));
    out.matrix_ = matrix;
    return out;
}

Observable Observable::from_diagonal(std::span<const double> diagonal, std::string name) {
    const auto dim = static_cast<Eigen::Index>(diagonal.size());
    std::vector<SpectralComponent> components;
    for (Eigen::Index i = 0; i < dim; ++i) {
        CMatrix p = CMatrix::Zero(dim, dim);
        p(i, i) = 1.0;
        components.push_back({diagonal[static_cast<std::size_t>(i)], std::move(p)});
    }
    return from_spectrum(std::move(components), std::move(name));
}

Observable Observable::identity(std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    return from_spectrum({{1.0, CMatrix::Identity(d, d)}}, "identity");
}

std::vector<double> Observable::eigenvalues() const {
    std::vector<double> out;
    out.reserve(spectrum_.size());
    for (const auto &c : spectrum_) {
        out.push_back(c.eigenvalue);
    }
    return out;
}

Observable Observable::renamed(std::string name) const {
    return Observable(matrix_, spectrum_, std::move(name));
}

bool Observable::commutes_with(const Observable &other, double tolerance) const {
    if (other.dim() != dim()) {
        throw DimensionMismatch("commutator of observables with different dimensions");
    }
    return max_abs(matrix_ * other.matrix_ - other.matrix_ * matrix_) <= tolerance;
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    const auto da = static_cast<Eigen::Index>(a.dim());
    const auto db = static_cast<Eigen::Index>(b.dim());
    CVector amps(da * db);
    std::vector<BasisLabel> basis;
    basis.reserve(static_cast<std::size_t>(da * db));
    for (Eigen::Index i = 0; i < da; ++i) {
        for (Eigen::Index j = 0; j < db; ++j) {
            amps[i * db + j] = a.amplitudes()[i] * b.amplitudes()[j];
            BasisLabel label = a.basis()[static_cast<std::size_t>(i)];
            const auto &tail = b.basis()[static_cast<std::size_t>(j)].tags;
            label.tags.insert(label.tags.end(), tail.begin(), tail.end());
            basis.push_back(std::move(label));
        }
    }
    return StateVector(std::move(amps), std::move(basis));
}

Complex inner(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("inner product of states with dimensions " + std::to_string(a.dim()) + " and " +
                                std::to_string(b.dim()));
    }
    return a.amplitudes().dot(b.amplitudes());  // Eigen's dot conjugates the left operand
}

Observable projector(const StateVector &s) {
    if (!s.is_normalized()) {
        throw NotNormalized("projector requires a normalized state");
    }
    const auto d = static_cast<Eigen::Index>(s.dim());
    CMatrix p = s.amplitudes() * s.amplitudes().adjoint();
    // Re-hermitize so rounding in the outer product never trips the 1e-12 gate.
    p = 0.5 * (p + p.adjoint()).eval();
    return Observable::from_spectrum({{0.0, CMatrix::Identity(d, d) - p}, {1.0, p}});
}

Observable op_tensor(const Observable &a, const Observable &b) {
    std::vector<SpectralComponent> components;
    for (const auto &ca : a.spectrum()) {
        for (const auto &cb : b.spectrum()) {
            components.push_back({ca.eigenvalue * cb.eigenvalue, kron(ca.projector, cb.projector)});
        }
    }
    std::string name;
    if (!a.name().empty() || !b.name().empty()) {
        name = a.name() + "*" + b.name();
    }
    return Observable::from_spectrum(std::move(components), std::move(name));
}

StateVector apply(const CMatrix &a, const StateVector &s) {
    if (static_cast<std::size_t>(a.cols()) != s.dim() || a.rows() != a.cols()) {
        throw DimensionMismatch("operator of dimension " + std::to_string(a.cols()) + " applied to state of dimension " +
                                std::to_string(s.dim()));
    }
    return StateVector(a * s.amplitudes(), s.basis());
}

StateVector apply(const Observable &a, const StateVector &s) { return apply(a.matrix(), s); }

double expectation(const Observable &a, const StateVector &s) {
    if (!s.is_normalized()) {
        throw NotNormalized("expectation requires a normalized state");
    }
    return inner(s, apply(a, s)).real();
}

}  // namespace twostate
