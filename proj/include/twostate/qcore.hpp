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

#pragma once

// Dense complex linear algebra over small labeled Hilbert spaces.
//
// Every space handled by this library is tiny (dim <= 64), so vectors and
// operators are stored densely. Observables carry their spectral data
// (eigenvalues and orthogonal projectors) explicitly because the weak-value
// and pointer computations work branch by branch.

#include <Eigen/Dense>
#include <compare>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace twostate {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Absolute tolerance behind every "exact" statement (normalization,
/// hermiticity, projector algebra).
inline constexpr double kExactTolerance = 1e-12;
/// Eigenvalues closer than this are treated as one degenerate eigenvalue.
inline constexpr double kEigenvalueGrouping = 1e-10;

/// Label of one basis vector: an ordered list of (particle, value) tags.
/// Interferometer bases use arm values "NO" / "O"; generic spaces use the
/// decimal index.
struct BasisLabel {
    std::vector<std::pair<std::string, std::string>> tags;

    /// "p:NO,e:O" style rendering.
    std::string to_string() const;
    auto operator<=>(const BasisLabel &) const = default;
    bool operator==(const BasisLabel &) const = default;
};

/// Labels q:0 .. q:(dim-1).
std::vector<BasisLabel> indexed_basis(std::size_t dim, const std::string &particle = "q");

class StateVector {
   public:
    StateVector(CVector amplitudes, std::vector<BasisLabel> basis);
    explicit StateVector(CVector amplitudes);
    StateVector(std::initializer_list<Complex> amplitudes);

    std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
    const CVector &amplitudes() const { return amplitudes_; }
    Complex operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }
    const std::vector<BasisLabel> &basis() const { return basis_; }

    double norm() const { return amplitudes_.norm(); }
    bool is_normalized(double tolerance = kExactTolerance) const;
    /// Throws InvalidArgument for the zero vector.
    StateVector normalized() const;
    /// Throws InvalidArgument when the label is not part of the basis.
    std::size_t index_of(const BasisLabel &label) const;
    Complex amplitude(const BasisLabel &label) const { return (*this)[index_of(label)]; }

   private:
    CVector amplitudes_;
    std::vector<BasisLabel> basis_;
};

struct SpectralComponent {
    double eigenvalue;
    CMatrix projector;
};

/// Hermitian operator together with its spectral decomposition
/// A = sum_i a_i P_i, eigenvalues ascending and pairwise distinct.
class Observable {
   public:
    /// Builds the operator constructively from eigenvalue/projector pairs.
    /// Components whose eigenvalues agree within kEigenvalueGrouping are
    /// merged; zero projectors are dropped. Throws NotHermitian or
    /// InvalidArgument when the projector family is not a resolution of the
    /// identity.
    static Observable from_spectrum(std::vector<SpectralComponent> components, std::string name = {});
    /// General Hermitian eigensolver path.
    static Observable from_hermitian(const CMatrix &matrix, std::string name = {});
    static Observable from_diagonal(std::span<const double> diagonal, std::string name = {});
    static Observable identity(std::size_t dim);

    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
    const CMatrix &matrix() const { return matrix_; }
    const std::vector<SpectralComponent> &spectrum() const { return spectrum_; }
    std::vector<double> eigenvalues() const;
    const std::string &name() const { return name_; }
    Observable renamed(std::string name) const;

    bool commutes_with(const Observable &other, double tolerance = kExactTolerance) const;

   private:
    Observable(CMatrix matrix, std::vector<SpectralComponent> spectrum, std::string name);

    CMatrix matrix_;
    std::vector<SpectralComponent> spectrum_;
    std::string name_;
};

CMatrix kron(const CMatrix &a, const CMatrix &b);

/// a (x) b, labels concatenated factor by factor.
StateVector tensor(const StateVector &a, const StateVector &b);
/// <a|b>, conjugate-linear in the first argument.
Complex inner(const StateVector &a, const StateVector &b);
/// |s><s| as an observable with eigenvalues {0, 1}. Requires a normalized s.
Observable projector(const StateVector &s);
Observable op_tensor(const Observable &a, const Observable &b);
StateVector apply(const Observable &a, const StateVector &s);
StateVector apply(const CMatrix &a, const StateVector &s);
/// <s|A|s> for normalized s.
double expectation(const Observable &a, const StateVector &s);

}  // namespace twostate
