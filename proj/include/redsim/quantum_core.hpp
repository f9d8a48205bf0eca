// Copyright 2026 The redsim Authors
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

// Dense pure states and density matrices over a tensor product of qudits,
// plus the handful of multipartite operations everything else is built on:
// tensor products, partial traces, local operators and Schmidt decompositions.
//
// Subsystems are 0-indexed in row-major tensor order. A basis index i of a
// system with dims {d0, d1, ..., dn-1} has digit k with weight
// d_{k+1} * ... * d_{n-1}.

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <variant>

#include "redsim/common.hpp"

namespace redsim {

namespace detail {

inline std::vector<std::size_t> strides(const Dims& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) s[k - 1] = s[k] * dims[k];
  return s;
}

inline void check_dims(const Dims& dims) {
  if (dims.empty()) throw std::invalid_argument("dims must be nonempty");
  for (auto d : dims)
    if (d < 2) throw std::invalid_argument("every subsystem dimension must be >= 2, got " + to_string(dims));
}

inline void check_subsystems(const Dims& dims, const Subsystems& subs) {
  std::vector<bool> seen(dims.size(), false);
  for (auto s : subs) {
    if (s >= dims.size())
      throw std::invalid_argument("subsystem index " + std::to_string(s) + " out of range for dims " + to_string(dims));
    if (seen[s]) throw std::invalid_argument("subsystem index " + std::to_string(s) + " repeated");
    seen[s] = true;
  }
}

inline Subsystems complement(std::size_t n, const Subsystems& subs) {
  std::vector<bool> in(n, false);
  for (auto s : subs) in[s] = true;
  Subsystems out;
  for (std::size_t k = 0; k < n; ++k)
    if (!in[k]) out.push_back(k);
  return out;
}

inline Dims select(const Dims& dims, const Subsystems& subs) {
  Dims out;
  out.reserve(subs.size());
  for (auto s : subs) out.push_back(dims[s]);
  return out;
}

/// For every full basis index i: the index into the target factor (local) and
/// the full index with the target digits zeroed (base). offset[t] maps a
/// target-factor index back to its contribution to the full index, so
/// i == base[i] + offset[local[i]].
struct LocalIndexMap {
  std::vector<std::size_t> local;
  std::vector<std::size_t> base;
  std::vector<std::size_t> offset;
};

inline LocalIndexMap local_index_map(const Dims& dims, const Subsystems& targets) {
  const auto st = strides(dims);
  const std::size_t full = total_dimension(dims);
  const Dims tdims = select(dims, targets);
  const auto tst = strides(tdims);
  const std::size_t kdim = total_dimension(tdims);

  LocalIndexMap map;
  map.offset.resize(kdim);
  for (std::size_t t = 0; t < kdim; ++t) {
    std::size_t off = 0;
    for (std::size_t j = 0; j < targets.size(); ++j) off += ((t / tst[j]) % tdims[j]) * st[targets[j]];
    map.offset[t] = off;
  }
  map.local.resize(full);
  map.base.resize(full);
  for (std::size_t i = 0; i < full; ++i) {
    std::size_t loc = 0;
    std::size_t zeroed = i;
    for (std::size_t j = 0; j < targets.size(); ++j) {
      const std::size_t digit = (i / st[targets[j]]) % dims[targets[j]];
      loc += digit * tst[j];
      zeroed -= digit * st[targets[j]];
    }
    map.local[i] = loc;
    map.base[i] = zeroed;
  }
  return map;
}

/// out.row(i) = sum_t op(local(i), t) * in.row(base(i) + offset(t)).
template <typename Real>
CMatrix<Real> apply_on_rows(const CMatrix<Real>& op, const CMatrix<Real>& in, const LocalIndexMap& map) {
  CMatrix<Real> out = CMatrix<Real>::Zero(in.rows(), in.cols());
  const auto kdim = static_cast<Eigen::Index>(map.offset.size());
  for (Eigen::Index i = 0; i < in.rows(); ++i) {
    const auto loc = static_cast<Eigen::Index>(map.local[i]);
    const std::size_t base = map.base[i];
    for (Eigen::Index t = 0; t < kdim; ++t) {
      const auto a = op(loc, t);
      if (a == std::complex<Real>(0)) continue;
      out.row(i) += a * in.row(static_cast<Eigen::Index>(base + map.offset[t]));
    }
  }
  return out;
}

/// Reorders the subsystems of a state vector so that new subsystem k is old
/// subsystem order[k].
template <typename Real>
CVector<Real> permute_subsystems(const CVector<Real>& v, const Dims& dims, const Subsystems& order) {
  const auto st = strides(dims);
  const Dims ndims = select(dims, order);
  const auto nst = strides(ndims);
  CVector<Real> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::size_t j = 0;
    for (std::size_t k = 0; k < order.size(); ++k)
      j += ((static_cast<std::size_t>(i) / st[order[k]]) % dims[order[k]]) * nst[k];
    out(static_cast<Eigen::Index>(j)) = v(i);
  }
  return out;
}

}  // namespace detail

template <typename Real>
class BasicDensityMatrix;

/// Complex amplitude vector over the tensor product described by dims.
/// Construction checks shape only; normalization is checked by is_valid() so
/// that unnormalized branches (post-measurement, pre-division) can be carried.
template <typename Real>
class BasicPureState {
 public:
  using Scalar = std::complex<Real>;
  using Vector = CVector<Real>;

  BasicPureState(Vector amplitudes, Dims dims) : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {
    detail::check_dims(dims_);
    if (static_cast<std::size_t>(amplitudes_.size()) != total_dimension(dims_))
      throw std::invalid_argument("amplitude count " + std::to_string(amplitudes_.size()) +
                                  " does not match dims " + to_string(dims_));
  }

  static BasicPureState basis(const Dims& dims, std::size_t index) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(total_dimension(dims)));
    if (index >= static_cast<std::size_t>(v.size())) throw std::invalid_argument("basis index out of range");
    v(static_cast<Eigen::Index>(index)) = 1;
    return BasicPureState(std::move(v), dims);
  }

  const Vector& amplitudes() const { return amplitudes_; }
  const Dims& dims() const { return dims_; }
  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }
  std::size_t num_subsystems() const { return dims_.size(); }

  Real norm() const { return amplitudes_.norm(); }

  BasicPureState normalized() const {
    const Real n = norm();
    if (!(n > Real(0))) throw std::invalid_argument("cannot normalize a zero vector");
    return BasicPureState(amplitudes_ / n, dims_);
  }

  bool is_valid(Real tol = Real(tolerance())) const {
    return amplitudes_.allFinite() && std::abs(amplitudes_.squaredNorm() - Real(1)) <= tol;
  }

  void require_valid(Real tol = Real(tolerance())) const {
    if (!is_valid(tol))
      throw std::invalid_argument("pure state is not normalized (squared norm " +
                                  std::to_string(static_cast<double>(amplitudes_.squaredNorm())) + ")");
  }

  BasicDensityMatrix<Real> density() const;

 private:
  Vector amplitudes_;
  Dims dims_;
};

/// Square complex matrix over the tensor product described by dims. As with
/// BasicPureState, construction checks shape and is_valid() checks the
/// physical invariants.
template <typename Real>
class BasicDensityMatrix {
 public:
  using Scalar = std::complex<Real>;
  using Matrix = CMatrix<Real>;

  BasicDensityMatrix(Matrix matrix, Dims dims) : matrix_(std::move(matrix)), dims_(std::move(dims)) {
    detail::check_dims(dims_);
    const auto d = total_dimension(dims_);
    if (static_cast<std::size_t>(matrix_.rows()) != d || static_cast<std::size_t>(matrix_.cols()) != d)
      throw std::invalid_argument("density matrix shape does not match dims " + to_string(dims_));
  }

  static BasicDensityMatrix maximally_mixed(const Dims& dims) {
    const auto d = static_cast<Eigen::Index>(total_dimension(dims));
    return BasicDensityMatrix(Matrix::Identity(d, d) / Real(d), dims);
  }

  const Matrix& matrix() const { return matrix_; }
  const Dims& dims() const { return dims_; }
  std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }
  std::size_t num_subsystems() const { return dims_.size(); }

  Real trace() const { return matrix_.trace().real(); }

  BasicDensityMatrix normalized() const {
    const Real t = trace();
    if (!(t > Real(0))) throw std::invalid_argument("cannot normalize a matrix with nonpositive trace");
    return BasicDensityMatrix(matrix_ / t, dims_);
  }

  /// Eigenvalues of the Hermitian part, ascending.
  RVector<Real> eigenvalues() const {
    const Matrix h = (matrix_ + matrix_.adjoint()) / Real(2);
    return Eigen::SelfAdjointEigenSolver<Matrix>(h, Eigen::EigenvaluesOnly).eigenvalues();
  }

  bool is_valid(Real tol = Real(tolerance())) const {
    if (!matrix_.allFinite()) return false;
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    if (std::abs(matrix_.trace() - Scalar(1)) > tol) return false;
    return eigenvalues().minCoeff() >= -tol;
  }

  void require_valid(Real tol = Real(tolerance())) const {
    if (!matrix_.allFinite()) throw std::invalid_argument("density matrix has non-finite entries");
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > tol)
      throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(matrix_.trace() - Scalar(1)) > tol)
      throw std::invalid_argument("density matrix trace is " + std::to_string(static_cast<double>(trace())) +
                                  ", expected 1");
    if (eigenvalues().minCoeff() < -tol) throw std::invalid_argument("density matrix is not positive semidefinite");
  }

 private:
  Matrix matrix_;
  Dims dims_;
};

template <typename Real>
BasicDensityMatrix<Real> BasicPureState<Real>::density() const {
  return BasicDensityMatrix<Real>(amplitudes_ * amplitudes_.adjoint(), dims_);
}

template <typename Real>
using BasicState = std::variant<BasicPureState<Real>, BasicDensityMatrix<Real>>;

using PureState = BasicPureState<double>;
using DensityMatrix = BasicDensityMatrix<double>;
using State = BasicState<double>;

/// Schmidt form of a bipartite cut. coefficients are the squared Schmidt
/// weights lambda_k (the state is sum_k sqrt(lambda_k) |a_k>|b_k>), sorted
/// descending; basis_a / basis_b hold |a_k>, |b_k> as columns.
template <typename Real>
struct BasicSchmidtForm {
  RVector<Real> coefficients;
  CMatrix<Real> basis_a;
  CMatrix<Real> basis_b;
  Subsystems part_a;
  Subsystems part_b;
  Dims dims;

  std::size_t rank() const {
    return static_cast<std::size_t>((coefficients.array() > Real(0)).count());
  }

  /// Rebuilds the state in the original subsystem order.
  BasicPureState<Real> reconstruct() const {
    const auto da = basis_a.rows();
    const auto db = basis_b.rows();
    CVector<Real> grouped = CVector<Real>::Zero(da * db);
    for (Eigen::Index k = 0; k < coefficients.size(); ++k) {
      const Real w = std::sqrt(coefficients(k));
      if (w == Real(0)) continue;
      for (Eigen::Index a = 0; a < da; ++a)
        grouped.segment(a * db, db) += w * basis_a(a, k) * basis_b.col(k);
    }
    Subsystems order = part_a;
    order.insert(order.end(), part_b.begin(), part_b.end());
    // grouped is in `order`; invert back to 0..n-1.
    Subsystems inverse(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) inverse[order[k]] = k;
    return BasicPureState<Real>(detail::permute_subsystems<Real>(grouped, detail::select(dims, order), inverse), dims);
  }
};

using SchmidtForm = BasicSchmidtForm<double>;

// ---------------------------------------------------------------------------
// Tensor products

template <typename Real>
BasicPureState<Real> tensor_product(const BasicPureState<Real>& a, const BasicPureState<Real>& b) {
  CVector<Real> v(a.amplitudes().size() * b.amplitudes().size());
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i)
    v.segment(i * b.amplitudes().size(), b.amplitudes().size()) = a.amplitudes()(i) * b.amplitudes();
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return BasicPureState<Real>(std::move(v), std::move(dims));
}

template <typename Real>
CMatrix<Real> kron(const CMatrix<Real>& a, const CMatrix<Real>& b) {
  CMatrix<Real> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

template <typename Real>
BasicDensityMatrix<Real> tensor_product(const BasicDensityMatrix<Real>& a, const BasicDensityMatrix<Real>& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return BasicDensityMatrix<Real>(kron<Real>(a.matrix(), b.matrix()), std::move(dims));
}

/// Variant form; operands must be of the same kind.
template <typename Real>
BasicState<Real> tensor_product(const BasicState<Real>& a, const BasicState<Real>& b) {
  if (a.index() != b.index())
    throw std::invalid_argument("tensor_product requires operands of the same kind (pure or density)");
  if (const auto* pa = std::get_if<BasicPureState<Real>>(&a))
    return tensor_product(*pa, std::get<BasicPureState<Real>>(b));
  return tensor_product(std::get<BasicDensityMatrix<Real>>(a), std::get<BasicDensityMatrix<Real>>(b));
}

// ---------------------------------------------------------------------------
// Partial trace

/// Traces out every subsystem not in keep. The result lists the kept
/// subsystems in their original order regardless of the order of keep.
template <typename Real>
BasicDensityMatrix<Real> partial_trace(const BasicDensityMatrix<Real>& rho, Subsystems keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be nonempty");
  detail::check_subsystems(rho.dims(), keep);
  std::sort(keep.begin(), keep.end());
  if (keep.size() == rho.num_subsystems()) return rho;

  const auto map = detail::local_index_map(rho.dims(), keep);
  const auto kdim = static_cast<Eigen::Index>(map.offset.size());
  CMatrix<Real> out = CMatrix<Real>::Zero(kdim, kdim);
  const auto& m = rho.matrix();
  for (std::size_t i = 0; i < map.local.size(); ++i) {
    if (map.local[i] != 0) continue;
    const std::size_t base = map.base[i];
    for (Eigen::Index a = 0; a < kdim; ++a)
      for (Eigen::Index b = 0; b < kdim; ++b)
        out(a, b) += m(static_cast<Eigen::Index>(base + map.offset[a]), static_cast<Eigen::Index>(base + map.offset[b]));
  }
  return BasicDensityMatrix<Real>(std::move(out), detail::select(rho.dims(), keep));
}

template <typename Real>
BasicDensityMatrix<Real> partial_trace(const BasicPureState<Real>& psi, Subsystems keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be nonempty");
  detail::check_subsystems(psi.dims(), keep);
  std::sort(keep.begin(), keep.end());
  const auto traced = detail::complement(psi.num_subsystems(), keep);
  Subsystems order = keep;
  order.insert(order.end(), traced.begin(), traced.end());
  const auto grouped = detail::permute_subsystems<Real>(psi.amplitudes(), psi.dims(), order);
  const auto kdim = static_cast<Eigen::Index>(total_dimension(detail::select(psi.dims(), keep)));
  const auto tdim = static_cast<Eigen::Index>(grouped.size()) / kdim;
  // Row-major reshape: M(a, t) = grouped(a * tdim + t).
  const Eigen::Map<const Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      grouped.data(), kdim, tdim);
  return BasicDensityMatrix<Real>(m * m.adjoint(), detail::select(psi.dims(), keep));
}

// ---------------------------------------------------------------------------
// Local operators

/// Applies op to the tensor factor formed by targets (in the order given).
/// The result is not renormalized.
template <typename Real>
BasicPureState<Real> apply_local_operator(const BasicPureState<Real>& psi, const CMatrix<Real>& op,
                                          const Subsystems& targets) {
  detail::check_subsystems(psi.dims(), targets);
  const auto kdim = total_dimension(detail::select(psi.dims(), targets));
  if (targets.empty() || static_cast<std::size_t>(op.rows()) != kdim || static_cast<std::size_t>(op.cols()) != kdim)
    throw std::invalid_argument("operator is " + std::to_string(op.rows()) + "x" + std::to_string(op.cols()) +
                                " but target dimension is " + std::to_string(kdim));
  const auto map = detail::local_index_map(psi.dims(), targets);
  CMatrix<Real> out = detail::apply_on_rows<Real>(op, psi.amplitudes(), map);
  return BasicPureState<Real>(CVector<Real>(out.col(0)), psi.dims());
}

/// rho -> op rho op^dagger on the targeted factor. Not renormalized.
template <typename Real>
BasicDensityMatrix<Real> apply_local_operator(const BasicDensityMatrix<Real>& rho, const CMatrix<Real>& op,
                                              const Subsystems& targets) {
  detail::check_subsystems(rho.dims(), targets);
  const auto kdim = total_dimension(detail::select(rho.dims(), targets));
  if (targets.empty() || static_cast<std::size_t>(op.rows()) != kdim || static_cast<std::size_t>(op.cols()) != kdim)
    throw std::invalid_argument("operator is " + std::to_string(op.rows()) + "x" + std::to_string(op.cols()) +
                                " but target dimension is " + std::to_string(kdim));
  const auto map = detail::local_index_map(rho.dims(), targets);
  const CMatrix<Real> left = detail::apply_on_rows<Real>(op, rho.matrix(), map);
  const CMatrix<Real> left_adj = left.adjoint();
  CMatrix<Real> both = detail::apply_on_rows<Real>(op, left_adj, map).adjoint();
  return BasicDensityMatrix<Real>(std::move(both), rho.dims());
}

/// Post-selects the targeted subsystems onto |bra> and returns the
/// (unnormalized) state of the remaining subsystems, i.e. (<bra| x I)|psi>.
template <typename Real>
BasicPureState<Real> project_subsystems(const BasicPureState<Real>& psi, const CVector<Real>& bra,
                                        const Subsystems& targets) {
  detail::check_subsystems(psi.dims(), targets);
  if (targets.empty() || targets.size() == psi.num_subsystems())
    throw std::invalid_argument("project_subsystems needs a proper nonempty subset of subsystems");
  const auto kdim = total_dimension(detail::select(psi.dims(), targets));
  if (static_cast<std::size_t>(bra.size()) != kdim) throw std::invalid_argument("projection vector has wrong dimension");
  const auto rest = detail::complement(psi.num_subsystems(), targets);
  const auto rest_dims = detail::select(psi.dims(), rest);
  const auto tmap = detail::local_index_map(psi.dims(), targets);
  const auto rmap = detail::local_index_map(psi.dims(), rest);
  CVector<Real> out = CVector<Real>::Zero(static_cast<Eigen::Index>(total_dimension(rest_dims)));
  for (std::size_t i = 0; i < tmap.local.size(); ++i)
    out(static_cast<Eigen::Index>(rmap.local[i])) +=
        std::conj(bra(static_cast<Eigen::Index>(tmap.local[i]))) * psi.amplitudes()(static_cast<Eigen::Index>(i));
  return BasicPureState<Real>(std::move(out), rest_dims);
}

// ---------------------------------------------------------------------------
// Schmidt decomposition

/// SVD of the amplitude matrix reshaped along the cut (part_a | rest).
template <typename Real>
BasicSchmidtForm<Real> schmidt_decomposition(const BasicPureState<Real>& psi, Subsystems part_a) {
  detail::check_subsystems(psi.dims(), part_a);
  if (part_a.empty() || part_a.size() >= psi.num_subsystems())
    throw std::invalid_argument("schmidt_decomposition: cut must split the subsystems into two nonempty groups");
  std::sort(part_a.begin(), part_a.end());
  const auto part_b = detail::complement(psi.num_subsystems(), part_a);
  Subsystems order = part_a;
  order.insert(order.end(), part_b.begin(), part_b.end());
  const auto grouped = detail::permute_subsystems<Real>(psi.amplitudes(), psi.dims(), order);
  const auto da = static_cast<Eigen::Index>(total_dimension(detail::select(psi.dims(), part_a)));
  const auto db = static_cast<Eigen::Index>(grouped.size()) / da;
  const CMatrix<Real> m =
      Eigen::Map<const Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
          grouped.data(), da, db);

  Eigen::JacobiSVD<CMatrix<Real>> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  RVector<Real> coefficients = svd.singularValues();
  for (Eigen::Index k = 0; k < coefficients.size(); ++k)
    coefficients(k) = coefficients(k) < Real(kSingularValueCutoff) ? Real(0) : coefficients(k) * coefficients(k);

  BasicSchmidtForm<Real> form;
  form.coefficients = std::move(coefficients);
  form.basis_a = svd.matrixU();
  form.basis_b = svd.matrixV().conjugate();
  form.part_a = std::move(part_a);
  form.part_b = part_b;
  form.dims = psi.dims();
  return form;
}

// ---------------------------------------------------------------------------
// Overlaps

template <typename Real>
Real fidelity(const BasicPureState<Real>& a, const BasicPureState<Real>& b) {
  if (a.dims() != b.dims()) throw std::invalid_argument("fidelity: dims differ");
  return std::norm(a.amplitudes().dot(b.amplitudes())) / (a.amplitudes().squaredNorm() * b.amplitudes().squaredNorm());
}

template <typename Real>
Real fidelity(const BasicPureState<Real>& a, const BasicDensityMatrix<Real>& rho) {
  if (a.dims() != rho.dims()) throw std::invalid_argument("fidelity: dims differ");
  return (a.amplitudes().adjoint() * rho.matrix() * a.amplitudes())(0).real() / a.amplitudes().squaredNorm();
}

template <typename Real>
CMatrix<Real> psd_sqrt(const CMatrix<Real>& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es((m + m.adjoint()) / Real(2));
  const RVector<Real> root = es.eigenvalues().cwiseMax(Real(0)).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
template <typename Real>
Real fidelity(const BasicDensityMatrix<Real>& rho, const BasicDensityMatrix<Real>& sigma) {
  if (rho.dims() != sigma.dims()) throw std::invalid_argument("fidelity: dims differ");
  const CMatrix<Real> r = psd_sqrt<Real>(rho.matrix());
  const CMatrix<Real> inner = r * sigma.matrix() * r;
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es((inner + inner.adjoint()) / Real(2), Eigen::EigenvaluesOnly);
  const Real t = es.eigenvalues().cwiseMax(Real(0)).cwiseSqrt().sum();
  return t * t;
}

}  // namespace redsim
