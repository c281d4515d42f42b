// Copyright 2026 The randcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "randcert/matkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace randcert {

namespace {

std::string dims_str(const SubsystemShape& s) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < s.dims.size(); ++i)
    os << (i ? "," : "") << s.dims[i];
  os << ")";
  return os.str();
}

void check_square_for(const CMat& m, const SubsystemShape& shape,
                      const char* who) {
  if (m.rows() != m.cols() ||
      static_cast<std::size_t>(m.rows()) != shape.total()) {
    std::ostringstream os;
    os << who << ": matrix " << m.rows() << "x" << m.cols()
       << " does not match subsystem dims " << dims_str(shape);
    throw DimensionError(os.str());
  }
}

// Mixed-radix digits of a flat index, most significant subsystem first.
std::vector<std::size_t> digits_of(std::size_t idx,
                                   const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> d(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    d[k] = idx % dims[k];
    idx /= dims[k];
  }
  return d;
}

}  // namespace

SubsystemShape::SubsystemShape(std::vector<std::size_t> d,
                               std::vector<std::string> n)
    : dims(std::move(d)), names(std::move(n)) {
  for (auto x : dims)
    if (x == 0) throw DimensionError("SubsystemShape: zero dimension");
  if (!names.empty() && names.size() != dims.size())
    throw DimensionError("SubsystemShape: names and dims differ in length");
}

std::size_t SubsystemShape::total() const {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>());
}

CMat identity(std::size_t n) {
  return CMat::Identity(static_cast<Eigen::Index>(n),
                        static_cast<Eigen::Index>(n));
}

CMat ket_bra(const CVec& ket, const CVec& bra) { return ket * bra.adjoint(); }

CMat projector(const CVec& ket) { return ket * ket.adjoint(); }

CMat kron(const CMat& a, const CMat& b) {
  const auto ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
  CMat out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i)
    for (Eigen::Index j = 0; j < ca; ++j)
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
  return out;
}

CMat kron(std::initializer_list<CMat> factors) {
  if (factors.size() == 0) return identity(1);
  auto it = factors.begin();
  CMat out = *it++;
  for (; it != factors.end(); ++it) out = kron(out, *it);
  return out;
}

CVec kron_ket(const CVec& a, const CVec& b) {
  CVec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

double max_abs(const CMat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const CMat& m) {
  if (m.rows() != m.cols())
    throw DimensionError("hermiticity_defect: non-square matrix");
  return max_abs(m - m.adjoint());
}

bool is_hermitian(const CMat& m, double tolerance) {
  return m.rows() == m.cols() && hermiticity_defect(m) <= tolerance;
}

double trace_product_real(const CMat& a, const CMat& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    throw DimensionError("trace_product_real: incompatible shapes");
  // Tr[ab] = sum_ij a_ij b_ji
  return (a.cwiseProduct(b.transpose())).sum().real();
}

CMat partial_trace(const CMat& m, const SubsystemShape& shape,
                   std::span<const std::size_t> keep) {
  check_square_for(m, shape, "partial_trace");
  const std::size_t n = shape.dims.size();
  std::vector<bool> kept(n, false);
  for (auto k : keep) {
    if (k >= n) throw DimensionError("partial_trace: keep index out of range");
    kept[k] = true;
  }
  std::size_t dk = 1;
  for (std::size_t k = 0; k < n; ++k)
    if (kept[k]) dk *= shape.dims[k];

  const std::size_t total = shape.total();
  std::vector<std::size_t> kept_idx(total), traced_idx(total);
  for (std::size_t i = 0; i < total; ++i) {
    auto d = digits_of(i, shape.dims);
    std::size_t ki = 0, ti = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (kept[k])
        ki = ki * shape.dims[k] + d[k];
      else
        ti = ti * shape.dims[k] + d[k];
    }
    kept_idx[i] = ki;
    traced_idx[i] = ti;
  }

  CMat out = CMat::Zero(static_cast<Eigen::Index>(dk),
                        static_cast<Eigen::Index>(dk));
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < total; ++j)
      if (traced_idx[i] == traced_idx[j])
        out(static_cast<Eigen::Index>(kept_idx[i]),
            static_cast<Eigen::Index>(kept_idx[j])) +=
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return out;
}

CMat partial_trace(const CMat& m, const SubsystemShape& shape,
                   std::initializer_list<std::size_t> keep) {
  return partial_trace(m, shape,
                       std::span<const std::size_t>(keep.begin(), keep.size()));
}

SubsystemShape permute_shape(const SubsystemShape& shape,
                             std::span<const std::size_t> order) {
  const std::size_t n = shape.dims.size();
  if (order.size() != n)
    throw DimensionError("permute_subsystems: order has wrong length");
  std::vector<bool> seen(n, false);
  SubsystemShape out;
  for (auto o : order) {
    if (o >= n || seen[o])
      throw DimensionError("permute_subsystems: order is not a permutation");
    seen[o] = true;
    out.dims.push_back(shape.dims[o]);
    if (!shape.names.empty()) out.names.push_back(shape.names[o]);
  }
  return out;
}

CMat permute_subsystems(const CMat& m, const SubsystemShape& shape,
                        std::span<const std::size_t> order) {
  check_square_for(m, shape, "permute_subsystems");
  const SubsystemShape target = permute_shape(shape, order);
  const std::size_t total = shape.total();
  std::vector<Eigen::Index> map(total);
  for (std::size_t i = 0; i < total; ++i) {
    auto d = digits_of(i, shape.dims);
    std::size_t ni = 0;
    for (std::size_t k = 0; k < order.size(); ++k)
      ni = ni * target.dims[k] + d[order[k]];
    map[i] = static_cast<Eigen::Index>(ni);
  }
  CMat out(m.rows(), m.cols());
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < total; ++j)
      out(map[i], map[j]) =
          m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return out;
}

CMat permute_subsystems(const CMat& m, const SubsystemShape& shape,
                        std::initializer_list<std::size_t> order) {
  return permute_subsystems(
      m, shape, std::span<const std::size_t>(order.begin(), order.size()));
}

Eigh eigh(const CMat& m) {
  if (m.rows() != m.cols())
    throw ContractError("eigh: matrix is not square");
  const double defect = hermiticity_defect(m);
  if (defect > tol::herm) {
    std::ostringstream os;
    os << "eigh: matrix is not Hermitian (defect " << defect << ")";
    throw ContractError(os.str());
  }
  Eigen::MatrixXcd h = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success)
    throw ContractError("eigh: eigensolver did not converge");
  const auto n = m.rows();
  Eigh out{RVec(n), CMat(n, n)};
  // Eigen returns ascending order.
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

RVec singular_values(const CMat& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues();
}

double trace_norm(const CMat& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m).sum();
}

namespace {

Eigen::MatrixXcd stack_columns(std::span<const CMat> matrices) {
  if (matrices.empty()) return Eigen::MatrixXcd(0, 0);
  const auto r = matrices.front().rows(), c = matrices.front().cols();
  Eigen::MatrixXcd cols(r * c, static_cast<Eigen::Index>(matrices.size()));
  for (std::size_t a = 0; a < matrices.size(); ++a) {
    const CMat& m = matrices[a];
    if (m.rows() != r || m.cols() != c)
      throw DimensionError("null_space: matrices differ in shape");
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j)
        cols(i * c + j, static_cast<Eigen::Index>(a)) = m(i, j);
  }
  return cols;
}

}  // namespace

std::vector<CVec> null_space(std::span<const CMat> matrices, double tolerance) {
  std::vector<CVec> basis;
  if (matrices.empty()) return basis;
  const Eigen::MatrixXcd cols = stack_columns(matrices);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cols, Eigen::ComputeFullV);
  const RVec& s = svd.singularValues();
  const Eigen::Index n = cols.cols();
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > tolerance) ++rank;
  for (Eigen::Index k = rank; k < n; ++k) basis.push_back(svd.matrixV().col(k));
  return basis;
}

double independence_margin(std::span<const CMat> matrices) {
  if (matrices.empty()) return 0.0;
  const Eigen::MatrixXcd cols = stack_columns(matrices);
  if (cols.cols() > cols.rows()) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cols);
  return svd.singularValues().minCoeff();
}

CVec fix_global_phase(const CVec& v, double cutoff) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > cutoff) {
      CVec out = v * (std::conj(v(i)) / mag);
      out(i) = Complex(mag, 0.0);
      return out;
    }
  }
  return v;
}

}  // namespace randcert
