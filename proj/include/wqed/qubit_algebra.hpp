// Copyright 2026 The wqed Authors
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

#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace wqed {

using Complex = std::complex<double>;

/// Dense complex square matrix of dimension 2^N. Every system operator and
/// every hierarchy block uses this representation.
using Operator = Eigen::MatrixXcd;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A register of N two-level emitters.
///
/// Basis convention: index b in [0, 2^N) encodes emitter j (1-based) in bit
/// (N - j), so emitter 1 is the most significant bit. A cleared bit is the
/// ground state |g>, a set bit the excited state |e>. For N = 2 the basis
/// order is |gg>, |ge>, |eg>, |ee> with the first letter naming emitter 1.
class EmitterRegister {
 public:
  static constexpr int kMaxEmitters = 6;

  explicit EmitterRegister(int n_emitters) : n_(n_emitters) {
    if (n_emitters < 1 || n_emitters > kMaxEmitters) {
      throw std::invalid_argument("EmitterRegister: emitter count must be in [1, " +
                                  std::to_string(kMaxEmitters) + "], got " +
                                  std::to_string(n_emitters));
    }
  }

  int n_emitters() const noexcept { return n_; }
  Eigen::Index dim() const noexcept { return Eigen::Index{1} << n_; }

  /// Bit mask selecting emitter j (1-based) inside a basis index.
  Eigen::Index mask(int j) const {
    check_index(j);
    return Eigen::Index{1} << (n_ - j);
  }

  bool excited(Eigen::Index basis, int j) const { return (basis & mask(j)) != 0; }

  void check_index(int j) const {
    if (j < 1 || j > n_) {
      throw std::out_of_range("emitter index " + std::to_string(j) + " outside [1, " +
                              std::to_string(n_) + "]");
    }
  }

  bool operator==(const EmitterRegister&) const = default;

 private:
  int n_;
};

inline void require_dim(const Operator& op, Eigen::Index dim, const char* what) {
  if (op.rows() != dim || op.cols() != dim) {
    throw DimensionError(std::string(what) + ": expected " + std::to_string(dim) + "x" +
                         std::to_string(dim) + " operator, got " +
                         std::to_string(op.rows()) + "x" + std::to_string(op.cols()));
  }
}

inline void require_same_shape(const Operator& a, const Operator& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw DimensionError(std::string(what) + ": operand shapes differ or are not square");
  }
}

inline Operator identity(const EmitterRegister& reg) {
  return Operator::Identity(reg.dim(), reg.dim());
}

/// Lowering operator |g_j><e_j| on emitter j, identity elsewhere.
inline Operator lowering_op(const EmitterRegister& reg, int j) {
  const Eigen::Index m = reg.mask(j);
  Operator s = Operator::Zero(reg.dim(), reg.dim());
  for (Eigen::Index b = 0; b < reg.dim(); ++b) {
    if (b & m) s(b & ~m, b) = 1.0;
  }
  return s;
}

inline Operator raising_op(const EmitterRegister& reg, int j) {
  return lowering_op(reg, j).adjoint();
}

/// sigma_j^dagger sigma_j, the excited-state projector of emitter j.
inline Operator number_op(const EmitterRegister& reg, int j) {
  const Eigen::Index m = reg.mask(j);
  Operator n = Operator::Zero(reg.dim(), reg.dim());
  for (Eigen::Index b = 0; b < reg.dim(); ++b) {
    if (b & m) n(b, b) = 1.0;
  }
  return n;
}

/// Projector onto |g_1 ... g_N>.
inline Operator ground_projector(const EmitterRegister& reg) {
  Operator p = Operator::Zero(reg.dim(), reg.dim());
  p(0, 0) = 1.0;
  return p;
}

inline Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Complex trace(const Operator& rho) {
  if (rho.rows() != rho.cols()) throw DimensionError("trace: operator is not square");
  return rho.trace();
}

inline Operator adjoint(const Operator& rho) { return rho.adjoint(); }

inline Operator commutator(const Operator& a, const Operator& b) {
  require_same_shape(a, b, "commutator");
  return a * b - b * a;
}

inline Operator anticommutator(const Operator& a, const Operator& b) {
  require_same_shape(a, b, "anticommutator");
  return a * b + b * a;
}

/// Largest |A - A^dagger| entry.
inline double hermiticity_defect(const Operator& a) {
  if (a.rows() != a.cols()) throw DimensionError("hermiticity_defect: operator is not square");
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

/// Reduced operator on the emitters listed in `keep` (1-based, any order,
/// duplicates rejected). The output uses the same MSB-first convention over the
/// kept emitters sorted ascending.
inline Operator partial_trace(const Operator& rho, const EmitterRegister& reg,
                              std::vector<int> keep) {
  require_dim(rho, reg.dim(), "partial_trace");
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  std::sort(keep.begin(), keep.end());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    reg.check_index(keep[k]);
    if (k > 0 && keep[k] == keep[k - 1]) {
      throw std::invalid_argument("partial_trace: duplicate emitter index " +
                                  std::to_string(keep[k]));
    }
  }

  Eigen::Index keep_mask = 0;
  for (int j : keep) keep_mask |= reg.mask(j);
  const Eigen::Index n_keep = static_cast<Eigen::Index>(keep.size());
  const Eigen::Index out_dim = Eigen::Index{1} << n_keep;

  // Position of each full-register bit inside the reduced index.
  auto reduce = [&](Eigen::Index b) {
    Eigen::Index r = 0;
    for (Eigen::Index k = 0; k < n_keep; ++k) {
      if (b & reg.mask(keep[static_cast<std::size_t>(k)])) r |= Eigen::Index{1} << (n_keep - 1 - k);
    }
    return r;
  };

  Operator out = Operator::Zero(out_dim, out_dim);
  for (Eigen::Index row = 0; row < reg.dim(); ++row) {
    for (Eigen::Index col = 0; col < reg.dim(); ++col) {
      if ((row & ~keep_mask) != (col & ~keep_mask)) continue;
      out(reduce(row), reduce(col)) += rho(row, col);
    }
  }
  return out;
}

/// Purity Tr(rho^2).
inline double purity(const Operator& rho) {
  if (rho.rows() != rho.cols()) throw DimensionError("purity: operator is not square");
  return (rho * rho).trace().real();
}

}  // namespace wqed
