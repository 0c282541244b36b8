// Copyright 2026 The rydsim Authors
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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace rydsim {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;

// Control atoms carry {|0>, |1>, |r>}; target atoms carry {|A>, |B>, |P>, |R>}.
// The enumerator value is the digit used in the flat basis index.
enum class ControlLevel : std::uint8_t { Zero = 0, One = 1, Rydberg = 2 };
enum class TargetLevel : std::uint8_t { A = 0, B = 1, P = 2, R = 3 };

inline constexpr int kControlDim = 3;
inline constexpr int kTargetDim = 4;

char level_char(ControlLevel level);
char level_char(TargetLevel level);

// Number of control and target atoms. Sites are numbered controls first,
// then targets; the first site is the most significant digit of the index.
struct RegisterShape {
  int controls = 1;
  int targets = 1;

  int num_sites() const { return controls + targets; }
  int site_dim(int site) const { return site < controls ? kControlDim : kTargetDim; }
  std::size_t dim() const;
  // Distance in the flat index between neighbouring values of `site`'s digit.
  std::size_t stride(int site) const;
  int digit(std::size_t index, int site) const {
    return static_cast<int>((index / stride(site)) % static_cast<std::size_t>(site_dim(site)));
  }
  // Dimension of the qubit subspace, 2^(k+N).
  std::size_t computational_dim() const { return std::size_t{1} << num_sites(); }

  bool operator==(const RegisterShape&) const = default;
};

struct BasisLabel {
  std::vector<ControlLevel> controls;
  std::vector<TargetLevel> targets;

  // Compact form: one character per atom, controls first ("0A", "r1RRAA").
  // '|' and spaces are ignored, so "0|A" is accepted as well.
  static BasisLabel parse(std::string_view text, RegisterShape shape);
  std::string to_string() const;

  bool operator==(const BasisLabel&) const = default;
};

// Mixed-radix encoding: controls radix 3 (most significant) then targets
// radix 4. Throws std::invalid_argument when the label does not fit `shape`.
std::size_t flat_index(const BasisLabel& label, RegisterShape shape);
BasisLabel label_at(std::size_t index, RegisterShape shape);

StateVector basis_state(const BasisLabel& label, RegisterShape shape);

enum class SiteKind : std::uint8_t { Control, Target };

struct Site {
  SiteKind kind = SiteKind::Control;
  int index = 0;

  int position(RegisterShape shape) const {
    return kind == SiteKind::Control ? index : shape.controls + index;
  }
  bool operator==(const Site&) const = default;
};

// Single-atom operator; a 3x3 matrix on a control site or 4x4 on a target.
class SiteOperator {
 public:
  SiteOperator(Site site, Eigen::MatrixXcd matrix);

  const Site& site() const { return site_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

 private:
  Site site_;
  Eigen::MatrixXcd matrix_;
};

// |level><level| on one atom.
SiteOperator control_projector(int control, ControlLevel level);
SiteOperator target_projector(int target, TargetLevel level);

// Operator on the full register stored in Kronecker-factored form: a dense
// diagonal plus single-site off-diagonal blocks plus (rarely) general
// product terms. Application never materialises the dim x dim matrix.
class Operator {
 public:
  explicit Operator(RegisterShape shape);

  static Operator embed_site(const SiteOperator& op, RegisterShape shape);
  static Operator embed_pair(const SiteOperator& a, const SiteOperator& b, RegisterShape shape);

  RegisterShape shape() const { return shape_; }
  std::size_t dim() const { return shape_.dim(); }

  Operator& operator+=(const Operator& other);
  Operator& operator*=(Complex factor);
  friend Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
  friend Operator operator*(Complex factor, Operator op) { return op *= factor; }

  // y <- scale * (this) * x, or y += ... when `accumulate` is set.
  void apply(const StateVector& x, StateVector& y, Complex scale = 1.0,
             bool accumulate = false) const;
  StateVector operator*(const StateVector& x) const;

  const Eigen::VectorXcd& diagonal() const { return diag_; }
  bool is_diagonal() const { return local_.empty() && products_.empty(); }

  // Upper bound on the induced infinity norm (max absolute row sum).
  double norm_bound() const;

  // Dense materialisation; only for dim <= kMaxDenseDim (test oracle).
  Eigen::MatrixXcd to_dense() const;
  static constexpr std::size_t kMaxDenseDim = 256;

 private:
  struct LocalEntry {
    int row;
    int col;
    Complex value;
  };
  struct LocalTerm {
    int site;
    std::vector<LocalEntry> entries;
  };
  struct ProductTerm {
    std::vector<std::pair<int, Eigen::MatrixXcd>> factors;
  };

  void add_site_matrix(int site, const Eigen::MatrixXcd& m);
  void add_local_entry(int site, int row, int col, Complex value);
  void apply_full_local(int site, const Eigen::MatrixXcd& m, const StateVector& x,
                        StateVector& y) const;

  RegisterShape shape_;
  Eigen::VectorXcd diag_;
  bool has_diagonal_ = false;
  std::vector<LocalTerm> local_;
  std::vector<ProductTerm> products_;
};

}  // namespace rydsim
