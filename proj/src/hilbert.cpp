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

#include "rydsim/hilbert.hpp"

#include <algorithm>
#include <stdexcept>

namespace rydsim {

namespace {

constexpr char kControlChars[] = {'0', '1', 'r'};
constexpr char kTargetChars[] = {'A', 'B', 'P', 'R'};

void check_shape(RegisterShape shape) {
  if (shape.controls < 1 || shape.targets < 1) {
    throw std::invalid_argument("register needs at least one control and one target atom");
  }
}

}  // namespace

char level_char(ControlLevel level) { return kControlChars[static_cast<int>(level)]; }
char level_char(TargetLevel level) { return kTargetChars[static_cast<int>(level)]; }

std::size_t RegisterShape::dim() const {
  std::size_t d = 1;
  for (int s = 0; s < num_sites(); ++s) d *= static_cast<std::size_t>(site_dim(s));
  return d;
}

std::size_t RegisterShape::stride(int site) const {
  std::size_t s = 1;
  for (int t = num_sites() - 1; t > site; --t) s *= static_cast<std::size_t>(site_dim(t));
  return s;
}

BasisLabel BasisLabel::parse(std::string_view text, RegisterShape shape) {
  BasisLabel label;
  for (char c : text) {
    if (c == '|' || c == ' ' || c == ',') continue;
    const auto pos = static_cast<int>(label.controls.size() + label.targets.size());
    if (pos < shape.controls) {
      const auto* it = std::find(std::begin(kControlChars), std::end(kControlChars), c);
      if (it == std::end(kControlChars)) {
        throw std::invalid_argument(std::string("bad control level '") + c + "' in label " +
                                    std::string(text));
      }
      label.controls.push_back(static_cast<ControlLevel>(it - std::begin(kControlChars)));
    } else {
      const auto* it = std::find(std::begin(kTargetChars), std::end(kTargetChars), c);
      if (it == std::end(kTargetChars)) {
        throw std::invalid_argument(std::string("bad target level '") + c + "' in label " +
                                    std::string(text));
      }
      label.targets.push_back(static_cast<TargetLevel>(it - std::begin(kTargetChars)));
    }
  }
  if (static_cast<int>(label.controls.size()) != shape.controls ||
      static_cast<int>(label.targets.size()) != shape.targets) {
    throw std::invalid_argument("label " + std::string(text) + " does not match register of " +
                                std::to_string(shape.controls) + " controls and " +
                                std::to_string(shape.targets) + " targets");
  }
  return label;
}

std::string BasisLabel::to_string() const {
  std::string s;
  for (auto l : controls) s.push_back(level_char(l));
  for (auto l : targets) s.push_back(level_char(l));
  return s;
}

std::size_t flat_index(const BasisLabel& label, RegisterShape shape) {
  check_shape(shape);
  if (static_cast<int>(label.controls.size()) != shape.controls ||
      static_cast<int>(label.targets.size()) != shape.targets) {
    throw std::invalid_argument("basis label length does not match register shape");
  }
  std::size_t index = 0;
  for (auto l : label.controls) index = index * kControlDim + static_cast<std::size_t>(l);
  for (auto l : label.targets) index = index * kTargetDim + static_cast<std::size_t>(l);
  return index;
}

BasisLabel label_at(std::size_t index, RegisterShape shape) {
  check_shape(shape);
  if (index >= shape.dim()) throw std::out_of_range("basis index out of range");
  BasisLabel label;
  label.controls.resize(static_cast<std::size_t>(shape.controls));
  label.targets.resize(static_cast<std::size_t>(shape.targets));
  for (int t = shape.targets - 1; t >= 0; --t) {
    label.targets[static_cast<std::size_t>(t)] = static_cast<TargetLevel>(index % kTargetDim);
    index /= kTargetDim;
  }
  for (int c = shape.controls - 1; c >= 0; --c) {
    label.controls[static_cast<std::size_t>(c)] = static_cast<ControlLevel>(index % kControlDim);
    index /= kControlDim;
  }
  return label;
}

StateVector basis_state(const BasisLabel& label, RegisterShape shape) {
  StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(shape.dim()));
  psi(static_cast<Eigen::Index>(flat_index(label, shape))) = 1.0;
  return psi;
}

SiteOperator::SiteOperator(Site site, Eigen::MatrixXcd matrix)
    : site_(site), matrix_(std::move(matrix)) {
  const int want = site.kind == SiteKind::Control ? kControlDim : kTargetDim;
  if (matrix_.rows() != want || matrix_.cols() != want) {
    throw std::invalid_argument("site operator must be " + std::to_string(want) + "x" +
                                std::to_string(want) + " for this site kind");
  }
  if (site.index < 0) throw std::invalid_argument("negative site index");
}

SiteOperator control_projector(int control, ControlLevel level) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(kControlDim, kControlDim);
  m(static_cast<int>(level), static_cast<int>(level)) = 1.0;
  return {Site{SiteKind::Control, control}, m};
}

SiteOperator target_projector(int target, TargetLevel level) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(kTargetDim, kTargetDim);
  m(static_cast<int>(level), static_cast<int>(level)) = 1.0;
  return {Site{SiteKind::Target, target}, m};
}

// ---------------------------------------------------------------------------

Operator::Operator(RegisterShape shape) : shape_(shape) {
  check_shape(shape);
  diag_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(shape.dim()));
}

namespace {

int checked_position(const Site& site, RegisterShape shape) {
  const int limit = site.kind == SiteKind::Control ? shape.controls : shape.targets;
  if (site.index < 0 || site.index >= limit) {
    throw std::out_of_range(std::string(site.kind == SiteKind::Control ? "control" : "target") +
                            " site " + std::to_string(site.index) + " outside register");
  }
  return site.position(shape);
}

bool is_diagonal_matrix(const Eigen::MatrixXcd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) != Complex{}) return false;
  return true;
}

}  // namespace

Operator Operator::embed_site(const SiteOperator& op, RegisterShape shape) {
  Operator out(shape);
  out.add_site_matrix(checked_position(op.site(), shape), op.matrix());
  return out;
}

Operator Operator::embed_pair(const SiteOperator& a, const SiteOperator& b, RegisterShape shape) {
  const int pa = checked_position(a.site(), shape);
  const int pb = checked_position(b.site(), shape);
  if (pa == pb) throw std::invalid_argument("embed_pair needs two distinct sites");
  Operator out(shape);
  if (is_diagonal_matrix(a.matrix()) && is_diagonal_matrix(b.matrix())) {
    const std::size_t sa = shape.stride(pa), sb = shape.stride(pb);
    const auto da = static_cast<std::size_t>(shape.site_dim(pa));
    const auto db = static_cast<std::size_t>(shape.site_dim(pb));
    for (std::size_t i = 0; i < shape.dim(); ++i) {
      const auto ia = static_cast<Eigen::Index>((i / sa) % da);
      const auto ib = static_cast<Eigen::Index>((i / sb) % db);
      out.diag_(static_cast<Eigen::Index>(i)) += a.matrix()(ia, ia) * b.matrix()(ib, ib);
    }
    out.has_diagonal_ = !out.diag_.isZero(0.0);
  } else {
    out.products_.push_back(ProductTerm{{{pa, a.matrix()}, {pb, b.matrix()}}});
  }
  return out;
}

void Operator::add_site_matrix(int site, const Eigen::MatrixXcd& m) {
  const std::size_t stride = shape_.stride(site);
  const auto d = static_cast<std::size_t>(shape_.site_dim(site));
  for (std::size_t i = 0; i < shape_.dim(); ++i) {
    const auto digit = static_cast<Eigen::Index>((i / stride) % d);
    diag_(static_cast<Eigen::Index>(i)) += m(digit, digit);
  }
  has_diagonal_ = has_diagonal_ || !m.diagonal().isZero(0.0);
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (r != c && m(r, c) != Complex{}) add_local_entry(site, r, c, m(r, c));
}

void Operator::add_local_entry(int site, int row, int col, Complex value) {
  auto term = std::find_if(local_.begin(), local_.end(),
                           [site](const LocalTerm& t) { return t.site == site; });
  if (term == local_.end()) {
    local_.push_back(LocalTerm{site, {}});
    term = std::prev(local_.end());
  }
  auto entry = std::find_if(term->entries.begin(), term->entries.end(),
                            [&](const LocalEntry& e) { return e.row == row && e.col == col; });
  if (entry == term->entries.end()) {
    term->entries.push_back(LocalEntry{row, col, value});
  } else {
    entry->value += value;
  }
}

Operator& Operator::operator+=(const Operator& other) {
  if (!(other.shape_ == shape_)) throw std::invalid_argument("operator shapes differ");
  diag_ += other.diag_;
  has_diagonal_ = has_diagonal_ || other.has_diagonal_;
  for (const auto& term : other.local_)
    for (const auto& e : term.entries) add_local_entry(term.site, e.row, e.col, e.value);
  products_.insert(products_.end(), other.products_.begin(), other.products_.end());
  return *this;
}

Operator& Operator::operator*=(Complex factor) {
  diag_ *= factor;
  for (auto& term : local_)
    for (auto& e : term.entries) e.value *= factor;
  for (auto& p : products_) p.factors.front().second *= factor;
  return *this;
}

void Operator::apply_full_local(int site, const Eigen::MatrixXcd& m, const StateVector& x,
                                StateVector& y) const {
  const std::size_t stride = shape_.stride(site);
  const auto d = static_cast<std::size_t>(shape_.site_dim(site));
  const std::size_t block = stride * d;
  y.setZero(x.size());
  for (std::size_t base = 0; base < shape_.dim(); base += block)
    for (std::size_t inner = 0; inner < stride; ++inner)
      for (std::size_t r = 0; r < d; ++r) {
        Complex acc{};
        for (std::size_t c = 0; c < d; ++c)
          acc += m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) *
                 x(static_cast<Eigen::Index>(base + c * stride + inner));
        y(static_cast<Eigen::Index>(base + r * stride + inner)) = acc;
      }
}

void Operator::apply(const StateVector& x, StateVector& y, Complex scale, bool accumulate) const {
  const auto n = static_cast<Eigen::Index>(dim());
  if (x.size() != n) throw std::invalid_argument("state dimension does not match operator");
  if (&x == &y) throw std::invalid_argument("Operator::apply cannot run in place");
  if (!accumulate) y.setZero(n);

  const Complex* xs = x.data();
  Complex* ys = y.data();
  if (has_diagonal_) {
    const Complex* ds = diag_.data();
    for (Eigen::Index i = 0; i < n; ++i) ys[i] += scale * ds[i] * xs[i];
  }

  for (const auto& term : local_) {
    const std::size_t stride = shape_.stride(term.site);
    const auto d = static_cast<std::size_t>(shape_.site_dim(term.site));
    const std::size_t block = stride * d;
    for (const auto& e : term.entries) {
      const Complex v = scale * e.value;
      const std::size_t from = static_cast<std::size_t>(e.col) * stride;
      const std::size_t to = static_cast<std::size_t>(e.row) * stride;
      if (stride == 1) {
        for (std::size_t base = 0; base < dim(); base += block) ys[base + to] += v * xs[base + from];
      } else {
        for (std::size_t base = 0; base < dim(); base += block) {
          const Complex* src = xs + base + from;
          Complex* dst = ys + base + to;
          for (std::size_t inner = 0; inner < stride; ++inner) dst[inner] += v * src[inner];
        }
      }
    }
  }

  if (!products_.empty()) {
    StateVector a(n), b(n);
    for (const auto& p : products_) {
      a = x;
      for (const auto& [site, m] : p.factors) {
        apply_full_local(site, m, a, b);
        a.swap(b);
      }
      y += scale * a;
    }
  }
}

StateVector Operator::operator*(const StateVector& x) const {
  StateVector y;
  apply(x, y);
  return y;
}

double Operator::norm_bound() const {
  double diag_max = 0.0;
  for (Eigen::Index i = 0; i < diag_.size(); ++i) diag_max = std::max(diag_max, std::abs(diag_(i)));
  double off = 0.0;
  for (const auto& term : local_) {
    std::vector<double> col_sum(static_cast<std::size_t>(shape_.site_dim(term.site)), 0.0);
    std::vector<double> row_sum(col_sum.size(), 0.0);
    for (const auto& e : term.entries) {
      row_sum[static_cast<std::size_t>(e.row)] += std::abs(e.value);
      col_sum[static_cast<std::size_t>(e.col)] += std::abs(e.value);
    }
    off += std::max(*std::max_element(row_sum.begin(), row_sum.end()),
                    *std::max_element(col_sum.begin(), col_sum.end()));
  }
  for (const auto& p : products_) {
    double prod = 1.0;
    for (const auto& [site, m] : p.factors) prod *= m.cwiseAbs().rowwise().sum().maxCoeff();
    off += prod;
  }
  return diag_max + off;
}

Eigen::MatrixXcd Operator::to_dense() const {
  if (dim() > kMaxDenseDim) {
    throw std::length_error("dense materialisation limited to dim <= " +
                            std::to_string(kMaxDenseDim));
  }
  const auto n = static_cast<Eigen::Index>(dim());
  Eigen::MatrixXcd m(n, n);
  StateVector e = StateVector::Zero(n), col(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    e(j) = 1.0;
    apply(e, col);
    m.col(j) = col;
    e(j) = 0.0;
  }
  return m;
}

}  // namespace rydsim
