#include "xyz2/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace xyz2 {

void BitVec::xor_with(const BitVec& o) {
  if (o.n_ != n_) throw std::invalid_argument("BitVec::xor_with: length mismatch");
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
}

bool BitVec::dot(const BitVec& o) const {
  if (o.n_ != n_) throw std::invalid_argument("BitVec::dot: length mismatch");
  uint64_t acc = 0;
  for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
  return std::popcount(acc) & 1u;
}

std::size_t BitVec::popcount() const {
  std::size_t c = 0;
  for (uint64_t w : w_) c += std::popcount(w);
  return c;
}

bool BitVec::any() const {
  for (uint64_t w : w_)
    if (w) return true;
  return false;
}

void BitVec::clear() {
  for (uint64_t& w : w_) w = 0;
}

std::string BitVec::str() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

BitVec BitVec::from_string(const std::string& s) {
  BitVec v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      v.set(i, true);
    else if (s[i] != '0')
      throw std::invalid_argument("BitVec::from_string: invalid character");
  }
  return v;
}

uint64_t hash_words(const std::vector<uint64_t>& w, uint64_t seed) {
  uint64_t h = seed;
  for (uint64_t x : w) {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xbf58476d1ce4e5b9ull;
    h ^= h >> 27;
  }
  return h;
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

void BitMatrix::append_row(const BitVec& v) {
  if (rows_ == 0 && cols_ == 0) cols_ = v.size();
  if (v.size() != cols_) throw std::invalid_argument("BitMatrix::append_row: width mismatch");
  row_.push_back(v);
  ++rows_;
}

std::size_t BitMatrix::rank() const {
  std::vector<BitVec> rows = row_;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && !rows[pivot].get(c)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = r + 1; i < rows.size(); ++i)
      if (rows[i].get(c)) rows[i].xor_with(rows[r]);
    ++r;
  }
  return r;
}

std::optional<BitVec> BitMatrix::solve(const BitVec& b) const {
  if (b.size() != rows_) throw std::invalid_argument("BitMatrix::solve: rhs length mismatch");
  Gf2Solver s(*this);
  return s.solve(b);
}

std::vector<BitVec> BitMatrix::nullspace() const {
  // Reduce a working copy, remembering pivot columns.
  std::vector<BitVec> rows = row_;
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && !rows[pivot].get(c)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && rows[i].get(c)) rows[i].xor_with(rows[r]);
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols_, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;

  std::vector<BitVec> basis;
  for (std::size_t c = 0; c < cols_; ++c) {
    if (is_pivot[c]) continue;
    BitVec v(cols_);
    v.set(c, true);
    for (std::size_t i = 0; i < pivot_cols.size(); ++i)
      if (rows[i].get(c)) v.set(pivot_cols[i], true);
    basis.push_back(std::move(v));
  }
  return basis;
}

BitMatrix BitMatrix::rref() const {
  std::vector<BitVec> rows = row_;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && !rows[pivot].get(c)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && rows[i].get(c)) rows[i].xor_with(rows[r]);
    ++r;
  }
  BitMatrix out;
  out.cols_ = cols_;
  for (std::size_t i = 0; i < r; ++i) out.append_row(rows[i]);
  return out;
}

bool BitMatrix::same_row_space(const BitMatrix& o) const {
  if (cols_ != o.cols_) return false;
  return rref() == o.rref();
}

Gf2Solver::Gf2Solver(const BitMatrix& m) : rows_(m.rows()), cols_(m.cols()) {
  std::vector<BitVec> rows;
  std::vector<BitVec> ops;
  rows.reserve(rows_);
  ops.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    rows.push_back(m.row(i));
    BitVec e(rows_);
    e.set(i, true);
    ops.push_back(std::move(e));
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && !rows[pivot].get(c)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    std::swap(ops[r], ops[pivot]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && rows[i].get(c)) {
        rows[i].xor_with(rows[r]);
        ops[i].xor_with(ops[r]);
      }
    }
    pivot_col_.push_back(c);
    ++r;
  }
  for (std::size_t i = 0; i < r; ++i) {
    echelon_.push_back(rows[i]);
    ops_.push_back(ops[i]);
  }
  for (std::size_t i = r; i < rows.size(); ++i) dependent_.push_back(ops[i]);
}

std::optional<BitVec> Gf2Solver::solve(const BitVec& b) const {
  if (b.size() != rows_) throw std::invalid_argument("Gf2Solver::solve: rhs length mismatch");
  for (const BitVec& dep : dependent_)
    if (dep.dot(b)) return std::nullopt;
  BitVec x(cols_);
  for (std::size_t i = 0; i < pivot_col_.size(); ++i)
    if (ops_[i].dot(b)) x.set(pivot_col_[i], true);
  return x;
}

bool Gf2Solver::in_row_space(const BitVec& v) const {
  if (v.size() != cols_) throw std::invalid_argument("Gf2Solver::in_row_space: length mismatch");
  BitVec w = v;
  for (std::size_t i = 0; i < pivot_col_.size(); ++i)
    if (w.get(pivot_col_[i])) w.xor_with(echelon_[i]);
  return !w.any();
}

}  // namespace xyz2
