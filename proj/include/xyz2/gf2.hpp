#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace xyz2 {

// Packed bit vector over GF(2), 64 bits per word.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }

  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v) {
    uint64_t m = uint64_t(1) << (i & 63);
    if (v)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }
  void flip(std::size_t i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }

  void xor_with(const BitVec& o);
  // Parity of the AND of two vectors (the GF(2) inner product).
  bool dot(const BitVec& o) const;
  std::size_t popcount() const;
  bool any() const;
  void clear();

  bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const BitVec& o) const { return !(*this == o); }

  const std::vector<uint64_t>& words() const { return w_; }
  std::vector<uint64_t>& words() { return w_; }

  std::string str() const;  // "0101...", index 0 first
  static BitVec from_string(const std::string& s);

 private:
  std::size_t n_ = 0;
  std::vector<uint64_t> w_;
};

uint64_t hash_words(const std::vector<uint64_t>& w, uint64_t seed = 0x9e3779b97f4a7c15ull);

// Dense GF(2) matrix, one BitVec per row.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), row_(rows, BitVec(cols)) {}

  static BitMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const { return row_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v) { row_[r].set(c, v); }
  const BitVec& row(std::size_t r) const { return row_[r]; }
  BitVec& row(std::size_t r) { return row_[r]; }

  void append_row(const BitVec& v);

  // Rank over GF(2). Elimination picks the lowest-index row with a 1 in the
  // pivot column.
  std::size_t rank() const;

  // A solution x of M x = b, or nullopt when inconsistent. Free variables are
  // set to zero, so the output is deterministic.
  std::optional<BitVec> solve(const BitVec& b) const;

  // Basis of the kernel {x : M x = 0}.
  std::vector<BitVec> nullspace() const;

  // Canonical reduced row echelon form with zero rows dropped. Two matrices
  // have equal row space iff their rref() compare equal.
  BitMatrix rref() const;

  bool same_row_space(const BitMatrix& o) const;

  bool operator==(const BitMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && row_ == o.row_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BitVec> row_;
};

inline std::size_t gf2_rank(const BitMatrix& m) { return m.rank(); }
inline std::optional<BitVec> gf2_solve(const BitMatrix& m, const BitVec& b) {
  return m.solve(b);
}

// Precomputed elimination of a fixed matrix, for solving many right-hand
// sides and for fast row-space membership tests.
class Gf2Solver {
 public:
  explicit Gf2Solver(const BitMatrix& m);

  std::optional<BitVec> solve(const BitVec& b) const;
  bool in_row_space(const BitVec& v) const;
  std::size_t rank() const { return pivot_col_.size(); }

 private:
  std::size_t rows_, cols_;
  std::vector<BitVec> echelon_;     // reduced rows, one per pivot
  std::vector<std::size_t> pivot_col_;
  std::vector<BitVec> ops_;         // row-operation record: echelon = ops * original
  std::vector<BitVec> dependent_;   // combinations that vanish (consistency checks)
};

}  // namespace xyz2
