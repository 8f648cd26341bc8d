#pragma once

// Dense linear algebra over GF(2) with row provenance.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace magicbcs::gf2 {

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  static BitVector from_string(const std::string& bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') {
        v.set(i);
      } else if (bits[i] != '0') {
        throw std::invalid_argument("bit string may only contain 0 and 1");
      }
    }
    return v;
  }

  std::size_t size() const { return size_; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool value = true) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  BitVector& operator^=(const BitVector& other) {
    if (other.size_ != size_) throw std::invalid_argument("BitVector length mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

  bool any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
  }
  bool none() const { return !any(); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  // Parity of the bitwise AND, i.e. the GF(2) inner product.
  bool dot(const BitVector& other) const {
    if (other.size_ != size_) throw std::invalid_argument("BitVector length mismatch");
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
    return std::popcount(acc) & 1;
  }

  // Index of the lowest set bit at or after `from`, or size() if none.
  std::size_t find_next(std::size_t from) const {
    if (from >= size_) return size_;
    std::size_t w = from >> 6;
    std::uint64_t word = words_[w] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (word != 0) {
        const std::size_t i = (w << 6) + static_cast<std::size_t>(std::countr_zero(word));
        return i < size_ ? i : size_;
      }
      if (++w >= words_.size()) return size_;
      word = words_[w];
    }
  }

  std::vector<std::size_t> ones() const {
    std::vector<std::size_t> out;
    for (std::size_t i = find_next(0); i < size_; i = find_next(i + 1)) out.push_back(i);
    return out;
  }

  std::string to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

  friend bool operator==(const BitVector& a, const BitVector& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  Gf2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

  static Gf2Matrix from_strings(const std::vector<std::string>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Gf2Matrix m(0, cols);
    for (const auto& r : rows) m.append_row(BitVector::from_string(r));
    return m;
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  const BitVector& row(std::size_t r) const { return rows_[r]; }
  BitVector& row(std::size_t r) { return rows_[r]; }

  bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v = true) { rows_[r].set(c, v); }

  void append_row(BitVector row) {
    if (row.size() != cols_) throw std::invalid_argument("row length does not match column count");
    rows_.push_back(std::move(row));
  }

  // Matrix-vector product over GF(2).
  BitVector multiply(const BitVector& x) const {
    if (x.size() != cols_) throw std::invalid_argument("vector length does not match column count");
    BitVector out(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) out.set(r, rows_[r].dot(x));
    return out;
  }

  friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

// A linear system M x = rhs. provenance[r] names the original rows whose XOR
// produced row r.
struct Gf2System {
  Gf2Matrix matrix;
  BitVector rhs;
  std::vector<BitVector> provenance;

  Gf2System() = default;
  Gf2System(Gf2Matrix m, BitVector b) : matrix(std::move(m)), rhs(std::move(b)) {
    if (rhs.size() != matrix.rows()) throw std::invalid_argument("rhs length does not match row count");
    provenance.reserve(matrix.rows());
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
      BitVector p(matrix.rows());
      p.set(r);
      provenance.push_back(std::move(p));
    }
  }

  std::size_t rows() const { return matrix.rows(); }
  std::size_t cols() const { return matrix.cols(); }

  friend bool operator==(const Gf2System&, const Gf2System&) = default;
};

struct ReducedSystem {
  // Reduced row echelon form; rows [0, rank) carry pivots.
  Gf2System system;
  std::vector<std::size_t> pivot_cols;
  // Rows with an all-zero coefficient part and rhs 1.
  std::vector<std::size_t> inconsistent_rows;

  std::size_t rank() const { return pivot_cols.size(); }
  bool consistent() const { return inconsistent_rows.empty(); }
};

// Gauss-Jordan elimination. Pivots are taken at the lowest-index column that
// still has a nonzero entry, choosing the lowest eligible row.
inline ReducedSystem row_reduce(Gf2System system) {
  ReducedSystem out;
  const std::size_t rows = system.rows();
  const std::size_t cols = system.cols();
  auto& m = system.matrix;

  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap(m.row(a), m.row(b));
    std::swap(system.provenance[a], system.provenance[b]);
    const bool ra = system.rhs.get(a);
    system.rhs.set(a, system.rhs.get(b));
    system.rhs.set(b, ra);
  };

  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    std::size_t r = pivot_row;
    while (r < rows && !m.get(r, c)) ++r;
    if (r == rows) continue;
    swap_rows(pivot_row, r);
    for (std::size_t other = 0; other < rows; ++other) {
      if (other != pivot_row && m.get(other, c)) {
        m.row(other) ^= m.row(pivot_row);
        system.provenance[other] ^= system.provenance[pivot_row];
        if (system.rhs.get(pivot_row)) system.rhs.flip(other);
      }
    }
    out.pivot_cols.push_back(c);
    ++pivot_row;
  }
  for (std::size_t r = pivot_row; r < rows; ++r) {
    if (system.rhs.get(r)) out.inconsistent_rows.push_back(r);
  }
  out.system = std::move(system);
  return out;
}

struct Gf2Solution {
  BitVector assignment;
  std::vector<std::size_t> free_cols;
};

struct Gf2Inconsistency {
  // Original rows whose XOR is the zero vector with rhs 1.
  std::vector<std::size_t> rows;
};

using SolveResult = std::variant<Gf2Solution, Gf2Inconsistency>;

// Free columns are assigned 0.
inline SolveResult solve(const Gf2System& system) {
  ReducedSystem red = row_reduce(system);
  if (!red.consistent()) {
    return Gf2Inconsistency{red.system.provenance[red.inconsistent_rows.front()].ones()};
  }
  Gf2Solution sol{BitVector(system.cols()), {}};
  std::vector<bool> is_pivot(system.cols(), false);
  for (std::size_t r = 0; r < red.rank(); ++r) {
    is_pivot[red.pivot_cols[r]] = true;
    sol.assignment.set(red.pivot_cols[r], red.system.rhs.get(r));
  }
  for (std::size_t c = 0; c < system.cols(); ++c) {
    if (!is_pivot[c]) sol.free_cols.push_back(c);
  }
  return sol;
}

// Checks that the cited original rows XOR to 0 with rhs 1.
inline bool verify_inconsistency(const Gf2System& system, const Gf2Inconsistency& cert) {
  BitVector acc(system.cols());
  bool rhs = false;
  for (auto r : cert.rows) {
    if (r >= system.rows()) return false;
    acc ^= system.matrix.row(r);
    rhs ^= system.rhs.get(r);
  }
  return acc.none() && rhs;
}

}  // namespace magicbcs::gf2
