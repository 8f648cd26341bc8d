#pragma once

// Signed Pauli strings in symplectic form.
//
// A string with bits (x, z) and phase k denotes i^k * P_0 (x) P_1 (x) ...,
// where qubit q carries I, X, Z or Y for (x_q, z_q) = (0,0), (1,0), (0,1),
// (1,1). Qubit 0 is the leftmost letter in text form.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "magicbcs/gf2.hpp"

namespace magicbcs::pauli {

using gf2::BitVector;

class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n_qubits) : x_(n_qubits), z_(n_qubits) {}
  PauliString(BitVector x, BitVector z, unsigned phase) : x_(std::move(x)), z_(std::move(z)), phase_(phase & 3u) {
    if (x_.size() != z_.size()) throw std::invalid_argument("x and z bit lengths differ");
  }

  static PauliString identity(std::size_t n_qubits) { return PauliString(n_qubits); }
  // Scalar +1 or -1 times the identity.
  static PauliString signed_identity(std::size_t n_qubits, int sign) {
    PauliString p(n_qubits);
    p.phase_ = sign < 0 ? 2 : 0;
    return p;
  }

  std::size_t n_qubits() const { return x_.size(); }
  const BitVector& x() const { return x_; }
  const BitVector& z() const { return z_; }
  unsigned phase() const { return phase_; }

  bool x_bit(std::size_t q) const { return x_.get(q); }
  bool z_bit(std::size_t q) const { return z_.get(q); }
  void set_letter(std::size_t q, char letter);
  char letter(std::size_t q) const {
    static constexpr char table[4] = {'I', 'X', 'Z', 'Y'};
    return table[(x_.get(q) ? 1 : 0) | (z_.get(q) ? 2 : 0)];
  }

  bool is_identity_bits() const { return x_.none() && z_.none(); }
  bool is_hermitian() const { return (phase_ & 1u) == 0; }
  // +1 or -1 for Hermitian strings.
  int sign() const {
    if (!is_hermitian()) throw std::logic_error("non-Hermitian Pauli string has no real sign");
    return phase_ == 0 ? 1 : -1;
  }

  PauliString negated() const { return PauliString(x_, z_, phase_ + 2); }
  PauliString with_phase(unsigned phase) const { return PauliString(x_, z_, phase); }

  // Transpose: Y^T = -Y, all other letters are symmetric.
  PauliString transposed() const {
    std::size_t ys = 0;
    for (std::size_t q = 0; q < n_qubits(); ++q) ys += (x_.get(q) && z_.get(q));
    return PauliString(x_, z_, phase_ + 2 * static_cast<unsigned>(ys & 1));
  }

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  BitVector x_;
  BitVector z_;
  unsigned phase_ = 0;
};

inline void PauliString::set_letter(std::size_t q, char letter) {
  switch (letter) {
    case 'I': x_.set(q, false); z_.set(q, false); break;
    case 'X': x_.set(q, true); z_.set(q, false); break;
    case 'Z': x_.set(q, false); z_.set(q, true); break;
    case 'Y': x_.set(q, true); z_.set(q, true); break;
    default: throw std::invalid_argument(std::string("illegal Pauli letter '") + letter + "'");
  }
}

namespace detail {

// Exponent g with P1 P2 = i^g P(x1^x2, z1^z2) for single-qubit letters.
inline int product_phase(bool x1, bool z1, bool x2, bool z2) {
  if (!x1 && !z1) return 0;
  if (x1 && z1) return int(z2) - int(x2);
  if (x1) return int(z2) * (2 * int(x2) - 1);
  return int(x2) * (1 - 2 * int(z2));
}

}  // namespace detail

inline PauliString multiply(const PauliString& p, const PauliString& q) {
  if (p.n_qubits() != q.n_qubits()) throw std::invalid_argument("Pauli string length mismatch");
  int g = static_cast<int>(p.phase() + q.phase());
  for (std::size_t k = 0; k < p.n_qubits(); ++k) {
    g += detail::product_phase(p.x_bit(k), p.z_bit(k), q.x_bit(k), q.z_bit(k));
  }
  return PauliString(p.x() ^ q.x(), p.z() ^ q.z(), static_cast<unsigned>(((g % 4) + 4) % 4));
}

inline PauliString operator*(const PauliString& p, const PauliString& q) { return multiply(p, q); }

// Symplectic form <p.x, q.z> + <p.z, q.x> vanishes.
inline bool commutes(const PauliString& p, const PauliString& q) {
  if (p.n_qubits() != q.n_qubits()) throw std::invalid_argument("Pauli string length mismatch");
  return p.x().dot(q.z()) == p.z().dot(q.x());
}

inline constexpr std::size_t kMaxMatrixQubits = 12;

inline Eigen::MatrixXcd to_matrix(const PauliString& p) {
  if (p.n_qubits() > kMaxMatrixQubits) {
    throw std::length_error("to_matrix limited to " + std::to_string(kMaxMatrixQubits) + " qubits");
  }
  using C = std::complex<double>;
  const C i(0.0, 1.0);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (std::size_t q = 0; q < p.n_qubits(); ++q) {
    Eigen::Matrix2cd s;
    switch (p.letter(q)) {
      case 'I': s << 1, 0, 0, 1; break;
      case 'X': s << 0, 1, 1, 0; break;
      case 'Y': s << 0, -i, i, 0; break;
      default: s << 1, 0, 0, -1; break;
    }
    Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) next.block(2 * r, 2 * c, 2, 2) = m(r, c) * s;
    }
    m = std::move(next);
  }
  static const C phases[4] = {C(1, 0), C(0, 1), C(-1, 0), C(0, -1)};
  return m * phases[p.phase()];
}

// Grammar: [+|-] letters{I,X,Y,Z}*. An empty letter string is accepted only
// after an explicit sign and denotes a 0-qubit scalar.
inline PauliString parse_pauli(std::string_view text) {
  std::size_t pos = 0;
  unsigned phase = 0;
  bool signed_text = false;
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
    phase = text[0] == '-' ? 2 : 0;
    signed_text = true;
    pos = 1;
  }
  if (pos < text.size() && (text[pos] == 'i' || text[pos] == 'j')) {
    throw std::invalid_argument("imaginary phases are not representable in Pauli text");
  }
  const std::size_t n = text.size() - pos;
  if (n == 0 && !signed_text) throw std::invalid_argument("empty Pauli string");
  PauliString p(n);
  for (std::size_t q = 0; q < n; ++q) p.set_letter(q, text[pos + q]);
  return p.with_phase(phase);
}

inline std::string format_pauli(const PauliString& p) {
  if (!p.is_hermitian()) throw std::invalid_argument("imaginary phases are not representable in Pauli text");
  std::string s(1, p.phase() == 0 ? '+' : '-');
  for (std::size_t q = 0; q < p.n_qubits(); ++q) s.push_back(p.letter(q));
  return s;
}

}  // namespace magicbcs::pauli
