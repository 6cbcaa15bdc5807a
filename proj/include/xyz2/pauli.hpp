#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "xyz2/gf2.hpp"

namespace xyz2 {

// Single-qubit letters, bit-encoded so that the product of two letters is
// their XOR: bit 0 = X component, bit 1 = Z component.
namespace letter {
inline constexpr uint8_t I = 0;
inline constexpr uint8_t X = 1;
inline constexpr uint8_t Z = 2;
inline constexpr uint8_t Y = 3;
}  // namespace letter

char letter_char(uint8_t code);
uint8_t letter_code(char c);

// Whether two single-qubit letters anticommute (both non-identity, different).
inline bool letters_anticommute(uint8_t a, uint8_t b) {
  return a != letter::I && b != letter::I && a != b;
}

// Phase-free n-qubit Pauli operator in symplectic form. Bit q of the x
// vector is set iff qubit q carries X or Y; bit q of the z vector iff it
// carries Z or Y. Global phases are never tracked.
class PauliOperator {
 public:
  PauliOperator() = default;
  explicit PauliOperator(std::size_t n) : n_(n), x_(n), z_(n) {}

  static PauliOperator from_string(std::string_view s);
  static PauliOperator single(std::size_t n, std::size_t q, uint8_t letter_code);

  std::size_t num_qubits() const { return n_; }

  uint8_t letter(std::size_t q) const {
    return uint8_t(x_.get(q) | (uint8_t(z_.get(q)) << 1));
  }
  void set_letter(std::size_t q, uint8_t code) {
    x_.set(q, code & 1u);
    z_.set(q, (code >> 1) & 1u);
  }

  void mul_inplace(const PauliOperator& o);
  bool commutes_with(const PauliOperator& o) const;
  std::size_t weight() const;
  bool is_identity() const;

  const BitVec& xbits() const { return x_; }
  const BitVec& zbits() const { return z_; }
  BitVec& xbits() { return x_; }
  BitVec& zbits() { return z_; }

  // Concatenated [x|z] symplectic row of length 2n.
  BitVec symplectic_row() const;
  static PauliOperator from_symplectic_row(const BitVec& row);

  std::string str() const;  // qubit 0 first

  bool operator==(const PauliOperator& o) const {
    return n_ == o.n_ && x_ == o.x_ && z_ == o.z_;
  }
  bool operator!=(const PauliOperator& o) const { return !(*this == o); }

 private:
  std::size_t n_ = 0;
  BitVec x_, z_;
};

PauliOperator pauli_mul(const PauliOperator& a, const PauliOperator& b);
bool commutes(const PauliOperator& a, const PauliOperator& b);
inline std::size_t weight(const PauliOperator& a) { return a.weight(); }

}  // namespace xyz2
