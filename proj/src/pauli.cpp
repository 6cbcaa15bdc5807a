#include "xyz2/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace xyz2 {

char letter_char(uint8_t code) {
  static constexpr char table[4] = {'I', 'X', 'Z', 'Y'};
  return table[code & 3u];
}

uint8_t letter_code(char c) {
  switch (c) {
    case 'I': return letter::I;
    case 'X': return letter::X;
    case 'Y': return letter::Y;
    case 'Z': return letter::Z;
    default: throw std::invalid_argument(std::string("invalid Pauli letter '") + c + "'");
  }
}

PauliOperator PauliOperator::from_string(std::string_view s) {
  PauliOperator p(s.size());
  for (std::size_t q = 0; q < s.size(); ++q) p.set_letter(q, letter_code(s[q]));
  return p;
}

PauliOperator PauliOperator::single(std::size_t n, std::size_t q, uint8_t code) {
  if (q >= n) throw std::invalid_argument("PauliOperator::single: qubit out of range");
  PauliOperator p(n);
  p.set_letter(q, code);
  return p;
}

void PauliOperator::mul_inplace(const PauliOperator& o) {
  if (o.n_ != n_) throw std::invalid_argument("pauli_mul: qubit count mismatch");
  x_.xor_with(o.x_);
  z_.xor_with(o.z_);
}

bool PauliOperator::commutes_with(const PauliOperator& o) const {
  if (o.n_ != n_) throw std::invalid_argument("commutes: qubit count mismatch");
  // Symplectic form <a.x, b.z> + <a.z, b.x> over GF(2).
  return !(x_.dot(o.z_) ^ z_.dot(o.x_));
}

std::size_t PauliOperator::weight() const {
  std::size_t c = 0;
  const auto& xw = x_.words();
  const auto& zw = z_.words();
  for (std::size_t i = 0; i < xw.size(); ++i) c += std::popcount(xw[i] | zw[i]);
  return c;
}

bool PauliOperator::is_identity() const { return !x_.any() && !z_.any(); }

BitVec PauliOperator::symplectic_row() const {
  BitVec row(2 * n_);
  for (std::size_t q = 0; q < n_; ++q) {
    if (x_.get(q)) row.set(q, true);
    if (z_.get(q)) row.set(n_ + q, true);
  }
  return row;
}

PauliOperator PauliOperator::from_symplectic_row(const BitVec& row) {
  if (row.size() % 2 != 0)
    throw std::invalid_argument("from_symplectic_row: odd row length");
  std::size_t n = row.size() / 2;
  PauliOperator p(n);
  for (std::size_t q = 0; q < n; ++q) {
    p.x_.set(q, row.get(q));
    p.z_.set(q, row.get(n + q));
  }
  return p;
}

std::string PauliOperator::str() const {
  std::string s(n_, 'I');
  for (std::size_t q = 0; q < n_; ++q) s[q] = letter_char(letter(q));
  return s;
}

PauliOperator pauli_mul(const PauliOperator& a, const PauliOperator& b) {
  PauliOperator r = a;
  r.mul_inplace(b);
  return r;
}

bool commutes(const PauliOperator& a, const PauliOperator& b) {
  return a.commutes_with(b);
}

}  // namespace xyz2
