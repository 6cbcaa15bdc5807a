#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "xyz2/gf2.hpp"
#include "xyz2/noise.hpp"
#include "xyz2/pauli.hpp"

namespace xyz2 {

enum class CodeFamily : uint8_t { Xyz2, Xzzx, RotatedSurface };

std::string family_name(CodeFamily f);
CodeFamily family_from_name(const std::string& name);

enum class GeneratorKind : uint8_t {
  Plaquette,        // weight-6 XYZXYZ hexagon
  Link,             // weight-2 XX vertical pair
  HalfPlaquette,    // weight-3 XYZ boundary stabilizer
  SquarePlaquette,  // weight-4 square-lattice plaquette
  BoundaryPair,     // weight-2 square-lattice boundary stabilizer
};

std::string kind_name(GeneratorKind k);
GeneratorKind kind_from_name(const std::string& name);

struct Vec2 {
  double x = 0, y = 0;
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
};

struct Generator {
  PauliOperator op;
  GeneratorKind kind;
  int index = 0;  // ordinal within its kind
  bool has_center = false;
  Vec2 center{};
};

// A stabilizer code with one logical qubit and geometric metadata. Immutable
// after construction; safe to share across threads.
struct StabilizerCode {
  CodeFamily family = CodeFamily::Xyz2;
  int distance = 0;
  std::size_t n = 0;
  std::vector<Generator> generators;
  PauliOperator logical_x, logical_z;
  std::vector<Vec2> qubit_coord;

  PauliOperator logical_y() const { return pauli_mul(logical_x, logical_z); }

  // G x 2n matrix with row g = [x_g | z_g].
  BitMatrix symplectic_matrix() const;
  // G x 2n matrix with row g = [z_g | x_g], so that row . [x_E | z_E] is the
  // commutation parity of generator g with chain E.
  BitMatrix syndrome_matrix() const;

  std::size_t count_kind(GeneratorKind k) const;

  uint64_t checksum() const;  // FNV-1a over the text serialization

  std::string save_text() const;
  static StabilizerCode load_text(const std::string& text);
};

// The XYZ^2 code on a hexagonal grid with diamond boundary: 2d^2 qubits,
// (d-1)^2 XYZXYZ plaquettes, d^2 XX links, 2d-2 XYZ half-plaquettes.
// Qubits come in vertical-link pairs indexed (r, c) on a sheared d x d grid;
// qubit id = 2(r*d + c) + t with t = 0 bottom, t = 1 top.
StabilizerCode build_xyz2(int d);

// The XZZX code on a d x d square grid: uniform plaquettes with X on the two
// main-diagonal corners and Z on the anti-diagonal corners.
StabilizerCode build_xzzx(int d);

// The rotated surface code: alternating XXXX / ZZZZ plaquettes.
StabilizerCode build_rotated_surface(int d);

// X <-> Z on the selected qubits, applied to every generator and logical.
StabilizerCode hadamard_transform(const StabilizerCode& code,
                                  const std::vector<std::size_t>& qubits);

// The checkerboard subset (r + c odd) of a d x d square-lattice code; the
// Hadamard transform on it maps the rotated surface code onto XZZX.
std::vector<std::size_t> checkerboard_subset(int d);

// X <-> Y single-qubit relabel on every qubit; turns XZZX plaquettes into
// YZZY form, the input expected by double_qubits.
StabilizerCode relabel_x_to_y(const StabilizerCode& code);

// Replace every qubit of a YZZY-plaquette square-lattice code by a pair
// stabilized by a weight-2 link on link_basis, mapping single-qubit letters
// to two-qubit representatives (for X links: X->ZZ, Y->YZ, Z->XI). With
// link_basis X the generated group equals build_xyz2(d)'s group.
StabilizerCode double_qubits(const StabilizerCode& yzzy, Axis link_basis);

}  // namespace xyz2
