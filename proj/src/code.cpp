#include "xyz2/code.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace xyz2 {

namespace {

void require_odd_distance(int d) {
  if (d < 3 || d % 2 == 0)
    throw std::invalid_argument("code distance must be odd and >= 3, got " + std::to_string(d));
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string family_name(CodeFamily f) {
  switch (f) {
    case CodeFamily::Xyz2: return "xyz2";
    case CodeFamily::Xzzx: return "xzzx";
    case CodeFamily::RotatedSurface: return "rotated_surface";
  }
  return "?";
}

CodeFamily family_from_name(const std::string& name) {
  if (name == "xyz2") return CodeFamily::Xyz2;
  if (name == "xzzx") return CodeFamily::Xzzx;
  if (name == "rotated_surface") return CodeFamily::RotatedSurface;
  throw std::invalid_argument("unknown code family '" + name + "'");
}

std::string kind_name(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::Plaquette: return "plaquette";
    case GeneratorKind::Link: return "link";
    case GeneratorKind::HalfPlaquette: return "half_plaquette";
    case GeneratorKind::SquarePlaquette: return "square_plaquette";
    case GeneratorKind::BoundaryPair: return "boundary_pair";
  }
  return "?";
}

GeneratorKind kind_from_name(const std::string& name) {
  if (name == "plaquette") return GeneratorKind::Plaquette;
  if (name == "link") return GeneratorKind::Link;
  if (name == "half_plaquette") return GeneratorKind::HalfPlaquette;
  if (name == "square_plaquette") return GeneratorKind::SquarePlaquette;
  if (name == "boundary_pair") return GeneratorKind::BoundaryPair;
  throw std::invalid_argument("unknown generator kind '" + name + "'");
}

BitMatrix StabilizerCode::symplectic_matrix() const {
  BitMatrix m(generators.size(), 2 * n);
  for (std::size_t g = 0; g < generators.size(); ++g) m.row(g) = generators[g].op.symplectic_row();
  return m;
}

BitMatrix StabilizerCode::syndrome_matrix() const {
  BitMatrix m(generators.size(), 2 * n);
  for (std::size_t g = 0; g < generators.size(); ++g) {
    const PauliOperator& op = generators[g].op;
    for (std::size_t q = 0; q < n; ++q) {
      if (op.zbits().get(q)) m.set(g, q, true);
      if (op.xbits().get(q)) m.set(g, n + q, true);
    }
  }
  return m;
}

std::size_t StabilizerCode::count_kind(GeneratorKind k) const {
  std::size_t c = 0;
  for (const Generator& g : generators)
    if (g.kind == k) ++c;
  return c;
}

uint64_t StabilizerCode::checksum() const {
  std::string text = save_text();
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string StabilizerCode::save_text() const {
  std::ostringstream out;
  out << family_name(family) << ' ' << distance << ' ' << n << '\n';
  for (const Generator& g : generators)
    out << kind_name(g.kind) << ' ' << g.index << ' ' << g.op.str() << '\n';
  out << "LX " << logical_x.str() << '\n';
  out << "LZ " << logical_z.str() << '\n';
  for (std::size_t q = 0; q < n; ++q)
    out << "coord " << q << ' ' << fmt_double(qubit_coord[q].x) << ' '
        << fmt_double(qubit_coord[q].y) << '\n';
  for (std::size_t g = 0; g < generators.size(); ++g)
    if (generators[g].has_center)
      out << "center " << g << ' ' << fmt_double(generators[g].center.x) << ' '
          << fmt_double(generators[g].center.y) << '\n';
  return out.str();
}

StabilizerCode StabilizerCode::load_text(const std::string& text) {
  std::istringstream in(text);
  StabilizerCode code;
  std::string fam;
  if (!(in >> fam >> code.distance >> code.n))
    throw std::invalid_argument("code file: bad header line");
  code.family = family_from_name(fam);

  std::string tok;
  bool have_lx = false, have_lz = false;
  while (in >> tok) {
    if (tok == "LX") {
      std::string s;
      in >> s;
      code.logical_x = PauliOperator::from_string(s);
      have_lx = true;
    } else if (tok == "LZ") {
      std::string s;
      in >> s;
      code.logical_z = PauliOperator::from_string(s);
      have_lz = true;
    } else if (tok == "coord") {
      std::size_t q;
      double x, y;
      if (!(in >> q >> x >> y)) throw std::invalid_argument("code file: bad coord line");
      if (code.qubit_coord.size() < code.n) code.qubit_coord.resize(code.n);
      if (q >= code.n) throw std::invalid_argument("code file: coord qubit out of range");
      code.qubit_coord[q] = Vec2{x, y};
    } else if (tok == "center") {
      std::size_t g;
      double x, y;
      if (!(in >> g >> x >> y)) throw std::invalid_argument("code file: bad center line");
      if (g >= code.generators.size())
        throw std::invalid_argument("code file: center generator out of range");
      code.generators[g].has_center = true;
      code.generators[g].center = Vec2{x, y};
    } else {
      Generator g;
      g.kind = kind_from_name(tok);
      std::string s;
      if (!(in >> g.index >> s)) throw std::invalid_argument("code file: bad generator line");
      g.op = PauliOperator::from_string(s);
      if (g.op.num_qubits() != code.n)
        throw std::invalid_argument("code file: generator length mismatch");
      code.generators.push_back(std::move(g));
    }
  }
  if (!have_lx || !have_lz) throw std::invalid_argument("code file: missing logicals");
  if (code.logical_x.num_qubits() != code.n || code.logical_z.num_qubits() != code.n)
    throw std::invalid_argument("code file: logical length mismatch");
  if (code.qubit_coord.size() != code.n)
    throw std::invalid_argument("code file: missing qubit coordinates");
  return code;
}

// ---------------------------------------------------------------------------
// XYZ^2 construction.
//
// Vertical links live on a sheared d x d grid; drawing coordinates are
// u = r + c (horizontal) and v = r - c (vertical). A bulk hexagon sits
// between the diagonal link pair (R,C) and (R+1,C+1), with the bottom qubit
// of link (R+1,C) as its top vertex and the top qubit of link (R,C+1) as its
// bottom vertex. Letters follow the uniform pattern of Fig-style XYZXYZ
// plaquettes: X on the two middle qubits, Z on the upper and Y on the lower
// qubit of the left link, mirrored on the right link.
// ---------------------------------------------------------------------------

namespace {

struct Xyz2Grid {
  int d;
  std::size_t link_id(int r, int c) const { return std::size_t(r) * d + c; }
  std::size_t qubit(int r, int c, int t) const { return 2 * link_id(r, c) + t; }
  Vec2 qubit_pos(int r, int c, int t) const {
    return Vec2{double(r + c), double(r - c) + (t ? 0.3 : -0.3)};
  }
  Vec2 cell_center(int R, int C) const { return Vec2{double(R + C + 1), double(R - C)}; }
};

}  // namespace

StabilizerCode build_xyz2(int d) {
  require_odd_distance(d);
  Xyz2Grid grid{d};

  StabilizerCode code;
  code.family = CodeFamily::Xyz2;
  code.distance = d;
  code.n = 2 * std::size_t(d) * d;
  code.qubit_coord.resize(code.n);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      for (int t = 0; t < 2; ++t) code.qubit_coord[grid.qubit(r, c, t)] = grid.qubit_pos(r, c, t);

  // Bulk hexagons.
  int plaq_index = 0;
  for (int R = 0; R <= d - 2; ++R) {
    for (int C = 0; C <= d - 2; ++C) {
      PauliOperator op(code.n);
      op.set_letter(grid.qubit(R, C, 1), letter::Z);          // left link, top
      op.set_letter(grid.qubit(R, C, 0), letter::Y);          // left link, bottom
      op.set_letter(grid.qubit(R + 1, C + 1, 1), letter::Y);  // right link, top
      op.set_letter(grid.qubit(R + 1, C + 1, 0), letter::Z);  // right link, bottom
      op.set_letter(grid.qubit(R + 1, C, 0), letter::X);      // top middle
      op.set_letter(grid.qubit(R, C + 1, 1), letter::X);      // bottom middle
      code.generators.push_back(
          {std::move(op), GeneratorKind::Plaquette, plaq_index++, true, grid.cell_center(R, C)});
    }
  }

  // Vertical XX links.
  int link_index = 0;
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      PauliOperator op(code.n);
      op.set_letter(grid.qubit(r, c, 0), letter::X);
      op.set_letter(grid.qubit(r, c, 1), letter::X);
      code.generators.push_back({std::move(op), GeneratorKind::Link, link_index++, true,
                                 Vec2{double(r + c), double(r - c)}});
    }
  }

  // Boundary half-plaquettes: the surviving halves of the virtual hexagons
  // just outside each of the four diamond sides, alternating along the side.
  int half_index = 0;
  auto add_half = [&](PauliOperator op, Vec2 center) {
    code.generators.push_back(
        {std::move(op), GeneratorKind::HalfPlaquette, half_index++, true, center});
  };
  for (int C = 0; C <= d - 3; C += 2) {  // side r = 0, virtual hexagon (-1, C)
    PauliOperator op(code.n);
    op.set_letter(grid.qubit(0, C, 0), letter::X);
    op.set_letter(grid.qubit(0, C + 1, 1), letter::Y);
    op.set_letter(grid.qubit(0, C + 1, 0), letter::Z);
    add_half(std::move(op), grid.cell_center(-1, C));
  }
  for (int C = 1; C <= d - 2; C += 2) {  // side r = d-1, virtual hexagon (d-1, C)
    PauliOperator op(code.n);
    op.set_letter(grid.qubit(d - 1, C, 1), letter::Z);
    op.set_letter(grid.qubit(d - 1, C, 0), letter::Y);
    op.set_letter(grid.qubit(d - 1, C + 1, 1), letter::X);
    add_half(std::move(op), grid.cell_center(d - 1, C));
  }
  for (int R = 1; R <= d - 2; R += 2) {  // side c = 0, virtual hexagon (R, -1)
    PauliOperator op(code.n);
    op.set_letter(grid.qubit(R, 0, 1), letter::X);
    op.set_letter(grid.qubit(R + 1, 0, 1), letter::Y);
    op.set_letter(grid.qubit(R + 1, 0, 0), letter::Z);
    add_half(std::move(op), grid.cell_center(R, -1));
  }
  for (int R = 0; R <= d - 3; R += 2) {  // side c = d-1, virtual hexagon (R, d-1)
    PauliOperator op(code.n);
    op.set_letter(grid.qubit(R, d - 1, 1), letter::Z);
    op.set_letter(grid.qubit(R, d - 1, 0), letter::Y);
    op.set_letter(grid.qubit(R + 1, d - 1, 0), letter::X);
    add_half(std::move(op), grid.cell_center(R, d - 1));
  }

  // Logical X: pure-X chain on the bottom qubits of the central link row
  // (the links (i, i), which run horizontally through the drawing).
  code.logical_x = PauliOperator(code.n);
  for (int i = 0; i < d; ++i) code.logical_x.set_letter(grid.qubit(i, i, 0), letter::X);

  // Logical Z: ZY chain on the central column (links (i, d-1-i)), Z on the
  // bottom and Y on the top qubit of each link.
  code.logical_z = PauliOperator(code.n);
  for (int i = 0; i < d; ++i) {
    code.logical_z.set_letter(grid.qubit(i, d - 1 - i, 0), letter::Z);
    code.logical_z.set_letter(grid.qubit(i, d - 1 - i, 1), letter::Y);
  }
  return code;
}

// ---------------------------------------------------------------------------
// Square-lattice codes. Qubits (r, c) on a d x d grid, id = r*d + c. Cells
// (R, C) have corners (R,C), (R,C+1), (R+1,C), (R+1,C+1); boundary cells use
// R = -1 (north), R = d-1 (south), C = -1 (west), C = d-1 (east) with the
// out-of-grid corners dropped.
// ---------------------------------------------------------------------------

namespace {

struct SquareGrid {
  int d;
  std::size_t qubit(int r, int c) const { return std::size_t(r) * d + c; }
  bool in_grid(int r, int c) const { return r >= 0 && r < d && c >= 0 && c < d; }
};

struct Cell {
  int R, C;
};

// Bulk cells plus the alternating boundary half-cells; this fixed layout
// keeps all plaquettes mutually commuting and matches the Hadamard image.
std::vector<Cell> square_cells(int d) {
  std::vector<Cell> cells;
  for (int R = 0; R <= d - 2; ++R)
    for (int C = 0; C <= d - 2; ++C) cells.push_back({R, C});
  for (int C = 0; C <= d - 2; C += 2) cells.push_back({-1, C});      // north
  for (int C = 1; C <= d - 2; C += 2) cells.push_back({d - 1, C});   // south
  for (int R = 1; R <= d - 2; R += 2) cells.push_back({R, -1});      // west
  for (int R = 0; R <= d - 2; R += 2) cells.push_back({R, d - 1});   // east
  return cells;
}

StabilizerCode build_square_code(int d, CodeFamily family) {
  require_odd_distance(d);
  SquareGrid grid{d};

  StabilizerCode code;
  code.family = family;
  code.distance = d;
  code.n = std::size_t(d) * d;
  code.qubit_coord.resize(code.n);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) code.qubit_coord[grid.qubit(r, c)] = Vec2{double(c), double(-r)};

  int bulk_index = 0, half_index = 0;
  for (const Cell& cell : square_cells(d)) {
    PauliOperator op(code.n);
    int weight = 0;
    // Corner letter: for XZZX, X on the cell's main diagonal and Z on the
    // anti-diagonal; for the rotated surface code, all-X or all-Z by cell
    // parity.
    auto assign = [&](int r, int c, bool main_diag) {
      if (!grid.in_grid(r, c)) return;
      uint8_t l;
      if (family == CodeFamily::Xzzx)
        l = main_diag ? letter::X : letter::Z;
      else
        l = ((cell.R + cell.C) % 2 == 0) ? letter::X : letter::Z;
      op.set_letter(grid.qubit(r, c), l);
      ++weight;
    };
    assign(cell.R, cell.C, true);
    assign(cell.R + 1, cell.C + 1, true);
    assign(cell.R, cell.C + 1, false);
    assign(cell.R + 1, cell.C, false);

    Generator g;
    g.op = std::move(op);
    g.has_center = true;
    g.center = Vec2{cell.C + 0.5, -(cell.R + 0.5)};
    if (weight == 4) {
      g.kind = GeneratorKind::SquarePlaquette;
      g.index = bulk_index++;
    } else {
      g.kind = GeneratorKind::BoundaryPair;
      g.index = half_index++;
    }
    code.generators.push_back(std::move(g));
  }

  if (family == CodeFamily::Xzzx) {
    // Pure-letter logicals on the two diagonals.
    code.logical_x = PauliOperator(code.n);
    code.logical_z = PauliOperator(code.n);
    for (int i = 0; i < d; ++i) {
      code.logical_x.set_letter(grid.qubit(i, d - 1 - i), letter::X);
      code.logical_z.set_letter(grid.qubit(i, i), letter::Z);
    }
  } else {
    // Horizontal pure-X chain, vertical pure-Z chain.
    code.logical_x = PauliOperator(code.n);
    code.logical_z = PauliOperator(code.n);
    for (int i = 0; i < d; ++i) {
      code.logical_x.set_letter(grid.qubit(0, i), letter::X);
      code.logical_z.set_letter(grid.qubit(i, 0), letter::Z);
    }
  }
  return code;
}

}  // namespace

StabilizerCode build_xzzx(int d) { return build_square_code(d, CodeFamily::Xzzx); }

StabilizerCode build_rotated_surface(int d) {
  return build_square_code(d, CodeFamily::RotatedSurface);
}

StabilizerCode hadamard_transform(const StabilizerCode& code,
                                  const std::vector<std::size_t>& qubits) {
  for (std::size_t q : qubits)
    if (q >= code.n)
      throw std::invalid_argument("hadamard_transform: qubit index " + std::to_string(q) +
                                  " out of range");
  StabilizerCode out = code;
  auto swap_xz = [&](PauliOperator& op) {
    for (std::size_t q : qubits) {
      bool x = op.xbits().get(q);
      bool z = op.zbits().get(q);
      op.xbits().set(q, z);
      op.zbits().set(q, x);
    }
  };
  for (Generator& g : out.generators) swap_xz(g.op);
  swap_xz(out.logical_x);
  swap_xz(out.logical_z);
  return out;
}

std::vector<std::size_t> checkerboard_subset(int d) {
  std::vector<std::size_t> qubits;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      if ((r + c) % 2 == 1) qubits.push_back(std::size_t(r) * d + c);
  return qubits;
}

StabilizerCode relabel_x_to_y(const StabilizerCode& code) {
  StabilizerCode out = code;
  // X <-> Y leaves z unchanged given the new x, since Y = X.Z in bit form:
  // (x, z) -> (x, x xor z).
  auto relabel = [&](PauliOperator& op) {
    for (std::size_t q = 0; q < op.num_qubits(); ++q)
      if (op.xbits().get(q)) op.zbits().flip(q);
  };
  for (Generator& g : out.generators) relabel(g.op);
  relabel(out.logical_x);
  relabel(out.logical_z);
  return out;
}

StabilizerCode double_qubits(const StabilizerCode& yzzy, Axis link_basis) {
  // The input must be a square-lattice code whose plaquettes carry only Y
  // and Z letters (YZZY form) -- weight-4 YYZZ in the bulk, weight-2 YZ at
  // the boundary.
  if (yzzy.family != CodeFamily::Xzzx)
    throw std::invalid_argument("double_qubits: input must be a (relabeled) XZZX-family code");
  for (const Generator& g : yzzy.generators) {
    std::size_t ny = 0, nz = 0, other = 0;
    for (std::size_t q = 0; q < yzzy.n; ++q) {
      switch (g.op.letter(q)) {
        case letter::I: break;
        case letter::Y: ++ny; break;
        case letter::Z: ++nz; break;
        default: ++other; break;
      }
    }
    bool bulk_ok = ny == 2 && nz == 2 && other == 0;
    bool half_ok = ny == 1 && nz == 1 && other == 0;
    if (!bulk_ok && !half_ok)
      throw std::invalid_argument("double_qubits: input plaquettes are not in YZZY form");
  }

  // Two-qubit images of the single-qubit letters (first alternative of each
  // choice): for X links, X->ZZ, Y->YZ, Z->XI; cyclic analogues otherwise.
  uint8_t sigma = axis_letter(link_basis);                       // the link letter
  uint8_t tau = (sigma == letter::Z) ? letter::X : letter::Z;    // anticommuting partner
  auto image = [&](uint8_t l) -> std::pair<uint8_t, uint8_t> {
    if (l == letter::I) return {letter::I, letter::I};
    if (l == letter::X) return {tau, tau};
    if (l == letter::Z) return {sigma, letter::I};
    return {uint8_t(tau ^ sigma), tau};  // Y = X.Z
  };

  int d = yzzy.distance;
  Xyz2Grid grid{d};
  StabilizerCode out;
  out.family = CodeFamily::Xyz2;
  out.distance = d;
  out.n = 2 * yzzy.n;
  out.qubit_coord.resize(out.n);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      for (int t = 0; t < 2; ++t) out.qubit_coord[grid.qubit(r, c, t)] = grid.qubit_pos(r, c, t);

  auto lift = [&](const PauliOperator& op) {
    PauliOperator big(out.n);
    for (std::size_t q = 0; q < yzzy.n; ++q) {
      auto [lo, hi] = image(op.letter(q));
      big.set_letter(2 * q, lo);
      big.set_letter(2 * q + 1, hi);
    }
    return big;
  };

  int plaq_index = 0, half_index = 0;
  for (const Generator& g : yzzy.generators) {
    Generator ng;
    ng.op = lift(g.op);
    ng.kind = ng.op.weight() >= 6 ? GeneratorKind::Plaquette : GeneratorKind::HalfPlaquette;
    ng.index = ng.kind == GeneratorKind::Plaquette ? plaq_index++ : half_index++;
    ng.has_center = g.has_center;
    ng.center = g.center;
    out.generators.push_back(std::move(ng));
  }
  int link_index = 0;
  for (std::size_t q = 0; q < yzzy.n; ++q) {
    PauliOperator op(out.n);
    op.set_letter(2 * q, sigma);
    op.set_letter(2 * q + 1, sigma);
    out.generators.push_back({std::move(op), GeneratorKind::Link, link_index++, false, Vec2{}});
  }

  // The pure-Z diagonal logical lifts to the weight-d pure-X chain; the
  // other diagonal lifts to the weight-2d mixed chain.
  out.logical_x = lift(yzzy.logical_z);
  out.logical_z = lift(yzzy.logical_x);
  return out;
}

}  // namespace xyz2
