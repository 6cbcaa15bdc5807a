#include <doctest.h>

#include <stdexcept>

#include "xyz2/code.hpp"
#include "xyz2/errors.hpp"
#include "xyz2/gf2.hpp"
#include "xyz2/validate.hpp"

using namespace xyz2;

TEST_CASE("XYZ2 stabilizer counts") {
  StabilizerCode c3 = build_xyz2(3);
  CHECK(c3.n == 18);
  CHECK(c3.generators.size() == 17);
  CHECK(c3.count_kind(GeneratorKind::Plaquette) == 4);
  CHECK(c3.count_kind(GeneratorKind::Link) == 9);
  CHECK(c3.count_kind(GeneratorKind::HalfPlaquette) == 4);

  StabilizerCode c5 = build_xyz2(5);
  CHECK(c5.n == 50);
  CHECK(c5.count_kind(GeneratorKind::Plaquette) == 16);
  CHECK(c5.count_kind(GeneratorKind::Link) == 25);
  CHECK(c5.count_kind(GeneratorKind::HalfPlaquette) == 8);

  CHECK(c3.logical_x.weight() == 3);
  CHECK(c3.logical_z.weight() == 6);  // 2d
}

TEST_CASE("even or too-small distances are rejected") {
  CHECK_THROWS_AS(build_xyz2(4), std::invalid_argument);
  CHECK_THROWS_AS(build_xyz2(1), std::invalid_argument);
  CHECK_THROWS_AS(build_xyz2(-3), std::invalid_argument);
  CHECK_THROWS_AS(build_xzzx(4), std::invalid_argument);
  CHECK_THROWS_AS(build_rotated_surface(2), std::invalid_argument);
}

TEST_CASE("all builders pass the full validation suite") {
  for (int d : {3, 5, 7}) {
    ValidationReport r = validate_code(build_xyz2(d), false);
    CAPTURE(d);
    CHECK(r.all_ok());
    CHECK(r.rank == std::size_t(2 * d * d - 1));
    CHECK(r.syndrome_directions.size() == 3);
  }
  for (int d : {3, 5}) {
    CHECK(validate_code(build_xzzx(d), false).all_ok());
    CHECK(validate_code(build_rotated_surface(d), false).all_ok());
  }
  StabilizerCode x3 = build_xzzx(3);
  CHECK(x3.n == 9);
  CHECK(x3.generators.size() == 8);
}

TEST_CASE("a corrupted generator is caught with the offending pair") {
  StabilizerCode code = build_xyz2(3);
  // Break one plaquette letter.
  for (std::size_t q = 0; q < code.n; ++q) {
    if (code.generators[0].op.letter(q) == letter::Y) {
      code.generators[0].op.set_letter(q, letter::X);
      break;
    }
  }
  ValidationReport r = validate_code(code, false);
  CHECK_FALSE(r.commutation_ok);
  REQUIRE(r.noncommuting_pair.has_value());
  CHECK((r.noncommuting_pair->first == 0 || r.noncommuting_pair->second == 0));
  CHECK_FALSE(commutes(code.generators[r.noncommuting_pair->first].op,
                       code.generators[r.noncommuting_pair->second].op));
}

TEST_CASE("hadamard transform: identity, XZZX image, involution") {
  StabilizerCode rs = build_rotated_surface(3);
  StabilizerCode same = hadamard_transform(rs, {});
  CHECK(same.symplectic_matrix() == rs.symplectic_matrix());

  auto subset = checkerboard_subset(3);
  StabilizerCode h = hadamard_transform(rs, subset);
  StabilizerCode xz = build_xzzx(3);
  REQUIRE(h.generators.size() == xz.generators.size());
  for (std::size_t g = 0; g < h.generators.size(); ++g)
    CHECK(h.generators[g].op == xz.generators[g].op);

  StabilizerCode twice = hadamard_transform(h, subset);
  CHECK(twice.symplectic_matrix() == rs.symplectic_matrix());
  CHECK(twice.logical_x == rs.logical_x);

  CHECK_THROWS_AS(hadamard_transform(rs, {99}), std::invalid_argument);
}

TEST_CASE("qubit doubling reproduces the XYZ2 group") {
  for (int d : {3, 5}) {
    StabilizerCode yzzy = relabel_x_to_y(build_xzzx(d));
    StabilizerCode doubled = double_qubits(yzzy, Axis::X);
    StabilizerCode direct = build_xyz2(d);
    CAPTURE(d);
    CHECK(doubled.n == direct.n);
    CHECK(doubled.generators.size() == direct.generators.size());
    CHECK(doubled.symplectic_matrix().same_row_space(direct.symplectic_matrix()));
    CHECK(validate_code(doubled, false).logical_ok);
  }
}

TEST_CASE("a doubled YZZY plaquette is a hexagon modulo links") {
  StabilizerCode yzzy = relabel_x_to_y(build_xzzx(3));
  StabilizerCode doubled = double_qubits(yzzy, Axis::X);
  StabilizerCode direct = build_xyz2(3);

  // Link-only row space.
  BitMatrix links(0, 2 * direct.n);
  for (const Generator& g : direct.generators)
    if (g.kind == GeneratorKind::Link) links.append_row(g.op.symplectic_row());
  Gf2Solver link_span(links);

  for (const Generator& g : doubled.generators) {
    if (g.kind != GeneratorKind::Plaquette) continue;
    CHECK(g.op.weight() == 6);
    // Same cell center exists in the direct construction, with the same
    // operator up to link stabilizers.
    bool matched = false;
    for (const Generator& h : direct.generators) {
      if (h.kind != GeneratorKind::Plaquette) continue;
      PauliOperator ratio = pauli_mul(g.op, h.op);
      if (link_span.in_row_space(ratio.symplectic_row())) {
        matched = true;
        break;
      }
    }
    CHECK(matched);
  }
}

TEST_CASE("the doubled image of the all-X logical is the all-Z logical") {
  StabilizerCode yzzy = relabel_x_to_y(build_xzzx(3));
  StabilizerCode doubled = double_qubits(yzzy, Axis::X);

  PauliOperator all_z(doubled.n);
  for (std::size_t q = 0; q < doubled.n; ++q) all_z.set_letter(q, letter::Z);
  for (const Generator& g : doubled.generators) CHECK(commutes(g.op, all_z));
  Gf2Solver group(doubled.symplectic_matrix());
  CHECK_FALSE(group.in_row_space(all_z.symplectic_row()));
  // Same class as the pure-Y all-qubit operator: their product is all-X,
  // the product of every link stabilizer.
  PauliOperator all_y(doubled.n);
  for (std::size_t q = 0; q < doubled.n; ++q) all_y.set_letter(q, letter::Y);
  CHECK(group.in_row_space(pauli_mul(all_z, all_y).symplectic_row()));
}

TEST_CASE("doubling rejects non-YZZY inputs") {
  CHECK_THROWS_AS(double_qubits(build_xzzx(3), Axis::X), std::invalid_argument);
  CHECK_THROWS_AS(double_qubits(build_rotated_surface(3), Axis::X), std::invalid_argument);
}

TEST_CASE("doubling with Z links gives the ZZ-link variant, not the XX one") {
  StabilizerCode yzzy = relabel_x_to_y(build_xzzx(3));
  StabilizerCode zz = double_qubits(yzzy, Axis::Z);
  CHECK(validate_code(zz, false).logical_ok);
  CHECK_FALSE(zz.symplectic_matrix().same_row_space(build_xyz2(3).symplectic_matrix()));
}

TEST_CASE("code text serialization round trips bit-exactly") {
  for (const StabilizerCode& code :
       {build_xyz2(3), build_xzzx(5), build_rotated_surface(3)}) {
    std::string text = code.save_text();
    StabilizerCode loaded = StabilizerCode::load_text(text);
    CHECK(loaded.save_text() == text);
    CHECK(loaded.n == code.n);
    CHECK(loaded.family == code.family);
    CHECK(loaded.logical_x == code.logical_x);
    CHECK(loaded.logical_z == code.logical_z);
    CHECK(loaded.checksum() == code.checksum());
  }
  CHECK_THROWS_AS(StabilizerCode::load_text("garbage"), std::invalid_argument);
}

TEST_CASE("exhaustive distances at d = 3") {
  StabilizerCode code = build_xyz2(3);

  MinWeightResult un = min_weight_logical(code, std::nullopt);
  CHECK(un.weight == 3);

  MinWeightResult px = min_weight_logical(code, Axis::X);
  CHECK(px.weight == 3);
  CHECK(px.representative_count == 8);  // 2^d

  MinWeightResult pz = min_weight_logical(code, Axis::Z);
  CHECK(pz.weight == 18);  // 2 d^2
  CHECK(pz.representative_count == 1);

  MinWeightResult py = min_weight_logical(code, Axis::Y);
  CHECK(py.weight == 18);
  CHECK(py.representative_count == 1);
}

TEST_CASE("baseline code distances at d = 3") {
  StabilizerCode xz = build_xzzx(3);
  CHECK(min_weight_logical(xz, std::nullopt).weight == 3);
  CHECK(min_weight_logical(xz, Axis::Z).weight == 3);
  CHECK(min_weight_logical(xz, Axis::X).weight == 3);
  CHECK(min_weight_logical(xz, Axis::Y).weight == 9);  // d^2

  StabilizerCode rs = build_rotated_surface(3);
  CHECK(min_weight_logical(rs, std::nullopt).weight == 3);
  CHECK(min_weight_logical(rs, Axis::Y).weight == 9);
}

TEST_CASE("unrestricted search beyond the cap raises a capability error") {
  CHECK_THROWS_AS(min_weight_logical(build_xyz2(5), std::nullopt), CapabilityError);
  CHECK_THROWS_AS(min_weight_logical(build_xyz2(5), Axis::X), CapabilityError);
  // Pure Z / Y have a one-dimensional solution space and stay feasible.
  CHECK(min_weight_logical(build_xyz2(5), Axis::Z).weight == 50);
  CHECK(min_weight_logical(build_xyz2(5), Axis::Y).weight == 50);
}

TEST_CASE("validate_code fills distances when asked") {
  ValidationReport r = validate_code(build_xyz2(3), true);
  REQUIRE(r.distance_unrestricted.has_value());
  CHECK(*r.distance_unrestricted == 3);
  CHECK(r.distance_pure.at(Axis::X) == 3);
  CHECK(r.distance_pure.at(Axis::Z) == 18);
  CHECK(r.distance_pure.at(Axis::Y) == 18);

  ValidationReport r5 = validate_code(build_xyz2(5), true);
  CHECK_FALSE(r5.distance_unrestricted.has_value());       // over the cap
  CHECK(r5.distance_pure.count(Axis::X) == 0);             // dimension 26, skipped
  CHECK(r5.distance_pure.at(Axis::Z) == 50);
  CHECK(r5.distance_pure.at(Axis::Y) == 50);
}
