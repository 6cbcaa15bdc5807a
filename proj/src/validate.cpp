#include "xyz2/validate.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "xyz2/errors.hpp"

namespace xyz2 {

namespace {

constexpr std::size_t kMaxCosetLog2 = 24;

Vec2 canonical_direction(Vec2 v) {
  if (v.x < 0 || (v.x == 0 && v.y < 0)) v = Vec2{-v.x, -v.y};
  return Vec2{v.x + 0.0, v.y + 0.0};  // flush -0
}

bool parallel(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x == 0.0; }

// Gray-code walk over all subsets of `elements`, invoking visit() after each
// single-element flip (and once for the empty subset). flip(i) must toggle
// element i of the running state.
template <typename Flip, typename Visit>
void gray_walk(std::size_t m, Flip&& flip, Visit&& visit) {
  visit();
  for (uint64_t k = 1, end = uint64_t(1) << m; k < end; ++k) {
    flip(std::size_t(std::countr_zero(k)));
    visit();
  }
}

MinWeightResult min_weight_unrestricted(const StabilizerCode& code) {
  std::size_t m = code.generators.size();
  if (m > kMaxCosetLog2)
    throw CapabilityError("unrestricted distance search needs 2^(n-1) <= 2^" +
                          std::to_string(kMaxCosetLog2) + " coset elements; n = " +
                          std::to_string(code.n) + " exceeds the bound");

  // Per-generator support as (qubit, letter) pairs for cheap incremental
  // letter updates during the Gray walk.
  std::vector<std::vector<std::pair<uint32_t, uint8_t>>> support(m);
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t q = 0; q < code.n; ++q)
      if (uint8_t l = code.generators[g].op.letter(q); l != letter::I)
        support[g].push_back({uint32_t(q), l});

  MinWeightResult best{code.n + 1, 0};
  const PauliOperator reps[3] = {code.logical_x, code.logical_y(), code.logical_z};
  std::vector<uint8_t> letters(code.n);
  for (const PauliOperator& rep : reps) {
    for (std::size_t q = 0; q < code.n; ++q) letters[q] = rep.letter(q);
    std::size_t w = rep.weight();
    gray_walk(
        m,
        [&](std::size_t g) {
          for (auto [q, l] : support[g]) {
            if (letters[q] != letter::I) --w;
            letters[q] ^= l;
            if (letters[q] != letter::I) ++w;
          }
        },
        [&] {
          if (w < best.weight) {
            best.weight = w;
            best.representative_count = 1;
          } else if (w == best.weight) {
            ++best.representative_count;
          }
        });
  }
  return best;
}

MinWeightResult min_weight_pure(const StabilizerCode& code, Axis axis) {
  uint8_t sigma = axis_letter(axis);

  // Support indicators s of pure-sigma chains commuting with all generators
  // solve A s = 0, where A[g][q] = 1 iff sigma anticommutes with the letter
  // of generator g on qubit q.
  BitMatrix constraints(code.generators.size(), code.n);
  for (std::size_t g = 0; g < code.generators.size(); ++g)
    for (std::size_t q = 0; q < code.n; ++q)
      if (letters_anticommute(sigma, code.generators[g].op.letter(q)))
        constraints.set(g, q, true);
  std::vector<BitVec> basis = constraints.nullspace();
  if (basis.size() > kMaxCosetLog2)
    throw CapabilityError("pure-axis distance search solution space has dimension " +
                          std::to_string(basis.size()) + ", above the 2^" +
                          std::to_string(kMaxCosetLog2) + " bound");

  Gf2Solver stabilizer_space(code.symplectic_matrix());
  bool has_x = sigma & 1u, has_z = sigma & 2u;

  MinWeightResult best{code.n + 1, 0};
  BitVec s(code.n);
  gray_walk(
      basis.size(), [&](std::size_t i) { s.xor_with(basis[i]); },
      [&] {
        std::size_t w = s.popcount();
        if (w == 0 || w > best.weight) return;
        BitVec row(2 * code.n);
        for (std::size_t q = 0; q < code.n; ++q) {
          if (!s.get(q)) continue;
          if (has_x) row.set(q, true);
          if (has_z) row.set(code.n + q, true);
        }
        if (stabilizer_space.in_row_space(row)) return;  // stabilizer, not logical
        if (w < best.weight) {
          best.weight = w;
          best.representative_count = 1;
        } else {
          ++best.representative_count;
        }
      });
  if (best.representative_count == 0)
    throw CapabilityError("no pure-axis logical exists for this code/axis");
  return best;
}

}  // namespace

MinWeightResult min_weight_logical(const StabilizerCode& code, std::optional<Axis> restriction) {
  if (restriction) return min_weight_pure(code, *restriction);
  return min_weight_unrestricted(code);
}

ValidationReport validate_code(const StabilizerCode& code, bool compute_distances) {
  ValidationReport report;
  const auto& gens = code.generators;

  report.commutation_ok = true;
  for (std::size_t a = 0; a < gens.size() && report.commutation_ok; ++a) {
    for (std::size_t b = a + 1; b < gens.size(); ++b) {
      if (!commutes(gens[a].op, gens[b].op)) {
        report.commutation_ok = false;
        report.noncommuting_pair = {int(a), int(b)};
        break;
      }
    }
  }

  BitMatrix sym = code.symplectic_matrix();
  report.rank = sym.rank();
  report.rank_ok = report.rank == code.n - 1;

  report.single_error_detection_ok = true;
  for (std::size_t q = 0; q < code.n && report.single_error_detection_ok; ++q) {
    for (uint8_t l : {letter::X, letter::Y, letter::Z}) {
      bool detected = false;
      for (const Generator& g : gens)
        if (letters_anticommute(l, g.op.letter(q))) {
          detected = true;
          break;
        }
      if (!detected) {
        report.single_error_detection_ok = false;
        break;
      }
    }
  }

  {
    bool ok = !commutes(code.logical_x, code.logical_z);
    for (const Generator& g : gens)
      ok = ok && commutes(g.op, code.logical_x) && commutes(g.op, code.logical_z);
    if (ok) {
      Gf2Solver solver(sym);
      ok = !solver.in_row_space(code.logical_x.symplectic_row()) &&
           !solver.in_row_space(code.logical_z.symplectic_row());
    }
    report.logical_ok = ok;
  }

  if (code.family == CodeFamily::Xyz2) {
    // Bulk qubits see three full plaquettes and one link. Isolated errors
    // must flag exactly two plaquettes, whose center displacement depends
    // only on the letter, with the three letters pairwise non-parallel.
    report.directionality_ok = true;
    std::map<Axis, Vec2> dirs;
    for (std::size_t q = 0; q < code.n; ++q) {
      std::size_t incident_plaquettes = 0;
      bool touches_half = false;
      for (const Generator& g : gens) {
        if (g.op.letter(q) == letter::I) continue;
        if (g.kind == GeneratorKind::Plaquette) ++incident_plaquettes;
        if (g.kind == GeneratorKind::HalfPlaquette) touches_half = true;
      }
      if (incident_plaquettes != 3 || touches_half) continue;  // boundary qubit

      for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
        uint8_t sigma = axis_letter(axis);
        std::vector<const Generator*> plaq;
        std::size_t links = 0, halves = 0;
        for (const Generator& g : gens) {
          if (!letters_anticommute(sigma, g.op.letter(q))) continue;
          switch (g.kind) {
            case GeneratorKind::Plaquette: plaq.push_back(&g); break;
            case GeneratorKind::Link: ++links; break;
            default: ++halves; break;
          }
        }
        std::size_t want_links = axis == Axis::X ? 0 : 1;
        if (plaq.size() != 2 || links != want_links || halves != 0) {
          report.directionality_ok = false;
          continue;
        }
        Vec2 delta = canonical_direction(Vec2{plaq[0]->center.x - plaq[1]->center.x,
                                              plaq[0]->center.y - plaq[1]->center.y});
        auto [it, inserted] = dirs.emplace(axis, delta);
        if (!inserted && !(it->second == delta)) report.directionality_ok = false;
      }
    }
    if (dirs.size() != 3) report.directionality_ok = false;
    for (auto a = dirs.begin(); a != dirs.end(); ++a)
      for (auto b = std::next(a); b != dirs.end(); ++b)
        if (parallel(a->second, b->second)) report.directionality_ok = false;
    report.syndrome_directions = std::move(dirs);
  }

  if (compute_distances) {
    if (gens.size() <= kMaxCosetLog2) {
      auto r = min_weight_unrestricted(code);
      report.distance_unrestricted = r.weight;
    }
    for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
      try {
        report.distance_pure[axis] = min_weight_pure(code, axis).weight;
      } catch (const CapabilityError&) {
        // search space too large at this size; field stays absent
      }
    }
  }
  return report;
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  out << "commutation:            " << (commutation_ok ? "ok" : "FAIL");
  if (noncommuting_pair)
    out << " (generators " << noncommuting_pair->first << " and " << noncommuting_pair->second
        << " anticommute)";
  out << '\n';
  out << "rank:                   " << rank << (rank_ok ? " (ok, n-1)" : " (FAIL, expected n-1)")
      << '\n';
  out << "single-error detection: " << (single_error_detection_ok ? "ok" : "FAIL") << '\n';
  out << "logical operators:      " << (logical_ok ? "ok" : "FAIL") << '\n';
  if (!syndrome_directions.empty() || !directionality_ok) {
    out << "syndrome directions:    " << (directionality_ok ? "ok" : "FAIL");
    for (const auto& [axis, v] : syndrome_directions)
      out << ' ' << axis_char(axis) << "=(" << v.x << ',' << v.y << ')';
    out << '\n';
  }
  if (distance_unrestricted) out << "distance:               " << *distance_unrestricted << '\n';
  for (const auto& [axis, w] : distance_pure)
    out << "distance (pure " << axis_char(axis) << "):     " << w << '\n';
  return out.str();
}

}  // namespace xyz2
