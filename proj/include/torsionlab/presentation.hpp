#pragma once

#include "torsionlab/laurent.hpp"
#include "torsionlab/words.hpp"

#include <optional>
#include <string>
#include <vector>

namespace torsionlab {

class ParseError : public Error {
 public:
  ParseError(int line, int col, const std::string& msg)
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(col) +
              ": " + msg),
        line(line),
        col(col) {}
  int line, col;
};

/// Finite group presentation with the optional decorations the pipeline
/// understands: a distinguished meridian generator (kept last), dual words
/// for closed-manifold inputs, and a reference volume.
struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;
  std::optional<int> meridian;  // index into generators; parser moves it last
  std::vector<Word> duals;      // empty, or one word per generator
  std::optional<double> volume;

  int rank() const { return static_cast<int>(generators.size()); }
  friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;
};

enum class PresentationShape { KnotExterior, Closed };

/// Parse the presentation text format:
///   generators: a b
///   relators: a b a b^-1 a^-1 b^-1 ; ...
///   meridian: a
///   duals: w1 ; w2 ; ...
///   volume: 2.02988
/// '#' starts a comment; errors carry line and column.
GroupPresentation parse_presentation(const std::string& text);

std::string serialize(const GroupPresentation& p);

/// Deduce the complex shape from the generator/relator counts; throws on a
/// count mismatch.
PresentationShape shape(const GroupPresentation& p);

void validate(const GroupPresentation& p);

/// Free differential of a word with respect to one generator.
GroupRingElement fox_derivative(const Word& w, int gen);

/// Boundary maps of the presentation complex in row convention (the map in
/// degree k sends x to x * dk, dk has dim C_k rows and dim C_{k-1} columns).
struct BoundaryMaps {
  GroupRingMatrix d1;                  // generators x 1, entries 1 - a_j
  GroupRingMatrix d2;                  // relators x generators, Fox derivatives
  std::optional<GroupRingMatrix> d3;   // closed shape only: 1 x relators, 1 - b_i
};
BoundaryMaps boundary_matrices(const GroupPresentation& p);

/// Square Jacobian with the distinguished last column split off
/// (knot-exterior shape).
struct ReducedJacobian {
  GroupRingMatrix J;  // n x n
  GroupRingMatrix c;  // n x 1, the removed column
};
ReducedJacobian reduced_jacobian(const GroupPresentation& p);

/// Images of the generators in H_1 when H_1 is infinite cyclic; throws
/// otherwise. Sign fixed so the meridian (or first nonvanishing generator)
/// maps positively.
std::vector<long> abelianization_degrees(const GroupPresentation& p);

/// Determinant of the reduced Jacobian pushed to Z[t, t^-1], in canonical
/// normalized form.
LaurentPoly abelianized_alexander(const GroupPresentation& p);

}  // namespace torsionlab
