#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace strop::cactus {

using Rational = mpq_class;

// Positions are parameters in [0, 1) on a circle, measured from its marked
// point (parameter 0) in the direction of the orientation. The arc length of
// a parameter interval is its width times the radius.
struct Incidence {
  std::size_t vertex = 0;
  Rational position;
  bool operator==(const Incidence&) const = default;
};

struct Circle {
  Rational radius;
  // Vertices lying on this circle in the component's vertex ordering, which
  // is by increasing position.
  std::vector<Incidence> vertices;
  bool operator==(const Circle&) const = default;
};

struct Vertex {
  // Incident circles in cyclic order. Arriving at the vertex along circle
  // circles[i], the boundary traversal continues on circles[i + 1].
  std::vector<std::size_t> circles;
  bool operator==(const Vertex&) const = default;
};

struct Basepoint {
  std::size_t component = 0;
  Rational position;
  bool operator==(const Basepoint&) const = default;
};

struct Cactus {
  std::vector<Circle> circles;
  std::vector<Vertex> vertices;
  Basepoint basepoint;

  std::size_t k() const { return circles.size(); }
  // m_c: vertex incidences counted circle by circle.
  std::size_t incidence_count() const;
  std::optional<Rational> position(std::size_t circle, std::size_t vertex) const;

  bool operator==(const Cactus&) const = default;
};

// Unit of the operad: one circle of radius 1, basepoint at the marked point.
Cactus unit_cactus();

// Vertices renumbered in order of first appearance (component-major, by
// position within a component), each circle's list sorted by position and
// each cyclic order rotated to start at its smallest circle. Equality of
// cacti means equality of canonical forms.
Cactus canonical(const Cactus& c);
bool equivalent(const Cactus& a, const Cactus& b);

struct Violation {
  std::string relation;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;  // in check order; the first is the headline
  std::size_t k = 0;
  std::size_t n_c = 0;
  std::size_t m_c = 0;
  std::vector<std::size_t> multiplicities;  // μ_i per vertex

  bool valid() const { return violations.empty(); }
  const Violation* first() const { return violations.empty() ? nullptr : &violations.front(); }
  bool violates(std::string_view relation) const;
};

// Relation names, in the order they are checked.
namespace relation {
inline constexpr const char* kComponents = "nonempty";
inline constexpr const char* kRadii = "positive radii";
inline constexpr const char* kRadiusSum = "radius sum";
inline constexpr const char* kPositions = "position range";
inline constexpr const char* kReferences = "vertex reference";
inline constexpr const char* kDistinct = "distinct positions";
inline constexpr const char* kOrdering = "vertex ordering";
inline constexpr const char* kValence = "vertex valence";
inline constexpr const char* kTree = "tree condition";
inline constexpr const char* kMultiplicity = "multiplicity sum";
inline constexpr const char* kVertexCount = "vertex count relation";
inline constexpr const char* kIncidence = "incidence consistency";
inline constexpr const char* kBasepoint = "basepoint";
}  // namespace relation

// Never throws on geometric problems; see relation:: for what is checked.
// The dual graph is built from the circles' vertex lists, the multiplicities
// from the vertices' cyclic orders.
ValidationReport validate(const Cactus& c);

struct Arc {
  std::size_t component = 0;
  Rational start;  // in [0, 1)
  Rational end;    // in (start, start + 1]; may pass the marked point
  Rational length() const;
  bool operator==(const Arc&) const = default;
};

struct BoundaryWord {
  std::vector<Arc> arcs;
  Rational total_length;
  bool operator==(const BoundaryWord&) const = default;
};

// The loop δ_c: starts at the basepoint on its chosen component and follows
// orientations, switching circles at vertices by the cyclic order. Arcs are
// split at every vertex. Throws InvalidCactus.
BoundaryWord boundary_traversal(const Cactus& c);

// Point of the cactus at boundary parameter t in [0, 1) (arc length from the
// basepoint). At a vertex passage, `incoming` is the circle the loop arrives
// on and `component` the one it leaves on; otherwise they agree.
struct BoundaryPoint {
  std::size_t component = 0;
  Rational position;
  std::size_t incoming = 0;
  std::optional<std::size_t> vertex;
};
BoundaryPoint boundary_point(const Cactus& c, const BoundaryWord& w, const Rational& t);

// Adjacent arcs on one component that continue each other are joined.
BoundaryWord coalesce(const BoundaryWord& w);

// Operad composition ξ(c; inputs). Component i of c is replaced by inputs[i]
// scaled by its radius, glued along the input's boundary loop; components of
// the result are ordered block by block. Throws ArityMismatch, InvalidCactus.
Cactus compose(const Cactus& c, const std::vector<Cactus>& inputs);

// Component i of the result is component sigma[i] of c. Throws ArityMismatch
// when sigma is not a permutation of k letters.
Cactus permute(const Cactus& c, const std::vector<std::size_t>& sigma);
std::vector<std::size_t> inverse_permutation(const std::vector<std::size_t>& sigma);

// The outer traversal with each arc on component i replaced by the matching
// stretch of inputs[i]'s traversal, scaled and relabeled into the block
// numbering of compose(c, inputs).
BoundaryWord substitute(const Cactus& c, const std::vector<Cactus>& inputs);

// Random valid cactus with k components: radii are random fractions with
// denominators dividing `resolution`, positions lie on a 1/resolution grid.
Cactus random_cactus(std::mt19937_64& rng, std::size_t k, unsigned resolution = 12);

// Structured text:
//
//   circles:
//     - radius: 1/2
//       vertices: [[0, 1/4]]      # [vertex, position]
//     - radius: 1/2
//       vertices: [[0, 0]]
//   vertices: [[0, 1]]            # cyclic orders
//   basepoint: [0, 3/4]           # [component, position]
//
// Malformed encodings throw ParseError; geometric problems are left to
// validate(). serialize(parse(serialize(c))) == serialize(c) byte for byte.
Cactus parse_cactus(std::string_view text);
Cactus load_cactus_file(const std::filesystem::path& path);
std::string serialize_cactus(const Cactus& c);

}  // namespace strop::cactus
