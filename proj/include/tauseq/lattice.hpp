#pragma once

// Convex lattice polygons, rank-2 sublattices of A_{s-1} = {n in Z^s : sum n = 0},
// integer normal forms and the projection A_{s-1} / <a, b> -> Z.

#include "tauseq/arith.hpp"

#include <array>
#include <string_view>
#include <vector>

namespace tauseq {

using IntVector = std::vector<Integer>;

/// Malformed polygon or basis input (not convex, wrong degree, ...).
class LatticeError : public Error {
 public:
  using Error::Error;
};

/// The quotient has torsion; carries the invariant factors greater than one.
class TorsionError : public Error {
 public:
  TorsionError(std::string what, std::vector<Integer> factors);
  const std::vector<Integer>& factors() const { return factors_; }

 private:
  std::vector<Integer> factors_;
};

/// Rows are dependent, or the quotient does not have rank one.
class RankError : public Error {
 public:
  using Error::Error;
};

struct Point2 {
  Integer x;
  Integer y;
  friend bool operator==(const Point2&, const Point2&) = default;
};

Integer cross(const Point2& u, const Point2& v);

/// Strictly convex, counterclockwise lattice polygon.
class EdgePolygon {
 public:
  /// Throws LatticeError for fewer than three vertices or a polygon that is
  /// not strictly convex and counterclockwise.
  static EdgePolygon from_vertices(std::vector<Point2> vertices);

  /// Closes the chain of edge vectors starting at the origin; the edges must sum to zero.
  static EdgePolygon from_edges(const std::vector<Point2>& edges);

  const std::vector<Point2>& vertices() const { return vertices_; }
  std::vector<Point2> edges() const;

 private:
  explicit EdgePolygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {}
  std::vector<Point2> vertices_;
};

/// True when the cyclic edge sequence turns strictly left at every vertex
/// and winds around exactly once.
bool is_strictly_convex_ccw(const std::vector<Point2>& edges);

class SublatticeBasis {
 public:
  /// Throws LatticeError on a length mismatch or nonzero degree, RankError
  /// when the rows are linearly dependent.
  SublatticeBasis(IntVector a, IntVector b);

  const IntVector& a() const { return a_; }
  const IntVector& b() const { return b_; }
  int size() const { return static_cast<int>(a_.size()); }

  friend bool operator==(const SublatticeBasis&, const SublatticeBasis&) = default;

 private:
  IntVector a_;
  IntVector b_;
};

/// Column j of the 2 x s matrix is the j-th counterclockwise edge vector.
SublatticeBasis polygon_to_basis(const EdgePolygon& polygon);

/// Row-style Hermite normal form: transform * A = H with transform
/// unimodular, H in row echelon form, positive pivots and entries above
/// each pivot reduced into [0, pivot).
struct HermiteResult {
  IntMatrix form;
  IntMatrix transform;
};

HermiteResult hermite_normal_form(const IntMatrix& a);

struct ReducedBasis {
  SublatticeBasis basis;
  std::array<std::array<Integer, 2>, 2> transform;  ///< new rows = transform * old rows
};

ReducedBasis hermite_reduce(const SublatticeBasis& basis);

/// Nonzero invariant factors d_1 | d_2 | ... of the Smith normal form.
std::vector<Integer> smith_invariants(const IntMatrix& a);

/// A lattice basis of {x in Z^n : a x = 0}.
std::vector<IntVector> integer_kernel(const IntMatrix& a);

/// Coordinates of the rows of the basis in f_i = e^i - e^{i+1}: c_i = n_1 + ... + n_i.
IntMatrix root_coordinates(const SublatticeBasis& basis);

struct QuotientMap {
  IntVector w;       ///< primitive covector with w.a = w.b = 0 and degree 0
  Integer step;      ///< gcd of |w . f_i| over the root basis f_i
  bool torsion_free = false;
  std::vector<Integer> elementary_divisors;
};

/// Throws RankError when the quotient rank is not one and TorsionError when
/// the quotient has torsion.
QuotientMap quotient_map(const SublatticeBasis& basis);

/// (w . n) / step for deg(n) = 0. Throws DegreeError.
Integer project(const QuotientMap& map, const IntVector& n);

/// "5,-2,-2,-1;1,1,-1,-1". Throws ParseError on malformed text; validation
/// errors are raised by SublatticeBasis.
SublatticeBasis parse_matrix(std::string_view text);

/// "x1,y1 x2,y2 ..." vertex list. Throws ParseError.
std::vector<Point2> parse_points(std::string_view text);

IntVector to_int_vector(const std::vector<long long>& values);

}  // namespace tauseq
