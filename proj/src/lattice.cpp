#include "tauseq/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>

namespace tauseq {

TorsionError::TorsionError(std::string what, std::vector<Integer> factors)
    : Error(std::move(what)), factors_(std::move(factors)) {}

Integer cross(const Point2& u, const Point2& v) { return u.x * v.y - u.y * v.x; }

namespace {

// 0 for directions in [0, pi), 1 for [pi, 2 pi).
int half_plane(const Point2& v) { return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1; }

bool angle_less(const Point2& u, const Point2& v) {
  const int hu = half_plane(u), hv = half_plane(v);
  if (hu != hv) return hu < hv;
  return cross(u, v) > 0;
}

}  // namespace

bool is_strictly_convex_ccw(const std::vector<Point2>& edges) {
  const std::size_t n = edges.size();
  if (n < 3) return false;
  int descents = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& e = edges[i];
    const Point2& next = edges[(i + 1) % n];
    if (e.x == 0 && e.y == 0) return false;
    if (cross(e, next) <= 0) return false;
    if (!angle_less(e, next)) ++descents;
  }
  return descents == 1;
}

EdgePolygon EdgePolygon::from_vertices(std::vector<Point2> vertices) {
  if (vertices.size() < 3) throw LatticeError("a polygon needs at least three vertices");
  EdgePolygon p(std::move(vertices));
  if (!is_strictly_convex_ccw(p.edges())) throw LatticeError("polygon is not strictly convex and counterclockwise");
  return p;
}

EdgePolygon EdgePolygon::from_edges(const std::vector<Point2>& edges) {
  Point2 sum{0, 0};
  std::vector<Point2> vertices;
  for (const auto& e : edges) {
    vertices.push_back(sum);
    sum = {sum.x + e.x, sum.y + e.y};
  }
  if (sum.x != 0 || sum.y != 0) throw LatticeError("edge vectors do not sum to zero");
  return from_vertices(std::move(vertices));
}

std::vector<Point2> EdgePolygon::edges() const {
  std::vector<Point2> out;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& from = vertices_[i];
    const Point2& to = vertices_[(i + 1) % n];
    out.push_back({to.x - from.x, to.y - from.y});
  }
  return out;
}

SublatticeBasis::SublatticeBasis(IntVector a, IntVector b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.size() != b_.size()) throw LatticeError("basis rows have different lengths");
  if (a_.size() < 2) throw LatticeError("basis rows need at least two entries");
  Integer da = 0, db = 0;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    da += a_[i];
    db += b_[i];
  }
  if (da != 0 || db != 0) throw LatticeError("basis rows must have degree 0");
  for (std::size_t i = 0; i < a_.size(); ++i)
    for (std::size_t j = i + 1; j < a_.size(); ++j)
      if (a_[i] * b_[j] - a_[j] * b_[i] != 0) return;
  throw RankError("basis rows are linearly dependent");
}

SublatticeBasis polygon_to_basis(const EdgePolygon& polygon) {
  IntVector a, b;
  for (const auto& e : polygon.edges()) {
    a.push_back(e.x);
    b.push_back(e.y);
  }
  return SublatticeBasis(std::move(a), std::move(b));
}

namespace {

void combine_rows(IntMatrix& m, std::size_t r1, std::size_t r2, const Integer& a, const Integer& b, const Integer& c,
                  const Integer& d) {
  // (row r1, row r2) <- (a r1 + b r2, c r1 + d r2)
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Integer x = m(r1, j), y = m(r2, j);
    m(r1, j) = a * x + b * y;
    m(r2, j) = c * x + d * y;
  }
}

void add_row_multiple(IntMatrix& m, std::size_t target, std::size_t source, const Integer& factor) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(target, j) += factor * m(source, j);
}

void add_col_multiple(IntMatrix& m, std::size_t target, std::size_t source, const Integer& factor) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, target) += factor * m(i, source);
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HermiteResult hermite_normal_form(const IntMatrix& a) {
  IntMatrix h = a;
  IntMatrix u = IntMatrix::identity(a.rows());
  std::size_t row = 0;
  for (std::size_t col = 0; col < h.cols() && row < h.rows(); ++col) {
    for (std::size_t i = row + 1; i < h.rows(); ++i) {
      if (h(i, col) == 0) continue;
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h(row, col).get_mpz_t(), h(i, col).get_mpz_t());
      const Integer p = h(row, col) / g, q = h(i, col) / g;
      const Integer mq = -q;
      combine_rows(h, row, i, s, t, mq, p);
      combine_rows(u, row, i, s, t, mq, p);
    }
    if (h(row, col) == 0) continue;
    if (h(row, col) < 0) {
      negate_row(h, row);
      negate_row(u, row);
    }
    for (std::size_t i = 0; i < row; ++i) {
      const Integer f = -floor_div(h(i, col), h(row, col));
      if (f == 0) continue;
      add_row_multiple(h, i, row, f);
      add_row_multiple(u, i, row, f);
    }
    ++row;
  }
  return {std::move(h), std::move(u)};
}

ReducedBasis hermite_reduce(const SublatticeBasis& basis) {
  const int s = basis.size();
  IntMatrix m(2, s);
  for (int j = 0; j < s; ++j) {
    m(0, j) = basis.a()[j];
    m(1, j) = basis.b()[j];
  }
  auto [h, u] = hermite_normal_form(m);
  IntVector a(s), b(s);
  for (int j = 0; j < s; ++j) {
    a[j] = h(0, j);
    b[j] = h(1, j);
  }
  ReducedBasis out{SublatticeBasis(std::move(a), std::move(b)), {}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.transform[i][j] = u(i, j);
  return out;
}

std::vector<Integer> smith_invariants(const IntMatrix& input) {
  IntMatrix m = input;
  std::vector<Integer> invariants;
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    bool found = false;
    std::size_t pi = t, pj = t;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m(i, j) != 0 && (!found || abs(m(i, j)) < abs(m(pi, pj)))) {
          found = true;
          pi = i;
          pj = j;
        }
    if (!found) break;
    m.swap_rows(t, pi);
    swap_cols(m, t, pj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m(i, t) == 0) continue;
        add_row_multiple(m, i, t, -floor_div(m(i, t), m(t, t)));
        if (m(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m(t, j) == 0) continue;
        add_col_multiple(m, j, t, -floor_div(m(t, j), m(t, t)));
        if (m(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder is smaller than the pivot; move it into place and repeat.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (m(i, t) != 0 && abs(m(i, t)) < abs(m(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m(t, j) != 0 && abs(m(t, j)) < abs(m(bi, bj))) bi = t, bj = j;
        m.swap_rows(t, bi);
        swap_cols(m, t, bj);
        continue;
      }
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m(i, j) % m(t, t) != 0) {
            add_row_multiple(m, t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    invariants.push_back(abs(m(t, t)));
  }
  return invariants;
}

std::vector<IntVector> integer_kernel(const IntMatrix& a) {
  IntMatrix at(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) at(j, i) = a(i, j);
  const auto [h, u] = hermite_normal_form(at);
  std::vector<IntVector> kernel;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < h.cols() && zero; ++j) zero = h(i, j) == 0;
    if (!zero) continue;
    IntVector v(u.cols());
    for (std::size_t j = 0; j < u.cols(); ++j) v[j] = u(i, j);
    kernel.push_back(std::move(v));
  }
  return kernel;
}

IntMatrix root_coordinates(const SublatticeBasis& basis) {
  const int s = basis.size();
  IntMatrix m(2, s - 1);
  Integer ca = 0, cb = 0;
  for (int i = 0; i + 1 < s; ++i) {
    ca += basis.a()[i];
    cb += basis.b()[i];
    m(0, i) = ca;
    m(1, i) = cb;
  }
  return m;
}

QuotientMap quotient_map(const SublatticeBasis& basis) {
  const int s = basis.size();
  QuotientMap out;
  out.elementary_divisors = smith_invariants(root_coordinates(basis));
  if (out.elementary_divisors.size() != 2) throw RankError("basis does not span a rank-2 sublattice");
  const int quotient_rank = s - 3;
  if (quotient_rank != 1)
    throw RankError("unsupported rank: quotient A_" + std::to_string(s - 1) + "/<a,b> has free rank " +
                    std::to_string(quotient_rank) + ", need 1");
  std::vector<Integer> torsion;
  for (const auto& d : out.elementary_divisors)
    if (d != 1) torsion.push_back(d);
  if (!torsion.empty()) {
    std::string msg = "quotient has torsion with invariant factors";
    for (const auto& d : torsion) msg += " " + d.get_str();
    throw TorsionError(msg, torsion);
  }
  out.torsion_free = true;

  IntMatrix constraints(3, s);
  for (int j = 0; j < s; ++j) {
    constraints(0, j) = basis.a()[j];
    constraints(1, j) = basis.b()[j];
    constraints(2, j) = 1;
  }
  auto kernel = integer_kernel(constraints);
  if (kernel.size() != 1) throw RankError("covector space is not one-dimensional");
  out.w = std::move(kernel.front());
  auto first = std::find_if(out.w.begin(), out.w.end(), [](const Integer& x) { return x != 0; });
  if (first != out.w.end() && *first < 0)
    for (auto& x : out.w) x = -x;

  out.step = 0;
  for (int i = 0; i + 1 < s; ++i) out.step = gcd(out.step, Integer(out.w[i] - out.w[i + 1]));
  return out;
}

Integer project(const QuotientMap& map, const IntVector& n) {
  if (n.size() != map.w.size()) throw LatticeError("point has the wrong number of coordinates");
  Integer deg = 0, dot = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    deg += n[i];
    dot += map.w[i] * n[i];
  }
  if (deg != 0) throw DegreeError("projection needs a degree-0 point");
  return dot / map.step;
}

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto end = s.find(sep, start);
    out.push_back(trim(s.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

Integer parse_integer(const std::string& field, std::string_view context) {
  Integer z;
  std::string digits = !field.empty() && field[0] == '+' ? field.substr(1) : field;
  if (digits.empty() || z.set_str(digits, 10) != 0 || digits.find_first_of(" \t") != std::string::npos)
    throw ParseError("malformed integer '" + field + "' in '" + std::string(context) + "'");
  return z;
}

}  // namespace

SublatticeBasis parse_matrix(std::string_view text) {
  auto rows = split(text, ';');
  if (rows.size() != 2) throw ParseError("matrix needs exactly two rows separated by ';'");
  std::array<IntVector, 2> parsed;
  for (int r = 0; r < 2; ++r)
    for (const auto& field : split(rows[r], ',')) parsed[r].push_back(parse_integer(field, text));
  return SublatticeBasis(std::move(parsed[0]), std::move(parsed[1]));
}

std::vector<Point2> parse_points(std::string_view text) {
  std::vector<Point2> points;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    auto xy = split(token, ',');
    if (xy.size() != 2) throw ParseError("malformed point '" + token + "'");
    points.push_back({parse_integer(xy[0], text), parse_integer(xy[1], text)});
  }
  return points;
}

IntVector to_int_vector(const std::vector<long long>& values) {
  IntVector out;
  out.reserve(values.size());
  for (long long v : values) out.emplace_back(static_cast<long>(v));
  return out;
}

}  // namespace tauseq
