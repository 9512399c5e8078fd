#ifndef TRACEBOUND_FRACTAL_HPP_
#define TRACEBOUND_FRACTAL_HPP_

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tracebound/boundary.hpp"
#include "tracebound/rational.hpp"
#include "tracebound/trace_monoid.hpp"

namespace tracebound {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// x -> A x + b. The Lipschitz constant is the spectral norm of A.
class AffineMap {
 public:
  AffineMap(Matrix linear, Vector translation);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(translation_.size()); }
  const Matrix& linear() const noexcept { return linear_; }
  const Vector& translation() const noexcept { return translation_; }
  double lipschitz() const noexcept { return lipschitz_; }

  Vector operator()(const Vector& x) const { return linear_ * x + translation_; }
  // Solution of (I - A) p = b; meaningful for contractions.
  Vector fixed_point() const;

 private:
  Matrix linear_;
  Vector translation_;
  double lipschitz_;
};

// Outcome of checking an assignment of affine maps to generators.
struct ValidationReport {
  bool ok = false;
  std::vector<std::string> issues;
  double delta = 0.0;  // largest generator Lipschitz constant
  Vector center;       // mean of the generator fixed points
  double radius = 0.0; // invariant ball radius around center
};

// Contraction (every Lipschitz constant < 1) and relation compatibility:
// for each commuting pair, A_x A_y = A_y A_x and A_x b_y + b_x = A_y b_x + b_y
// within 1e-9.
ValidationReport validate_action(const Presentation& p, const std::vector<AffineMap>& maps);

// A validated contracting action of the monoid by affine maps.
class IfsAction {
 public:
  // Throws InputError listing the issues when validation fails.
  static IfsAction create(Presentation p, std::vector<AffineMap> maps);

  const Presentation& presentation() const noexcept { return presentation_; }
  const AffineMap& map(Letter g) const { return maps_.at(g); }
  std::size_t dimension() const noexcept { return maps_.front().dimension(); }
  double delta() const noexcept { return delta_; }
  const Vector& center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }

  // Radius of the invariant ball around center() that also contains x.
  double radius_for(const Vector& x) const;

  // alpha(w)(x) for the left action: the last letter acts first.
  Vector apply(const FreeWord& w, const Vector& x) const;
  Vector apply(const TraceElement& t, const Vector& x) const { return apply(t.word(), x); }
  // Product of the letters' Lipschitz constants, at most delta^|w|.
  double lipschitz(const FreeWord& w) const;

 private:
  IfsAction(Presentation p, std::vector<AffineMap> maps, const ValidationReport& report);

  Presentation presentation_;
  std::vector<AffineMap> maps_;
  double delta_;
  Vector center_;
  double radius_;
};

// IFS text: an optional presentation ("generators:", "commute:"), a "dim: d"
// header, and one "map <generator>: a11 ... a1d a21 ... add b1 ... bd" line per
// generator. Without presentation lines, `fallback` is used.
IfsAction parse_ifs(std::string_view text, const Presentation* fallback = nullptr);
IfsAction load_ifs(const std::string& path, const Presentation* fallback = nullptr);

struct PointCloud {
  std::vector<Vector> points;
  std::size_t depth = 0;
};

// {alpha(tau)(seed) : tau in sphere(k)}, in sphere order.
PointCloud attractor_points(const IfsAction& a, std::size_t k, const Vector& seed,
                            const Limits& limits = {});

struct KappaResult {
  Vector point;
  double error_bound = 0.0;
};

// alpha(f(k))(x) with a certified bound delta^k * 2 * radius_for(x) on the
// distance to the limit point; for x in the invariant ball that is
// delta^k * 2R.
KappaResult kappa(const IfsAction& a, const BoundaryWord& f, const Vector& x, std::size_t k);
// |kappa(f, x, k) - kappa(f, y, k)|, at most delta^k |x - y|.
double kappa_basepoint_independence(const IfsAction& a, const BoundaryWord& f, const Vector& x,
                                    const Vector& y, std::size_t k);

// Closed axis-aligned box.
struct Box {
  Vector lo;
  Vector hi;
};

// Bounding box of the invariant ball.
Box invariant_box(const IfsAction& a);

struct MassInterval {
  Rational lower;
  Rational upper;
};

// Each element tau of sphere(k) carries its fiber weight and the ball of
// radius lip(tau) * (R + |x - c|) around alpha(tau)(x), which contains
// alpha(tau)(attractor). It counts toward `lower` when the ball lies in the box
// and toward `upper` when the ball meets it.
MassInterval contact_mass(const IfsAction& a, const Vector& x, std::size_t k, const Box& box,
                          const Limits& limits = {});

struct GridSpec {
  Box box;
  std::size_t resolution = 64;  // cells per axis
};

// Per-cell mass intervals with common denominator n^k. Cells are closed and
// share faces; each ball adds to the lower count of at most one cell.
class DensityGrid {
 public:
  DensityGrid(GridSpec spec, std::size_t dimension, std::uint64_t denominator);

  const GridSpec& spec() const noexcept { return spec_; }
  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t cell_count() const noexcept { return lower_.size(); }
  std::uint64_t denominator() const noexcept { return denominator_; }
  std::uint64_t lower_count(std::size_t cell) const { return lower_.at(cell); }
  std::uint64_t upper_count(std::size_t cell) const { return upper_.at(cell); }
  Rational lower(std::size_t cell) const;
  Rational upper(std::size_t cell) const;
  Box cell_box(std::size_t cell) const;
  // Row-major with axis 0 fastest.
  std::vector<std::size_t> cell_coords(std::size_t cell) const;

  void add_lower(std::size_t cell, std::uint64_t count) { lower_.at(cell) += count; }
  void add_upper(std::size_t cell, std::uint64_t count) { upper_.at(cell) += count; }

 private:
  GridSpec spec_;
  std::size_t dimension_;
  std::uint64_t denominator_;
  std::vector<std::uint64_t> lower_;
  std::vector<std::uint64_t> upper_;
};

DensityGrid contact_measure(const IfsAction& a, const Vector& x, std::size_t k,
                            const GridSpec& grid, const Limits& limits = {},
                            std::size_t max_cells = std::size_t{1} << 24);

// max over grid cells C of positive empirical mass of
// sqrt(mu(alpha_t^{-1} C) / mu(C)), i.e. |gamma_t 1_C| / |1_C|, against the
// point-mass approximation of the contact measure at depth k.
double gamma_norm_check(const IfsAction& a, const Vector& x, const TraceElement& t,
                        std::size_t k, const GridSpec& grid, const Limits& limits = {});

double hausdorff_distance(const PointCloud& a, const PointCloud& b);

// Least-squares slope of log N(r) against log r, where N(r) counts occupied
// cells of an r x ... x r grid over the cube spanned by `box`.
double box_counting_dimension(const std::vector<Vector>& points, const Box& box,
                              const std::vector<std::size_t>& resolutions);

// Binary PGM (P5, maxval 255) of the cell midpoint masses scaled by the
// largest one. One- and two-dimensional grids only; row 0 is the top.
std::string render_pgm(const DensityGrid& grid);
// cell,lo0,hi0,...,lower_num,upper_num,denominator
std::string render_csv(const DensityGrid& grid);

}  // namespace tracebound

#endif  // TRACEBOUND_FRACTAL_HPP_
