#include "tracebound/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

#include "tracebound/errors.hpp"
#include "tracebound/format.hpp"
#include "tracebound/measure.hpp"

namespace tracebound {

namespace {

constexpr double kRelationTolerance = 1e-9;
// Slack for ball-in-box tests; absorbs round-off in composed maps.
constexpr double kContainmentSlack = 1e-12;

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) {
    return 0.0;
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

std::uint64_t checked_power(std::size_t base, std::size_t exponent) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (out > std::numeric_limits<std::uint64_t>::max() / base) {
      throw CapacityError("n^k does not fit in 64 bits", i);
    }
    out *= base;
  }
  return out;
}

std::uint64_t to_u64(const Integer& v) {
  return v.convert_to<std::uint64_t>();
}

double box_distance(const Vector& p, const Box& box) {
  double sq = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double d = std::max({box.lo(i) - p(i), 0.0, p(i) - box.hi(i)});
    sq += d * d;
  }
  return std::sqrt(sq);
}

bool ball_inside(const Vector& p, double r, const Box& box) {
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) - r < box.lo(i) - kContainmentSlack || p(i) + r > box.hi(i) + kContainmentSlack) {
      return false;
    }
  }
  return true;
}

void check_box(const Box& box, std::size_t dim) {
  if (static_cast<std::size_t>(box.lo.size()) != dim ||
      static_cast<std::size_t>(box.hi.size()) != dim) {
    throw InputError("box dimension does not match the action");
  }
  for (std::size_t i = 0; i < dim; ++i) {
    if (!(box.lo(static_cast<Eigen::Index>(i)) < box.hi(static_cast<Eigen::Index>(i)))) {
      throw InputError("box must have positive extent on every axis");
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Maps and actions

AffineMap::AffineMap(Matrix linear, Vector translation)
    : linear_(std::move(linear)), translation_(std::move(translation)) {
  if (linear_.rows() != linear_.cols() || linear_.rows() != translation_.size() ||
      translation_.size() == 0) {
    throw InputError("affine map needs a d x d matrix and a length-d translation");
  }
  lipschitz_ = spectral_norm(linear_);
}

Vector AffineMap::fixed_point() const {
  const Matrix id = Matrix::Identity(linear_.rows(), linear_.cols());
  return (id - linear_).colPivHouseholderQr().solve(translation_);
}

ValidationReport validate_action(const Presentation& p, const std::vector<AffineMap>& maps) {
  ValidationReport report;
  if (maps.size() != p.rank()) {
    report.issues.push_back("expected " + std::to_string(p.rank()) + " maps, got " +
                            std::to_string(maps.size()));
    return report;
  }
  const std::size_t dim = maps.front().dimension();
  for (Letter g = 0; g < p.rank(); ++g) {
    if (maps[g].dimension() != dim) {
      report.issues.push_back("map for " + p.name(g) + " has the wrong dimension");
      return report;
    }
  }
  for (Letter g = 0; g < p.rank(); ++g) {
    report.delta = std::max(report.delta, maps[g].lipschitz());
    if (maps[g].lipschitz() >= 1.0) {
      report.issues.push_back("generator " + p.name(g) + " is not contracting (Lipschitz " +
                              format_double(maps[g].lipschitz()) +
                              " >= 1); non-strict contractions are rejected");
    }
  }
  for (const auto& [x, y] : p.edges()) {
    const AffineMap& mx = maps[x];
    const AffineMap& my = maps[y];
    const double lin = (mx.linear() * my.linear() - my.linear() * mx.linear()).cwiseAbs().maxCoeff();
    const double trans = (mx.linear() * my.translation() + mx.translation() -
                          my.linear() * mx.translation() - my.translation())
                             .cwiseAbs()
                             .maxCoeff();
    if (lin > kRelationTolerance || trans > kRelationTolerance) {
      report.issues.push_back("maps for commuting pair " + p.name(x) + "," + p.name(y) +
                              " do not commute (defect " + format_double(std::max(lin, trans)) +
                              ")");
    }
  }
  if (!report.issues.empty()) {
    return report;
  }
  report.center = Vector::Zero(static_cast<Eigen::Index>(dim));
  for (const AffineMap& m : maps) {
    report.center += m.fixed_point();
  }
  report.center /= static_cast<double>(maps.size());
  double spread = 0.0;
  for (const AffineMap& m : maps) {
    spread = std::max(spread, (m(report.center) - report.center).norm());
  }
  report.radius = spread / (1.0 - report.delta);
  report.ok = true;
  return report;
}

IfsAction::IfsAction(Presentation p, std::vector<AffineMap> maps, const ValidationReport& report)
    : presentation_(std::move(p)),
      maps_(std::move(maps)),
      delta_(report.delta),
      center_(report.center),
      radius_(report.radius) {}

IfsAction IfsAction::create(Presentation p, std::vector<AffineMap> maps) {
  const ValidationReport report = validate_action(p, maps);
  if (!report.ok) {
    std::string msg = "invalid action:";
    for (const std::string& issue : report.issues) {
      msg += " " + issue + ";";
    }
    throw InputError(msg);
  }
  return IfsAction(std::move(p), std::move(maps), report);
}

double IfsAction::radius_for(const Vector& x) const {
  if (x.size() != center_.size()) {
    throw InputError("point dimension does not match the action");
  }
  return std::max(radius_, (x - center_).norm());
}

Vector IfsAction::apply(const FreeWord& w, const Vector& x) const {
  if (static_cast<std::size_t>(x.size()) != dimension()) {
    throw InputError("point dimension does not match the action");
  }
  Vector y = x;
  for (std::size_t i = w.size(); i-- > 0;) {
    y = maps_.at(w[i])(y);
  }
  return y;
}

double IfsAction::lipschitz(const FreeWord& w) const {
  double l = 1.0;
  for (Letter g : w) {
    l *= maps_.at(g).lipschitz();
  }
  return l;
}

// ---------------------------------------------------------------------------
// Parsing

IfsAction parse_ifs(std::string_view text, const Presentation* fallback) {
  std::string presentation_text;
  std::vector<std::pair<std::size_t, std::string>> lines;
  {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
      ++line_no;
      std::string line = raw.substr(0, raw.find('#'));
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) {
        continue;
      }
      line = line.substr(first);
      if (line.rfind("generators", 0) == 0 || line.rfind("commute", 0) == 0) {
        presentation_text += line + "\n";
      } else {
        lines.emplace_back(line_no, line);
      }
    }
  }
  std::optional<Presentation> own;
  if (!presentation_text.empty()) {
    own = parse_presentation(presentation_text);
    if (fallback != nullptr && !(*own == *fallback)) {
      throw InputError("IFS file presentation differs from the given presentation");
    }
  } else if (fallback == nullptr) {
    throw InputError("IFS file has no presentation and none was supplied");
  }
  const Presentation& p = own ? *own : *fallback;

  std::optional<std::size_t> dim;
  std::vector<std::optional<AffineMap>> maps(p.rank());
  for (const auto& [line_no, line] : lines) {
    const std::string where = "line " + std::to_string(line_no) + ": ";
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw InputError(where + "expected 'key: value'");
    }
    std::istringstream key(line.substr(0, colon));
    std::istringstream value(line.substr(colon + 1));
    std::string word;
    key >> word;
    if (word == "dim") {
      std::size_t d = 0;
      if (dim || !(value >> d) || d == 0) {
        throw InputError(where + "bad or repeated dim");
      }
      dim = d;
    } else if (word == "map") {
      if (!dim) {
        throw InputError(where + "'dim:' must precede the maps");
      }
      std::string gen;
      key >> gen;
      const Letter g = p.letter(gen);
      if (maps[g]) {
        throw InputError(where + "second map for " + gen);
      }
      const auto d = static_cast<Eigen::Index>(*dim);
      std::vector<double> nums;
      std::string tok;
      while (value >> tok) {
        try {
          std::size_t used = 0;
          nums.push_back(std::stod(tok, &used));
          if (used != tok.size()) {
            throw InputError(where + "bad number '" + tok + "'");
          }
        } catch (const std::logic_error&) {
          throw InputError(where + "bad number '" + tok + "'");
        }
      }
      if (nums.size() != static_cast<std::size_t>(d * d + d)) {
        throw InputError(where + "expected " + std::to_string(d * d + d) + " numbers");
      }
      Matrix a(d, d);
      Vector b(d);
      for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
          a(r, c) = nums[static_cast<std::size_t>(r * d + c)];
        }
        b(r) = nums[static_cast<std::size_t>(d * d + r)];
      }
      maps[g] = AffineMap(std::move(a), std::move(b));
    } else {
      throw InputError(where + "unknown key '" + word + "'");
    }
  }
  std::vector<AffineMap> out;
  for (Letter g = 0; g < p.rank(); ++g) {
    if (!maps[g]) {
      throw InputError("no map for generator " + p.name(g));
    }
    out.push_back(std::move(*maps[g]));
  }
  return IfsAction::create(p, std::move(out));
}

IfsAction load_ifs(const std::string& path, const Presentation* fallback) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open '" + path + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_ifs(buf.str(), fallback);
}

// ---------------------------------------------------------------------------
// Attractor and kappa

PointCloud attractor_points(const IfsAction& a, std::size_t k, const Vector& seed,
                            const Limits& limits) {
  PointCloud cloud;
  cloud.depth = k;
  for (const TraceElement& tau : a.presentation().sphere(k, limits)) {
    cloud.points.push_back(a.apply(tau, seed));
  }
  return cloud;
}

KappaResult kappa(const IfsAction& a, const BoundaryWord& f, const Vector& x, std::size_t k) {
  if (k == 0) {
    throw InputError("kappa needs k >= 1");
  }
  KappaResult r;
  r.point = a.apply(prefix_element(a.presentation(), f, k), x);
  r.error_bound = std::pow(a.delta(), static_cast<double>(k)) * 2.0 * a.radius_for(x);
  return r;
}

double kappa_basepoint_independence(const IfsAction& a, const BoundaryWord& f, const Vector& x,
                                    const Vector& y, std::size_t k) {
  return (kappa(a, f, x, k).point - kappa(a, f, y, k).point).norm();
}

// ---------------------------------------------------------------------------
// Contact measure

Box invariant_box(const IfsAction& a) {
  const Vector r = Vector::Constant(a.center().size(), a.radius());
  return Box{a.center() - r, a.center() + r};
}

namespace {

struct WeightedBall {
  Vector center;
  double radius;
  std::uint64_t count;
};

std::vector<WeightedBall> sphere_balls(const IfsAction& a, const Vector& x, std::size_t k,
                                       const Limits& limits, std::uint64_t& denominator) {
  const FiberTable table(a.presentation(), k, limits);
  denominator = checked_power(a.presentation().rank(), k);
  const double spread = a.radius() + (x - a.center()).norm();
  std::vector<WeightedBall> balls;
  const auto& layer = table.sphere(k);
  balls.reserve(layer.size());
  for (std::size_t i = 0; i < layer.size(); ++i) {
    balls.push_back({a.apply(layer[i], x), a.lipschitz(layer[i].word()) * spread,
                     to_u64(table.counts(k)[i])});
  }
  return balls;
}

}  // namespace

MassInterval contact_mass(const IfsAction& a, const Vector& x, std::size_t k, const Box& box,
                          const Limits& limits) {
  check_box(box, a.dimension());
  std::uint64_t denominator = 0;
  std::uint64_t lower = 0;
  std::uint64_t upper = 0;
  for (const WeightedBall& b : sphere_balls(a, x, k, limits, denominator)) {
    if (ball_inside(b.center, b.radius, box)) {
      lower += b.count;
    }
    if (box_distance(b.center, box) <= b.radius + kContainmentSlack) {
      upper += b.count;
    }
  }
  return {Rational(Integer(lower), Integer(denominator)),
          Rational(Integer(upper), Integer(denominator))};
}

DensityGrid::DensityGrid(GridSpec spec, std::size_t dimension, std::uint64_t denominator)
    : spec_(std::move(spec)), dimension_(dimension), denominator_(denominator) {
  if (spec_.resolution == 0) {
    throw InputError("grid resolution must be positive");
  }
  check_box(spec_.box, dimension_);
  std::size_t cells = 1;
  for (std::size_t i = 0; i < dimension_; ++i) {
    cells *= spec_.resolution;
  }
  lower_.assign(cells, 0);
  upper_.assign(cells, 0);
}

Rational DensityGrid::lower(std::size_t cell) const {
  return Rational(Integer(lower_.at(cell)), Integer(denominator_));
}

Rational DensityGrid::upper(std::size_t cell) const {
  return Rational(Integer(upper_.at(cell)), Integer(denominator_));
}

std::vector<std::size_t> DensityGrid::cell_coords(std::size_t cell) const {
  std::vector<std::size_t> coords(dimension_);
  for (std::size_t i = 0; i < dimension_; ++i) {
    coords[i] = cell % spec_.resolution;
    cell /= spec_.resolution;
  }
  return coords;
}

Box DensityGrid::cell_box(std::size_t cell) const {
  const auto coords = cell_coords(cell);
  Box b{spec_.box.lo, spec_.box.hi};
  for (std::size_t i = 0; i < dimension_; ++i) {
    const auto ax = static_cast<Eigen::Index>(i);
    const double h = (spec_.box.hi(ax) - spec_.box.lo(ax)) / static_cast<double>(spec_.resolution);
    b.lo(ax) = spec_.box.lo(ax) + h * static_cast<double>(coords[i]);
    b.hi(ax) = coords[i] + 1 == spec_.resolution ? spec_.box.hi(ax) : b.lo(ax) + h;
  }
  return b;
}

namespace {

// Cell index range [first, last] along one axis that a closed interval can
// touch; empty when first > last.
std::pair<long, long> axis_range(double lo, double hi, double box_lo, double h, std::size_t res) {
  const long first = std::max(0L, static_cast<long>(std::floor((lo - box_lo) / h)) - 1);
  const long last = std::min(static_cast<long>(res) - 1,
                             static_cast<long>(std::floor((hi - box_lo) / h)) + 1);
  return {first, last};
}

}  // namespace

DensityGrid contact_measure(const IfsAction& a, const Vector& x, std::size_t k,
                            const GridSpec& grid, const Limits& limits, std::size_t max_cells) {
  const std::size_t dim = a.dimension();
  double cells = 1.0;
  for (std::size_t i = 0; i < dim; ++i) {
    cells *= static_cast<double>(grid.resolution);
  }
  if (cells > static_cast<double>(max_cells)) {
    throw CapacityError("grid has more than " + std::to_string(max_cells) + " cells", 0);
  }
  std::uint64_t denominator = 0;
  const auto balls = sphere_balls(a, x, k, limits, denominator);
  DensityGrid out(grid, dim, denominator);
  std::vector<double> h(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const auto ax = static_cast<Eigen::Index>(i);
    h[i] = (grid.box.hi(ax) - grid.box.lo(ax)) / static_cast<double>(grid.resolution);
  }
  for (const WeightedBall& b : balls) {
    std::vector<std::pair<long, long>> ranges(dim);
    bool empty = false;
    for (std::size_t i = 0; i < dim; ++i) {
      const auto ax = static_cast<Eigen::Index>(i);
      ranges[i] = axis_range(b.center(ax) - b.radius, b.center(ax) + b.radius, grid.box.lo(ax),
                             h[i], grid.resolution);
      empty = empty || ranges[i].first > ranges[i].second;
    }
    if (empty) {
      continue;
    }
    bool placed = false;
    std::vector<long> idx(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      idx[i] = ranges[i].first;
    }
    while (true) {
      std::size_t cell = 0;
      for (std::size_t i = dim; i-- > 0;) {
        cell = cell * grid.resolution + static_cast<std::size_t>(idx[i]);
      }
      const Box cb = out.cell_box(cell);
      if (box_distance(b.center, cb) <= b.radius + kContainmentSlack) {
        out.add_upper(cell, b.count);
        if (!placed && ball_inside(b.center, b.radius, cb)) {
          out.add_lower(cell, b.count);
          placed = true;
        }
      }
      std::size_t axis = 0;
      while (axis < dim && idx[axis] == ranges[axis].second) {
        idx[axis] = ranges[axis].first;
        ++axis;
      }
      if (axis == dim) {
        break;
      }
      ++idx[axis];
    }
  }
  return out;
}

double gamma_norm_check(const IfsAction& a, const Vector& x, const TraceElement& t,
                        std::size_t k, const GridSpec& grid, const Limits& limits) {
  const std::size_t dim = a.dimension();
  check_box(grid.box, dim);
  const FiberTable table(a.presentation(), k, limits);
  // Cell of a point, or nullopt outside the grid.
  auto locate = [&](const Vector& p) -> std::optional<std::size_t> {
    std::size_t cell = 0;
    for (std::size_t i = dim; i-- > 0;) {
      const auto ax = static_cast<Eigen::Index>(i);
      if (p(ax) < grid.box.lo(ax) - kContainmentSlack ||
          p(ax) > grid.box.hi(ax) + kContainmentSlack) {
        return std::nullopt;
      }
      const double h = (grid.box.hi(ax) - grid.box.lo(ax)) / static_cast<double>(grid.resolution);
      auto c = static_cast<long>(std::floor((p(ax) - grid.box.lo(ax)) / h));
      c = std::clamp(c, 0L, static_cast<long>(grid.resolution) - 1);
      cell = cell * grid.resolution + static_cast<std::size_t>(c);
    }
    return cell;
  };
  std::map<std::size_t, Integer> mass;
  std::map<std::size_t, Integer> preimage;
  const auto& layer = table.sphere(k);
  for (std::size_t i = 0; i < layer.size(); ++i) {
    const Vector p = a.apply(layer[i], x);
    const Integer& w = table.counts(k)[i];
    if (auto c = locate(p)) {
      mass[*c] += w;
    }
    if (auto c = locate(a.apply(t, p))) {
      preimage[*c] += w;
    }
  }
  double worst = 0.0;
  for (const auto& [cell, m] : mass) {
    auto it = preimage.find(cell);
    const Integer pre = it == preimage.end() ? Integer(0) : it->second;
    worst = std::max(worst, std::sqrt(to_double(Rational(pre, m))));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Point-cloud geometry

namespace {

// Uniform hash grid for nearest-neighbour queries.
class NeighbourGrid {
 public:
  explicit NeighbourGrid(const std::vector<Vector>& points) : points_(points) {
    const auto dim = points.front().size();
    lo_ = points.front();
    Vector hi = points.front();
    for (const Vector& p : points) {
      lo_ = lo_.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
    const double extent = std::max((hi - lo_).maxCoeff(), 1e-300);
    const double per_axis = std::pow(static_cast<double>(points.size()), 1.0 / static_cast<double>(dim));
    cell_ = extent / std::max(1.0, per_axis);
    for (std::size_t i = 0; i < points.size(); ++i) {
      buckets_[key(cell_of(points[i]))].push_back(i);
    }
  }

  double nearest(const Vector& q) const {
    const std::vector<long> home = cell_of(q);
    double best = std::numeric_limits<double>::infinity();
    for (long ring = 0;; ++ring) {
      // Every point outside the rings searched so far is at least this far.
      const double reach = static_cast<double>(ring - 1) * cell_;
      if (best <= reach) {
        return best;
      }
      visit_ring(home, ring, [&](std::size_t i) { best = std::min(best, (points_[i] - q).norm()); });
      if (ring > max_ring_ + 2) {
        return best;
      }
    }
  }

 private:
  std::vector<long> cell_of(const Vector& p) const {
    std::vector<long> c(static_cast<std::size_t>(p.size()));
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      c[static_cast<std::size_t>(i)] = static_cast<long>(std::floor((p(i) - lo_(i)) / cell_));
    }
    return c;
  }

  std::string key(const std::vector<long>& c) const {
    std::string k;
    for (long v : c) {
      k += std::to_string(v) + ",";
    }
    const_cast<NeighbourGrid*>(this)->max_ring_ = std::max<long>(
        max_ring_, *std::max_element(c.begin(), c.end(), [](long a, long b) {
          return std::abs(a) < std::abs(b);
        }));
    return k;
  }

  template <typename F>
  void visit_ring(const std::vector<long>& home, long ring, F&& visit) const {
    const std::size_t dim = home.size();
    std::vector<long> off(dim, -ring);
    while (true) {
      long linf = 0;
      for (long o : off) {
        linf = std::max(linf, std::abs(o));
      }
      if (linf == ring) {
        std::vector<long> c(dim);
        for (std::size_t i = 0; i < dim; ++i) {
          c[i] = home[i] + off[i];
        }
        std::string k;
        for (long v : c) {
          k += std::to_string(v) + ",";
        }
        if (auto it = buckets_.find(k); it != buckets_.end()) {
          for (std::size_t i : it->second) {
            visit(i);
          }
        }
      }
      std::size_t axis = 0;
      while (axis < dim && off[axis] == ring) {
        off[axis] = -ring;
        ++axis;
      }
      if (axis == dim) {
        break;
      }
      ++off[axis];
    }
  }

  const std::vector<Vector>& points_;
  Vector lo_;
  double cell_ = 1.0;
  long max_ring_ = 0;
  std::unordered_map<std::string, std::vector<std::size_t>> buckets_;
};

double directed_hausdorff(const std::vector<Vector>& from, const std::vector<Vector>& to) {
  if (to.size() <= 64) {
    double worst = 0.0;
    for (const Vector& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const Vector& q : to) {
        best = std::min(best, (p - q).norm());
      }
      worst = std::max(worst, best);
    }
    return worst;
  }
  const NeighbourGrid grid(to);
  double worst = 0.0;
  for (const Vector& p : from) {
    worst = std::max(worst, grid.nearest(p));
  }
  return worst;
}

}  // namespace

double hausdorff_distance(const PointCloud& a, const PointCloud& b) {
  if (a.points.empty() || b.points.empty()) {
    throw InputError("Hausdorff distance needs nonempty clouds");
  }
  return std::max(directed_hausdorff(a.points, b.points), directed_hausdorff(b.points, a.points));
}

double box_counting_dimension(const std::vector<Vector>& points, const Box& box,
                              const std::vector<std::size_t>& resolutions) {
  if (points.empty() || resolutions.size() < 2) {
    throw InputError("box counting needs points and at least two resolutions");
  }
  const double side = (box.hi - box.lo).maxCoeff();
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t r : resolutions) {
    const double h = side / static_cast<double>(r);
    std::vector<std::vector<long>> occupied;
    occupied.reserve(points.size());
    for (const Vector& p : points) {
      std::vector<long> c(static_cast<std::size_t>(p.size()));
      for (Eigen::Index i = 0; i < p.size(); ++i) {
        const auto v = static_cast<long>(std::floor((p(i) - box.lo(i)) / h));
        c[static_cast<std::size_t>(i)] = std::clamp(v, 0L, static_cast<long>(r) - 1);
      }
      occupied.push_back(std::move(c));
    }
    std::sort(occupied.begin(), occupied.end());
    const auto distinct = std::unique(occupied.begin(), occupied.end()) - occupied.begin();
    xs.push_back(std::log(static_cast<double>(r)));
    ys.push_back(std::log(static_cast<double>(distinct)));
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------------------
// Rendering

std::string render_pgm(const DensityGrid& grid) {
  if (grid.dimension() > 2) {
    throw InputError("PGM rendering supports one- and two-dimensional grids");
  }
  const std::size_t width = grid.spec().resolution;
  const std::size_t height = grid.dimension() == 2 ? width : 1;
  std::vector<double> mid(grid.cell_count());
  double top = 0.0;
  for (std::size_t c = 0; c < grid.cell_count(); ++c) {
    mid[c] = 0.5 * (static_cast<double>(grid.lower_count(c)) +
                    static_cast<double>(grid.upper_count(c)));
    top = std::max(top, mid[c]);
  }
  std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  for (std::size_t row = 0; row < height; ++row) {
    const std::size_t iy = height - 1 - row;
    for (std::size_t ix = 0; ix < width; ++ix) {
      const double v = top > 0.0 ? mid[iy * width + ix] / top : 0.0;
      out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * v))));
    }
  }
  return out;
}

std::string render_csv(const DensityGrid& grid) {
  std::string out = "cell";
  for (std::size_t i = 0; i < grid.dimension(); ++i) {
    out += ",lo" + std::to_string(i) + ",hi" + std::to_string(i);
  }
  out += ",lower_num,upper_num,denominator\n";
  for (std::size_t c = 0; c < grid.cell_count(); ++c) {
    const Box b = grid.cell_box(c);
    out += std::to_string(c);
    for (Eigen::Index i = 0; i < b.lo.size(); ++i) {
      out += "," + format_double(b.lo(i)) + "," + format_double(b.hi(i));
    }
    out += "," + std::to_string(grid.lower_count(c)) + "," + std::to_string(grid.upper_count(c)) +
           "," + std::to_string(grid.denominator()) + "\n";
  }
  return out;
}

}  // namespace tracebound
