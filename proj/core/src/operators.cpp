#include "tracebound/operators.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "tracebound/errors.hpp"
#include "tracebound/graph.hpp"

namespace tracebound {

// ---------------------------------------------------------------------------
// Surd

Surd::Surd(const Rational& value) {
  if (value != 0) {
    sign_ = value > 0 ? 1 : -1;
    radicand_ = value * value;
  }
}

Surd Surd::sqrt_of(const Rational& radicand) {
  if (radicand < 0) {
    throw InputError("square root of a negative rational");
  }
  Surd s;
  if (radicand != 0) {
    s.sign_ = 1;
    s.radicand_ = radicand;
  }
  return s;
}

Surd Surd::inexact(double value) {
  Surd s;
  s.exact_ = false;
  s.approx_ = value;
  return s;
}

double Surd::value() const {
  if (!exact_) {
    return approx_;
  }
  return sign_ == 0 ? 0.0 : sign_ * std::sqrt(to_double(radicand_));
}

Surd operator*(const Surd& a, const Surd& b) {
  if (a.exact_ && b.exact_) {
    Surd s;
    s.sign_ = a.sign_ * b.sign_;
    if (s.sign_ != 0) {
      s.radicand_ = a.radicand_ * b.radicand_;
    }
    return s;
  }
  return Surd::inexact(a.value() * b.value());
}

Surd operator-(const Surd& a) {
  Surd s = a;
  s.sign_ = -s.sign_;
  s.approx_ = -s.approx_;
  return s;
}

Surd operator+(const Surd& a, const Surd& b) {
  if (a.exact_ && b.exact_) {
    if (a.sign_ == 0) {
      return b;
    }
    if (b.sign_ == 0) {
      return a;
    }
    // a = s_a * r * sqrt(q_b) with r = sqrt(q_a / q_b) when that is rational.
    Rational r;
    if (rational_sqrt(a.radicand_ / b.radicand_, r)) {
      const Rational c = a.sign_ * r + b.sign_;
      if (c == 0) {
        return Surd();
      }
      Surd s;
      s.sign_ = c > 0 ? 1 : -1;
      s.radicand_ = c * c * b.radicand_;
      return s;
    }
  }
  return Surd::inexact(a.value() + b.value());
}

bool operator==(const Surd& a, const Surd& b) {
  if (a.exact_ && b.exact_) {
    return a.sign_ == b.sign_ && a.radicand_ == b.radicand_;
  }
  return a.value() == b.value();
}

// ---------------------------------------------------------------------------
// Spaces

std::optional<std::size_t> WeightedSphereSpace::index_of(const TraceElement& t) const {
  auto it = std::lower_bound(basis.begin(), basis.end(), t);
  if (it == basis.end() || *it != t) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - basis.begin());
}

Surd WeightedSphereSpace::inner(const std::vector<Surd>& f, const std::vector<Surd>& g) const {
  if (f.size() != dimension() || g.size() != dimension()) {
    throw InputError("vector dimension does not match the space");
  }
  Surd sum;
  for (std::size_t i = 0; i < dimension(); ++i) {
    if (!f[i].is_zero() && !g[i].is_zero()) {
      sum = sum + f[i] * g[i] * Surd(weights[i]);
    }
  }
  return sum;
}

SphereModel::SphereModel(const Presentation& p, std::size_t depth, const Limits& limits)
    : presentation_(p) {
  const FiberTable table(p, depth, limits);
  for (std::size_t k = 0; k <= depth; ++k) {
    WeightedSphereSpace space;
    space.depth = k;
    space.basis = table.sphere(k);
    space.weights.reserve(space.basis.size());
    for (std::size_t i = 0; i < space.basis.size(); ++i) {
      space.weights.push_back(table.weight(k, i));
    }
    spaces_.push_back(std::move(space));
  }
}

// ---------------------------------------------------------------------------
// Operators

ChainOperator::ChainOperator(std::size_t source_depth, std::size_t target_depth,
                             std::size_t rows, std::size_t cols)
    : source_depth_(source_depth), target_depth_(target_depth), rows_(rows), cols_(cols) {}

Surd ChainOperator::at(std::size_t row, std::size_t col) const {
  auto it = entries_.find({row, col});
  return it == entries_.end() ? Surd() : it->second;
}

void ChainOperator::accumulate(std::size_t row, std::size_t col, const Surd& v) {
  if (row >= rows_ || col >= cols_) {
    throw InputError("operator entry out of range");
  }
  if (v.is_zero()) {
    return;
  }
  auto [it, inserted] = entries_.emplace(Key{row, col}, v);
  if (!inserted) {
    it->second = it->second + v;
    if (it->second.is_zero()) {
      entries_.erase(it);
    }
  }
}

std::vector<Surd> ChainOperator::apply(const std::vector<Surd>& f) const {
  if (f.size() != cols_) {
    throw InputError("vector dimension does not match the operator");
  }
  std::vector<Surd> out(rows_);
  for (const auto& [key, v] : entries_) {
    if (!f[key.second].is_zero()) {
      out[key.first] = out[key.first] + v * f[key.second];
    }
  }
  return out;
}

std::vector<double> ChainOperator::apply(const std::vector<double>& f) const {
  if (f.size() != cols_) {
    throw InputError("vector dimension does not match the operator");
  }
  std::vector<double> out(rows_, 0.0);
  for (const auto& [key, v] : entries_) {
    out[key.first] += v.value() * f[key.second];
  }
  return out;
}

ChainOperator identity_operator(const SphereModel& m, std::size_t k) {
  const std::size_t dim = m.space(k).dimension();
  ChainOperator id(k, k, dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    id.accumulate(i, i, Surd(1));
  }
  return id;
}

ChainOperator compose(const ChainOperator& a, const ChainOperator& b) {
  if (b.target_depth() != a.source_depth() || b.rows() != a.cols()) {
    throw InputError("operator depths do not align for composition");
  }
  // Index b's entries by row so each entry of a meets its column partners.
  std::vector<std::vector<std::pair<std::size_t, Surd>>> b_rows(b.rows());
  for (const auto& [key, v] : b.entries()) {
    b_rows[key.first].emplace_back(key.second, v);
  }
  ChainOperator out(b.source_depth(), a.target_depth(), a.rows(), b.cols());
  for (const auto& [key, va] : a.entries()) {
    for (const auto& [col, vb] : b_rows[key.second]) {
      out.accumulate(key.first, col, va * vb);
    }
  }
  return out;
}

ChainOperator add(const ChainOperator& a, const ChainOperator& b) {
  if (a.source_depth() != b.source_depth() || a.target_depth() != b.target_depth() ||
      a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InputError("operator shapes differ");
  }
  ChainOperator out = a;
  for (const auto& [key, v] : b.entries()) {
    out.accumulate(key.first, key.second, v);
  }
  return out;
}

ChainOperator subtract(const ChainOperator& a, const ChainOperator& b) {
  if (a.source_depth() != b.source_depth() || a.target_depth() != b.target_depth() ||
      a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InputError("operator shapes differ");
  }
  ChainOperator out = a;
  for (const auto& [key, v] : b.entries()) {
    out.accumulate(key.first, key.second, -v);
  }
  return out;
}

ChainOperator adjoint(const SphereModel& m, const ChainOperator& a) {
  const auto& src = m.space(a.source_depth());
  const auto& dst = m.space(a.target_depth());
  ChainOperator out(a.target_depth(), a.source_depth(), a.cols(), a.rows());
  for (const auto& [key, v] : a.entries()) {
    const auto [row, col] = key;
    out.accumulate(col, row, v * Surd(dst.weights[row] / src.weights[col]));
  }
  return out;
}

namespace {

void require_depth(const SphereModel& m, std::size_t k) {
  if (k > m.depth()) {
    throw InputError("depth " + std::to_string(k) + " exceeds the model depth " +
                     std::to_string(m.depth()));
  }
}

}  // namespace

ChainOperator iso_S(const SphereModel& m, Letter x, std::size_t k) {
  if (k == 0) {
    throw InputError("S_x needs K >= 1");
  }
  require_depth(m, k);
  const Presentation& p = m.presentation();
  const TraceElement gx = p.generator(x);
  const auto& src = m.space(k - 1);
  const auto& dst = m.space(k);
  ChainOperator s(k - 1, k, dst.dimension(), src.dimension());
  for (std::size_t col = 0; col < src.dimension(); ++col) {
    const TraceElement tau = p.multiply(gx, src.basis[col]);
    const std::size_t row = *dst.index_of(tau);
    s.accumulate(row, col, Surd::sqrt_of(src.weights[col] / dst.weights[row]));
  }
  return s;
}

ChainOperator adjoint_S(const SphereModel& m, Letter x, std::size_t k) {
  if (k == 0) {
    throw InputError("S_x^* needs K >= 1");
  }
  require_depth(m, k);
  const Presentation& p = m.presentation();
  const TraceElement gx = p.generator(x);
  const auto& src = m.space(k);
  const auto& dst = m.space(k - 1);
  ChainOperator s(k, k - 1, dst.dimension(), src.dimension());
  for (std::size_t row = 0; row < dst.dimension(); ++row) {
    const std::size_t col = *src.index_of(p.multiply(gx, dst.basis[row]));
    s.accumulate(row, col, Surd::sqrt_of(src.weights[col] / dst.weights[row]));
  }
  return s;
}

ChainOperator op_T(const SphereModel& m, const TraceElement& z, std::size_t k) {
  if (k < z.length()) {
    throw InputError("T_z needs K >= |z|");
  }
  require_depth(m, k);
  const Presentation& p = m.presentation();
  const auto& src = m.space(k);
  const auto& dst = m.space(k - z.length());
  ChainOperator t(k, k - z.length(), dst.dimension(), src.dimension());
  for (std::size_t row = 0; row < dst.dimension(); ++row) {
    const std::size_t col = *src.index_of(p.multiply(z, dst.basis[row]));
    t.accumulate(row, col, Surd(1));
  }
  return t;
}

ChainOperator beta_action(const SphereModel& m, const TraceElement& s, std::size_t k) {
  return op_T(m, s, k);
}

ChainOperator range_projection(const SphereModel& m, const std::vector<Letter>& subset,
                               std::size_t k) {
  ChainOperator e = identity_operator(m, k);
  if (k == 0) {
    return e;
  }
  for (Letter x : subset) {
    const ChainOperator range = compose(iso_S(m, x, k), adjoint_S(m, x, k));
    e = compose(subtract(identity_operator(m, k), range), e);
  }
  return e;
}

// ---------------------------------------------------------------------------
// Norms

namespace {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

// Entries in orthonormal coordinates e_tau / sqrt(nu(tau)).
std::vector<Triplet> orthonormal_entries(const SphereModel& m, const ChainOperator& a) {
  const auto& src = m.space(a.source_depth());
  const auto& dst = m.space(a.target_depth());
  std::vector<Triplet> out;
  out.reserve(a.entries().size());
  for (const auto& [key, v] : a.entries()) {
    const double scale = std::sqrt(to_double(dst.weights[key.first] / src.weights[key.second]));
    out.push_back({key.first, key.second, v.value() * scale});
  }
  return out;
}

}  // namespace

double operator_norm(const SphereModel& m, const ChainOperator& a) {
  if (a.is_zero()) {
    return 0.0;
  }
  const std::vector<Triplet> b = orthonormal_entries(m, a);
  std::mt19937_64 rng(0x5eedULL);
  std::uniform_real_distribution<double> dist(0.5, 1.5);
  std::vector<double> v(a.cols());
  for (double& x : v) {
    x = dist(rng);
  }
  auto normalize = [](std::vector<double>& x) {
    double n = 0.0;
    for (double y : x) {
      n += y * y;
    }
    n = std::sqrt(n);
    if (n > 0.0) {
      for (double& y : x) {
        y /= n;
      }
    }
    return n;
  };
  normalize(v);
  double lambda = 0.0;
  constexpr double kTolerance = 1e-10;
  constexpr int kMaxIterations = 10'000;
  for (int it = 0; it < kMaxIterations; ++it) {
    std::vector<double> u(a.rows(), 0.0);
    for (const Triplet& t : b) {
      u[t.row] += t.value * v[t.col];
    }
    double next = 0.0;
    for (double y : u) {
      next += y * y;
    }
    std::vector<double> w(a.cols(), 0.0);
    for (const Triplet& t : b) {
      w[t.col] += t.value * u[t.row];
    }
    if (normalize(w) == 0.0) {
      return std::sqrt(next);
    }
    v = std::move(w);
    const bool converged = std::abs(next - lambda) <= kTolerance * std::max(1.0, next);
    lambda = next;
    if (converged) {
      break;
    }
  }
  return std::sqrt(lambda);
}

std::optional<Rational> hs_norm_squared(const SphereModel& m, const ChainOperator& a) {
  const auto& src = m.space(a.source_depth());
  const auto& dst = m.space(a.target_depth());
  Rational sum = 0;
  for (const auto& [key, v] : a.entries()) {
    if (!v.exact()) {
      return std::nullopt;
    }
    sum += v.radicand() * dst.weights[key.first] / src.weights[key.second];
  }
  return sum;
}

double hs_norm_squared_approx(const SphereModel& m, const ChainOperator& a) {
  double sum = 0.0;
  for (const Triplet& t : orthonormal_entries(m, a)) {
    sum += t.value * t.value;
  }
  return sum;
}

Rational support_mass(const SphereModel& m, const ChainOperator& a) {
  const auto& src = m.space(a.source_depth());
  std::vector<bool> hit(a.cols(), false);
  for (const auto& [key, v] : a.entries()) {
    hit[key.second] = true;
  }
  Rational mass = 0;
  for (std::size_t i = 0; i < hit.size(); ++i) {
    if (hit[i]) {
      mass += src.weights[i];
    }
  }
  return mass;
}

DefectReport make_report(const SphereModel& m, std::string label, const ChainOperator& defect) {
  DefectReport r;
  r.label = std::move(label);
  r.norm_defect = operator_norm(m, defect);
  r.hs_defect = hs_norm_squared(m, defect);
  r.hs_defect_approx = r.hs_defect ? to_double(*r.hs_defect) : hs_norm_squared_approx(m, defect);
  r.exceptional_mass = support_mass(m, defect);
  return r;
}

// ---------------------------------------------------------------------------
// Relation defects

std::vector<DefectReport> relation_defects(const SphereModel& m) {
  const std::size_t k = m.depth();
  if (k == 0) {
    throw InputError("relation defects need depth K >= 1");
  }
  const Presentation& p = m.presentation();
  const auto name = [&](Letter g) { return p.name(g); };
  const auto pair = [&](Letter a, Letter b) { return "[" + name(a) + ":" + name(b) + "]"; };

  std::vector<ChainOperator> s;
  std::vector<ChainOperator> s_star;
  std::vector<ChainOperator> s_prev;
  std::vector<ChainOperator> s_star_prev;
  for (Letter x = 0; x < p.rank(); ++x) {
    s.push_back(iso_S(m, x, k));
    s_star.push_back(adjoint_S(m, x, k));
    if (k >= 2) {
      s_prev.push_back(iso_S(m, x, k - 1));
      s_star_prev.push_back(adjoint_S(m, x, k - 1));
    }
  }

  std::vector<DefectReport> out;
  for (Letter x = 0; x < p.rank(); ++x) {
    out.push_back(make_report(m, "S.iso[" + name(x) + "]",
                              subtract(compose(s_star[x], s[x]), identity_operator(m, k - 1))));
  }
  for (Letter x = 0; x < p.rank(); ++x) {
    for (Letter y = 0; y < p.rank(); ++y) {
      if (x == y || p.commutes(x, y)) {
        continue;
      }
      const std::string label = (p.is_free() ? "S.delta" : "S.orth") + pair(x, y);
      out.push_back(make_report(m, label, compose(s_star[x], s[y])));
    }
  }
  if (p.is_free()) {
    ChainOperator sum(k, k, m.space(k).dimension(), m.space(k).dimension());
    for (Letter x = 0; x < p.rank(); ++x) {
      sum = add(sum, compose(s[x], s_star[x]));
    }
    out.push_back(make_report(m, "S.sum", subtract(sum, identity_operator(m, k))));
  }
  if (k >= 2) {
    for (const auto& [x, y] : p.edges()) {
      out.push_back(make_report(m, "S.comm" + pair(x, y),
                                subtract(compose(s[x], s_prev[y]), compose(s[y], s_prev[x]))));
      out.push_back(make_report(
          m, "S.adjcomm" + pair(x, y),
          subtract(compose(s_star[x], s[y]), compose(s_prev[y], s_star_prev[x]))));
    }
  }
  for (const auto& part : coconnected_partition(commutation_graph(p))) {
    std::vector<Letter> subset(part.begin(), part.end());
    std::string label = "S.proj[";
    for (std::size_t i = 0; i < subset.size(); ++i) {
      label += (i > 0 ? ":" : "") + name(subset[i]);
    }
    out.push_back(make_report(m, label + "]", range_projection(m, subset, k)));
  }
  // Ball truncation: every shell below the top satisfies the chain identity,
  // the top shell has nowhere to go.
  const Rational shell = Rational(1, static_cast<long>(k + 1));
  for (Letter x = 0; x < p.rank(); ++x) {
    DefectReport r;
    r.label = "S.iso.ball[" + name(x) + "]";
    r.norm_defect = 1.0;
    Rational hs = static_cast<long>(m.space(k).dimension());
    Rational mass = shell;
    double hs_approx = static_cast<double>(m.space(k).dimension());
    bool exact = true;
    for (std::size_t j = 0; j < k; ++j) {
      const ChainOperator block =
          subtract(compose(adjoint_S(m, x, j + 1), iso_S(m, x, j + 1)), identity_operator(m, j));
      r.norm_defect = std::max(r.norm_defect, operator_norm(m, block));
      hs_approx += hs_norm_squared_approx(m, block);
      if (auto h = hs_norm_squared(m, block)) {
        hs += *h;
      } else {
        exact = false;
      }
      mass += support_mass(m, block) * shell;
    }
    r.hs_defect_approx = hs_approx;
    if (exact) {
      r.hs_defect = hs;
      r.hs_defect_approx = to_double(hs);
    }
    r.exceptional_mass = mass;
    out.push_back(std::move(r));
  }
  for (Letter x = 0; x < p.rank(); ++x) {
    const ChainOperator t = op_T(m, p.generator(x), k);
    out.push_back(make_report(m, "T.iso[" + name(x) + "]",
                              subtract(compose(adjoint(m, t), t), identity_operator(m, k))));
  }
  return out;
}

std::vector<DefectReport> relation_defects(const Presentation& p, std::size_t k,
                                           const Limits& limits) {
  return relation_defects(SphereModel(p, k, limits));
}

}  // namespace tracebound
