#include "tracebound/measure.hpp"

#include <algorithm>

#include "tracebound/errors.hpp"

namespace tracebound {

FiberTable::FiberTable(const Presentation& p, std::size_t depth, const Limits& limits)
    : presentation_(p), spheres_(p.spheres_upto(depth, limits)) {
  counts_.reserve(spheres_.size());
  counts_.push_back({Integer(1)});
  for (std::size_t k = 1; k <= depth; ++k) {
    const auto& prev = spheres_[k - 1];
    const auto& prev_counts = counts_[k - 1];
    const auto& layer = spheres_[k];
    std::vector<Integer> next(layer.size(), Integer(0));
    for (std::size_t i = 0; i < prev.size(); ++i) {
      for (Letter g = 0; g < p.rank(); ++g) {
        const TraceElement sigma = p.append(prev[i], g);
        auto it = std::lower_bound(layer.begin(), layer.end(), sigma);
        next[static_cast<std::size_t>(it - layer.begin())] += prev_counts[i];
      }
    }
    counts_.push_back(std::move(next));
  }
}

std::optional<std::size_t> FiberTable::index_of(std::size_t k, const TraceElement& t) const {
  const auto& layer = spheres_.at(k);
  auto it = std::lower_bound(layer.begin(), layer.end(), t);
  if (it == layer.end() || *it != t) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - layer.begin());
}

Rational FiberTable::weight(std::size_t k, std::size_t i) const {
  return Rational(counts_.at(k).at(i), total(k));
}

Rational free_cylinder_measure(std::size_t n, const FreeWord& v) {
  if (n == 0) {
    throw InputError("free monoid needs n >= 1");
  }
  for (Letter g : v) {
    if (g >= n) {
      throw InputError("letter out of range for the free monoid");
    }
  }
  return Rational(Integer(1), ipow(static_cast<unsigned>(n), v.size()));
}

namespace {

Integer divisible_count(const FiberTable& table, const TraceElement& target, std::size_t k) {
  const Presentation& p = table.presentation();
  Integer count = 0;
  const auto& layer = table.sphere(k);
  const auto& counts = table.counts(k);
  for (std::size_t i = 0; i < layer.size(); ++i) {
    if (p.left_divides(target, layer[i])) {
      count += counts[i];
    }
  }
  return count;
}

}  // namespace

CylinderMeasure monoid_cylinder_measure(const FiberTable& table, const TraceElement& target,
                                        std::size_t depth) {
  if (depth < target.length()) {
    throw InputError("cylinder depth must be at least the length of the target");
  }
  if (depth > table.depth()) {
    throw InputError("fiber table is shallower than the requested depth");
  }
  CylinderMeasure m;
  m.target = target;
  m.depth = depth;
  m.count = divisible_count(table, target, depth);
  m.denominator = table.total(depth);
  m.lower_bound = Rational(m.count, m.denominator);
  if (depth == target.length()) {
    m.stabilized = target.is_identity();
  } else {
    const Integer prev = divisible_count(table, target, depth - 1);
    m.stabilized = Rational(prev, table.total(depth - 1)) == m.lower_bound;
  }
  return m;
}

CylinderMeasure monoid_cylinder_measure(const Presentation& p, const TraceElement& target,
                                        std::size_t depth, const Limits& limits) {
  return monoid_cylinder_measure(FiberTable(p, depth, limits), target, depth);
}

std::vector<std::pair<TraceElement, Rational>> sphere_weights(const Presentation& p,
                                                              std::size_t k,
                                                              const Limits& limits) {
  const FiberTable table(p, k, limits);
  std::vector<std::pair<TraceElement, Rational>> out;
  const auto& layer = table.sphere(k);
  out.reserve(layer.size());
  for (std::size_t i = 0; i < layer.size(); ++i) {
    out.emplace_back(layer[i], table.weight(k, i));
  }
  return out;
}

}  // namespace tracebound
