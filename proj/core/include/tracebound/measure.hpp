#ifndef TRACEBOUND_MEASURE_HPP_
#define TRACEBOUND_MEASURE_HPP_

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "tracebound/rational.hpp"
#include "tracebound/trace_monoid.hpp"

namespace tracebound {

// Spheres 0..depth together with their fiber counts under the canonical
// homomorphism: counts(k)[i] = #{w free of length k : phi(w) = sphere(k)[i]}.
// Built by depth-synchronous dynamic programming over normal forms.
class FiberTable {
 public:
  FiberTable(const Presentation& p, std::size_t depth, const Limits& limits = {});

  const Presentation& presentation() const noexcept { return presentation_; }
  std::size_t depth() const noexcept { return spheres_.size() - 1; }

  const std::vector<TraceElement>& sphere(std::size_t k) const { return spheres_.at(k); }
  const std::vector<Integer>& counts(std::size_t k) const { return counts_.at(k); }
  std::optional<std::size_t> index_of(std::size_t k, const TraceElement& t) const;

  // n^k, the number of free words of length k.
  Integer total(std::size_t k) const { return ipow(static_cast<unsigned>(presentation_.rank()), k); }
  // nu_k(tau) = count / n^k.
  Rational weight(std::size_t k, std::size_t i) const;

 private:
  Presentation presentation_;
  std::vector<std::vector<TraceElement>> spheres_;
  std::vector<std::vector<Integer>> counts_;
};

// n^{-|v|}.
Rational free_cylinder_measure(std::size_t n, const FreeWord& v);

// count = #{w free of length depth : target left-divides phi(w)}; the lower
// bound count / n^depth is nondecreasing in depth and converges to the
// boundary measure of the cylinder of target.
struct CylinderMeasure {
  TraceElement target;
  std::size_t depth = 0;
  Integer count;
  Integer denominator;
  Rational lower_bound;
  // The lower bound did not move from depth-1 to depth. At the target's own
  // length there is nothing to compare with and this is false unless the
  // target is the identity.
  bool stabilized = false;
};

CylinderMeasure monoid_cylinder_measure(const FiberTable& table, const TraceElement& target,
                                        std::size_t depth);
CylinderMeasure monoid_cylinder_measure(const Presentation& p, const TraceElement& target,
                                        std::size_t depth, const Limits& limits = {});

// tau -> nu_k(tau) over sphere(k), in sphere order. Sums to exactly 1.
std::vector<std::pair<TraceElement, Rational>> sphere_weights(const Presentation& p,
                                                              std::size_t k,
                                                              const Limits& limits = {});

}  // namespace tracebound

#endif  // TRACEBOUND_MEASURE_HPP_
