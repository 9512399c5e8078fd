#ifndef TRACEBOUND_OPERATORS_HPP_
#define TRACEBOUND_OPERATORS_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tracebound/measure.hpp"
#include "tracebound/rational.hpp"
#include "tracebound/trace_monoid.hpp"

namespace tracebound {

// A real number sign * sqrt(radicand) with a rational radicand. Products stay
// in this form; sums do whenever the two radicands differ by a rational
// square, and otherwise degrade to an inexact double.
class Surd {
 public:
  Surd() = default;
  Surd(int value) : Surd(Rational(value)) {}  // NOLINT(google-explicit-constructor)
  explicit Surd(const Rational& value);
  static Surd sqrt_of(const Rational& radicand);
  static Surd inexact(double value);

  bool exact() const noexcept { return exact_; }
  bool is_zero() const noexcept { return exact_ ? sign_ == 0 : approx_ == 0.0; }
  double value() const;
  // Exact square; only meaningful when exact().
  const Rational& radicand() const noexcept { return radicand_; }
  int sign() const noexcept { return sign_; }

  friend Surd operator*(const Surd& a, const Surd& b);
  friend Surd operator+(const Surd& a, const Surd& b);
  friend Surd operator-(const Surd& a) ;
  friend Surd operator-(const Surd& a, const Surd& b) { return a + (-b); }
  friend bool operator==(const Surd& a, const Surd& b);

 private:
  int sign_ = 0;
  Rational radicand_ = 0;
  bool exact_ = true;
  double approx_ = 0.0;
};

// One level of the truncated L^2 model: the sphere of a given depth with
// its fiber weights, inner product <f,g> = sum f(tau) g(tau) nu(tau).
struct WeightedSphereSpace {
  std::size_t depth = 0;
  std::vector<TraceElement> basis;
  std::vector<Rational> weights;

  std::size_t dimension() const noexcept { return basis.size(); }
  std::optional<std::size_t> index_of(const TraceElement& t) const;
  Surd inner(const std::vector<Surd>& f, const std::vector<Surd>& g) const;
};

// The chain W_0, ..., W_depth of weighted sphere spaces.
class SphereModel {
 public:
  SphereModel(const Presentation& p, std::size_t depth, const Limits& limits = {});

  const Presentation& presentation() const noexcept { return presentation_; }
  std::size_t depth() const noexcept { return spaces_.size() - 1; }
  const WeightedSphereSpace& space(std::size_t k) const { return spaces_.at(k); }

 private:
  Presentation presentation_;
  std::vector<WeightedSphereSpace> spaces_;
};

// Sparse linear map W_source -> W_target in the indicator bases, keyed by
// (target index, source index). Exact zeros are never stored.
class ChainOperator {
 public:
  using Key = std::pair<std::size_t, std::size_t>;

  ChainOperator(std::size_t source_depth, std::size_t target_depth, std::size_t rows,
                std::size_t cols);

  std::size_t source_depth() const noexcept { return source_depth_; }
  std::size_t target_depth() const noexcept { return target_depth_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const std::map<Key, Surd>& entries() const noexcept { return entries_; }
  bool is_zero() const noexcept { return entries_.empty(); }

  Surd at(std::size_t row, std::size_t col) const;
  void accumulate(std::size_t row, std::size_t col, const Surd& v);

  std::vector<Surd> apply(const std::vector<Surd>& f) const;
  std::vector<double> apply(const std::vector<double>& f) const;

 private:
  std::size_t source_depth_;
  std::size_t target_depth_;
  std::size_t rows_;
  std::size_t cols_;
  std::map<Key, Surd> entries_;
};

ChainOperator identity_operator(const SphereModel& m, std::size_t k);
// a o b; requires b.target_depth() == a.source_depth().
ChainOperator compose(const ChainOperator& a, const ChainOperator& b);
ChainOperator add(const ChainOperator& a, const ChainOperator& b);
ChainOperator subtract(const ChainOperator& a, const ChainOperator& b);
// Adjoint with respect to the weighted inner products.
ChainOperator adjoint(const SphereModel& m, const ChainOperator& a);

// (S_x f)(tau) = rho f(x^-1 tau) when x left-divides tau, else 0, with
// rho = sqrt(nu_{K-1}(x^-1 tau) / nu_K(tau)). W_{K-1} -> W_K.
ChainOperator iso_S(const SphereModel& m, Letter x, std::size_t k);
// (S_x^* g)(w) = sqrt(nu_K(xw) / nu_{K-1}(w)) g(xw). W_K -> W_{K-1}.
ChainOperator adjoint_S(const SphereModel& m, Letter x, std::size_t k);
// Literal composition operator (T_z f)(w) = f(zw), no weight correction.
// W_K -> W_{K-|z|}.
ChainOperator op_T(const SphereModel& m, const TraceElement& z, std::size_t k);
// (beta_s g)(w) = g(sw); the same map as op_T.
ChainOperator beta_action(const SphereModel& m, const TraceElement& s, std::size_t k);
// prod_{x in subset} (1 - S_x S_x^*) on W_K: the indicator of the elements with
// no left divisor in the subset.
ChainOperator range_projection(const SphereModel& m, const std::vector<Letter>& subset,
                               std::size_t k);

// Spectral norm between the weighted spaces, by power iteration on A^*A in
// orthonormal coordinates (tolerance 1e-10, at most 10^4 iterations, fixed
// seed).
double operator_norm(const SphereModel& m, const ChainOperator& a);
// Squared weighted Hilbert-Schmidt norm; nullopt if an entry is inexact.
std::optional<Rational> hs_norm_squared(const SphereModel& m, const ChainOperator& a);
double hs_norm_squared_approx(const SphereModel& m, const ChainOperator& a);
// Total source weight of the columns carrying a nonzero entry.
Rational support_mass(const SphereModel& m, const ChainOperator& a);

struct DefectReport {
  std::string label;
  double norm_defect = 0.0;
  std::optional<Rational> hs_defect;  // squared HS norm, exact
  double hs_defect_approx = 0.0;
  Rational exceptional_mass = 0;
};

DefectReport make_report(const SphereModel& m, std::string label, const ChainOperator& defect);

// Relation defects of the S-model at depth K (and the literal T-model's
// isometry defect):
//   S.iso[x]        S_x^*S_x - 1 on W_{K-1}
//   S.delta[x:y]    S_x^*S_y, x != y (free monoids)
//   S.sum           sum_x S_x S_x^* - 1 on W_K (free monoids)
//   S.orth[x:y]     S_x^*S_y for distinct non-adjacent x, y (non-free)
//   S.comm[x:y]     S_x S_y - S_y S_x for adjacent x < y (K >= 2)
//   S.adjcomm[x:y]  S_x^*S_y - S_y S_x^* on W_{K-1} for adjacent x < y (K >= 2)
//   S.proj[V_i]     prod_{x in V_i}(1 - S_x S_x^*) per coconnected component
//   S.iso.ball[x]   S_x^*S_x - 1 on the truncated ball W_0 + ... + W_K with
//                   shell weights 1/(K+1); the defect sits on the top shell
//   T.iso[x]        T_x^*T_x - 1 on W_K
std::vector<DefectReport> relation_defects(const SphereModel& m);
std::vector<DefectReport> relation_defects(const Presentation& p, std::size_t k,
                                           const Limits& limits = {});

}  // namespace tracebound

#endif  // TRACEBOUND_OPERATORS_HPP_
