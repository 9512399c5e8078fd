#ifndef TRACEBOUND_BOUNDARY_HPP_
#define TRACEBOUND_BOUNDARY_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tracebound/trace_monoid.hpp"

namespace tracebound {

// The eventually periodic letter sequence preamble.period.period... . Its
// prefixes f(k) form a decreasing sequence in the divisibility order and so
// represent a point of the boundary.
struct BoundaryWord {
  FreeWord preamble;
  FreeWord period;

  Letter letter_at(std::size_t i) const;
  FreeWord prefix(std::size_t k) const;

  friend bool operator==(const BoundaryWord&, const BoundaryWord&) = default;
};

// Throws InputError on an empty period or out-of-range letters.
BoundaryWord make_boundary_word(const Presentation& p, FreeWord preamble, FreeWord period);

// "PREAMBLE(PERIOD)^inf", e.g. "x(xz)^inf" or "(xz)^inf"; "xy^inf" means x(y)^inf.
BoundaryWord parse_boundary_word(const Presentation& p, std::string_view text);
std::string format_boundary_word(const Presentation& p, const BoundaryWord& f);

// f(k): the canonical image of the first k letters.
TraceElement prefix_element(const Presentation& p, const BoundaryWord& f, std::size_t k);

// k_n for n = 1..witnesses.size(); increments repeat with `period` from
// n = `start` on.
struct WitnessMap {
  std::vector<std::size_t> witnesses;
  std::size_t start = 1;
  std::size_t period = 1;
};

struct Proven {
  std::vector<WitnessMap> maps;
};

struct Refuted {
  enum class Kind { kLetterCount, kDependence };
  Kind kind = Kind::kLetterCount;
  std::size_t n = 0;        // g(n) is the element that never divides f(k)
  Letter letter = 0;        // the letter of g(n) that cannot be supplied
  Letter blocker = 0;       // dependence only: non-commuting letter in the way
  std::size_t required = 0; // letter count only
  std::size_t supply = 0;   // letter count only
};

struct Undetermined {
  std::size_t horizon = 0;
  std::string reason;
};

class TriState {
 public:
  TriState(Proven p) : value_(std::move(p)) {}
  TriState(Refuted r) : value_(std::move(r)) {}
  TriState(Undetermined u) : value_(std::move(u)) {}

  bool is_true() const noexcept { return std::holds_alternative<Proven>(value_); }
  bool is_false() const noexcept { return std::holds_alternative<Refuted>(value_); }
  bool is_unknown() const noexcept { return std::holds_alternative<Undetermined>(value_); }

  const Proven& proven() const { return std::get<Proven>(value_); }
  const Refuted& refuted() const { return std::get<Refuted>(value_); }
  const Undetermined& undetermined() const { return std::get<Undetermined>(value_); }

  // "TRUE", "FALSE" or "UNKNOWN" followed by the certificate.
  std::string describe(const Presentation& p) const;

 private:
  std::variant<Proven, Refuted, Undetermined> value_;
};

// False dominates, then Unknown.
TriState tri_and(TriState a, TriState b);
// True dominates, then Unknown.
TriState tri_or(TriState a, TriState b);

// Decides f <= g, i.e. for every n some f(k) is left-divisible by g(n), for
// n up to the horizon. The search for k_n runs up to
// n * (|f.preamble| + |f.period|) * search_factor.
TriState leq_bounded(const Presentation& p, const BoundaryWord& f, const BoundaryWord& g,
                     std::size_t horizon, std::size_t search_factor = 4);

TriState approx_equiv(const Presentation& p, const BoundaryWord& f, const BoundaryWord& g,
                      std::size_t horizon, std::size_t search_factor = 4);

// One generating step of the ~ relation: f <= g or g <= f. The full relation
// is its transitive closure, which is not computed here.
TriState tilde_related(const Presentation& p, const BoundaryWord& f, const BoundaryWord& g,
                       std::size_t horizon, std::size_t search_factor = 4);

// Character on principal right ideals attached to a boundary word.
struct Character {
  BoundaryWord word;
  std::size_t horizon = 8;
};

// 1 iff t left-divides f(k) for some k <= horizon * |t|.
int char_eval(const Presentation& p, const Character& c, const TraceElement& t);

// Hereditary condition on a finite family of principal ideals: whenever v
// left-divides u and u has value 1, v has value 1. Throws InputError on a
// repeated element with conflicting values.
bool char_valid(const Presentation& p, std::span<const std::pair<TraceElement, int>> assignment);

// Evaluator q -> chi(phi(q)) for a graded surjection phi: source -> target
// given by generator images.
class CharacterPullback {
 public:
  CharacterPullback(Presentation source, Presentation target, std::vector<Letter> images,
                    Character c);

  const Presentation& source() const noexcept { return source_; }
  const Presentation& target() const noexcept { return target_; }

  TraceElement image(const TraceElement& q) const;
  int operator()(const TraceElement& q) const;

 private:
  Presentation source_;
  Presentation target_;
  std::vector<Letter> images_;
  Character character_;
};

// Images are target elements; each must have length one (graded), commuting
// source generators must map to commuting or equal targets, and every target
// generator must be hit. Violations throw InputError.
CharacterPullback char_pullback(const Presentation& source, const Presentation& target,
                                const std::vector<TraceElement>& images, const Character& c);

}  // namespace tracebound

#endif  // TRACEBOUND_BOUNDARY_HPP_
