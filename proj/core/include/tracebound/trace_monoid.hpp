#ifndef TRACEBOUND_TRACE_MONOID_HPP_
#define TRACEBOUND_TRACE_MONOID_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tracebound {

using Letter = std::uint16_t;

// An arbitrary word over the generator indices, i.e. an element of the free
// monoid on the degree-one part.
using FreeWord = std::vector<Letter>;

// Caps on exponential enumerations.
struct Limits {
  std::size_t max_sphere = 10'000'000;
};

// A monoid element in canonical (lexicographically least) normal form. Only a
// Presentation can mint one, so every instance is already normalized.
class TraceElement {
 public:
  TraceElement() = default;

  const FreeWord& word() const noexcept { return word_; }
  std::size_t length() const noexcept { return word_.size(); }
  bool is_identity() const noexcept { return word_.empty(); }

  friend bool operator==(const TraceElement&, const TraceElement&) = default;

  // Shortlex: by length, then lexicographically by generator order.
  friend std::strong_ordering operator<=>(const TraceElement& a,
                                          const TraceElement& b) {
    if (auto c = a.word_.size() <=> b.word_.size(); c != 0) {
      return c;
    }
    return a.word_ <=> b.word_;
  }

 private:
  friend class Presentation;
  explicit TraceElement(FreeWord w) : word_(std::move(w)) {}

  FreeWord word_;
};

struct TraceElementHash {
  std::size_t operator()(const TraceElement& t) const noexcept;
};

// Generators plus a commutation graph: xy = yx whenever {x,y} is an edge. The
// empty edge set gives the free monoid. Generator order fixes the
// lexicographic order used by normal forms.
class Presentation {
 public:
  static constexpr std::size_t kMaxGenerators = 64;

  Presentation(std::vector<std::string> generators,
               const std::vector<std::pair<std::string, std::string>>& commute);

  // Free monoid on n generators named x, y, z, w (n <= 4) or g0, g1, ...
  static Presentation free(std::size_t n);

  std::size_t rank() const noexcept { return names_.size(); }
  const std::vector<std::string>& generators() const noexcept { return names_; }
  const std::string& name(Letter g) const { return names_.at(g); }

  bool commutes(Letter a, Letter b) const noexcept {
    return a != b && ((commute_[a] >> b) & 1U) != 0;
  }
  std::uint64_t commute_mask(Letter g) const noexcept { return commute_[g]; }
  // Edges as (a, b) with a < b, sorted.
  std::vector<std::pair<Letter, Letter>> edges() const;
  bool is_free() const noexcept;

  std::optional<Letter> find(std::string_view name) const;
  Letter letter(std::string_view name) const;

  // Throws InputError if some index is out of range.
  void validate(const FreeWord& w) const;

  TraceElement identity() const { return TraceElement(); }
  TraceElement generator(Letter g) const;
  TraceElement normal_form(const FreeWord& w) const;
  // The canonical graded homomorphism from the free monoid; same map as
  // normal_form.
  TraceElement canonical_hom(const FreeWord& w) const { return normal_form(w); }
  TraceElement multiply(const TraceElement& a, const TraceElement& b) const;
  // multiply(t, generator(g)) without renormalizing when t.g is already normal.
  TraceElement append(const TraceElement& t, Letter g) const;

  // True iff w = t * s for some s.
  bool left_divides(const TraceElement& t, const TraceElement& w) const;
  std::optional<TraceElement> left_quotient(const TraceElement& t,
                                            const TraceElement& w) const;
  // Generators g with g left-dividing w, ascending.
  std::vector<Letter> minimal_letters(const TraceElement& w) const;

  // All elements of length exactly k, lexicographically sorted.
  std::vector<TraceElement> sphere(std::size_t k, const Limits& limits = {}) const;
  // sphere(0), ..., sphere(k).
  std::vector<std::vector<TraceElement>> spheres_upto(std::size_t k,
                                                      const Limits& limits = {}) const;

  // All left divisors of t, shortlex sorted.
  std::vector<TraceElement> cocone(const TraceElement& t) const;
  // Left divisors of t that are left-divisible by w.
  std::vector<TraceElement> interval(const TraceElement& t, const TraceElement& w) const;

  // Names concatenated when all are single characters, '.'-joined otherwise;
  // the identity prints as "1".
  std::string format(const FreeWord& w) const;
  std::string format(const TraceElement& t) const { return format(t.word()); }

  // Accepts whitespace- or '.'-separated names, or a run of names matched
  // greedily by longest prefix. "1" and "" denote the empty word.
  FreeWord parse_word(std::string_view text) const;
  TraceElement parse_element(std::string_view text) const {
    return normal_form(parse_word(text));
  }

  friend bool operator==(const Presentation& a, const Presentation& b) {
    return a.names_ == b.names_ && a.commute_ == b.commute_;
  }

 private:
  // Removes the letters of t from w one by one; nullopt if some letter cannot
  // be moved to the front.
  std::optional<FreeWord> strip(const FreeWord& t, FreeWord w) const;

  std::vector<std::string> names_;
  std::vector<std::uint64_t> commute_;
};

// "generators: x y z" and "commute: x z" lines, '#' comments. Unknown keys are
// errors unless `extra` is given, in which case such lines are handed back as
// (line number, text) pairs.
Presentation parse_presentation(std::string_view text,
                                std::vector<std::pair<std::size_t, std::string>>* extra = nullptr);
Presentation load_presentation(const std::string& path);

}  // namespace tracebound

#endif  // TRACEBOUND_TRACE_MONOID_HPP_
