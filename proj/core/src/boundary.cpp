#include "tracebound/boundary.hpp"

#include <algorithm>
#include <map>

#include "tracebound/errors.hpp"

namespace tracebound {

Letter BoundaryWord::letter_at(std::size_t i) const {
  if (i < preamble.size()) {
    return preamble[i];
  }
  return period[(i - preamble.size()) % period.size()];
}

FreeWord BoundaryWord::prefix(std::size_t k) const {
  FreeWord out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    out.push_back(letter_at(i));
  }
  return out;
}

BoundaryWord make_boundary_word(const Presentation& p, FreeWord preamble, FreeWord period) {
  if (period.empty()) {
    throw InputError("boundary word needs a nonempty period");
  }
  p.validate(preamble);
  p.validate(period);
  return BoundaryWord{std::move(preamble), std::move(period)};
}

BoundaryWord parse_boundary_word(const Presentation& p, std::string_view text) {
  const std::string bad = "boundary word must look like PREAMBLE(PERIOD)^inf or WORD^inf: '" +
                          std::string(text) + "'";
  while (!text.empty() && text.back() == ' ') {
    text.remove_suffix(1);
  }
  constexpr std::string_view kInf = "^inf";
  if (text.size() < kInf.size() || text.substr(text.size() - kInf.size()) != kInf) {
    throw InputError(bad);
  }
  text.remove_suffix(kInf.size());
  if (!text.empty() && text.back() == ')') {
    const auto open = text.rfind('(');
    if (open == std::string_view::npos) {
      throw InputError(bad);
    }
    FreeWord pre = p.parse_word(text.substr(0, open));
    FreeWord per = p.parse_word(text.substr(open + 1, text.size() - open - 2));
    return make_boundary_word(p, std::move(pre), std::move(per));
  }
  // Without parentheses the exponent binds to the last letter only.
  if (text.find_first_of("()") != std::string_view::npos) {
    throw InputError(bad);
  }
  FreeWord pre = p.parse_word(text);
  if (pre.empty()) {
    throw InputError(bad);
  }
  FreeWord per{pre.back()};
  pre.pop_back();
  return make_boundary_word(p, std::move(pre), std::move(per));
}

std::string format_boundary_word(const Presentation& p, const BoundaryWord& f) {
  std::string out = f.preamble.empty() ? std::string() : p.format(f.preamble);
  return out + "(" + p.format(f.period) + ")^inf";
}

TraceElement prefix_element(const Presentation& p, const BoundaryWord& f, std::size_t k) {
  return p.normal_form(f.prefix(k));
}

namespace {

struct StripOutcome {
  bool divides = false;
  std::size_t failed_index = 0;
  std::optional<Letter> blocker;
};

// Strips the letters of t from w in order. On failure reports which letter of
// t got stuck and, if present, the first non-commuting letter preceding every
// occurrence of it in the remainder.
StripOutcome strip_with_diagnosis(const Presentation& p, const FreeWord& t, FreeWord w) {
  for (std::size_t j = 0; j < t.size(); ++j) {
    const Letter g = t[j];
    bool found = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] == g) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
        found = true;
        break;
      }
      if (!p.commutes(w[i], g)) {
        return {false, j, w[i]};
      }
    }
    if (!found) {
      return {false, j, std::nullopt};
    }
  }
  return {true, 0, std::nullopt};
}

bool divides_prefix(const Presentation& p, const FreeWord& t, const BoundaryWord& f,
                    std::size_t k) {
  return strip_with_diagnosis(p, t, f.prefix(k)).divides;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

TriState leq_bounded(const Presentation& p, const BoundaryWord& f, const BoundaryWord& g,
                     std::size_t horizon, std::size_t search_factor) {
  if (horizon == 0 || search_factor == 0) {
    throw InputError("horizon and search factor must be positive");
  }
  if (f.period.empty() || g.period.empty()) {
    throw InputError("boundary word needs a nonempty period");
  }
  const std::size_t period = g.period.size();
  // Witnesses are gathered a little past the horizon so that at least one
  // full period of increments can be compared.
  const std::size_t reach =
      std::max(horizon, f.preamble.size() + g.preamble.size() + 3 * period + 1);

  std::vector<bool> in_period(p.rank(), false);
  for (Letter a : f.period) {
    in_period[a] = true;
  }
  std::vector<std::size_t> preamble_supply(p.rank(), 0);
  for (Letter a : f.preamble) {
    ++preamble_supply[a];
  }

  std::vector<std::size_t> witnesses;
  bool horizon_open = false;
  bool tail_open = false;
  std::vector<std::size_t> required(p.rank(), 0);
  for (std::size_t n = 1; n <= reach; ++n) {
    const FreeWord gn = g.prefix(n);
    ++required[gn.back()];
    for (Letter a = 0; a < p.rank(); ++a) {
      if (!in_period[a] && required[a] > preamble_supply[a]) {
        Refuted r;
        r.kind = Refuted::Kind::kLetterCount;
        r.n = n;
        r.letter = a;
        r.required = required[a];
        r.supply = preamble_supply[a];
        return r;
      }
    }
    const std::size_t bound = n * (f.preamble.size() + f.period.size()) * search_factor;
    const StripOutcome outcome = strip_with_diagnosis(p, gn, f.prefix(bound));
    if (outcome.divides) {
      std::size_t lo = n;
      std::size_t hi = bound;
      while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (divides_prefix(p, gn, f, mid)) {
          hi = mid;
        } else {
          lo = mid + 1;
        }
      }
      witnesses.push_back(lo);
      continue;
    }
    if (outcome.blocker) {
      Refuted r;
      r.kind = Refuted::Kind::kDependence;
      r.n = n;
      r.letter = gn[outcome.failed_index];
      r.blocker = *outcome.blocker;
      return r;
    }
    (n <= horizon ? horizon_open : tail_open) = true;
    if (witnesses.size() + 1 == n) {
      witnesses.push_back(0);
    }
  }
  if (horizon_open) {
    return Undetermined{horizon, "no witness within the search bound for some n <= horizon"};
  }
  if (tail_open) {
    return Undetermined{horizon, "witnesses exist up to the horizon but not periodically"};
  }

  // Smallest start after which increments repeat with the period of g, with
  // at least one full period of comparisons.
  std::vector<std::size_t> inc;
  for (std::size_t i = 1; i < witnesses.size(); ++i) {
    inc.push_back(witnesses[i] - witnesses[i - 1]);
  }
  std::size_t start = inc.size();
  for (std::size_t s = inc.size(); s-- > 0;) {
    if (s + period < inc.size() && inc[s] != inc[s + period]) {
      break;
    }
    start = s;
  }
  const std::size_t comparisons = inc.size() >= start + period ? inc.size() - start - period : 0;
  if (comparisons < period) {
    return Undetermined{horizon, "witness increments are not periodic: k_n=" + join(witnesses)};
  }
  return Proven{{WitnessMap{std::move(witnesses), start + 1, period}}};
}

TriState tri_and(TriState a, TriState b) {
  if (a.is_false()) {
    return a;
  }
  if (b.is_false()) {
    return b;
  }
  if (a.is_unknown()) {
    return a;
  }
  if (b.is_unknown()) {
    return b;
  }
  Proven both = a.proven();
  const auto& more = b.proven().maps;
  both.maps.insert(both.maps.end(), more.begin(), more.end());
  return both;
}

TriState tri_or(TriState a, TriState b) {
  if (a.is_true()) {
    return a;
  }
  if (b.is_true()) {
    return b;
  }
  if (a.is_unknown()) {
    return a;
  }
  if (b.is_unknown()) {
    return b;
  }
  return a;
}

TriState approx_equiv(const Presentation& p, const BoundaryWord& f, const BoundaryWord& g,
                      std::size_t horizon, std::size_t search_factor) {
  return tri_and(leq_bounded(p, f, g, horizon, search_factor),
                 leq_bounded(p, g, f, horizon, search_factor));
}

TriState tilde_related(const Presentation& p, const BoundaryWord& f, const BoundaryWord& g,
                       std::size_t horizon, std::size_t search_factor) {
  return tri_or(leq_bounded(p, f, g, horizon, search_factor),
                leq_bounded(p, g, f, horizon, search_factor));
}

std::string TriState::describe(const Presentation& p) const {
  if (is_true()) {
    std::string out = "TRUE";
    for (const WitnessMap& m : proven().maps) {
      out += " periodic(start=" + std::to_string(m.start) + ",period=" +
             std::to_string(m.period) + ") k_n=" + join(m.witnesses);
    }
    return out;
  }
  if (is_false()) {
    const Refuted& r = refuted();
    if (r.kind == Refuted::Kind::kLetterCount) {
      return "FALSE letter-count n=" + std::to_string(r.n) + " letter=" + p.name(r.letter) +
             " required=" + std::to_string(r.required) +
             " supply=" + std::to_string(r.supply);
    }
    return "FALSE dependence n=" + std::to_string(r.n) + " letter=" + p.name(r.letter) +
           " blocker=" + p.name(r.blocker);
  }
  return "UNKNOWN horizon=" + std::to_string(undetermined().horizon) + " " +
         undetermined().reason;
}

int char_eval(const Presentation& p, const Character& c, const TraceElement& t) {
  if (t.is_identity()) {
    return 1;
  }
  // Divisibility of the prefixes is monotone in k, so the largest prefix
  // decides.
  const std::size_t k = c.horizon * t.length();
  return strip_with_diagnosis(p, t.word(), c.word.prefix(k)).divides ? 1 : 0;
}

bool char_valid(const Presentation& p, std::span<const std::pair<TraceElement, int>> assignment) {
  std::map<TraceElement, int> values;
  for (const auto& [u, value] : assignment) {
    if (value != 0 && value != 1) {
      throw InputError("character values must be 0 or 1");
    }
    auto [it, inserted] = values.emplace(u, value);
    if (!inserted && it->second != value) {
      throw InputError("conflicting values for " + p.format(u));
    }
  }
  for (const auto& [u, vu] : values) {
    if (vu != 1) {
      continue;
    }
    for (const auto& [v, vv] : values) {
      if (vv == 0 && p.left_divides(v, u)) {
        return false;
      }
    }
  }
  return true;
}

CharacterPullback::CharacterPullback(Presentation source, Presentation target,
                                     std::vector<Letter> images, Character c)
    : source_(std::move(source)),
      target_(std::move(target)),
      images_(std::move(images)),
      character_(std::move(c)) {}

TraceElement CharacterPullback::image(const TraceElement& q) const {
  FreeWord w;
  w.reserve(q.length());
  for (Letter g : q.word()) {
    w.push_back(images_.at(g));
  }
  return target_.normal_form(w);
}

int CharacterPullback::operator()(const TraceElement& q) const {
  return char_eval(target_, character_, image(q));
}

CharacterPullback char_pullback(const Presentation& source, const Presentation& target,
                                const std::vector<TraceElement>& images, const Character& c) {
  if (images.size() != source.rank()) {
    throw InputError("need exactly one image per source generator");
  }
  std::vector<Letter> letters;
  std::vector<bool> hit(target.rank(), false);
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].length() != 1) {
      throw InputError("image of " + source.name(static_cast<Letter>(i)) +
                       " is not a generator (map is not graded)");
    }
    letters.push_back(images[i].word().front());
    hit.at(letters.back()) = true;
  }
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
    throw InputError("generator map is not surjective");
  }
  for (const auto& [a, b] : source.edges()) {
    if (letters[a] != letters[b] && !target.commutes(letters[a], letters[b])) {
      throw InputError("relation " + source.name(a) + source.name(b) + "=" + source.name(b) +
                       source.name(a) + " is not preserved");
    }
  }
  target.validate(c.word.preamble);
  target.validate(c.word.period);
  return CharacterPullback(source, target, std::move(letters), c);
}

}  // namespace tracebound
