#include "tracebound/trace_monoid.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "tracebound/errors.hpp"

namespace tracebound {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) {
    out.push_back(tok);
  }
  return out;
}

}  // namespace

std::size_t TraceElementHash::operator()(const TraceElement& t) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (Letter g : t.word()) {
    h ^= g + 1;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Presentation::Presentation(std::vector<std::string> generators,
                           const std::vector<std::pair<std::string, std::string>>& commute)
    : names_(std::move(generators)) {
  if (names_.empty()) {
    throw InputError("presentation needs at least one generator");
  }
  if (names_.size() > kMaxGenerators) {
    throw InputError("at most 64 generators are supported");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty() || names_[i] == "1") {
      throw InputError("invalid generator name '" + names_[i] + "'");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (names_[i] == names_[j]) {
        throw InputError("duplicate generator '" + names_[i] + "'");
      }
    }
  }
  commute_.assign(names_.size(), 0);
  for (const auto& [a, b] : commute) {
    const Letter x = letter(a);
    const Letter y = letter(b);
    if (x == y) {
      throw InputError("commute pair repeats generator '" + a + "'");
    }
    commute_[x] |= std::uint64_t{1} << y;
    commute_[y] |= std::uint64_t{1} << x;
  }
}

Presentation Presentation::free(std::size_t n) {
  static const char* const kSmall[] = {"x", "y", "z", "w"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(n <= 4 ? std::string(kSmall[i]) : "g" + std::to_string(i));
  }
  return Presentation(std::move(names), {});
}

std::vector<std::pair<Letter, Letter>> Presentation::edges() const {
  std::vector<std::pair<Letter, Letter>> out;
  for (Letter a = 0; a < rank(); ++a) {
    for (Letter b = a + 1; b < rank(); ++b) {
      if (commutes(a, b)) {
        out.emplace_back(a, b);
      }
    }
  }
  return out;
}

bool Presentation::is_free() const noexcept {
  return std::all_of(commute_.begin(), commute_.end(), [](std::uint64_t m) { return m == 0; });
}

std::optional<Letter> Presentation::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) {
      return static_cast<Letter>(i);
    }
  }
  return std::nullopt;
}

Letter Presentation::letter(std::string_view name) const {
  if (auto g = find(name)) {
    return *g;
  }
  throw InputError("unknown generator '" + std::string(name) + "'");
}

void Presentation::validate(const FreeWord& w) const {
  for (Letter g : w) {
    if (g >= rank()) {
      throw InputError("generator index " + std::to_string(g) + " out of range");
    }
  }
}

TraceElement Presentation::generator(Letter g) const {
  validate({g});
  return TraceElement(FreeWord{g});
}

// Greedy extraction: the first letter of the lexicographically least
// representative is the smallest letter that can be commuted to the front.
TraceElement Presentation::normal_form(const FreeWord& w) const {
  validate(w);
  FreeWord rest = w;
  FreeWord out;
  out.reserve(w.size());
  while (!rest.empty()) {
    std::uint64_t seen = 0;
    std::size_t best_pos = 0;
    Letter best = static_cast<Letter>(rank());
    for (std::size_t i = 0; i < rest.size(); ++i) {
      const Letter g = rest[i];
      const std::uint64_t bit = std::uint64_t{1} << g;
      if ((seen & bit) != 0) {
        continue;
      }
      if ((seen & ~commute_[g]) == 0 && g < best) {
        best = g;
        best_pos = i;
      }
      seen |= bit;
    }
    out.push_back(best);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best_pos));
  }
  return TraceElement(std::move(out));
}

TraceElement Presentation::multiply(const TraceElement& a, const TraceElement& b) const {
  if (a.is_identity()) {
    return b;
  }
  if (b.is_identity()) {
    return a;
  }
  FreeWord w = a.word();
  w.insert(w.end(), b.word().begin(), b.word().end());
  return normal_form(w);
}

TraceElement Presentation::append(const TraceElement& t, Letter g) const {
  validate({g});
  const FreeWord& w = t.word();
  for (std::size_t i = w.size(); i-- > 0;) {
    if (!commutes(w[i], g)) {
      break;
    }
    if (w[i] > g) {
      FreeWord ext = w;
      ext.push_back(g);
      return normal_form(ext);
    }
  }
  FreeWord ext = w;
  ext.push_back(g);
  return TraceElement(std::move(ext));
}

std::optional<FreeWord> Presentation::strip(const FreeWord& t, FreeWord w) const {
  for (Letter g : t) {
    std::uint64_t seen = 0;
    bool found = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] == g) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
        found = true;
        break;
      }
      seen |= std::uint64_t{1} << w[i];
      if ((seen & ~commute_[g]) != 0) {
        break;
      }
    }
    if (!found) {
      return std::nullopt;
    }
  }
  return w;
}

bool Presentation::left_divides(const TraceElement& t, const TraceElement& w) const {
  if (t.length() > w.length()) {
    return false;
  }
  return strip(t.word(), w.word()).has_value();
}

std::optional<TraceElement> Presentation::left_quotient(const TraceElement& t,
                                                        const TraceElement& w) const {
  if (t.length() > w.length()) {
    return std::nullopt;
  }
  auto rest = strip(t.word(), w.word());
  if (!rest) {
    return std::nullopt;
  }
  return normal_form(*rest);
}

std::vector<Letter> Presentation::minimal_letters(const TraceElement& w) const {
  std::vector<Letter> out;
  std::uint64_t seen = 0;
  for (Letter g : w.word()) {
    const std::uint64_t bit = std::uint64_t{1} << g;
    if ((seen & bit) == 0 && (seen & ~commute_[g]) == 0) {
      out.push_back(g);
    }
    seen |= bit;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<TraceElement>> Presentation::spheres_upto(std::size_t k,
                                                                  const Limits& limits) const {
  std::vector<std::vector<TraceElement>> layers;
  layers.push_back({identity()});
  for (std::size_t depth = 1; depth <= k; ++depth) {
    const auto& prev = layers.back();
    std::vector<TraceElement> next;
    // Lexicographic normal forms are prefix-closed, and tau.g is normal iff no
    // letter b > g of tau commutes with g and with everything after it. So
    // each element is produced exactly once and the layer stays sorted.
    for (const TraceElement& tau : prev) {
      const FreeWord& w = tau.word();
      for (Letter g = 0; g < rank(); ++g) {
        bool normal = true;
        for (std::size_t i = w.size(); i-- > 0;) {
          if (!commutes(w[i], g)) {
            break;
          }
          if (w[i] > g) {
            normal = false;
            break;
          }
        }
        if (!normal) {
          continue;
        }
        if (next.size() >= limits.max_sphere) {
          throw CapacityError("sphere(" + std::to_string(depth) + ") exceeds the cap of " +
                                  std::to_string(limits.max_sphere) + " elements",
                              depth - 1);
        }
        FreeWord ext = w;
        ext.push_back(g);
        next.push_back(TraceElement(std::move(ext)));
      }
    }
    layers.push_back(std::move(next));
  }
  return layers;
}

std::vector<TraceElement> Presentation::sphere(std::size_t k, const Limits& limits) const {
  return std::move(spheres_upto(k, limits).back());
}

std::vector<TraceElement> Presentation::cocone(const TraceElement& t) const {
  // Walk down from t: every left divisor d has t = d.r, and extending d by a
  // minimal letter of r reaches all larger divisors.
  std::set<TraceElement> found{identity()};
  std::vector<std::pair<FreeWord, FreeWord>> stack{{FreeWord{}, t.word()}};
  while (!stack.empty()) {
    auto [d, r] = std::move(stack.back());
    stack.pop_back();
    std::uint64_t seen = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const Letter g = r[i];
      const std::uint64_t bit = std::uint64_t{1} << g;
      if ((seen & bit) == 0 && (seen & ~commute_[g]) == 0) {
        FreeWord d2 = d;
        d2.push_back(g);
        TraceElement e = normal_form(d2);
        if (found.insert(e).second) {
          FreeWord r2 = r;
          r2.erase(r2.begin() + static_cast<std::ptrdiff_t>(i));
          stack.emplace_back(std::move(d2), std::move(r2));
        }
      }
      seen |= bit;
    }
  }
  return {found.begin(), found.end()};
}

std::vector<TraceElement> Presentation::interval(const TraceElement& t,
                                                 const TraceElement& w) const {
  std::vector<TraceElement> out;
  for (TraceElement& x : cocone(t)) {
    if (left_divides(w, x)) {
      out.push_back(std::move(x));
    }
  }
  return out;
}

std::string Presentation::format(const FreeWord& w) const {
  if (w.empty()) {
    return "1";
  }
  const bool compact = std::all_of(names_.begin(), names_.end(),
                                   [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i > 0) {
      out += '.';
    }
    out += names_.at(w[i]);
  }
  return out;
}

FreeWord Presentation::parse_word(std::string_view text) const {
  text = trim(text);
  FreeWord out;
  if (text.empty() || text == "1") {
    return out;
  }
  std::string normalized(text);
  std::replace(normalized.begin(), normalized.end(), '.', ' ');
  for (const std::string& tok : split_ws(normalized)) {
    if (auto g = find(tok)) {
      out.push_back(*g);
      continue;
    }
    std::string_view rest = tok;
    while (!rest.empty()) {
      std::size_t best_len = 0;
      Letter best = 0;
      for (std::size_t i = 0; i < names_.size(); ++i) {
        const std::string& n = names_[i];
        if (n.size() > best_len && rest.substr(0, n.size()) == n) {
          best_len = n.size();
          best = static_cast<Letter>(i);
        }
      }
      if (best_len == 0) {
        throw InputError("cannot parse '" + std::string(rest) + "' as generators");
      }
      out.push_back(best);
      rest.remove_prefix(best_len);
    }
  }
  return out;
}

Presentation parse_presentation(std::string_view text,
                                std::vector<std::pair<std::size_t, std::string>>* extra) {
  std::optional<std::vector<std::string>> generators;
  std::vector<std::pair<std::string, std::string>> commute;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto colon = line.find(':');
    const std::string_view key = trim(line.substr(0, colon));
    const std::string_view value =
        colon == std::string_view::npos ? std::string_view{} : trim(line.substr(colon + 1));
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (colon != std::string_view::npos && key == "generators") {
      if (generators) {
        throw InputError(where + "generators declared twice");
      }
      generators = split_ws(value);
      if (generators->empty()) {
        throw InputError(where + "empty generator list");
      }
    } else if (colon != std::string_view::npos && key == "commute") {
      std::string v(value);
      std::replace(v.begin(), v.end(), ',', ';');
      std::istringstream pairs(v);
      std::string pair;
      while (std::getline(pairs, pair, ';')) {
        auto toks = split_ws(pair);
        if (toks.empty()) {
          continue;
        }
        if (toks.size() != 2) {
          throw InputError(where + "commute expects pairs of generators");
        }
        commute.emplace_back(toks[0], toks[1]);
      }
    } else if (extra != nullptr) {
      extra->emplace_back(line_no, std::string(line));
    } else {
      throw InputError(where + "unknown key '" + std::string(key) + "'");
    }
  }
  if (!generators) {
    throw InputError("missing 'generators:' line");
  }
  return Presentation(std::move(*generators), commute);
}

Presentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open '" + path + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_presentation(buf.str());
}

}  // namespace tracebound
