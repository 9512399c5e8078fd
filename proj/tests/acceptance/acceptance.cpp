// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tracebound/boundary.hpp"
#include "tracebound/format.hpp"
#include "tracebound/fractal.hpp"
#include "tracebound/graph.hpp"
#include "tracebound/measure.hpp"
#include "tracebound/operators.hpp"
#include "tracebound/trace_monoid.hpp"

using namespace tracebound;

namespace {

const std::string kData = TRACEBOUND_TEST_DATA;
const std::string kCli = TRACEBOUND_CLI;

// Collects failed sub-checks of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) {
      failures_.push_back(what);
    }
    failed_ = failed_ || !ok;
  }
  bool ok() const { return !failed_; }
  std::string summary() const {
    std::string s;
    for (const auto& f : failures_) {
      s += (s.empty() ? "" : "; ") + f;
    }
    return s;
  }

 private:
  bool failed_ = false;
  std::vector<std::string> failures_;
};

Presentation c4() { return load_presentation(kData + "/c4.txt"); }

Rational inverse_power(std::size_t n, std::size_t k) {
  Integer d = 1;
  for (std::size_t i = 0; i < k; ++i) {
    d *= n;
  }
  return Rational(Integer(1), d);
}

// ---------------------------------------------------------------------------

std::string criterion1(Check& c) {
  std::size_t words = 0;
  for (std::size_t n : {2, 3}) {
    const Presentation p = Presentation::free(n);
    const auto adj = oracle::adjacency(p);
    const FiberTable table(p, 6);
    for (std::size_t len = 0; len <= 6; ++len) {
      for (const FreeWord& v : oracle::all_words(n, len)) {
        const TraceElement tau = p.normal_form(v);
        const Rational expected = inverse_power(n, len);
        for (std::size_t depth : {len, std::size_t{6}}) {
          const CylinderMeasure m = monoid_cylinder_measure(table, tau, depth);
          c.expect(m.lower_bound == expected,
                   "n=" + std::to_string(n) + " v=" + p.format(v) + " depth " +
                       std::to_string(depth) + " gave " + to_string(m.lower_bound));
        }
        if (len <= 3) {
          c.expect(monoid_cylinder_measure(table, tau, 6).count ==
                       oracle::cylinder_count(adj, v, 6),
                   "brute-force count mismatch for " + p.format(v));
        }
        ++words;
      }
    }
  }
  return std::to_string(words) + " words";
}

std::string criterion2(Check& c) {
  std::size_t rows = 0;
  for (std::size_t n : {2, 3}) {
    for (const DefectReport& r : relation_defects(Presentation::free(n), 6)) {
      const bool cuntz = r.label.rfind("S.iso[", 0) == 0 || r.label.rfind("S.delta[", 0) == 0 ||
                         r.label == "S.sum";
      if (!cuntz) {
        continue;
      }
      ++rows;
      c.expect(r.norm_defect <= 1e-12, r.label + " norm " + format_double(r.norm_defect));
      c.expect(r.hs_defect && *r.hs_defect == 0, r.label + " HS defect not exactly 0");
    }
  }
  c.expect(rows == 2 + 2 + 1 + 3 + 6 + 1, "unexpected number of Cuntz rows");
  return std::to_string(rows) + " relation rows";
}

std::string criterion3(Check& c) {
  const Presentation p = Presentation::free(2);
  const auto rows = relation_defects(p, 3);
  double worst = 0.0;
  bool found = false;
  for (const auto& r : rows) {
    if (r.label.rfind("T.iso[", 0) == 0) {
      found = true;
      worst = std::max(worst, r.norm_defect);
      c.expect(r.norm_defect >= 0.4, r.label + " only " + format_double(r.norm_defect));
    }
  }
  c.expect(found, "T.iso rows missing from the report");
  // Independent dense computation of |T_x^* T_x - 1|.
  const SphereModel m(p, 3);
  const ChainOperator t = op_T(m, p.generator(0), 3);
  const Eigen::MatrixXd dense = oracle::orthonormal_matrix(m, t);
  const double expected =
      oracle::spectral_norm(dense.transpose() * dense -
                            Eigen::MatrixXd::Identity(dense.cols(), dense.cols()));
  c.expect(std::abs(expected - worst) < 1e-9, "dense oracle gives " + format_double(expected));
  return "|T_x*T_x - 1| = " + format_double(worst);
}

std::string criterion4(Check& c) {
  const Presentation p = c4();
  const auto adj = oracle::adjacency(p);
  const std::vector<Letter> v1{p.letter("a"), p.letter("c")};
  for (std::size_t k = 4; k <= 10; ++k) {
    const SphereModel m(p, k);
    const ChainOperator proj = range_projection(m, v1, k);
    // |P 1|^2 in the weighted space.
    std::vector<Surd> ones(m.space(k).dimension(), Surd(1));
    const Surd mass = m.space(k).inner(proj.apply(ones), proj.apply(ones));
    // Counting oracle: free words with no a or c in front after commuting.
    std::size_t count = 0;
    for (const FreeWord& w : oracle::all_words(4, k)) {
      count += !oracle::left_divides(adj, {v1[0]}, w) && !oracle::left_divides(adj, {v1[1]}, w);
    }
    const Rational expected = inverse_power(2, k);
    c.expect(mass.exact() && mass == Surd(expected),
             "K=" + std::to_string(k) + " mass " + format_double(mass.value()));
    c.expect(Rational(Integer(count), ipow(4, k)) == expected,
             "K=" + std::to_string(k) + " counting oracle gives " + std::to_string(count));
    c.expect(support_mass(m, proj) == expected, "support mass differs at K=" + std::to_string(k));
  }
  std::size_t rows = 0;
  for (const auto& r : relation_defects(p, 6)) {
    const bool relation = r.label.rfind("S.iso[", 0) == 0 || r.label.rfind("S.orth[", 0) == 0 ||
                          r.label.rfind("S.comm[", 0) == 0 || r.label.rfind("S.adjcomm[", 0) == 0;
    if (relation) {
      ++rows;
      c.expect(r.norm_defect <= 1e-12, r.label + " norm " + format_double(r.norm_defect));
    }
  }
  c.expect(rows == 4 + 4 + 8, "unexpected number of relation rows");
  return "K=4..10, " + std::to_string(rows) + " relation rows at K=6";
}

std::string criterion5(Check& c) {
  const Presentation p = load_presentation(kData + "/n2.txt");
  const TraceElement x = p.parse_element("x");
  const FiberTable table(p, 10);
  Rational prev = 0;
  for (std::size_t k = 1; k <= 10; ++k) {
    const CylinderMeasure m = monoid_cylinder_measure(table, x, k);
    c.expect(m.lower_bound >= prev, "not monotone at k=" + std::to_string(k));
    prev = m.lower_bound;
  }
  const CylinderMeasure m = monoid_cylinder_measure(table, x, 10);
  c.expect(m.count == 1023 && m.denominator == 1024, "got " + to_string(m.lower_bound));
  c.expect(m.count == oracle::cylinder_count(oracle::adjacency(p), {0}, 10),
           "brute-force count differs");
  return "mu_10(x) = " + to_string(m.lower_bound);
}

std::string criterion6(Check& c) {
  const Presentation p = c4();
  const UGraph g = commutation_graph(p);
  const GrowthComparison growth = product_growth(g, 8);
  // Per-factor enumeration: each coconnected factor of C4 is free of rank 2.
  std::vector<std::size_t> factor;
  for (const auto& layer : graph_presentation(coconnected_components(g)[0]).spheres_upto(8)) {
    factor.push_back(layer.size());
  }
  for (std::size_t k = 0; k <= 8; ++k) {
    std::size_t convolution = 0;
    for (std::size_t i = 0; i <= k; ++i) {
      convolution += factor[i] * factor[k - i];
    }
    const std::size_t expected = (k + 1) << k;
    c.expect(growth.whole[k] == expected, "|sphere(" + std::to_string(k) + ")| = " +
                                              std::to_string(growth.whole[k]));
    c.expect(growth.product[k] == expected && convolution == expected,
             "factor product differs at k=" + std::to_string(k));
  }
  const Presentation xyz = load_presentation(kData + "/xyz.txt");
  const std::size_t s2 = xyz.sphere(2).size();
  const std::size_t oracle_s2 = oracle::fibers(oracle::adjacency(xyz), 2).size();
  c.expect(s2 == 8 && oracle_s2 == 8,
           "xyz sphere(2) " + std::to_string(s2) + " vs oracle " + std::to_string(oracle_s2));
  return "C4 k<=8, xyz |sphere(2)| = " + std::to_string(s2);
}

std::string criterion7(Check& c) {
  const Presentation p = load_presentation(kData + "/xyz.txt");
  const auto adj = oracle::adjacency(p);
  const BoundaryWord xz = parse_boundary_word(p, "(xz)^inf");
  for (const char* right : {"x^inf", "z^inf"}) {
    const BoundaryWord g = parse_boundary_word(p, right);
    const TriState r = leq_bounded(p, xz, g, 5);
    c.expect(r.is_true(), std::string("(xz)^inf <= ") + right + " not proven");
    if (r.is_true()) {
      const WitnessMap& wm = r.proven().maps.front();
      c.expect(wm.period >= 1 && wm.start >= 1, "certificate is not periodic");
      for (std::size_t n = 1; n <= wm.witnesses.size(); ++n) {
        c.expect(oracle::left_divides(adj, g.prefix(n), xz.prefix(wm.witnesses[n - 1])),
                 "witness k_" + std::to_string(n) + " does not divide");
      }
    }
  }

  const Presentation f2 = load_presentation(kData + "/f2.txt");
  const TriState e = approx_equiv(f2, parse_boundary_word(f2, "x^inf"),
                                  parse_boundary_word(f2, "y^inf"), 8);
  c.expect(e.is_false() && e.refuted().kind == Refuted::Kind::kLetterCount,
           "x^inf vs y^inf: " + e.describe(f2));

  // Finite separation check over all boundary words of description length <= 3.
  std::vector<BoundaryWord> words;
  for (std::size_t per = 1; per <= 3; ++per) {
    for (std::size_t pre = 0; pre + per <= 3; ++pre) {
      for (const FreeWord& a : oracle::all_words(2, pre)) {
        for (const FreeWord& b : oracle::all_words(2, per)) {
          words.push_back(make_boundary_word(f2, a, b));
        }
      }
    }
  }
  std::vector<TraceElement> tests;
  for (const auto& layer : f2.spheres_upto(8)) {
    tests.insert(tests.end(), layer.begin(), layer.end());
  }
  std::vector<std::vector<int>> profile;
  for (const auto& f : words) {
    auto& row = profile.emplace_back();
    for (const auto& t : tests) {
      row.push_back(char_eval(f2, Character{f, 8}, t));
    }
  }
  std::size_t separated = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      const TriState r = approx_equiv(f2, words[i], words[j], 8);
      c.expect(!r.is_unknown(), "undetermined pair " + format_boundary_word(f2, words[i]) +
                                    " / " + format_boundary_word(f2, words[j]));
      if (r.is_false()) {
        c.expect(profile[i] != profile[j], "no character separates " +
                                               format_boundary_word(f2, words[i]) + " and " +
                                               format_boundary_word(f2, words[j]));
        ++separated;
      }
    }
  }
  return std::to_string(separated) + " inequivalent pairs separated";
}

std::string criterion8(Check& c) {
  const IfsAction cantor = load_ifs(kData + "/cantor.ifs");
  Vector lo(1);
  Vector hi(1);
  lo << 0.0;
  hi << 1.0 / 3;
  const MassInterval mass = contact_mass(cantor, cantor.center(), 12, Box{lo, hi});
  c.expect(mass.lower == Rational(1, 2) && mass.upper == Rational(1, 2),
           "Cantor mass [" + to_string(mass.lower) + ", " + to_string(mass.upper) + "]");

  const IfsAction s = load_ifs(kData + "/sierpinski.ifs");
  double worst_ratio = 0.0;
  PointCloud prev = attractor_points(s, 4, s.center());
  for (std::size_t k = 4; k <= 10; ++k) {
    PointCloud next = attractor_points(s, k + 1, s.center());
    const double d = hausdorff_distance(prev, next);
    const double bound = std::ldexp(1.0, -static_cast<int>(k)) * 2.0 * s.radius();
    c.expect(d <= bound, "Hausdorff k=" + std::to_string(k) + " " + format_double(d) + " > " +
                             format_double(bound));
    worst_ratio = std::max(worst_ratio, d / bound);
    prev = std::move(next);
  }
  const PointCloud cloud = attractor_points(s, 11, s.center());
  Vector blo(2);
  Vector bhi(2);
  blo << 0.0, 0.0;
  bhi << 1.0, 1.0;
  const double dim = box_counting_dimension(cloud.points, Box{blo, bhi},
                                            {16, 32, 64, 128, 256, 512});
  c.expect(std::abs(dim - 1.585) <= 0.05, "box dimension " + format_double(dim));
  return "box dimension " + format_double(dim) + ", worst Hausdorff/bound " +
         format_double(worst_ratio);
}

std::string criterion9(Check& c) {
  const IfsAction s = load_ifs(kData + "/sierpinski.ifs");
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> letter(0, 2);
  std::uniform_int_distribution<int> len(0, 4);
  std::uniform_real_distribution<double> coord(-1.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    FreeWord pre(static_cast<std::size_t>(len(rng)));
    FreeWord per(static_cast<std::size_t>(len(rng) + 1));
    for (Letter& a : pre) {
      a = static_cast<Letter>(letter(rng));
    }
    for (Letter& a : per) {
      a = static_cast<Letter>(letter(rng));
    }
    const BoundaryWord f = make_boundary_word(s.presentation(), pre, per);
    const KappaResult k10 = kappa(s, f, s.center(), 10);
    const KappaResult k15 = kappa(s, f, s.center(), 15);
    const double gap = (k15.point - k10.point).norm();
    c.expect(gap <= k10.error_bound, format_boundary_word(s.presentation(), f) + " gap " +
                                         format_double(gap) + " > " +
                                         format_double(k10.error_bound));
    worst = std::max(worst, gap / k10.error_bound);

    Vector x(2);
    Vector y(2);
    x << coord(rng), coord(rng);
    y << coord(rng), coord(rng);
    for (std::size_t k : {1, 5, 10}) {
      const double d = kappa_basepoint_independence(s, f, x, y, k);
      const double bound = std::pow(s.delta(), static_cast<double>(k)) * (x - y).norm();
      c.expect(d <= bound * (1 + 1e-12), "base point independence fails at k=" +
                                             std::to_string(k));
    }
  }
  return "worst gap/bound " + format_double(worst);
}

// Runs a shell command and returns its exit status and standard output.
std::pair<int, std::string> run(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    return {-1, out};
  }
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    out.append(buf.data(), got);
  }
  return {pclose(pipe), out};
}

std::string criterion10(Check& c) {
  const std::string d = kData + "/";
  const std::vector<std::string> commands{
      "decompose -p " + d + "c4.txt",
      "decompose -p " + d + "c4.txt --growth --depth 8",
      "presentation -p " + d + "xyz.txt --depth 2 --list",
      "measure -p " + d + "n2.txt --element x --depth 10",
      "measure -p " + d + "n2.txt --element x --depth 10 --series",
      "measure -p " + d + "f3.txt --element xzy --depth 6",
      "defects -p " + d + "f2.txt --depth 6",
      "defects -p " + d + "f3.txt --depth 6",
      "defects -p " + d + "f2.txt --depth 3",
      "defects -p " + d + "c4.txt --depth 6",
      "boundary-leq -p " + d + "xyz.txt --left \"(xz)^inf\" --right \"x^inf\" --horizon 5",
      "boundary-leq -p " + d + "xyz.txt --left \"(xz)^inf\" --right \"z^inf\" --horizon 5",
      "boundary-leq -p " + d + "f2.txt --left \"x^inf\" --right \"y^inf\" --horizon 5",
      "fractal-render --ifs " + d + "cantor.ifs --depth 12 --grid 81 --format csv",
      "fractal-render --ifs " + d + "sierpinski.ifs --depth 9 --grid 64",
      "attractor --ifs " + d + "sierpinski.ifs --depth 6",
  };
  for (const std::string& args : commands) {
    const std::string cmd = "\"" + kCli + "\" " + args;
    const auto first = run(cmd);
    const auto second = run(cmd);
    c.expect(first.first == 0, "nonzero exit: " + args);
    c.expect(!first.second.empty(), "no output: " + args);
    c.expect(first == second, "output differs between runs: " + args);
  }
  // Spot-check the documented outputs.
  const auto decompose = run("\"" + kCli + "\" decompose -p " + d + "c4.txt").second;
  c.expect(decompose.find("crisp-laca: applicable") != std::string::npos &&
               decompose.find("components: 2") != std::string::npos,
           "decompose output");
  const auto measure = run("\"" + kCli + "\" measure -p " + d + "n2.txt --element x --depth 10");
  c.expect(measure.second.find("x,10,1023,1024,1023/1024") != std::string::npos, "measure row");
  const auto leq = run("\"" + kCli + "\" boundary-leq -p " + d +
                       "xyz.txt --left \"(xz)^inf\" --right \"x^inf\" --horizon 5");
  c.expect(leq.second.find("\nTRUE periodic") != std::string::npos, "boundary-leq verdict");
  return std::to_string(commands.size()) + " commands";
}

}  // namespace

// With an argument, runs only the criterion with that number.
int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    std::function<std::string(Check&)> body;
  };
  const std::vector<Criterion> criteria{
      {1, "free cylinder measure", criterion1},
      {2, "Cuntz relations on F2, F3 at K=6", criterion2},
      {3, "literal T-model isometry gap", criterion3},
      {4, "C4 range projection decay and relations", criterion4},
      {5, "N^2 measure saturation", criterion5},
      {6, "product growth", criterion6},
      {7, "boundary order and character separation", criterion7},
      {8, "fractal bounds", criterion8},
      {9, "kappa certification", criterion9},
      {10, "CLI determinism", criterion10},
  };
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failed = 0;
  for (const Criterion& cr : criteria) {
    if (only != 0 && cr.id != only) {
      continue;
    }
    Check check;
    std::string detail;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      detail = cr.body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.3fs", secs);
    std::cout << "criterion " << cr.id << ": " << (check.ok() ? "PASS" : "FAIL") << " ["
              << timing << "] " << cr.name;
    if (!detail.empty()) {
      std::cout << " (" << detail << ")";
    }
    if (!check.ok()) {
      std::cout << " -- " << check.summary();
      ++failed;
    }
    std::cout << "\n";
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " failed") << "\n";
  return failed == 0 ? 0 : 1;
}
