// tracebound command-line front end.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "tracebound/boundary.hpp"
#include "tracebound/errors.hpp"
#include "tracebound/format.hpp"
#include "tracebound/fractal.hpp"
#include "tracebound/graph.hpp"
#include "tracebound/measure.hpp"
#include "tracebound/operators.hpp"
#include "tracebound/trace_monoid.hpp"

namespace tb = tracebound;

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kInput = 2, kCapacity = 3 };

struct Options {
  std::string presentation;
  std::size_t depth = 4;
  std::string element;
  std::string left;
  std::string right;
  std::size_t horizon = 8;
  std::size_t search_factor = 4;
  std::string ifs;
  std::size_t grid = 64;
  std::string out = "-";
  std::string format = "pgm";
  std::vector<double> seed;
  std::size_t max_sphere = tb::Limits{}.max_sphere;
  std::size_t max_cells = std::size_t{1} << 24;
  bool list = false;
  bool series = false;
};

tb::Limits limits_of(const Options& o) { return tb::Limits{o.max_sphere}; }

std::string join(const std::vector<std::string>& names, const std::vector<std::size_t>& idx) {
  std::string s;
  for (std::size_t i : idx) {
    s += (s.empty() ? "" : " ") + names[i];
  }
  return s;
}

int cmd_presentation(const Options& o) {
  const tb::Presentation p = tb::load_presentation(o.presentation);
  std::string out = "generators:";
  for (const auto& g : p.generators()) {
    out += " " + g;
  }
  out += "\ncommute:";
  for (const auto& [a, b] : p.edges()) {
    out += " " + p.name(a) + " " + p.name(b) + ";";
  }
  if (!p.edges().empty()) {
    out.pop_back();
  }
  out += "\ndepth,sphere,ball\n";
  const auto layers = p.spheres_upto(o.depth, limits_of(o));
  std::size_t ball = 0;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    ball += layers[k].size();
    out += std::to_string(k) + "," + std::to_string(layers[k].size()) + "," +
           std::to_string(ball) + "\n";
  }
  if (o.list) {
    for (std::size_t k = 0; k < layers.size(); ++k) {
      out += "sphere " + std::to_string(k) + ":";
      for (const auto& t : layers[k]) {
        out += " " + p.format(t);
      }
      out += "\n";
    }
  }
  std::cout << out;
  return kOk;
}

int cmd_decompose(const Options& o, bool with_growth) {
  const tb::Presentation p = tb::load_presentation(o.presentation);
  const tb::UGraph g = tb::commutation_graph(p);
  const auto parts = tb::coconnected_partition(g);
  std::string out = "components: " + std::to_string(parts.size()) + "\n";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    out += "component " + std::to_string(i + 1) + ": " + join(g.vertices(), parts[i]) + "\n";
  }
  out += std::string("crisp-laca: ") +
         (tb::crisp_laca_applicable(g) ? "applicable" : "not applicable") + "\n";
  if (with_growth) {
    const tb::GrowthComparison c = tb::product_growth(g, o.depth, limits_of(o));
    out += "depth,sphere,product\n";
    for (std::size_t k = 0; k < c.whole.size(); ++k) {
      out += std::to_string(k) + "," + std::to_string(c.whole[k]) + "," +
             std::to_string(c.product[k]) + "\n";
    }
    out += std::string("product-growth: ") + (c.whole == c.product ? "match" : "mismatch") + "\n";
  }
  std::cout << out;
  return kOk;
}

int cmd_measure(const Options& o) {
  const tb::Presentation p = tb::load_presentation(o.presentation);
  const tb::TraceElement tau = p.parse_element(o.element);
  if (o.depth < tau.length()) {
    throw tb::InputError("--depth must be at least the length of --element");
  }
  const tb::FiberTable table(p, o.depth, limits_of(o));
  std::string out = "tau,depth,count,denominator,lower_bound\n";
  const std::size_t first = o.series ? tau.length() : o.depth;
  for (std::size_t k = first; k <= o.depth; ++k) {
    const tb::CylinderMeasure m = tb::monoid_cylinder_measure(table, tau, k);
    out += p.format(tau) + "," + std::to_string(k) + "," + m.count.str() + "," +
           m.denominator.str() + "," + tb::to_string(m.lower_bound) + "\n";
  }
  std::cout << out;
  return kOk;
}

int cmd_defects(const Options& o) {
  const tb::Presentation p = tb::load_presentation(o.presentation);
  std::string out = "label,norm_defect,hs_defect_num,hs_defect_den,exceptional_mass\n";
  for (const tb::DefectReport& r : tb::relation_defects(p, o.depth, limits_of(o))) {
    out += r.label + "," + tb::format_double(r.norm_defect) + ",";
    if (r.hs_defect) {
      out += tb::numerator_of(*r.hs_defect).str() + "," + tb::denominator_of(*r.hs_defect).str();
    } else {
      // Inexact entries: the approximation goes in the numerator column.
      out += tb::format_double(r.hs_defect_approx) + ",0";
    }
    out += "," + tb::to_string(r.exceptional_mass) + "\n";
  }
  std::cout << out;
  return kOk;
}

int cmd_boundary_leq(const Options& o) {
  const tb::Presentation p = tb::load_presentation(o.presentation);
  const tb::BoundaryWord f = tb::parse_boundary_word(p, o.left);
  const tb::BoundaryWord g = tb::parse_boundary_word(p, o.right);
  const tb::TriState r = tb::leq_bounded(p, f, g, o.horizon, o.search_factor);
  std::cout << tb::format_boundary_word(p, f) << " <= " << tb::format_boundary_word(p, g)
            << " (horizon " << o.horizon << ")\n"
            << r.describe(p) << "\n";
  return kOk;
}

tb::IfsAction load_action(const Options& o) {
  if (o.ifs.empty()) {
    throw tb::InputError("--ifs is required");
  }
  if (o.presentation.empty()) {
    return tb::load_ifs(o.ifs);
  }
  const tb::Presentation p = tb::load_presentation(o.presentation);
  return tb::load_ifs(o.ifs, &p);
}

tb::Vector base_point(const tb::IfsAction& a, const Options& o) {
  if (o.seed.empty()) {
    return a.center();
  }
  if (o.seed.size() != a.dimension()) {
    throw tb::InputError("--seed needs " + std::to_string(a.dimension()) + " coordinates");
  }
  return Eigen::Map<const tb::Vector>(o.seed.data(), static_cast<Eigen::Index>(o.seed.size()));
}

void write_output(const std::string& path, const std::string& data) {
  if (path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << data)) {
    throw tb::InputError("cannot write '" + path + "'");
  }
}

int cmd_fractal_render(const Options& o) {
  const tb::IfsAction a = load_action(o);
  if (o.format != "pgm" && o.format != "csv") {
    throw tb::InputError("--format must be pgm or csv");
  }
  const tb::GridSpec spec{tb::invariant_box(a), o.grid};
  const tb::DensityGrid grid =
      tb::contact_measure(a, base_point(a, o), o.depth, spec, limits_of(o), o.max_cells);
  write_output(o.out, o.format == "pgm" ? tb::render_pgm(grid) : tb::render_csv(grid));
  return kOk;
}

int cmd_attractor(const Options& o) {
  const tb::IfsAction a = load_action(o);
  const tb::PointCloud cloud = tb::attractor_points(a, o.depth, base_point(a, o), limits_of(o));
  std::string out;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    out += (i == 0 ? "x" : ",x") + std::to_string(i);
  }
  out += "\n";
  for (const tb::Vector& v : cloud.points) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      out += (i == 0 ? "" : ",") + tb::format_double(v(i));
    }
    out += "\n";
  }
  write_output(o.out, out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-depth boundary computations for trace monoids"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_presentation = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("-p,--presentation", o.presentation,
                                "Presentation file ('generators:' and 'commute:' lines)");
    if (required) {
      opt->required();
    }
  };
  auto add_limits = [&](CLI::App* sub) {
    sub->add_option("--max-sphere", o.max_sphere,
                    "Abort with exit code 3 when a sphere exceeds this many elements")
        ->capture_default_str();
  };

  auto* presentation = app.add_subcommand("presentation", "Sphere sizes up to --depth");
  add_presentation(presentation, true);
  presentation->add_option("--depth", o.depth, "Largest sphere radius")->capture_default_str();
  presentation->add_flag("--list", o.list, "Also list the elements of every sphere");
  add_limits(presentation);

  bool growth = false;
  auto* decompose = app.add_subcommand("decompose", "Coconnected components of the graph");
  add_presentation(decompose, true);
  decompose->add_option("--depth", o.depth, "Depth for the product growth check")
      ->capture_default_str();
  decompose->add_flag("--growth", growth, "Compare sphere sizes with the product of factors");
  add_limits(decompose);

  auto* measure = app.add_subcommand("measure", "Cylinder measure lower bound of an element");
  add_presentation(measure, true);
  measure->add_option("--element", o.element, "Element as a word over the generators")
      ->required();
  measure->add_option("--depth", o.depth, "Free word length")->capture_default_str();
  measure->add_flag("--series", o.series, "One row per depth from |element| up to --depth");
  add_limits(measure);

  auto* defects = app.add_subcommand("defects", "Relation defects of the truncated operators");
  add_presentation(defects, true);
  defects->add_option("--depth", o.depth, "Top sphere K of the model")->capture_default_str();
  add_limits(defects);

  auto* leq = app.add_subcommand("boundary-leq", "Bounded check of the boundary order");
  add_presentation(leq, true);
  leq->add_option("--left", o.left, "Boundary word f, e.g. \"x(xz)^inf\"")->required();
  leq->add_option("--right", o.right, "Boundary word g")->required();
  leq->add_option("--horizon", o.horizon, "Number of prefixes of g to check")
      ->capture_default_str();
  leq->add_option("--search-factor", o.search_factor,
                  "Search f-prefixes up to n * (|preamble| + |period|) * factor")
      ->capture_default_str();

  auto add_fractal = [&](CLI::App* sub) {
    add_presentation(sub, false);
    sub->add_option("--ifs", o.ifs, "IFS file ('dim:' and 'map <g>:' lines)")->required();
    sub->add_option("--depth", o.depth, "Sphere depth k")->capture_default_str();
    sub->add_option("--seed", o.seed, "Base point, comma separated (default: ball center)")
        ->delimiter(',');
    sub->add_option("--out", o.out, "Output file, '-' for standard output")
        ->capture_default_str();
    add_limits(sub);
  };

  auto* render = app.add_subcommand("fractal-render", "Contact measure on a grid");
  add_fractal(render);
  render->add_option("--grid", o.grid, "Cells per axis")->capture_default_str();
  render->add_option("--format", o.format, "pgm or csv")->capture_default_str();
  render->add_option("--max-cells", o.max_cells, "Abort with exit code 3 above this many cells")
      ->capture_default_str();

  auto* attractor = app.add_subcommand("attractor", "Points alpha(tau)(seed) for tau in sphere(k)");
  add_fractal(attractor);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kUsage;
  }

  try {
    if (presentation->parsed()) return cmd_presentation(o);
    if (decompose->parsed()) return cmd_decompose(o, growth);
    if (measure->parsed()) return cmd_measure(o);
    if (defects->parsed()) return cmd_defects(o);
    if (leq->parsed()) return cmd_boundary_leq(o);
    if (render->parsed()) return cmd_fractal_render(o);
    if (attractor->parsed()) return cmd_attractor(o);
  } catch (const tb::CapacityError& e) {
    std::cerr << "capacity exceeded: " << e.what() << " (completed depth " << e.depth_reached()
              << ")\n";
    return kCapacity;
  } catch (const tb::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  }
  return kUsage;
}
