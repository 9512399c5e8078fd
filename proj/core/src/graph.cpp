#include "tracebound/graph.hpp"

#include <algorithm>

#include "tracebound/errors.hpp"

namespace tracebound {

UGraph::UGraph(std::vector<std::string> vertices,
               const std::vector<std::pair<std::size_t, std::size_t>>& edges)
    : vertices_(std::move(vertices)), adj_(vertices_.size(), std::vector<bool>(vertices_.size())) {
  for (const auto& [a, b] : edges) {
    if (a >= size() || b >= size()) {
      throw InputError("edge references a missing vertex");
    }
    if (a == b) {
      throw InputError("self-loops are not allowed");
    }
    adj_[a][b] = true;
    adj_[b][a] = true;
  }
}

std::size_t UGraph::degree(std::size_t v) const {
  const auto& row = adj_.at(v);
  return static_cast<std::size_t>(std::count(row.begin(), row.end(), true));
}

std::vector<std::pair<std::size_t, std::size_t>> UGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = a + 1; b < size(); ++b) {
      if (adj_[a][b]) {
        out.emplace_back(a, b);
      }
    }
  }
  return out;
}

UGraph commutation_graph(const Presentation& p) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& [a, b] : p.edges()) {
    edges.emplace_back(a, b);
  }
  return UGraph(p.generators(), edges);
}

Presentation graph_presentation(const UGraph& g) {
  std::vector<std::pair<std::string, std::string>> commute;
  for (const auto& [a, b] : g.edges()) {
    commute.emplace_back(g.vertices()[a], g.vertices()[b]);
  }
  return Presentation(g.vertices(), commute);
}

UGraph opposite(const UGraph& g) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t b = a + 1; b < g.size(); ++b) {
      if (!g.adjacent(a, b)) {
        edges.emplace_back(a, b);
      }
    }
  }
  return UGraph(g.vertices(), edges);
}

std::vector<std::vector<std::size_t>> connected_components(const UGraph& g) {
  std::vector<std::vector<std::size_t>> components;
  std::vector<bool> seen(g.size(), false);
  for (std::size_t start = 0; start < g.size(); ++start) {
    if (seen[start]) {
      continue;
    }
    auto& component = components.emplace_back();
    std::vector<std::size_t> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      component.push_back(v);
      for (std::size_t u = 0; u < g.size(); ++u) {
        if (!seen[u] && g.adjacent(v, u)) {
          seen[u] = true;
          stack.push_back(u);
        }
      }
    }
    std::sort(component.begin(), component.end());
  }
  return components;
}

UGraph induced_subgraph(const UGraph& g, const std::vector<std::size_t>& vertices) {
  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    names.push_back(g.vertices().at(vertices[i]));
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (g.adjacent(vertices[i], vertices[j])) {
        edges.emplace_back(i, j);
      }
    }
  }
  return UGraph(std::move(names), edges);
}

std::vector<std::vector<std::size_t>> coconnected_partition(const UGraph& g) {
  return connected_components(opposite(g));
}

std::vector<UGraph> coconnected_components(const UGraph& g) {
  std::vector<UGraph> out;
  for (const auto& part : coconnected_partition(g)) {
    out.push_back(induced_subgraph(g, part));
  }
  return out;
}

bool crisp_laca_applicable(const UGraph& g) {
  const UGraph op = opposite(g);
  for (std::size_t v = 0; v < op.size(); ++v) {
    if (op.degree(v) == 0) {
      return false;
    }
  }
  return true;
}

namespace {

std::vector<std::size_t> sphere_sizes(const Presentation& p, std::size_t k, const Limits& limits) {
  std::vector<std::size_t> sizes;
  for (const auto& layer : p.spheres_upto(k, limits)) {
    sizes.push_back(layer.size());
  }
  return sizes;
}

}  // namespace

GrowthComparison product_growth(const UGraph& g, std::size_t k, const Limits& limits) {
  GrowthComparison out;
  out.whole = sphere_sizes(graph_presentation(g), k, limits);
  std::vector<std::size_t> conv(k + 1, 0);
  conv[0] = 1;
  for (const UGraph& factor : coconnected_components(g)) {
    const auto sizes = sphere_sizes(graph_presentation(factor), k, limits);
    std::vector<std::size_t> next(k + 1, 0);
    for (std::size_t i = 0; i <= k; ++i) {
      for (std::size_t j = 0; i + j <= k; ++j) {
        next[i + j] += conv[i] * sizes[j];
      }
    }
    conv = std::move(next);
  }
  out.product = std::move(conv);
  return out;
}

bool product_growth_check(const UGraph& g, std::size_t k, const Limits& limits) {
  const GrowthComparison c = product_growth(g, k, limits);
  return c.whole == c.product;
}

}  // namespace tracebound
