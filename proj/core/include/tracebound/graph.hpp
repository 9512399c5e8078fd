#ifndef TRACEBOUND_GRAPH_HPP_
#define TRACEBOUND_GRAPH_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tracebound/trace_monoid.hpp"

namespace tracebound {

// Small undirected simple graph with a dense adjacency matrix.
class UGraph {
 public:
  UGraph(std::vector<std::string> vertices,
         const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t size() const noexcept { return vertices_.size(); }
  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  bool adjacent(std::size_t a, std::size_t b) const { return adj_.at(a).at(b); }
  std::size_t degree(std::size_t v) const;
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  friend bool operator==(const UGraph&, const UGraph&) = default;

 private:
  std::vector<std::string> vertices_;
  std::vector<std::vector<bool>> adj_;
};

// The commutation graph of p, and the presentation of a graph.
UGraph commutation_graph(const Presentation& p);
Presentation graph_presentation(const UGraph& g);

// Same vertices, complementary edge set.
UGraph opposite(const UGraph& g);

// Connected components of g as sorted vertex-index lists, ordered by least
// vertex.
std::vector<std::vector<std::size_t>> connected_components(const UGraph& g);

UGraph induced_subgraph(const UGraph& g, const std::vector<std::size_t>& vertices);

// Vertex sets of the connected components of the opposite graph. Any two
// vertices in different parts are adjacent in g.
std::vector<std::vector<std::size_t>> coconnected_partition(const UGraph& g);
std::vector<UGraph> coconnected_components(const UGraph& g);

// The opposite graph has no isolated vertices.
bool crisp_laca_applicable(const UGraph& g);

// |sphere(j)| for j = 0..k of the whole monoid and the convolution of the
// factor sphere sizes over the coconnected decomposition.
struct GrowthComparison {
  std::vector<std::size_t> whole;
  std::vector<std::size_t> product;
};

GrowthComparison product_growth(const UGraph& g, std::size_t k, const Limits& limits = {});
bool product_growth_check(const UGraph& g, std::size_t k, const Limits& limits = {});

}  // namespace tracebound

#endif  // TRACEBOUND_GRAPH_HPP_
