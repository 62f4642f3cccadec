#ifndef DCL_SRC_SCC_HPP_
#define DCL_SRC_SCC_HPP_

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/strong_components.hpp>

#include <cstddef>
#include <utility>
#include <vector>

namespace dcl::detail {

  // Strongly connected components of a directed graph on [0, n). Returns
  // the component of each vertex; components are numbered so that every
  // edge u -> v satisfies comp[u] >= comp[v].
  inline std::vector<std::size_t> scc(
      std::size_t                                           n,
      std::vector<std::pair<std::size_t, std::size_t>> const& edges) {
    using Graph = boost::adjacency_list<boost::vecS, boost::vecS,
                                        boost::directedS>;
    Graph g(n);
    for (auto const& [u, v] : edges) {
      boost::add_edge(u, v, g);
    }
    std::vector<std::size_t> comp(n);
    if (n != 0) {
      boost::strong_components(
          g, boost::make_iterator_property_map(
                 comp.begin(), boost::get(boost::vertex_index, g)));
    }
    return comp;
  }

}  // namespace dcl::detail

#endif  // DCL_SRC_SCC_HPP_
