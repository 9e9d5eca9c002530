#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "popdyn/errors.hpp"

namespace popdyn {

/// Index of an element in a group's canonical enumeration.
/// The identity always has index 0.
struct GroupElement {
  std::int64_t id = 0;

  friend auto operator<=>(GroupElement, GroupElement) = default;
};

/// A finite abelian group presented as a direct product of cyclic factors
/// Z_{m0} x Z_{m1} x ... . Elements are enumerated in mixed radix with the
/// left factor most significant, so the index of (a, b) in A x B is
/// a.id * |B| + b.id. This covers every group used by the simulator
/// (cycles and their Z4 decorations) with exact integer arithmetic.
class FiniteGroup {
 public:
  static FiniteGroup cyclic(std::int64_t n);
  static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);

  std::int64_t order() const { return order_; }
  GroupElement identity() const { return GroupElement{0}; }

  GroupElement multiply(GroupElement a, GroupElement b) const;
  GroupElement inverse(GroupElement a) const;

  const std::vector<std::int64_t>& moduli() const { return moduli_; }

  /// Element with the given per-factor components (each reduced mod its
  /// factor order must already hold; out-of-range components are rejected).
  GroupElement element(std::span<const std::int64_t> components) const;
  std::vector<std::int64_t> components(GroupElement a) const;

  /// "5" for single-factor groups, "(1,3)" for products.
  std::string label(GroupElement a) const;

  bool contains(GroupElement a) const { return a.id >= 0 && a.id < order_; }

  friend bool operator==(const FiniteGroup&, const FiniteGroup&) = default;

 private:
  explicit FiniteGroup(std::vector<std::int64_t> moduli);

  std::vector<std::int64_t> moduli_;
  std::int64_t order_ = 1;
};

inline FiniteGroup make_cyclic(std::int64_t n) { return FiniteGroup::cyclic(n); }
inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  return FiniteGroup::product(a, b);
}

/// An ordered set S = {g_1, ..., g_s} with splitting weights p_j.
/// Weight constraints are validated where they matter: the graph builders
/// require distinct non-identity elements, the dynamics builder additionally
/// requires the weights to sum to one.
struct GeneratorSet {
  std::vector<GroupElement> elements;
  std::vector<double> weights;

  static GeneratorSet uniform(std::vector<GroupElement> elements);
};

/// Undirected Cayley graph. Vertex i carries label vertex_labels[i]; for
/// group-built graphs vertex index == element id. Edges are normalized
/// (min, max) pairs, sorted and deduplicated.
struct CayleyGraph {
  std::vector<std::string> vertex_labels;
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;

  std::int64_t vertex_count() const {
    return static_cast<std::int64_t>(vertex_labels.size());
  }
};

/// Directed, generator-colored Cayley graph. Arcs are grouped by color
/// (generator position) and, within a color, ordered by source vertex.
struct CayleyDigraph {
  struct Arc {
    std::int64_t source = 0;
    std::int64_t target = 0;
    int color = 0;

    friend bool operator==(const Arc&, const Arc&) = default;
  };

  std::vector<std::string> vertex_labels;
  std::vector<Arc> arcs;
  int color_count = 0;

  std::int64_t vertex_count() const {
    return static_cast<std::int64_t>(vertex_labels.size());
  }
};

CayleyGraph cayley_graph(const FiniteGroup& group, const GeneratorSet& s);
CayleyDigraph cayley_digraph(const FiniteGroup& group, const GeneratorSet& s);

/// Ball of reduced words of length <= radius in the free group on
/// num_generators letters, as a digraph with arcs w -> s*w whenever both
/// endpoints lie in the ball. Vertices are enumerated by word length
/// (identity first) and labeled by reduced words over {a, b, ...} with
/// capitals for inverses.
CayleyDigraph free_group_ball(int num_generators, int radius);

/// DOT-language text. Directed graphs emit one colored arc statement per
/// arc (palette indexed by generator color); undirected graphs emit plain
/// edges. Vertex order is deterministic. An optional labeler overrides the
/// stored vertex labels.
std::string export_dot(const CayleyGraph& graph,
                       const std::function<std::string(std::int64_t)>& labeler = {});
std::string export_dot(const CayleyDigraph& graph,
                       const std::function<std::string(std::int64_t)>& labeler = {});

/// Fixed arc color palette, indexed by generator position (cycled).
std::span<const char* const> dot_palette();

}  // namespace popdyn
