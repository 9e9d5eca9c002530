#include "popdyn/groups.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace popdyn {

namespace {

constexpr std::int64_t kMaxOrder = std::int64_t{1} << 40;
constexpr std::int64_t kMaxBallVertices = 1'000'000;

void require_valid_generators(const FiniteGroup& group, const GeneratorSet& s) {
  if (s.elements.empty()) {
    throw DomainError("generator set is empty");
  }
  if (s.weights.size() != s.elements.size()) {
    throw DomainError("generator set has mismatched weights");
  }
  std::set<std::int64_t> seen;
  for (GroupElement g : s.elements) {
    if (!group.contains(g)) {
      throw DomainError("generator " + std::to_string(g.id) +
                        " is not an element of the group");
    }
    if (g == group.identity()) {
      throw DomainError("identity generator would create self-loops");
    }
    if (!seen.insert(g.id).second) {
      throw DomainError("generator set contains duplicate element " +
                        std::to_string(g.id));
    }
  }
}

}  // namespace

FiniteGroup::FiniteGroup(std::vector<std::int64_t> moduli)
    : moduli_(std::move(moduli)) {
  for (std::int64_t m : moduli_) {
    if (m < 1) {
      throw DomainError("cyclic factor order must be positive");
    }
    if (order_ > kMaxOrder / m) {
      throw CapacityError("group order overflows the supported range");
    }
    order_ *= m;
  }
}

FiniteGroup FiniteGroup::cyclic(std::int64_t n) {
  if (n < 1) {
    throw DomainError("cyclic group order must be positive");
  }
  return FiniteGroup({n});
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
  std::vector<std::int64_t> moduli = a.moduli_;
  moduli.insert(moduli.end(), b.moduli_.begin(), b.moduli_.end());
  return FiniteGroup(std::move(moduli));
}

GroupElement FiniteGroup::multiply(GroupElement a, GroupElement b) const {
  std::int64_t ra = a.id;
  std::int64_t rb = b.id;
  std::int64_t result = 0;
  std::int64_t scale = 1;
  // Peel components from least significant factor upward.
  for (auto it = moduli_.rbegin(); it != moduli_.rend(); ++it) {
    const std::int64_t m = *it;
    const std::int64_t ca = ra % m;
    const std::int64_t cb = rb % m;
    ra /= m;
    rb /= m;
    result += ((ca + cb) % m) * scale;
    scale *= m;
  }
  return GroupElement{result};
}

GroupElement FiniteGroup::inverse(GroupElement a) const {
  std::int64_t r = a.id;
  std::int64_t result = 0;
  std::int64_t scale = 1;
  for (auto it = moduli_.rbegin(); it != moduli_.rend(); ++it) {
    const std::int64_t m = *it;
    const std::int64_t c = r % m;
    r /= m;
    result += ((m - c) % m) * scale;
    scale *= m;
  }
  return GroupElement{result};
}

GroupElement FiniteGroup::element(std::span<const std::int64_t> components) const {
  if (components.size() != moduli_.size()) {
    throw DomainError("component count does not match factor count");
  }
  std::int64_t id = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (components[i] < 0 || components[i] >= moduli_[i]) {
      throw DomainError("component out of range for factor");
    }
    id = id * moduli_[i] + components[i];
  }
  return GroupElement{id};
}

std::vector<std::int64_t> FiniteGroup::components(GroupElement a) const {
  std::vector<std::int64_t> out(moduli_.size());
  std::int64_t r = a.id;
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    out[i] = r % moduli_[i];
    r /= moduli_[i];
  }
  return out;
}

std::string FiniteGroup::label(GroupElement a) const {
  if (moduli_.size() == 1) {
    return std::to_string(a.id);
  }
  const auto comps = components(a);
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (i > 0) os << ',';
    os << comps[i];
  }
  os << ')';
  return os.str();
}

GeneratorSet GeneratorSet::uniform(std::vector<GroupElement> elements) {
  GeneratorSet s;
  const double w = elements.empty() ? 0.0 : 1.0 / static_cast<double>(elements.size());
  s.weights.assign(elements.size(), w);
  s.elements = std::move(elements);
  return s;
}

CayleyGraph cayley_graph(const FiniteGroup& group, const GeneratorSet& s) {
  require_valid_generators(group, s);
  CayleyGraph graph;
  graph.vertex_labels.reserve(static_cast<std::size_t>(group.order()));
  for (std::int64_t id = 0; id < group.order(); ++id) {
    graph.vertex_labels.push_back(group.label(GroupElement{id}));
  }
  std::set<std::pair<std::int64_t, std::int64_t>> edges;
  for (GroupElement gen : s.elements) {
    for (std::int64_t id = 0; id < group.order(); ++id) {
      const std::int64_t target = group.multiply(gen, GroupElement{id}).id;
      edges.emplace(std::min(id, target), std::max(id, target));
    }
  }
  graph.edges.assign(edges.begin(), edges.end());
  return graph;
}

CayleyDigraph cayley_digraph(const FiniteGroup& group, const GeneratorSet& s) {
  require_valid_generators(group, s);
  CayleyDigraph graph;
  graph.color_count = static_cast<int>(s.elements.size());
  graph.vertex_labels.reserve(static_cast<std::size_t>(group.order()));
  for (std::int64_t id = 0; id < group.order(); ++id) {
    graph.vertex_labels.push_back(group.label(GroupElement{id}));
  }
  graph.arcs.reserve(static_cast<std::size_t>(group.order()) * s.elements.size());
  for (std::size_t j = 0; j < s.elements.size(); ++j) {
    for (std::int64_t id = 0; id < group.order(); ++id) {
      const std::int64_t target = group.multiply(s.elements[j], GroupElement{id}).id;
      graph.arcs.push_back({id, target, static_cast<int>(j)});
    }
  }
  return graph;
}

namespace {

// One letter per generator, capitals for inverses. Words are kept reduced,
// so prepending a letter either cancels the leading letter or extends the word.
char generator_letter(int index) { return static_cast<char>('a' + index); }
char inverse_letter(int index) { return static_cast<char>('A' + index); }

bool cancels(char x, char y) {
  return (x >= 'a' ? x - 'a' : x - 'A') == (y >= 'a' ? y - 'a' : y - 'A') &&
         x != y;
}

std::string prepend_reduced(char letter, const std::string& word) {
  if (!word.empty() && cancels(letter, word.front())) {
    return word.substr(1);
  }
  return letter + word;
}

}  // namespace

CayleyDigraph free_group_ball(int num_generators, int radius) {
  if (num_generators < 1) {
    throw DomainError("free group needs at least one generator");
  }
  if (num_generators > 26) {
    throw CapacityError("free group letters limited to a..z");
  }
  if (radius < 0) {
    throw DomainError("ball radius must be nonnegative");
  }

  std::vector<std::string> words{""};
  std::map<std::string, std::int64_t> index{{"", 0}};
  std::size_t frontier_begin = 0;
  for (int r = 0; r < radius; ++r) {
    const std::size_t frontier_end = words.size();
    for (std::size_t v = frontier_begin; v < frontier_end; ++v) {
      const std::string word = words[v];
      for (int j = 0; j < num_generators; ++j) {
        for (char letter : {generator_letter(j), inverse_letter(j)}) {
          std::string next = prepend_reduced(letter, word);
          if (next.size() <= word.size()) continue;  // cancellation: already seen
          if (index.emplace(next, static_cast<std::int64_t>(words.size())).second) {
            words.push_back(std::move(next));
            if (words.size() > static_cast<std::size_t>(kMaxBallVertices)) {
              throw CapacityError("free-group ball exceeds the vertex limit");
            }
          }
        }
      }
    }
    frontier_begin = frontier_end;
  }

  CayleyDigraph graph;
  graph.color_count = num_generators;
  graph.vertex_labels.reserve(words.size());
  for (const auto& w : words) {
    graph.vertex_labels.push_back(w.empty() ? "e" : w);
  }
  for (int j = 0; j < num_generators; ++j) {
    for (std::size_t v = 0; v < words.size(); ++v) {
      const std::string target = prepend_reduced(generator_letter(j), words[v]);
      auto it = index.find(target);
      if (it != index.end()) {
        graph.arcs.push_back({static_cast<std::int64_t>(v), it->second, j});
      }
    }
  }
  return graph;
}

std::span<const char* const> dot_palette() {
  static constexpr const char* kPalette[] = {"red",    "green", "blue",
                                             "orange", "purple", "brown",
                                             "cyan",   "magenta"};
  return kPalette;
}

namespace {

std::string vertex_label(const std::vector<std::string>& labels,
                         const std::function<std::string(std::int64_t)>& labeler,
                         std::int64_t v) {
  return labeler ? labeler(v) : labels[static_cast<std::size_t>(v)];
}

}  // namespace

std::string export_dot(const CayleyGraph& graph,
                       const std::function<std::string(std::int64_t)>& labeler) {
  std::ostringstream os;
  os << "graph cayley {\n";
  for (std::int64_t v = 0; v < graph.vertex_count(); ++v) {
    os << "  n" << v << " [label=\"" << vertex_label(graph.vertex_labels, labeler, v)
       << "\"];\n";
  }
  for (const auto& [a, b] : graph.edges) {
    os << "  n" << a << " -- n" << b << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string export_dot(const CayleyDigraph& graph,
                       const std::function<std::string(std::int64_t)>& labeler) {
  const auto palette = dot_palette();
  std::ostringstream os;
  os << "digraph cayley {\n";
  for (std::int64_t v = 0; v < graph.vertex_count(); ++v) {
    os << "  n" << v << " [label=\"" << vertex_label(graph.vertex_labels, labeler, v)
       << "\"];\n";
  }
  for (const auto& arc : graph.arcs) {
    os << "  n" << arc.source << " -> n" << arc.target << " [color="
       << palette[static_cast<std::size_t>(arc.color) % palette.size()] << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace popdyn
