#ifndef VALENCE_GRAPH_HPP
#define VALENCE_GRAPH_HPP

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace valence {

/// Finite simple graph with per-vertex loop flags. Loops live in the flag,
/// never in the adjacency relation.
class Graph {
 public:
  std::size_t add_vertex(const std::string& name, bool looped = false);
  void add_edge(std::size_t u, std::size_t v);
  void add_edge(std::string_view u, std::string_view v);
  void set_looped(std::size_t v, bool looped) { loops_[v] = looped; }

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::string& name(std::size_t v) const { return names_[v]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index(std::string_view name) const;  // throws MalformedWord
  bool looped(std::size_t v) const { return loops_[v]; }
  bool adjacent(std::size_t u, std::size_t v) const { return adj_[u][v] != 0; }
  std::vector<std::size_t> neighbors(std::size_t v) const;
  std::size_t edge_count() const;

  /// Subgraph induced by `vertices`, in the given order.
  Graph induced(const std::vector<std::size_t>& vertices) const;
  /// Γ⁻: the same graph with every loop flag cleared.
  Graph without_loops() const;
  /// Connected components, each sorted by vertex index.
  std::vector<std::vector<std::size_t>> components() const;

  bool operator==(const Graph& other) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<bool> loops_;
  std::vector<std::vector<char>> adj_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

Graph parse_graph(std::string_view source);
Graph load_graph(const std::filesystem::path& path);
std::string format_graph(const Graph& g);

/// Vertex renaming produced by the binary graph combinators: names in the
/// result for the left and right operand's vertices, by index.
struct GraphUnion {
  Graph graph;
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
};

/// Free product on the graph level. Colliding names are prefixed `L_`/`R_`.
GraphUnion disjoint_union(const Graph& a, const Graph& b);
/// Direct product: disjoint union plus every cross edge.
GraphUnion join(const Graph& a, const Graph& b);

/// Graph on `n` vertices named v0..v{n-1}; bit i of `loops` loops vertex i,
/// `edges` enumerates the pairs (0,1),(0,2),...,(n-2,n-1).
Graph graph_from_masks(std::size_t n, unsigned loops, unsigned long long edges);

/// DEC expression tree. An empty DirectProduct is the trivial monoid B^0.
struct MonoidExpr {
  enum class Kind { B, Z, FreeProduct, DirectProduct };
  Kind kind = Kind::DirectProduct;
  std::vector<MonoidExpr> children;
  /// Leaves produced by decompose_dec remember the vertex they stand for.
  std::string origin;

  static MonoidExpr bicyclic(std::string origin = {});
  static MonoidExpr integers(std::string origin = {});
  static MonoidExpr free_product(std::vector<MonoidExpr> children);
  static MonoidExpr direct_product(std::vector<MonoidExpr> children);
  static MonoidExpr power(Kind leaf, std::size_t n);

  bool is_leaf() const { return kind == Kind::B || kind == Kind::Z; }
  std::size_t leaf_count() const;
};

bool operator==(const MonoidExpr& a, const MonoidExpr& b);

/// `B`, `Z`, `B^n`, `Z^n`, `FreeProduct(e, ...)`, `DirectProduct(e, ...)`.
MonoidExpr parse_expr(std::string_view source);
std::string format_expr(const MonoidExpr& e);

/// Graph of the expression; vertex names encode the path from the root
/// (`v`, `v_0`, `v_1_0`, ...), so the result is deterministic.
Graph expr_to_graph(const MonoidExpr& e);
/// `origin` of each vertex of expr_to_graph(e), in vertex order.
std::vector<std::string> expr_origins(const MonoidExpr& e);

bool is_transitive_forest(const Graph& g);

enum class InducedShape { C4, P4, PPN };
std::string_view to_string(InducedShape shape);

struct InducedWitness {
  InducedShape shape;
  /// C4 in cycle order, P4 in path order, PPN as centre then the two
  /// non-adjacent neighbours.
  std::vector<std::size_t> vertices;
};

/// First induced C4 or P4 of Γ⁻ in name order, if any.
std::optional<InducedWitness> find_c4_p4(const Graph& g);
/// First unlooped vertex with two non-adjacent neighbours, if any.
std::optional<InducedWitness> find_ppn(const Graph& g);
bool is_ppn_free(const Graph& g);

/// Checks that `w` really induces its claimed shape in `g`.
bool witness_holds(const Graph& g, const InducedWitness& w);

enum class Verdict { Decidable, Undecidable, OpenPPN };
std::string_view to_string(Verdict v);

struct Classification {
  Verdict verdict;
  MonoidExpr expr;                         // Decidable only
  std::optional<InducedWitness> witness;   // Undecidable and OpenPPN
};

Classification classify(const Graph& g);
MonoidExpr decompose_dec(const Graph& g);

}  // namespace valence

#endif  // VALENCE_GRAPH_HPP
