#include "valence/graph.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>

#include "text.hpp"
#include "valence/error.hpp"

namespace valence {

std::size_t Graph::add_vertex(const std::string& name, bool looped) {
  if (!text::valid_identifier(name))
    throw Error(ErrorKind::Parse, "invalid vertex name '" + name + "'");
  if (index_.count(name)) throw Error(ErrorKind::Parse, "duplicate vertex '" + name + "'");
  std::size_t v = names_.size();
  index_.emplace(name, v);
  names_.push_back(name);
  loops_.push_back(looped);
  for (auto& row : adj_) row.push_back(0);
  adj_.emplace_back(names_.size(), 0);
  return v;
}

void Graph::add_edge(std::size_t u, std::size_t v) {
  if (u == v) throw Error(ErrorKind::Parse, "self-edge on '" + names_[u] + "'; use the loop flag");
  adj_[u][v] = adj_[v][u] = 1;
}

void Graph::add_edge(std::string_view u, std::string_view v) {
  auto a = find(u), b = find(v);
  if (!a || !b)
    throw Error(ErrorKind::Parse,
                "edge endpoint '" + std::string(a ? v : u) + "' is not a declared vertex");
  add_edge(*a, *b);
}

std::optional<std::size_t> Graph::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Graph::index(std::string_view name) const {
  auto v = find(name);
  if (!v) throw Error(ErrorKind::MalformedWord, "unknown vertex '" + std::string(name) + "'");
  return *v;
}

std::vector<std::size_t> Graph::neighbors(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < size(); ++u)
    if (adj_[v][u]) out.push_back(u);
  return out;
}

std::size_t Graph::edge_count() const {
  std::size_t n = 0;
  for (std::size_t u = 0; u < size(); ++u)
    for (std::size_t v = u + 1; v < size(); ++v) n += adj_[u][v];
  return n;
}

Graph Graph::induced(const std::vector<std::size_t>& vertices) const {
  Graph h;
  for (auto v : vertices) h.add_vertex(names_[v], loops_[v]);
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (adj_[vertices[i]][vertices[j]]) h.add_edge(i, j);
  return h;
}

Graph Graph::without_loops() const {
  Graph h = *this;
  std::fill(h.loops_.begin(), h.loops_.end(), false);
  return h;
}

std::vector<std::vector<std::size_t>> Graph::components() const {
  std::vector<int> comp(size(), -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < size(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> members{s}, stack{s};
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (std::size_t u = 0; u < size(); ++u)
        if (adj_[v][u] && comp[u] < 0) {
          comp[u] = comp[s];
          members.push_back(u);
          stack.push_back(u);
        }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

Graph parse_graph(std::string_view source) {
  Graph g;
  for (const auto& line : text::logical_lines(source)) {
    auto tok = text::split_ws(line.content);
    try {
      if (tok[0] == "vertex" && (tok.size() == 2 || (tok.size() == 3 && tok[2] == "loop"))) {
        g.add_vertex(tok[1], tok.size() == 3);
      } else if (tok[0] == "edge" && tok.size() == 3) {
        g.add_edge(tok[1], tok[2]);
      } else {
        text::fail(line.number, "expected 'vertex <name> [loop]' or 'edge <u> <v>'");
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Parse) throw;
      std::string msg = e.what();
      if (msg.find("line ") != std::string::npos) throw;
      text::fail(line.number, msg.substr(msg.find(": ") + 2));
    }
  }
  return g;
}

Graph load_graph(const std::filesystem::path& path) { return parse_graph(text::read_file(path)); }

std::string format_graph(const Graph& g) {
  std::string out;
  for (std::size_t v = 0; v < g.size(); ++v)
    out += "vertex " + g.name(v) + (g.looped(v) ? " loop" : "") + "\n";
  for (std::size_t u = 0; u < g.size(); ++u)
    for (std::size_t v = u + 1; v < g.size(); ++v)
      if (g.adjacent(u, v)) out += "edge " + g.name(u) + " " + g.name(v) + "\n";
  return out;
}

GraphUnion disjoint_union(const Graph& a, const Graph& b) {
  GraphUnion r;
  auto pick = [&](const std::string& name, const Graph& other, const char* prefix) {
    if (!other.find(name)) return name;
    std::string fresh = prefix + name;
    while (a.find(fresh) || b.find(fresh)) fresh = prefix + fresh;
    return fresh;
  };
  for (std::size_t v = 0; v < a.size(); ++v)
    r.left.push_back(r.graph.add_vertex(pick(a.name(v), b, "L_"), a.looped(v)));
  for (std::size_t v = 0; v < b.size(); ++v)
    r.right.push_back(r.graph.add_vertex(pick(b.name(v), a, "R_"), b.looped(v)));
  for (std::size_t u = 0; u < a.size(); ++u)
    for (std::size_t v = u + 1; v < a.size(); ++v)
      if (a.adjacent(u, v)) r.graph.add_edge(r.left[u], r.left[v]);
  for (std::size_t u = 0; u < b.size(); ++u)
    for (std::size_t v = u + 1; v < b.size(); ++v)
      if (b.adjacent(u, v)) r.graph.add_edge(r.right[u], r.right[v]);
  return r;
}

GraphUnion join(const Graph& a, const Graph& b) {
  auto r = disjoint_union(a, b);
  for (auto u : r.left)
    for (auto v : r.right) r.graph.add_edge(u, v);
  return r;
}

Graph graph_from_masks(std::size_t n, unsigned loops, unsigned long long edges) {
  Graph g;
  for (std::size_t v = 0; v < n; ++v) g.add_vertex("v" + std::to_string(v), (loops >> v) & 1U);
  std::size_t bit = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v, ++bit)
      if ((edges >> bit) & 1ULL) g.add_edge(u, v);
  return g;
}

// ---------------------------------------------------------------------------
// Expressions

MonoidExpr MonoidExpr::bicyclic(std::string origin) {
  return MonoidExpr{Kind::B, {}, std::move(origin)};
}
MonoidExpr MonoidExpr::integers(std::string origin) {
  return MonoidExpr{Kind::Z, {}, std::move(origin)};
}
MonoidExpr MonoidExpr::free_product(std::vector<MonoidExpr> children) {
  return MonoidExpr{Kind::FreeProduct, std::move(children), {}};
}
MonoidExpr MonoidExpr::direct_product(std::vector<MonoidExpr> children) {
  return MonoidExpr{Kind::DirectProduct, std::move(children), {}};
}
MonoidExpr MonoidExpr::power(Kind leaf, std::size_t n) {
  if (n == 1) return MonoidExpr{leaf, {}, {}};
  return direct_product(std::vector<MonoidExpr>(n, MonoidExpr{leaf, {}, {}}));
}

std::size_t MonoidExpr::leaf_count() const {
  if (is_leaf()) return 1;
  std::size_t n = 0;
  for (const auto& c : children) n += c.leaf_count();
  return n;
}

bool operator==(const MonoidExpr& a, const MonoidExpr& b) {
  return a.kind == b.kind && a.children == b.children;
}

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  MonoidExpr parse() {
    auto e = expr();
    skip();
    if (pos_ != s_.size()) error("trailing input");
    return e;
  }

 private:
  MonoidExpr expr() {
    skip();
    if (accept("FreeProduct")) return MonoidExpr::free_product(list());
    if (accept("DirectProduct")) return MonoidExpr::direct_product(list());
    if (pos_ < s_.size() && (s_[pos_] == 'B' || s_[pos_] == 'Z')) {
      auto kind = s_[pos_] == 'B' ? MonoidExpr::Kind::B : MonoidExpr::Kind::Z;
      ++pos_;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '^') {
        ++pos_;
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) error("expected exponent");
        return MonoidExpr::power(kind, std::stoul(std::string(s_.substr(start, pos_ - start))));
      }
      return MonoidExpr{kind, {}, {}};
    }
    error("expected B, Z, FreeProduct or DirectProduct");
  }

  std::vector<MonoidExpr> list() {
    skip();
    expect('(');
    std::vector<MonoidExpr> out;
    skip();
    if (pos_ < s_.size() && s_[pos_] == ')') {
      ++pos_;
      return out;
    }
    while (true) {
      out.push_back(expr());
      skip();
      if (pos_ < s_.size() && s_[pos_] == ',') {
        ++pos_;
        continue;
      }
      expect(')');
      return out;
    }
  }

  bool accept(std::string_view word) {
    if (s_.substr(pos_, word.size()) != word) return false;
    pos_ += word.size();
    return true;
  }
  void expect(char c) {
    if (pos_ >= s_.size() || s_[pos_] != c) error(std::string("expected '") + c + "'");
    ++pos_;
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void error(const std::string& msg) const {
    throw Error(ErrorKind::Parse, msg + " at offset " + std::to_string(pos_));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

void build_expr_graph(const MonoidExpr& e, const std::string& path, Graph& g,
                      std::vector<std::string>& origins, std::vector<std::size_t>& out) {
  if (e.is_leaf()) {
    out.push_back(g.add_vertex(path, e.kind == MonoidExpr::Kind::Z));
    origins.push_back(e.origin);
    return;
  }
  std::vector<std::vector<std::size_t>> parts;
  for (std::size_t i = 0; i < e.children.size(); ++i) {
    parts.emplace_back();
    build_expr_graph(e.children[i], path + "_" + std::to_string(i), g, origins, parts.back());
  }
  if (e.kind == MonoidExpr::Kind::DirectProduct)
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t j = i + 1; j < parts.size(); ++j)
        for (auto u : parts[i])
          for (auto v : parts[j]) g.add_edge(u, v);
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
}

}  // namespace

MonoidExpr parse_expr(std::string_view source) { return ExprParser(source).parse(); }

std::string format_expr(const MonoidExpr& e) {
  switch (e.kind) {
    case MonoidExpr::Kind::B: return "B";
    case MonoidExpr::Kind::Z: return "Z";
    default: break;
  }
  if (e.kind == MonoidExpr::Kind::DirectProduct && e.children.empty()) return "B^0";
  std::string out = e.kind == MonoidExpr::Kind::FreeProduct ? "FreeProduct(" : "DirectProduct(";
  for (std::size_t i = 0; i < e.children.size(); ++i) {
    if (i) out += ", ";
    out += format_expr(e.children[i]);
  }
  return out + ")";
}

Graph expr_to_graph(const MonoidExpr& e) {
  Graph g;
  std::vector<std::string> origins;
  std::vector<std::size_t> vertices;
  build_expr_graph(e, "v", g, origins, vertices);
  return g;
}

std::vector<std::string> expr_origins(const MonoidExpr& e) {
  Graph g;
  std::vector<std::string> origins;
  std::vector<std::size_t> vertices;
  build_expr_graph(e, "v", g, origins, vertices);
  return origins;
}

// ---------------------------------------------------------------------------
// Structural classes

namespace {

bool forest_on(const Graph& g, std::vector<std::size_t> vertices) {
  while (!vertices.empty()) {
    // Split off one connected component of the induced subgraph.
    std::vector<char> in(g.size(), 0), seen(g.size(), 0);
    for (auto v : vertices) in[v] = 1;
    std::vector<std::size_t> comp{vertices[0]}, stack{vertices[0]};
    seen[vertices[0]] = 1;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto u : vertices)
        if (!seen[u] && g.adjacent(u, v)) {
          seen[u] = 1;
          comp.push_back(u);
          stack.push_back(u);
        }
    }
    std::vector<std::size_t> rest;
    for (auto v : vertices)
      if (!seen[v]) rest.push_back(v);
    if (comp.size() > 1) {
      auto universal = std::find_if(comp.begin(), comp.end(), [&](std::size_t v) {
        return std::all_of(comp.begin(), comp.end(),
                           [&](std::size_t u) { return u == v || g.adjacent(u, v); });
      });
      if (universal == comp.end()) return false;
      comp.erase(universal);
      if (!forest_on(g, comp)) return false;
    }
    vertices = std::move(rest);
  }
  return true;
}

std::vector<std::size_t> by_name(const Graph& g) {
  std::vector<std::size_t> order(g.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return g.name(a) < g.name(b); });
  return order;
}

// Orders four vertices that induce a P4 or C4 along the path/cycle,
// starting from the name-smallest admissible endpoint.
std::optional<InducedWitness> shape_of(const Graph& g, const std::array<std::size_t, 4>& q) {
  int deg[4] = {0, 0, 0, 0};
  int edges = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (g.adjacent(q[i], q[j])) {
        ++deg[i];
        ++deg[j];
        ++edges;
      }
  InducedShape shape;
  int start = -1;
  if (edges == 4 && deg[0] == 2 && deg[1] == 2 && deg[2] == 2 && deg[3] == 2) {
    shape = InducedShape::C4;
    start = 0;
  } else if (edges == 3) {
    int ones = 0;
    for (int i = 0; i < 4; ++i)
      if (deg[i] == 1) {
        ++ones;
        if (start < 0) start = i;
      }
    if (ones != 2) return std::nullopt;  // star K1,3 or triangle plus isolated vertex
    shape = InducedShape::P4;
  } else {
    return std::nullopt;
  }
  // q is name-sorted, so the first candidate start is the smallest name.
  std::vector<std::size_t> walk{q[start]};
  std::vector<char> used(4, 0);
  used[start] = 1;
  while (walk.size() < 4) {
    for (int i = 0; i < 4; ++i)
      if (!used[i] && g.adjacent(walk.back(), q[i])) {
        used[i] = 1;
        walk.push_back(q[i]);
        break;
      }
  }
  return InducedWitness{shape, walk};
}

}  // namespace

bool is_transitive_forest(const Graph& g) {
  std::vector<std::size_t> all(g.size());
  std::iota(all.begin(), all.end(), 0);
  return forest_on(g, all);
}

std::string_view to_string(InducedShape shape) {
  switch (shape) {
    case InducedShape::C4: return "C4";
    case InducedShape::P4: return "P4";
    case InducedShape::PPN: return "PPN";
  }
  return "?";
}

std::optional<InducedWitness> find_c4_p4(const Graph& g) {
  auto order = by_name(g);
  std::size_t n = order.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d)
          if (auto w = shape_of(g, {order[a], order[b], order[c], order[d]})) return w;
  return std::nullopt;
}

std::optional<InducedWitness> find_ppn(const Graph& g) {
  auto order = by_name(g);
  for (auto c : order) {
    if (g.looped(c)) continue;
    for (std::size_t i = 0; i < order.size(); ++i) {
      auto x = order[i];
      if (x == c || !g.adjacent(c, x)) continue;
      for (std::size_t j = i + 1; j < order.size(); ++j) {
        auto y = order[j];
        if (y == c || !g.adjacent(c, y) || g.adjacent(x, y)) continue;
        return InducedWitness{InducedShape::PPN, {c, x, y}};
      }
    }
  }
  return std::nullopt;
}

bool is_ppn_free(const Graph& g) { return !find_ppn(g).has_value(); }

bool witness_holds(const Graph& g, const InducedWitness& w) {
  const auto& v = w.vertices;
  for (auto x : v)
    if (x >= g.size()) return false;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[i] == v[j]) return false;
  auto want = [&](std::size_t i, std::size_t j) {
    switch (w.shape) {
      case InducedShape::C4: return (j - i) % 2 == 1;  // consecutive around the cycle
      case InducedShape::P4: return j == i + 1;
      case InducedShape::PPN: return i == 0;
    }
    return false;
  };
  std::size_t expected = w.shape == InducedShape::PPN ? 3 : 4;
  if (v.size() != expected) return false;
  if (w.shape == InducedShape::PPN && g.looped(v[0])) return false;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (g.adjacent(v[i], v[j]) != want(i, j)) return false;
  return true;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Decidable: return "decidable";
    case Verdict::Undecidable: return "undecidable";
    case Verdict::OpenPPN: return "open";
  }
  return "?";
}

namespace {

MonoidExpr decompose_on(const Graph& g, std::vector<std::size_t> vertices) {
  auto by = [&](std::size_t a, std::size_t b) { return g.name(a) < g.name(b); };
  std::sort(vertices.begin(), vertices.end(), by);
  if (vertices.empty()) return MonoidExpr::direct_product({});

  auto sub = g.induced(vertices);
  auto comps = sub.components();
  if (comps.size() > 1) {
    std::vector<MonoidExpr> parts;
    // vertices is name-sorted, so components come out ordered by their
    // smallest name.
    for (const auto& c : comps) {
      std::vector<std::size_t> members;
      for (auto i : c) members.push_back(vertices[i]);
      parts.push_back(decompose_on(g, members));
    }
    return MonoidExpr::free_product(std::move(parts));
  }

  bool clique = sub.edge_count() == vertices.size() * (vertices.size() - 1) / 2;
  if (clique) {
    std::vector<MonoidExpr> leaves;
    for (auto v : vertices)
      if (!g.looped(v)) leaves.push_back(MonoidExpr::bicyclic(g.name(v)));
    for (auto v : vertices)
      if (g.looped(v)) leaves.push_back(MonoidExpr::integers(g.name(v)));
    if (leaves.size() == 1) return leaves.front();
    return MonoidExpr::direct_product(std::move(leaves));
  }

  for (auto v : vertices) {
    if (!g.looped(v)) continue;
    bool universal = std::all_of(vertices.begin(), vertices.end(),
                                 [&](std::size_t u) { return u == v || g.adjacent(u, v); });
    if (!universal) continue;
    std::vector<std::size_t> rest;
    for (auto u : vertices)
      if (u != v) rest.push_back(u);
    auto inner = decompose_on(g, rest);
    std::vector<MonoidExpr> parts{MonoidExpr::integers(g.name(v))};
    if (inner.kind == MonoidExpr::Kind::DirectProduct) {
      for (auto& c : inner.children) parts.push_back(std::move(c));
    } else {
      parts.push_back(std::move(inner));
    }
    return MonoidExpr::direct_product(std::move(parts));
  }
  throw Error(ErrorKind::NotDecidable, "graph is not a PPN-free transitive forest");
}

}  // namespace

MonoidExpr decompose_dec(const Graph& g) {
  if (find_c4_p4(g))
    throw Error(ErrorKind::NotDecidable, "graph contains an induced C4 or P4 once loops are dropped");
  if (find_ppn(g)) throw Error(ErrorKind::NotDecidable, "graph contains an induced PPN-graph");
  std::vector<std::size_t> all(g.size());
  std::iota(all.begin(), all.end(), 0);
  return decompose_on(g, all);
}

Classification classify(const Graph& g) {
  if (auto w = find_c4_p4(g)) return {Verdict::Undecidable, {}, w};
  if (auto w = find_ppn(g)) return {Verdict::OpenPPN, {}, w};
  return {Verdict::Decidable, decompose_dec(g), std::nullopt};
}

}  // namespace valence
