#include "preach/graph.hpp"

#include "preach/error.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace preach {

namespace {

// Counting sort of (key, value) pairs into CSR arrays; values inside a
// bucket end up sorted because the input is visited in sorted order.
void build_csr(NodeId n, std::span<const Edge> sorted_edges, bool by_tail,
               std::vector<std::uint32_t> &offsets,
               std::vector<NodeId> &targets) {
  offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const Edge &e : sorted_edges)
    ++offsets[(by_tail ? e.tail : e.head) + 1];
  for (NodeId v = 0; v < n; ++v)
    offsets[v + 1] += offsets[v];
  targets.resize(sorted_edges.size());
  std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const Edge &e : sorted_edges) {
    const NodeId key = by_tail ? e.tail : e.head;
    targets[cursor[key]++] = by_tail ? e.head : e.tail;
  }
}

} // namespace

Graph Graph::from_edges(NodeId n, std::span<const Edge> edges) {
  if (n == kNoNode)
    throw InvalidArgument("node count exceeds the 32-bit id space");
  if (edges.size() >= kNoNode)
    throw InvalidArgument("edge count exceeds the 32-bit id space");
  for (const Edge &e : edges) {
    if (e.tail >= n || e.head >= n)
      throw InvalidArgument("edge endpoint out of range");
  }

  Graph g;
  g.n_ = n;
  // Sort by (tail, head) for the forward lists; the stable counting pass
  // over (tail-sorted) input then leaves every predecessor list sorted too.
  std::vector<Edge> sorted(edges.begin(), edges.end());
  if (!std::is_sorted(sorted.begin(), sorted.end()))
    std::sort(sorted.begin(), sorted.end());
  build_csr(n, sorted, true, g.out_offsets_, g.out_targets_);
  build_csr(n, sorted, false, g.in_offsets_, g.in_targets_);
  return g;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> result;
  result.reserve(out_targets_.size());
  for (NodeId v = 0; v < n_; ++v)
    for (NodeId w : successors(v))
      result.push_back({v, w});
  return result;
}

Graph Graph::reversed() const {
  Graph g;
  g.n_ = n_;
  g.out_offsets_ = in_offsets_;
  g.out_targets_ = in_targets_;
  g.in_offsets_ = out_offsets_;
  g.in_targets_ = out_targets_;
  return g;
}

// ---------------------------------------------------------------------------
// Text formats

namespace {

class LineReader {
public:
  explicit LineReader(std::string_view text) : text_(text) {}

  // Advances to the next line; returns false at end of input.
  bool next(std::string_view &line) {
    if (pos_ >= text_.size())
      return false;
    const std::size_t end = text_.find('\n', pos_);
    const std::size_t stop = end == std::string_view::npos ? text_.size() : end;
    line = text_.substr(pos_, stop - pos_);
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    pos_ = stop + 1;
    ++line_no_;
    return true;
  }

  // Next line that is not blank.
  bool next_nonblank(std::string_view &line) {
    while (next(line)) {
      if (line.find_first_not_of(" \t") != std::string_view::npos)
        return true;
    }
    return false;
  }

  std::size_t line_no() const { return line_no_; }

  [[noreturn]] void fail(const std::string &what) const {
    throw ParseError(what + " at line " + std::to_string(line_no_));
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

bool is_space(char c) { return c == ' ' || c == '\t'; }

void skip_space(std::string_view &s) {
  while (!s.empty() && is_space(s.front()))
    s.remove_prefix(1);
}

// Reads one unsigned decimal token; false at end of line or at a '#'
// terminator.
bool read_uint(const LineReader &reader, std::string_view &s,
               std::uint64_t &value) {
  skip_space(s);
  if (s.empty() || s.front() == '#')
    return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec == std::errc::result_out_of_range)
    reader.fail("integer too large");
  if (ec != std::errc() || (ptr != s.data() + s.size() && !is_space(*ptr) &&
                            *ptr != ':' && *ptr != '#'))
    reader.fail("non-integer token");
  s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
  return true;
}

std::uint64_t expect_uint(const LineReader &reader, std::string_view &s) {
  std::uint64_t value = 0;
  if (!read_uint(reader, s, value))
    reader.fail("missing integer");
  return value;
}

void expect_end(const LineReader &reader, std::string_view s) {
  skip_space(s);
  if (!s.empty())
    reader.fail("unexpected trailing token");
}

NodeId checked_count(const LineReader &reader, std::uint64_t value,
                     const char *what) {
  if (value >= kNoNode)
    reader.fail(std::string(what) + " exceeds the 32-bit id space");
  return static_cast<NodeId>(value);
}

NodeId checked_endpoint(const LineReader &reader, std::uint64_t value,
                        NodeId n) {
  if (value >= n)
    reader.fail("endpoint out of range");
  return static_cast<NodeId>(value);
}

Graph parse_edge_list(std::string_view text) {
  LineReader reader(text);
  std::string_view line;
  if (!reader.next_nonblank(line))
    throw ParseError("missing header at line 1");
  const NodeId n = checked_count(reader, expect_uint(reader, line), "n");
  const NodeId m = checked_count(reader, expect_uint(reader, line), "m");
  expect_end(reader, line);

  std::vector<Edge> edges;
  edges.reserve(m);
  while (reader.next_nonblank(line)) {
    if (edges.size() == m)
      reader.fail("more edge lines than declared");
    const NodeId u = checked_endpoint(reader, expect_uint(reader, line), n);
    const NodeId v = checked_endpoint(reader, expect_uint(reader, line), n);
    expect_end(reader, line);
    edges.push_back({u, v});
  }
  if (edges.size() != m)
    throw ParseError("expected " + std::to_string(m) + " edge lines, found " +
                     std::to_string(edges.size()));
  return Graph::from_edges(n, edges);
}

Graph parse_gra(std::string_view text) {
  LineReader reader(text);
  std::string_view line;
  if (!reader.next_nonblank(line))
    throw ParseError("missing header at line 1");
  skip_space(line);
  if (line.starts_with("graph_for_greach")) {
    line.remove_prefix(std::string_view("graph_for_greach").size());
    expect_end(reader, line);
    if (!reader.next_nonblank(line))
      reader.fail("missing node count");
  }
  const NodeId n = checked_count(reader, expect_uint(reader, line), "n");
  expect_end(reader, line);

  std::vector<Edge> edges;
  NodeId expected_id = 0;
  while (reader.next_nonblank(line)) {
    if (expected_id == n)
      reader.fail("more node lines than declared");
    if (expect_uint(reader, line) != expected_id)
      reader.fail("node ids must be consecutive and ascending");
    skip_space(line);
    if (line.empty() || line.front() != ':')
      reader.fail("expected ':'");
    line.remove_prefix(1);
    std::uint64_t succ = 0;
    while (read_uint(reader, line, succ)) {
      edges.push_back({expected_id, checked_endpoint(reader, succ, n)});
      if (edges.size() >= kNoNode)
        reader.fail("m exceeds the 32-bit id space");
    }
    if (line.empty() || line.front() != '#')
      reader.fail("expected '#'");
    line.remove_prefix(1);
    expect_end(reader, line);
    ++expected_id;
  }
  if (expected_id != n)
    throw ParseError("expected " + std::to_string(n) + " node lines, found " +
                     std::to_string(expected_id));
  return Graph::from_edges(n, edges);
}

} // namespace

Graph parse_graph(std::string_view text, GraphFormat format) {
  return format == GraphFormat::EdgeList ? parse_edge_list(text)
                                         : parse_gra(text);
}

Graph load_graph(const std::filesystem::path &path, GraphFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_graph(buffer.str(), format);
}

std::string format_graph(const Graph &graph, GraphFormat format) {
  std::string out;
  out.reserve(static_cast<std::size_t>(graph.edge_count()) * 16 + 32);
  if (format == GraphFormat::EdgeList) {
    out += std::to_string(graph.node_count()) + ' ' +
           std::to_string(graph.edge_count()) + '\n';
    for (NodeId v = 0; v < graph.node_count(); ++v)
      for (NodeId w : graph.successors(v)) {
        out += std::to_string(v);
        out += ' ';
        out += std::to_string(w);
        out += '\n';
      }
  } else {
    out += std::to_string(graph.node_count()) + '\n';
    for (NodeId v = 0; v < graph.node_count(); ++v) {
      out += std::to_string(v) + ':';
      for (NodeId w : graph.successors(v)) {
        out += ' ';
        out += std::to_string(w);
      }
      out += " #\n";
    }
  }
  return out;
}

void write_graph(const Graph &graph, const std::filesystem::path &path,
                 GraphFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error("cannot open " + path.string() + " for writing");
  const std::string text = format_graph(graph, format);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out)
    throw Error("write failed: " + path.string());
}

// ---------------------------------------------------------------------------
// Condensation

CondensedDag condense(const Graph &graph) {
  const NodeId n = graph.node_count();
  constexpr NodeId kUnvisited = kNoNode;

  std::vector<NodeId> index(n, kUnvisited);
  std::vector<NodeId> lowlink(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<NodeId> tarjan_component(n, kNoNode);
  std::vector<NodeId> scc_stack;
  struct Frame {
    NodeId node;
    std::uint32_t next_edge;
  };
  std::vector<Frame> call_stack;
  NodeId next_index = 0;
  NodeId components = 0;

  for (NodeId root = 0; root < n; ++root) {
    if (index[root] != kUnvisited)
      continue;
    call_stack.push_back({root, 0});
    index[root] = lowlink[root] = next_index++;
    scc_stack.push_back(root);
    on_stack[root] = 1;

    while (!call_stack.empty()) {
      Frame &frame = call_stack.back();
      const NodeId v = frame.node;
      const auto succ = graph.successors(v);
      if (frame.next_edge < succ.size()) {
        const NodeId w = succ[frame.next_edge++];
        if (index[w] == kUnvisited) {
          index[w] = lowlink[w] = next_index++;
          scc_stack.push_back(w);
          on_stack[w] = 1;
          call_stack.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
        continue;
      }
      if (lowlink[v] == index[v]) {
        NodeId w;
        do {
          w = scc_stack.back();
          scc_stack.pop_back();
          on_stack[w] = 0;
          tarjan_component[w] = components;
        } while (w != v);
        ++components;
      }
      call_stack.pop_back();
      if (!call_stack.empty()) {
        const NodeId parent = call_stack.back().node;
        lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
      }
    }
  }

  // Relabel by smallest member: scanning nodes in ascending order meets each
  // component first at its minimum.
  std::vector<NodeId> relabel(components, kNoNode);
  NodeId next_id = 0;
  CondensedDag result;
  result.component_of.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    NodeId &id = relabel[tarjan_component[v]];
    if (id == kNoNode)
      id = next_id++;
    result.component_of[v] = id;
  }
  result.component_count = components;

  std::vector<Edge> dag_edges;
  for (NodeId v = 0; v < n; ++v) {
    const NodeId cv = result.component_of[v];
    for (NodeId w : graph.successors(v)) {
      const NodeId cw = result.component_of[w];
      if (cv != cw)
        dag_edges.push_back({cv, cw});
    }
  }
  std::sort(dag_edges.begin(), dag_edges.end());
  dag_edges.erase(std::unique(dag_edges.begin(), dag_edges.end()),
                  dag_edges.end());
  result.dag = Graph::from_edges(components, dag_edges);
  return result;
}

std::uint32_t longest_path_length(const Graph &dag) {
  const NodeId n = dag.node_count();
  std::vector<std::uint32_t> pending(n);
  std::vector<std::uint32_t> level(n, 0);
  std::vector<NodeId> ready;
  for (NodeId v = 0; v < n; ++v) {
    pending[v] = dag.in_degree(v);
    if (pending[v] == 0)
      ready.push_back(v);
  }
  std::uint32_t longest = 0;
  NodeId processed = 0;
  while (!ready.empty()) {
    const NodeId v = ready.back();
    ready.pop_back();
    ++processed;
    longest = std::max(longest, level[v]);
    for (NodeId w : dag.successors(v)) {
      level[w] = std::max(level[w], level[v] + 1);
      if (--pending[w] == 0)
        ready.push_back(w);
    }
  }
  if (processed != n)
    throw CycleError();
  return longest;
}

} // namespace preach
