#include "preach/index.hpp"

#include "preach/error.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

namespace preach {

ReachIndex::ReachIndex(std::shared_ptr<const CondensedDag> condensed,
                       const RchPartition &rch, const LevelData &levels,
                       const LevelData &back_levels,
                       const DfsLabels &fwd_labels,
                       const DfsLabels &bwd_labels, HeuristicConfig config)
    : condensed_(std::move(condensed)), order_(rch.order), config_(config) {
  const NodeId n = condensed_->dag.node_count();
  if (rch.node_count() != n || levels.level.size() != n ||
      back_levels.level.size() != n || fwd_labels.phi.size() != n ||
      bwd_labels.phi.size() != n)
    throw InvalidArgument("index parts disagree on the node count");

  auto pick = [](const DfsLabels &l, NodeId v) {
    return DirectionLabels{l.phi[v],     l.phi_hat[v],  l.phi_min[v],
                           l.phi_gap[v], l.ptree_lo[v], l.ptree_hi[v]};
  };
  records_.resize(n);
  edges_.reserve(rch.fwd_targets.size() + rch.bwd_targets.size());
  for (NodeId v = 0; v < n; ++v) {
    NodeRecord &r = records_[v];
    r.fwd_begin = static_cast<std::uint32_t>(edges_.size());
    const auto fwd = rch.forward(v);
    edges_.insert(edges_.end(), fwd.begin(), fwd.end());
    r.bwd_begin = static_cast<std::uint32_t>(edges_.size());
    const auto bwd = rch.backward(v);
    edges_.insert(edges_.end(), bwd.begin(), bwd.end());
    r.level = levels.level[v];
    r.back_level = back_levels.level[v];
    r.fwd = pick(fwd_labels, v);
    r.bwd = pick(bwd_labels, v);
  }
}

RchPartition ReachIndex::rch() const {
  RchPartition p;
  p.order = order_;
  const NodeId n = node_count();
  p.fwd_offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  p.bwd_offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  for (NodeId v = 0; v < n; ++v) {
    const auto fwd = forward_edges(v);
    p.fwd_targets.insert(p.fwd_targets.end(), fwd.begin(), fwd.end());
    p.fwd_offsets[v + 1] = static_cast<std::uint32_t>(p.fwd_targets.size());
    const auto bwd = backward_edges(v);
    p.bwd_targets.insert(p.bwd_targets.end(), bwd.begin(), bwd.end());
    p.bwd_offsets[v + 1] = static_cast<std::uint32_t>(p.bwd_targets.size());
  }
  return p;
}

DfsLabels ReachIndex::labels(Direction direction) const {
  DfsLabels l;
  for (const NodeRecord &r : records_) {
    const DirectionLabels &d =
        direction == Direction::Forward ? r.fwd : r.bwd;
    l.phi.push_back(d.phi);
    l.phi_hat.push_back(d.phi_hat);
    l.phi_min.push_back(d.phi_min);
    l.phi_gap.push_back(d.phi_gap);
    l.ptree_lo.push_back(d.ptree_lo);
    l.ptree_hi.push_back(d.ptree_hi);
  }
  return l;
}

std::vector<std::uint32_t> ReachIndex::levels(Direction direction) const {
  std::vector<std::uint32_t> out;
  out.reserve(records_.size());
  for (const NodeRecord &r : records_)
    out.push_back(direction == Direction::Forward ? r.level : r.back_level);
  return out;
}

std::size_t ReachIndex::resident_bytes() const noexcept {
  return records_.capacity() * sizeof(NodeRecord) +
         edges_.capacity() * sizeof(NodeId) +
         order_.capacity() * sizeof(std::uint32_t);
}

std::uint64_t index_footprint(const ReachIndex &index) noexcept {
  return 4 * std::uint64_t{index.edge_count()} +
         64 * std::uint64_t{index.node_count()};
}

// ---------------------------------------------------------------------------
// Build

ReachIndex build_index(CondensedDag condensed, HeuristicConfig config) {
  auto shared = std::make_shared<const CondensedDag>(std::move(condensed));
  const Graph &dag = shared->dag;
  const RchPartition rch = compute_rch(dag);
  const LevelData levels = compute_levels(dag, Direction::Forward);
  const LevelData back_levels = compute_levels(dag, Direction::Backward);
  const DfsLabels fwd =
      compute_dfs_labels(dag, levels.root_order, Direction::Forward);
  const DfsLabels bwd =
      compute_dfs_labels(dag, back_levels.root_order, Direction::Backward);
  return ReachIndex(std::move(shared), rch, levels, back_levels, fwd, bwd,
                    config);
}

ReachIndex build_index(const Graph &graph, HeuristicConfig config) {
  return build_index(condense(graph), config);
}

// ---------------------------------------------------------------------------
// Persistence: little-endian u32 words after the 4-byte magic.

namespace {

constexpr char kMagic[4] = {'P', 'R', 'C', 'H'};
constexpr std::uint32_t kVersion = 1;

class Writer {
public:
  void u32(std::uint32_t x) {
    const char bytes[4] = {static_cast<char>(x), static_cast<char>(x >> 8),
                           static_cast<char>(x >> 16),
                           static_cast<char>(x >> 24)};
    out_.append(bytes, 4);
  }
  void array(std::span<const std::uint32_t> xs) {
    for (std::uint32_t x : xs)
      u32(x);
  }
  std::string &str() { return out_; }

private:
  std::string out_;
};

class Reader {
public:
  explicit Reader(std::string_view in) : in_(in) {}

  std::uint32_t u32() {
    if (in_.size() - pos_ < 4)
      throw ParseError("index file truncated");
    const auto *p = reinterpret_cast<const unsigned char *>(in_.data() + pos_);
    pos_ += 4;
    return std::uint32_t{p[0]} | std::uint32_t{p[1]} << 8 |
           std::uint32_t{p[2]} << 16 | std::uint32_t{p[3]} << 24;
  }
  std::vector<std::uint32_t> array(std::size_t count) {
    if ((in_.size() - pos_) / 4 < count)
      throw ParseError("index file truncated");
    std::vector<std::uint32_t> xs(count);
    for (auto &x : xs)
      x = u32();
    return xs;
  }
  std::string_view bytes(std::size_t count) {
    if (in_.size() - pos_ < count)
      throw ParseError("index file truncated");
    const auto s = in_.substr(pos_, count);
    pos_ += count;
    return s;
  }
  bool done() const { return pos_ == in_.size(); }

private:
  std::string_view in_;
  std::size_t pos_ = 0;
};

void check_offsets(const std::vector<std::uint32_t> &offsets) {
  if (offsets.front() != 0)
    throw ParseError("index offsets must start at 0");
  for (std::size_t i = 1; i < offsets.size(); ++i)
    if (offsets[i] < offsets[i - 1])
      throw ParseError("index offsets are not monotone");
}

} // namespace

std::string ReachIndex::serialize() const {
  const NodeId n = node_count();
  const RchPartition p = rch();
  Writer w;
  w.str().append(kMagic, 4);
  w.u32(kVersion);
  w.u32(n);
  w.u32(edge_count());
  w.array(p.order);
  w.array(p.fwd_offsets);
  w.array(p.fwd_targets);
  w.array(p.bwd_offsets);
  w.array(p.bwd_targets);
  w.array(levels(Direction::Forward));
  w.array(levels(Direction::Backward));
  for (Direction d : {Direction::Forward, Direction::Backward}) {
    const DfsLabels l = labels(d);
    w.array(l.phi);
    w.array(l.phi_hat);
    w.array(l.phi_min);
    w.array(l.phi_gap);
    for (NodeId v = 0; v < n; ++v) {
      w.u32(l.ptree_lo[v]);
      w.u32(l.ptree_hi[v]);
    }
  }
  w.u32(original_node_count());
  w.array(condensed_->component_of);
  return std::move(w.str());
}

ReachIndex ReachIndex::deserialize(std::string_view bytes) {
  Reader r(bytes);
  if (std::memcmp(r.bytes(4).data(), kMagic, 4) != 0)
    throw ParseError("not an index file (bad magic)");
  if (r.u32() != kVersion)
    throw ParseError("unsupported index version");
  const NodeId n = r.u32();
  const EdgeCount m = r.u32();
  if (n == kNoNode || m == kNoNode)
    throw ParseError("index counts out of range");

  RchPartition p;
  p.order = r.array(n);
  p.fwd_offsets = r.array(std::size_t{n} + 1);
  check_offsets(p.fwd_offsets);
  p.fwd_targets = r.array(p.fwd_offsets.back());
  p.bwd_offsets = r.array(std::size_t{n} + 1);
  check_offsets(p.bwd_offsets);
  p.bwd_targets = r.array(p.bwd_offsets.back());
  if (std::uint64_t{p.fwd_targets.size()} + p.bwd_targets.size() != m)
    throw ParseError("index edge arrays do not match the header");

  std::vector<Edge> edges;
  edges.reserve(m);
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId w : p.forward(v)) {
      if (w >= n)
        throw ParseError("index edge endpoint out of range");
      edges.push_back({v, w});
    }
    for (NodeId u : p.backward(v)) {
      if (u >= n)
        throw ParseError("index edge endpoint out of range");
      edges.push_back({u, v});
    }
  }

  LevelData levels, back_levels;
  levels.level = r.array(n);
  back_levels.level = r.array(n);
  DfsLabels labels[2];
  for (DfsLabels &l : labels) {
    l.phi = r.array(n);
    l.phi_hat = r.array(n);
    l.phi_min = r.array(n);
    l.phi_gap = r.array(n);
    l.ptree_lo.resize(n);
    l.ptree_hi.resize(n);
    for (NodeId v = 0; v < n; ++v) {
      l.ptree_lo[v] = r.u32();
      l.ptree_hi[v] = r.u32();
    }
  }

  auto condensed = std::make_shared<CondensedDag>();
  const NodeId original_n = r.u32();
  condensed->component_of = r.array(original_n);
  for (NodeId c : condensed->component_of)
    if (c >= n)
      throw ParseError("index component id out of range");
  if (!r.done())
    throw ParseError("trailing bytes after index");
  condensed->component_count = n;
  condensed->dag = Graph::from_edges(n, edges);

  return ReachIndex(std::move(condensed), p, levels, back_levels, labels[0],
                    labels[1], HeuristicConfig{});
}

void ReachIndex::save(const std::filesystem::path &path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error("cannot open " + path.string() + " for writing");
  const std::string bytes = serialize();
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out)
    throw Error("write failed: " + path.string());
}

ReachIndex ReachIndex::load(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return deserialize(buffer.str());
}

} // namespace preach
