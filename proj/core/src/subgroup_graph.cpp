#include "projwalk/subgroup_graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace projwalk {

namespace {

// Union-find over provisional vertices during folding.
struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace

SubgroupGraph SubgroupGraph::from_generators(int rank, std::span<const Word> generators) {
  if (rank < 1 || rank > kMaxRank) throw std::invalid_argument("SubgroupGraph: bad rank");
  SubgroupGraph g;
  g.rank_ = rank;

  // Wedge of loops at the basepoint, one per generator word.
  struct Edge {
    int from, to;
    LetterCode code;
  };
  std::vector<Edge> edges;
  int next_vertex = 1;
  for (const Word& gen : generators) {
    if (gen.empty()) continue;
    if (gen.max_gen() >= rank) throw std::invalid_argument("SubgroupGraph: generator exceeds rank");
    int cur = 0;
    for (int i = 0; i < gen.length(); ++i) {
      const int tgt = (i + 1 == gen.length()) ? 0 : next_vertex++;
      edges.push_back({cur, tgt, gen.code_at(i)});
      cur = tgt;
    }
  }

  // Fold: merge targets of equal-labeled edges at a common vertex until
  // the edge map is deterministic.
  Dsu dsu(next_vertex);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::vector<std::int32_t>> out(
        static_cast<std::size_t>(next_vertex),
        std::vector<std::int32_t>(static_cast<std::size_t>(2 * rank), -1));
    for (const Edge& e : edges) {
      for (const auto& [from, to, code] :
           {std::tuple{e.from, e.to, e.code}, std::tuple{e.to, e.from, code_inverse(e.code)}}) {
        const int f = dsu.find(from);
        const int t = dsu.find(to);
        auto& slot = out[static_cast<std::size_t>(f)][code];
        if (slot < 0) {
          slot = t;
        } else if (slot != t) {
          dsu.unite(slot, t);
          changed = true;
        }
      }
    }
  }

  // Compact the folded graph; the basepoint class becomes vertex 0.
  std::vector<int> id(static_cast<std::size_t>(next_vertex), -1);
  int count = 0;
  id[static_cast<std::size_t>(dsu.find(0))] = count++;
  for (int v = 0; v < next_vertex; ++v) {
    const int r = dsu.find(v);
    if (id[static_cast<std::size_t>(r)] < 0) id[static_cast<std::size_t>(r)] = count++;
  }

  g.adj_.assign(static_cast<std::size_t>(count),
                std::vector<std::int32_t>(static_cast<std::size_t>(2 * rank), -1));
  for (const Edge& e : edges) {
    const int f = id[static_cast<std::size_t>(dsu.find(e.from))];
    const int t = id[static_cast<std::size_t>(dsu.find(e.to))];
    g.adj_[static_cast<std::size_t>(f)][e.code] = t;
    g.adj_[static_cast<std::size_t>(t)][code_inverse(e.code)] = f;
  }

  g.finalize();
  return g;
}

SubgroupGraph SubgroupGraph::cyclic_axis(int rank, int axis) {
  Word w;
  w.push(letter_code(axis, +1));
  const Word gens[] = {w};
  return from_generators(rank, gens);
}

void SubgroupGraph::finalize() {
  // Core-prune: peel non-basepoint vertices of degree <= 1.
  std::vector<bool> dead(adj_.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 1; v < adj_.size(); ++v) {
      if (dead[v]) continue;
      int degree = 0;
      for (std::int32_t t : adj_[v])
        if (t >= 0) ++degree;
      if (degree > 1) continue;
      for (int c = 0; c < 2 * rank_; ++c) {
        const std::int32_t t = adj_[v][static_cast<std::size_t>(c)];
        if (t >= 0) {
          adj_[static_cast<std::size_t>(t)][code_inverse(static_cast<LetterCode>(c))] = -1;
          adj_[v][static_cast<std::size_t>(c)] = -1;
        }
      }
      dead[v] = true;
      changed = true;
    }
  }
  // Compact dead vertices away.
  std::vector<int> id(adj_.size(), -1);
  int count = 0;
  for (std::size_t v = 0; v < adj_.size(); ++v)
    if (!dead[v]) id[v] = count++;
  std::vector<std::vector<std::int32_t>> compact(
      static_cast<std::size_t>(count),
      std::vector<std::int32_t>(static_cast<std::size_t>(2 * rank_), -1));
  for (std::size_t v = 0; v < adj_.size(); ++v) {
    if (dead[v]) continue;
    for (int c = 0; c < 2 * rank_; ++c) {
      const std::int32_t t = adj_[v][static_cast<std::size_t>(c)];
      if (t >= 0)
        compact[static_cast<std::size_t>(id[v])][static_cast<std::size_t>(c)] =
            id[static_cast<std::size_t>(t)];
    }
  }
  adj_ = std::move(compact);

  // BFS distances to the basepoint over the undirected edge set, a spanning
  // tree (for the Stallings-basis metric), and the lexicographically least
  // shortest-path word per vertex.
  const int n = size();
  dist_to_base_.assign(static_cast<std::size_t>(n), -1);
  dist_to_base_[0] = 0;
  tree_edge_.assign(static_cast<std::size_t>(n),
                    std::vector<std::uint8_t>(static_cast<std::size_t>(2 * rank_), 0));
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int c = 0; c < 2 * rank_; ++c) {
      const std::int32_t t = adj_[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)];
      if (t >= 0 && dist_to_base_[static_cast<std::size_t>(t)] < 0) {
        dist_to_base_[static_cast<std::size_t>(t)] = dist_to_base_[static_cast<std::size_t>(v)] + 1;
        tree_edge_[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)] = 1;
        tree_edge_[static_cast<std::size_t>(t)][code_inverse(static_cast<LetterCode>(c))] = 1;
        queue.push_back(t);
      }
    }
  }
  if (std::any_of(dist_to_base_.begin(), dist_to_base_.end(), [](int d) { return d < 0; }))
    throw std::invalid_argument("SubgroupGraph: disconnected graph");

  lexmin_path_.assign(static_cast<std::size_t>(n), Word{});
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return dist_to_base_[static_cast<std::size_t>(a)] <
                                        dist_to_base_[static_cast<std::size_t>(b)]; });
  for (int v : order) {
    if (v == 0) continue;
    Word best;
    bool have = false;
    for (int c = 0; c < 2 * rank_; ++c) {
      const std::int32_t t = adj_[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)];
      if (t < 0 || dist_to_base_[static_cast<std::size_t>(t)] !=
                       dist_to_base_[static_cast<std::size_t>(v)] - 1)
        continue;
      Word cand;
      cand.push(static_cast<LetterCode>(c));
      for (LetterCode lc : lexmin_path_[static_cast<std::size_t>(t)].codes()) cand.push(lc);
      if (!have || cand.codes() < best.codes()) {
        best = std::move(cand);
        have = true;
      }
    }
    lexmin_path_[static_cast<std::size_t>(v)] = std::move(best);
  }
}

std::optional<long> SubgroupGraph::basis_length(const Word& loop) const {
  int cur = 0;
  long count = 0;
  for (LetterCode c : loop.codes()) {
    const auto next = step(cur, c);
    if (!next) return std::nullopt;
    if (!tree_edge_[static_cast<std::size_t>(cur)][c]) ++count;
    cur = *next;
  }
  if (cur != 0) return std::nullopt;
  return count;
}

bool SubgroupGraph::contains(const Word& w) const {
  const auto end = trace(w, 0);
  return end.has_value() && *end == 0;
}

std::optional<int> SubgroupGraph::trace(const Word& w, int from) const {
  int cur = from;
  for (LetterCode c : w.codes()) {
    const auto next = step(cur, c);
    if (!next) return std::nullopt;
    cur = *next;
  }
  return cur;
}

bool SubgroupGraph::folded() const {
  // Determinism is structural with the adjacency-table encoding.
  return true;
}

bool SubgroupGraph::is_core() const {
  for (std::size_t v = 1; v < adj_.size(); ++v) {
    int degree = 0;
    for (std::int32_t t : adj_[v])
      if (t >= 0) ++degree;
    if (degree < 2) return false;
  }
  return true;
}

void SubgroupGraph::validate() const {
  if (adj_.empty()) throw std::invalid_argument("SubgroupGraph: empty graph");
  for (std::size_t v = 0; v < adj_.size(); ++v) {
    for (int c = 0; c < 2 * rank_; ++c) {
      const std::int32_t t = adj_[v][static_cast<std::size_t>(c)];
      if (t < -1 || t >= size()) throw std::invalid_argument("SubgroupGraph: bad edge target");
      if (t >= 0) {
        const std::int32_t back =
            adj_[static_cast<std::size_t>(t)][code_inverse(static_cast<LetterCode>(c))];
        if (back != static_cast<std::int32_t>(v))
          throw std::invalid_argument("SubgroupGraph: edge inverse mismatch");
      }
    }
  }
  if (!is_core()) throw std::invalid_argument("SubgroupGraph: not a core graph");
}

SubgroupGraph SubgroupGraph::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  SubgroupGraph g;
  g.rank_ = j.at("rank").get<int>();
  if (g.rank_ < 1 || g.rank_ > kMaxRank) throw std::invalid_argument("SubgroupGraph: bad rank");
  const int n = j.at("vertex_count").get<int>();
  if (n < 1) throw std::invalid_argument("SubgroupGraph: bad vertex_count");
  if (j.at("basepoint").get<int>() != 0)
    throw std::invalid_argument("SubgroupGraph: basepoint must be vertex 0");
  g.adj_.assign(static_cast<std::size_t>(n),
                std::vector<std::int32_t>(static_cast<std::size_t>(2 * g.rank_), -1));
  for (const auto& e : j.at("edges")) {
    const int from = e.at(0).get<int>();
    const int to = e.at(1).get<int>();
    const std::string label = e.at(2).get<std::string>();
    if (from < 0 || from >= n || to < 0 || to >= n || label.size() != 1)
      throw std::invalid_argument("SubgroupGraph: bad edge");
    const LetterCode c = char_code(label[0]);
    if (code_gen(c) >= g.rank_) throw std::invalid_argument("SubgroupGraph: edge label exceeds rank");
    auto& fwd = g.adj_[static_cast<std::size_t>(from)][c];
    auto& bwd = g.adj_[static_cast<std::size_t>(to)][code_inverse(c)];
    if ((fwd >= 0 && fwd != to) || (bwd >= 0 && bwd != from))
      throw std::invalid_argument("SubgroupGraph: not folded");
    fwd = to;
    bwd = from;
  }
  g.finalize();
  g.validate();
  return g;
}

std::string SubgroupGraph::to_json() const {
  nlohmann::json edges = nlohmann::json::array();
  for (int v = 0; v < size(); ++v) {
    for (int gen = 0; gen < rank_; ++gen) {
      const LetterCode c = letter_code(gen, +1);
      const std::int32_t t = adj_[static_cast<std::size_t>(v)][c];
      if (t >= 0) edges.push_back({v, t, std::string(1, code_char(c))});
    }
  }
  const nlohmann::json j = {{"rank", rank_},
                            {"vertex_count", size()},
                            {"basepoint", 0},
                            {"edges", edges}};
  return j.dump();
}

std::vector<Word> SubgroupGraph::shortest_paths_to_base(int v, std::size_t cap) const {
  std::vector<Word> out;
  // DFS over the BFS DAG (edges that decrease dist_to_base by one).
  struct Frame {
    int vertex;
    Word word;
  };
  std::vector<Frame> stack{{v, Word{}}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.vertex == 0) {
      out.push_back(std::move(f.word));
      if (out.size() > cap)
        throw std::runtime_error("SubgroupGraph: too many shortest paths");
      continue;
    }
    for (int c = 2 * rank_ - 1; c >= 0; --c) {
      const std::int32_t t = adj_[static_cast<std::size_t>(f.vertex)][static_cast<std::size_t>(c)];
      if (t < 0 || dist_to_base_[static_cast<std::size_t>(t)] !=
                       dist_to_base_[static_cast<std::size_t>(f.vertex)] - 1)
        continue;
      Frame next{t, f.word};
      next.word.push(static_cast<LetterCode>(c));
      stack.push_back(std::move(next));
    }
  }
  return out;
}

}  // namespace projwalk
