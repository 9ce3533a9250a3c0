#include "projwalk/projection.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace projwalk {

std::string flavor_name(Flavor f) {
  return f == Flavor::kCyclicCoset ? "cyclic-coset" : "stallings-coset";
}

Flavor flavor_from_name(const std::string& name) {
  if (name == "cyclic-coset") return Flavor::kCyclicCoset;
  if (name == "stallings-coset") return Flavor::kStallingsCoset;
  throw std::invalid_argument("unknown flavor: " + name);
}

ProjectionSystem ProjectionSystem::cyclic(int rank, int axis, SystemConstants declared) {
  if (rank < 1 || rank > kMaxRank) throw std::invalid_argument("ProjectionSystem: bad rank");
  if (axis < 0 || axis >= rank) throw std::invalid_argument("ProjectionSystem: bad axis");
  ProjectionSystem s;
  s.flavor_ = Flavor::kCyclicCoset;
  s.rank_ = rank;
  s.axis_ = axis;
  s.graph_ = std::make_shared<SubgroupGraph>(SubgroupGraph::cyclic_axis(rank, axis));
  s.declared_ = declared;
  return s;
}

ProjectionSystem ProjectionSystem::stallings(int rank, SubgroupGraph graph,
                                             SystemConstants declared, int tau) {
  if (graph.rank() != rank) throw std::invalid_argument("ProjectionSystem: graph rank mismatch");
  graph.validate();
  ProjectionSystem s;
  s.flavor_ = Flavor::kStallingsCoset;
  s.rank_ = rank;
  s.graph_ = std::make_shared<SubgroupGraph>(std::move(graph));
  s.declared_ = declared;
  s.tau_ = tau;
  return s;
}

std::string ProjectionSystem::subgroup_id() const {
  if (flavor_ == Flavor::kCyclicCoset)
    return std::string("cyclic:") + code_char(letter_code(axis_, +1));
  return "stallings:" + graph_->to_json();
}

bool ProjectionSystem::in_coset(const Word& x, const Coset& z) const {
  const Word y = mul(z.rep.inverse(), x);
  if (flavor_ == Flavor::kCyclicCoset) {
    for (LetterCode c : y.codes())
      if (code_gen(c) != axis_) return false;
    return true;
  }
  return graph_->contains(y);
}

Coset ProjectionSystem::canonicalize(const Word& g) const {
  if (flavor_ == Flavor::kCyclicCoset) {
    const int run = std::abs(g.suffix_axis_run(axis_));
    return Coset{g.prefix(g.length() - run)};
  }
  if (graph_->single_vertex()) {
    int keep = g.length();
    while (keep > 0 && graph_->base_loop(g.code_at(keep - 1))) --keep;
    return Coset{g.prefix(keep)};
  }
  // General folded graph: minimal-length elements are g*q for q in Q closest
  // to g^-1 in the tree; pick the shortlex-least of them.
  const std::vector<Word> qs = closest_in_subgroup(g.inverse(), 4096);
  Word best;
  bool have = false;
  for (const Word& q : qs) {
    Word cand = mul(g, q);
    if (!have || shortlex_less(cand, best)) {
      best = std::move(cand);
      have = true;
    }
  }
  return Coset{have ? best : g};
}

Coset ProjectionSystem::translate(const Word& g, const Coset& z) const {
  return canonicalize(mul(g, z.rep));
}

long ProjectionSystem::gate_offset(const Word& x, const Coset& z) const {
  const int l = Word::common_prefix(z.rep, x);
  if (l < z.rep.length()) return 0;
  // x extends the representative; follow the axis run from there.
  long run = 0;
  int sign = 0;
  for (int i = l; i < x.length(); ++i) {
    const LetterCode c = x.code_at(i);
    if (code_gen(c) != axis_) break;
    if (sign == 0) sign = code_sign(c);
    ++run;
  }
  return sign >= 0 ? run : -run;
}

Word ProjectionSystem::gate(const Word& x, const Coset& z) const {
  if (flavor_ == Flavor::kCyclicCoset || graph_->single_vertex()) {
    Word g = z.rep;
    const int l = Word::common_prefix(z.rep, x);
    if (l == z.rep.length()) {
      for (int i = l; i < x.length(); ++i) {
        const LetterCode c = x.code_at(i);
        const bool in_q = flavor_ == Flavor::kCyclicCoset ? code_gen(c) == axis_
                                                          : graph_->base_loop(c);
        if (!in_q) break;
        g.push(c);
      }
    }
    return g;
  }
  const Word y = mul(z.rep.inverse(), x);
  const std::vector<Word> qs = closest_in_subgroup(y, 4096);
  Word best;
  bool have = false;
  for (const Word& q : qs) {
    Word cand = mul(z.rep, q);
    if (!have || shortlex_less(cand, best)) {
      best = std::move(cand);
      have = true;
    }
  }
  return best;
}

std::vector<Word> ProjectionSystem::closest_in_subgroup(const Word& y, std::size_t cap) const {
  const SubgroupGraph& graph = *graph_;
  // Trace the prefix of y through the core graph.
  std::vector<int> path{SubgroupGraph::basepoint()};
  for (int i = 0; i < y.length(); ++i) {
    const auto next = graph.step(path.back(), y.code_at(i));
    if (!next) break;
    path.push_back(*next);
  }
  // d(y, Q) = min_j (|y| - j) + dist(u_j): cancellation of length j against
  // the traced prefix plus a shortest completion back to the basepoint.
  int best_total = -1;
  for (std::size_t j = 0; j < path.size(); ++j) {
    const int total = y.length() - static_cast<int>(j) + graph.dist_to_base()[
        static_cast<std::size_t>(path[j])];
    if (best_total < 0 || total < best_total) best_total = total;
  }
  std::vector<Word> out;
  std::unordered_set<Word, WordHash> seen;
  for (std::size_t j = 0; j < path.size(); ++j) {
    const int total = y.length() - static_cast<int>(j) + graph.dist_to_base()[
        static_cast<std::size_t>(path[j])];
    if (total != best_total) continue;
    for (const Word& tail : graph.shortest_paths_to_base(path[j], cap)) {
      Word q = y.prefix(static_cast<int>(j));
      q.append(tail);
      if (word_distance(y, q) != best_total) continue;  // junction cancelled
      if (seen.insert(q).second) out.push_back(std::move(q));
      if (out.size() > cap) throw std::runtime_error("closest_in_subgroup: candidate blowup");
    }
  }
  return out;
}

int ProjectionSystem::coset_graph_distance(const Word& p, const Word& q, const Coset& z) const {
  if (p == q) return 0;
  // C(Z) carries the subgroup's word metric in its Stallings basis. For a
  // letter-generated subgroup this is exactly the induced-subgraph metric.
  const Word q1 = mul(z.rep.inverse(), p);
  const Word q2 = mul(z.rep.inverse(), q);
  const auto len = graph_->basis_length(mul(q1.inverse(), q2));
  if (!len)
    throw std::logic_error("proj_distance: points are not in the requested coset");
  return static_cast<int>(*len);
}

int ProjectionSystem::proj_distance(const Word& x, const Word& y, const Coset& z) const {
  if (flavor_ == Flavor::kCyclicCoset) {
    const long dx = gate_offset(x, z);
    const long dy = gate_offset(y, z);
    return static_cast<int>(dx > dy ? dx - dy : dy - dx);
  }
  const Word gx = gate(x, z);
  const Word gy = gate(y, z);
  if (graph_->single_vertex()) {
    // Convex coset: the induced metric is the restriction of the tree metric.
    return word_distance(gx, gy);
  }
  return coset_graph_distance(gx, gy, z);
}

bool ProjectionSystem::transverse(const Coset& y, const Coset& z) const {
  if (y == z) return false;  // irreflexive by convention
  if (flavor_ == Flavor::kCyclicCoset || graph_->single_vertex()) {
    // Distinct convex cosets in a tree have single-point mutual projections.
    return true;
  }
  // Mutual gate-image diameters over a sample of each coset, against tau.
  const auto image_diameter = [&](const Coset& src, const Coset& dst) {
    std::vector<Word> gates;
    for (const Word& q : subgroup_ball_elements()) {
      gates.push_back(gate(mul(src.rep, q), dst));
    }
    int diam = 0;
    for (std::size_t i = 0; i < gates.size(); ++i)
      for (std::size_t j = i + 1; j < gates.size(); ++j)
        diam = std::max(diam, coset_graph_distance(gates[i], gates[j], dst));
    return diam;
  };
  return image_diameter(y, z) <= tau_ && image_diameter(z, y) <= tau_;
}

std::vector<Word> ProjectionSystem::subgroup_ball_elements() const {
  // DFS over reduced words tracing loops at the basepoint.
  std::vector<Word> out;
  struct Frame {
    int vertex;
    Word word;
  };
  std::vector<Frame> stack{{SubgroupGraph::basepoint(), Word{}}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.vertex == SubgroupGraph::basepoint()) out.push_back(f.word);
    if (f.word.length() >= tau_sample_radius_) continue;
    for (int c = 0; c < 2 * rank_; ++c) {
      const auto code = static_cast<LetterCode>(c);
      if (!f.word.empty() && codes_cancel(f.word.codes().back(), code)) continue;
      const auto next = graph_->step(f.vertex, code);
      if (!next) continue;
      Frame g{*next, f.word};
      g.word.push(code);
      stack.push_back(std::move(g));
    }
  }
  return out;
}

std::vector<std::pair<Coset, int>> ProjectionSystem::coset_separations(const Word& w) const {
  std::vector<std::pair<Coset, int>> out;
  if (flavor_ == Flavor::kCyclicCoset || graph_->single_vertex()) {
    // Blocks of subgroup letters in w are exactly the separating cosets.
    int i = 0;
    while (i < w.length()) {
      const LetterCode c = w.code_at(i);
      const bool in_q = flavor_ == Flavor::kCyclicCoset ? code_gen(c) == axis_
                                                        : graph_->base_loop(c);
      if (!in_q) {
        ++i;
        continue;
      }
      int j = i;
      while (j < w.length()) {
        const LetterCode cj = w.code_at(j);
        const bool q = flavor_ == Flavor::kCyclicCoset ? code_gen(cj) == axis_
                                                       : graph_->base_loop(cj);
        if (!q) break;
        ++j;
      }
      out.emplace_back(Coset{w.prefix(i)}, j - i);
      i = j;
    }
    return out;
  }
  // General graphs: cosets met by the geodesic [1, w].
  std::unordered_set<Word, WordHash> seen;
  for (int i = 0; i <= w.length(); ++i) {
    Coset z = canonicalize(w.prefix(i));
    if (!seen.insert(z.rep).second) continue;
    const int d = proj_distance(Word{}, w, z);
    if (d > 0) out.emplace_back(std::move(z), d);
  }
  return out;
}

std::pair<int, Coset> ProjectionSystem::sup_projection(const Word& w) const {
  int best = 0;
  Coset arg{};
  for (auto& [coset, d] : coset_separations(w)) {
    if (d > best) {
      best = d;
      arg = coset;
    }
  }
  return {best, arg};
}

}  // namespace projwalk
