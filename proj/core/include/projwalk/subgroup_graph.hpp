// Folded core graphs of finitely generated subgroups of F_k (Stallings
// graphs). Vertex 0 is the basepoint; edges are deterministic per (vertex,
// letter code), so a reduced word traces at most one path.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "projwalk/word.hpp"

namespace projwalk {

class SubgroupGraph {
 public:
  // Wedge of generator loops, folded, core-pruned.
  static SubgroupGraph from_generators(int rank, std::span<const Word> generators);
  // The cyclic subgroup generated by one standard generator.
  static SubgroupGraph cyclic_axis(int rank, int axis);

  // JSON: {"rank": k, "vertex_count": n, "basepoint": 0,
  //        "edges": [[from, to, "a"], ...]} with positively oriented labels.
  static SubgroupGraph from_json(const std::string& text);
  std::string to_json() const;

  int rank() const { return rank_; }
  int size() const { return static_cast<int>(adj_.size()); }
  static constexpr int basepoint() { return 0; }

  // Target of the edge labeled `code` at `v`, if present.
  std::optional<int> step(int v, LetterCode code) const {
    const std::int32_t t = adj_[static_cast<std::size_t>(v)][code];
    return t < 0 ? std::nullopt : std::optional<int>(t);
  }

  // Membership: the reduced word must trace a loop at the basepoint.
  bool contains(const Word& w) const;
  // Trace from `from`; nullopt if the path leaves the graph.
  std::optional<int> trace(const Word& w, int from = 0) const;

  bool folded() const;  // true by construction; re-checked by validate()
  bool is_core() const;
  void validate() const;  // throws std::invalid_argument

  // Single-vertex graphs are the subgroups generated by standard letters;
  // their cosets are convex subtrees of the Cayley tree.
  bool single_vertex() const { return size() == 1; }
  // For single-vertex graphs: whether `code`'s generator belongs to the subgroup.
  bool base_loop(LetterCode code) const { return adj_[0][code] >= 0; }

  // Length of the loop's word in the subgroup's Stallings basis: the number
  // of non-spanning-tree edges it traverses. For single-vertex graphs this
  // is the letter count, i.e. the induced-subgraph metric on cosets.
  // nullopt if the word does not trace a loop at the basepoint.
  std::optional<long> basis_length(const Word& loop) const;

  // Graph distance to the basepoint, per vertex.
  const std::vector<int>& dist_to_base() const { return dist_to_base_; }
  // Lexicographically least shortest-path word from v to the basepoint.
  const Word& lexmin_path_to_base(int v) const {
    return lexmin_path_[static_cast<std::size_t>(v)];
  }
  // All shortest-path words from v to the basepoint; throws if more than cap.
  std::vector<Word> shortest_paths_to_base(int v, std::size_t cap = 4096) const;

 private:
  SubgroupGraph() = default;
  void finalize();  // fold + core-prune + precompute distances

  int rank_ = 0;
  std::vector<std::vector<std::int32_t>> adj_;  // adj_[v][code] -> vertex or -1
  std::vector<std::vector<std::uint8_t>> tree_edge_;  // BFS spanning tree marks
  std::vector<int> dist_to_base_;
  std::vector<Word> lexmin_path_;
};

}  // namespace projwalk
