// Concrete projection systems on F_k: left cosets of a cyclic subgroup
// (fast path) or of a finitely generated subgroup given by its folded core
// graph, with exact closest-point projections onto cosets, the
// transversality relation, and brute-force axiom certification over balls.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "projwalk/measure.hpp"
#include "projwalk/subgroup_graph.hpp"
#include "projwalk/word.hpp"

namespace projwalk {

enum class Flavor { kCyclicCoset, kStallingsCoset };

std::string flavor_name(Flavor f);
Flavor flavor_from_name(const std::string& name);

// A left coset of the system's subgroup, identified by its canonical
// (shortlex-minimal) representative.
struct Coset {
  Word rep;
  friend bool operator==(const Coset&, const Coset&) = default;
};

struct SystemConstants {
  int lipschitz = 1;   // L
  int behrstock = 1;   // B
  int antichain = 2;   // s
};

struct AxiomViolation {
  std::string kind;  // "lipschitz" | "behrstock" | "antichain"
  std::string g, h, coset;
  long value = 0;
};

struct AxiomCertificate {
  Flavor flavor = Flavor::kCyclicCoset;
  int ball_radius = 0;
  long ball_size = 0;
  long cosets_checked = 0;
  int empirical_lipschitz = 0;
  int empirical_behrstock = 0;
  int empirical_antichain = 0;
  // Largest mutual gate-image diameter over transverse pairs (stallings).
  int empirical_projection_diameter = 0;
  SystemConstants declared;
  bool pass = false;
  std::vector<AxiomViolation> violations;

  std::string to_json() const;
};

struct AdmissibilityWitnesses {
  Word h1, h2;  // transversality witnesses (Def item 1)
  Word x1, x2;  // twisting witnesses (Def item 2)
};

struct WitnessReport {
  bool item1 = false, item2 = false, item3 = false, item4 = false;
  std::string failure;         // first counterexample, if any
  int ball_radius = 0;
  double c0_linear = 0.0;      // item 3: d_{Y0}(1, x1^n) >= n / c0
  double path_prob_exponent = 0.0;  // log mu(x1); item-3 path has prob mu(x1)^n
  // item 4: empirical P(w_n Y0 not-transverse Y0) per sampled n.
  std::vector<std::uint64_t> mc_n;
  std::vector<double> mc_rate;
  double c0_decay = 0.0;       // smallest integer C0 with rate <= C0 e^{-n/C0}
  bool reflected_checked = false;
  bool pass() const { return item1 && item2 && item3 && item4; }

  std::string to_json() const;
};

class ProjectionSystem {
 public:
  static ProjectionSystem cyclic(int rank, int axis, SystemConstants declared = {});
  static ProjectionSystem stallings(int rank, SubgroupGraph graph,
                                    SystemConstants declared = {}, int tau = 1);

  Flavor flavor() const { return flavor_; }
  int rank() const { return rank_; }
  int axis() const { return axis_; }
  const SubgroupGraph& graph() const { return *graph_; }
  const SystemConstants& declared() const { return declared_; }
  int tau() const { return tau_; }
  std::string subgroup_id() const;

  Coset base_coset() const { return Coset{}; }  // Y0 = Q
  bool in_coset(const Word& x, const Coset& z) const;

  Coset canonicalize(const Word& g) const;
  Coset translate(const Word& g, const Coset& z) const;

  // Closest-point projection of x onto the coset, as a group element.
  Word gate(const Word& x, const Coset& z) const;
  // d_Z(x, y): distance between the two gates inside the coset graph C(Z).
  int proj_distance(const Word& x, const Word& y, const Coset& z) const;

  bool transverse(const Coset& y, const Coset& z) const;

  // sup over all cosets of d_Z(1, w), with an argmax coset. Exact: only
  // cosets meeting the geodesic [1, w] can separate the endpoints.
  std::pair<int, Coset> sup_projection(const Word& w) const;
  // All cosets met by the geodesic [1, w] with their d_Z(1, w), deduplicated.
  std::vector<std::pair<Coset, int>> coset_separations(const Word& w) const;

  AxiomCertificate verify_axioms(int ball_radius, int workers = 1) const;

  WitnessReport check_admissibility(const StepMeasure& measure,
                                    const AdmissibilityWitnesses& witnesses, int ball_radius,
                                    std::uint64_t mc_trials, std::uint64_t mc_n_max,
                                    std::uint64_t seed, int workers = 1) const;

  // Cyclic fast path: the signed axis offset of gate(x, Z) relative to the
  // canonical representative. Requires z.rep canonical.
  long gate_offset(const Word& x, const Coset& z) const;

 private:
  ProjectionSystem() = default;

  // Elements q of Q minimizing d(y, q), via the traced prefix of y in the
  // core graph plus shortest completions.
  std::vector<Word> closest_in_subgroup(const Word& y, std::size_t cap) const;
  int coset_graph_distance(const Word& p, const Word& q, const Coset& z) const;
  // Subgroup elements of length <= tau_sample_radius_ (loops in the graph).
  std::vector<Word> subgroup_ball_elements() const;

  Flavor flavor_ = Flavor::kCyclicCoset;
  int rank_ = 2;
  int axis_ = 0;
  std::shared_ptr<const SubgroupGraph> graph_;
  SystemConstants declared_;
  int tau_ = 1;
  // Sample depth for gate-image diameters in the stallings transverse check.
  int tau_sample_radius_ = 6;
};

}  // namespace projwalk
