// Brute-force certification of the projection-system axioms over a ball,
// and the admissibility witness checks for a step measure.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "projwalk/parallel.hpp"
#include "projwalk/projection.hpp"
#include "projwalk/rng.hpp"
#include "projwalk/walk.hpp"
#include "projwalk/stats_util.hpp"

namespace projwalk {

namespace {

// Exact maximum clique, adequate for the sparse non-transversality graphs
// that appear here (usually edgeless).
struct MaxClique {
  const std::vector<std::vector<int>>& adj;
  int best = 0;

  void run() {
    std::vector<int> cand(adj.size());
    for (std::size_t i = 0; i < adj.size(); ++i) cand[i] = static_cast<int>(i);
    extend({}, cand);
  }

  void extend(std::vector<int> clique, std::vector<int> cand) {
    if (cand.empty()) {
      best = std::max(best, static_cast<int>(clique.size()));
      return;
    }
    if (static_cast<int>(clique.size() + cand.size()) <= best) return;
    while (!cand.empty()) {
      if (static_cast<int>(clique.size() + cand.size()) <= best) return;
      const int v = cand.back();
      cand.pop_back();
      std::vector<int> next;
      for (int u : cand)
        if (std::binary_search(adj[static_cast<std::size_t>(v)].begin(),
                               adj[static_cast<std::size_t>(v)].end(), u))
          next.push_back(u);
      clique.push_back(v);
      extend(clique, next);
      clique.pop_back();
    }
  }
};

}  // namespace

AxiomCertificate ProjectionSystem::verify_axioms(int ball_radius, int workers) const {
  if (ball_radius < 4) throw std::invalid_argument("verify_axioms: ball radius must be >= 4");
  AxiomCertificate cert;
  cert.flavor = flavor_;
  cert.ball_radius = ball_radius;
  cert.declared = declared_;

  const std::vector<Word> ball = ball_words(rank_, ball_radius);
  cert.ball_size = static_cast<long>(ball.size());
  const Coset y0 = base_coset();

  // Distinct cosets meeting the ball (cosets partition the group).
  std::vector<Coset> cosets;
  {
    std::unordered_set<Word, WordHash> seen;
    for (const Word& v : ball) {
      Coset z = canonicalize(v);
      if (seen.insert(z.rep).second) cosets.push_back(std::move(z));
    }
  }
  cert.cosets_checked = static_cast<long>(cosets.size());

  // (i) Lipschitz bound for pi_{Y0} over all pairs in the ball, and
  // (ii) the Behrstock inequality for Y0 against every coset gY0 met by the
  // ball, over all h in the ball.
  struct ChunkResult {
    int max_lip = 0;
    int max_minpair = -1;
    AxiomViolation lip_violation, beh_violation;
    bool lip_violated = false, beh_violated = false;
  };
  const std::function<ChunkResult(std::int64_t)> scan_one = [&](std::int64_t gi) {
    ChunkResult r;
    const Word& g = ball[static_cast<std::size_t>(gi)];
    const Coset gy0 = canonicalize(g);
    const bool check_behrstock = transverse(y0, gy0);
    for (const Word& h : ball) {
      const int dg = word_distance(g, h);
      if (dg > 0) {
        const int dz = proj_distance(g, h, y0);
        const int lip = (dz + dg - 1) / dg;  // ceil(dz / dg)
        if (lip > r.max_lip) {
          r.max_lip = lip;
          if (lip > declared_.lipschitz) {
            r.lip_violated = true;
            r.lip_violation = {"lipschitz", g.str(), h.str(), "", lip};
          }
        }
      }
      if (check_behrstock) {
        const int d1 = proj_distance(g, h, y0);
        const int d2 = proj_distance(Word{}, h, gy0);
        const int m = std::min(d1, d2);
        if (m > r.max_minpair) {
          r.max_minpair = m;
          if (m >= declared_.behrstock) {
            r.beh_violated = true;
            r.beh_violation = {"behrstock", g.str(), h.str(), gy0.rep.str(), m};
          }
        }
      }
    }
    return r;
  };
  const std::vector<ChunkResult> chunks =
      parallel_map<ChunkResult>(static_cast<std::int64_t>(ball.size()), workers, scan_one);

  int max_lip = 0;
  int max_minpair = -1;
  for (const ChunkResult& r : chunks) {
    if (r.max_lip > max_lip) max_lip = r.max_lip;
    if (r.max_minpair > max_minpair) max_minpair = r.max_minpair;
    if (r.lip_violated && cert.violations.size() < 8) cert.violations.push_back(r.lip_violation);
    if (r.beh_violated && cert.violations.size() < 8) cert.violations.push_back(r.beh_violation);
  }
  cert.empirical_lipschitz = max_lip;
  cert.empirical_behrstock = max_minpair + 1;  // smallest B with strict inequality

  // (iii) Anti-chain bound: the largest pairwise non-transverse family.
  {
    std::vector<std::vector<int>> non_trans(cosets.size());
    for (std::size_t i = 0; i < cosets.size(); ++i) {
      for (std::size_t j = i + 1; j < cosets.size(); ++j) {
        if (!transverse(cosets[i], cosets[j])) {
          non_trans[i].push_back(static_cast<int>(j));
          non_trans[j].push_back(static_cast<int>(i));
        }
      }
    }
    for (auto& row : non_trans) std::sort(row.begin(), row.end());
    MaxClique mc{non_trans};
    mc.run();
    cert.empirical_antichain = std::max(1, mc.best) + 1;
    if (cert.empirical_antichain > declared_.antichain && cert.violations.size() < 8)
      cert.violations.push_back(
          {"antichain", "", "", "", cert.empirical_antichain});
  }

  // Largest mutual projection diameter over transverse pairs; 0 for convex
  // cosets, sampled for general graphs. Feeds the default tau.
  if (flavor_ == Flavor::kStallingsCoset && !graph_->single_vertex()) {
    int diam = 0;
    const std::vector<Word> qball = subgroup_ball_elements();
    for (std::size_t i = 0; i < cosets.size(); ++i) {
      for (std::size_t j = 0; j < cosets.size(); ++j) {
        if (i == j || !transverse(cosets[i], cosets[j])) continue;
        std::vector<Word> gates;
        gates.reserve(qball.size());
        for (const Word& q : qball) gates.push_back(gate(mul(cosets[i].rep, q), cosets[j]));
        for (std::size_t a = 0; a < gates.size(); ++a)
          for (std::size_t b = a + 1; b < gates.size(); ++b)
            diam = std::max(diam, coset_graph_distance(gates[a], gates[b], cosets[j]));
      }
    }
    cert.empirical_projection_diameter = diam;
  }

  cert.pass = cert.empirical_lipschitz <= declared_.lipschitz &&
              cert.empirical_behrstock <= declared_.behrstock &&
              cert.empirical_antichain <= declared_.antichain;
  return cert;
}

std::string AxiomCertificate::to_json() const {
  nlohmann::json violations_json = nlohmann::json::array();
  for (const AxiomViolation& v : violations)
    violations_json.push_back(
        {{"kind", v.kind}, {"g", v.g}, {"h", v.h}, {"coset", v.coset}, {"value", v.value}});
  const nlohmann::json j = {
      {"flavor", flavor_name(flavor)},
      {"ball_radius", ball_radius},
      {"ball_size", ball_size},
      {"cosets_checked", cosets_checked},
      {"empirical", {{"L", empirical_lipschitz},
                     {"B", empirical_behrstock},
                     {"s", empirical_antichain},
                     {"projection_diameter", empirical_projection_diameter}}},
      {"declared",
       {{"L", declared.lipschitz}, {"B", declared.behrstock}, {"s", declared.antichain}}},
      {"pass", pass},
      {"violations", violations_json}};
  return j.dump(2);
}

WitnessReport ProjectionSystem::check_admissibility(const StepMeasure& measure,
                                                    const AdmissibilityWitnesses& witnesses,
                                                    int ball_radius, std::uint64_t mc_trials,
                                                    std::uint64_t mc_n_max, std::uint64_t seed,
                                                    int workers) const {
  WitnessReport report;
  report.ball_radius = ball_radius;
  for (const Word* w : {&witnesses.h1, &witnesses.h2, &witnesses.x1, &witnesses.x2}) {
    if (measure.index_of(*w) < 0)
      throw std::invalid_argument("check_admissibility: witness " + w->str() +
                                  " is not in the support");
  }

  const std::vector<Word> ball = ball_words(rank_, ball_radius);
  const Coset y0 = base_coset();

  // Item 1: every coset is transverse to h1*Y0 or to h2*Y0.
  const Coset h1y0 = canonicalize(witnesses.h1);
  const Coset h2y0 = canonicalize(witnesses.h2);
  report.item1 = true;
  {
    std::unordered_set<Word, WordHash> seen;
    for (const Word& v : ball) {
      const Coset z = canonicalize(v);
      if (!seen.insert(z.rep).second) continue;
      if (!transverse(h1y0, z) && !transverse(h2y0, z)) {
        report.item1 = false;
        report.failure = "item1: coset " + z.rep.str();
        break;
      }
    }
  }

  // Item 2: d_{Y0}(x1 h, x2 h) >= 2B for every h in the ball.
  report.item2 = true;
  for (const Word& h : ball) {
    const int d = proj_distance(mul(witnesses.x1, h), mul(witnesses.x2, h), y0);
    if (d < 2 * declared_.behrstock) {
      report.item2 = false;
      if (report.failure.empty())
        report.failure = "item2: h = " + h.str() + " gives d = " + std::to_string(d);
      break;
    }
  }

  // Item 3: the explicit path x1^n stays in Stab(Y0) with linear projection
  // growth; its probability is at least mu(x1)^n > 0.
  report.item3 = true;
  {
    if (!in_coset(witnesses.x1, y0)) {
      report.item3 = false;
      if (report.failure.empty()) report.failure = "item3: x1 does not stabilize Y0";
    } else {
      double c0 = 1.0;
      Word power;
      for (int n = 1; n <= std::max(4, ball_radius); ++n) {
        power = mul(power, witnesses.x1);
        const int d = proj_distance(Word{}, power, y0);
        if (d <= 0) {
          report.item3 = false;
          if (report.failure.empty())
            report.failure = "item3: d_{Y0}(1, x1^" + std::to_string(n) + ") = 0";
          break;
        }
        c0 = std::max(c0, std::ceil(static_cast<double>(n) / d));
      }
      report.c0_linear = c0;
      report.path_prob_exponent = std::log(measure.prob_of(witnesses.x1));
    }
  }

  // Item 4: Monte Carlo estimate of P(w_n Y0 not transverse Y0) on a dyadic
  // n-grid, with the smallest integer C0 whose envelope dominates.
  {
    for (std::uint64_t n = 4; n <= mc_n_max; n *= 2) report.mc_n.push_back(n);
    if (report.mc_n.empty() || report.mc_n.back() != mc_n_max) report.mc_n.push_back(mc_n_max);
    report.mc_rate.resize(report.mc_n.size(), 0.0);
    for (std::size_t ni = 0; ni < report.mc_n.size(); ++ni) {
      const std::uint64_t n = report.mc_n[ni];
      const std::function<int(std::int64_t)> one = [&](std::int64_t trial) {
        const Word w = walk_endpoint(measure, n, seed, (static_cast<std::uint64_t>(ni) << 32) |
                                                           static_cast<std::uint64_t>(trial));
        return transverse(canonicalize(w), y0) ? 0 : 1;
      };
      const std::vector<int> hits =
          parallel_map<int>(static_cast<std::int64_t>(mc_trials), workers, one);
      long total = 0;
      for (int h : hits) total += h;
      report.mc_rate[ni] = static_cast<double>(total) / static_cast<double>(mc_trials);
    }
    report.item4 = false;
    for (int c0 = 1; c0 <= 1000 && !report.item4; ++c0) {
      bool ok = true;
      for (std::size_t ni = 0; ni < report.mc_n.size(); ++ni) {
        const double bound = c0 * std::exp(-static_cast<double>(report.mc_n[ni]) / c0);
        const auto hits = static_cast<long>(
            std::llround(report.mc_rate[ni] * static_cast<double>(mc_trials)));
        const double upper = wilson_interval(hits, static_cast<long>(mc_trials)).hi;
        if (upper > bound) {
          ok = false;
          break;
        }
      }
      if (ok) {
        report.item4 = true;
        report.c0_decay = c0;
      }
    }
    if (!report.item4 && report.failure.empty()) report.failure = "item4: no exponential envelope";
  }

  return report;
}

std::string WitnessReport::to_json() const {
  const nlohmann::json j = {{"item1", item1},
                            {"item2", item2},
                            {"item3", item3},
                            {"item4", item4},
                            {"pass", pass()},
                            {"failure", failure},
                            {"ball_radius", ball_radius},
                            {"c0_linear", c0_linear},
                            {"path_prob_exponent", path_prob_exponent},
                            {"mc_n", mc_n},
                            {"mc_rate", mc_rate},
                            {"c0_decay", c0_decay},
                            {"reflected_checked", reflected_checked}};
  return j.dump(2);
}

}  // namespace projwalk
