#pragma once

#include <cstdint>
#include <vector>

#include "regroup/netlist.hpp"

namespace regroup {

// Weighted Manhattan distance weights over the device hierarchy. Site
// differences cost 1, tile differences w, clock-region differences w^2; a
// difference of SLR would cost w^3 on 2.5D parts (reserved, unused).
struct DistanceWeights {
    explicit DistanceWeights(int base = 5);

    int w;
    int64_t w_site;
    int64_t w_tile;
    int64_t w_clk_region;
    int64_t w_slr; // reserved
};

int64_t spatial_distance(const PlacementTriple &a, const PlacementTriple &b,
                         const DistanceWeights &weights);

// Edit costs for the labeled-graph edit distance. Substituting a node keeps
// cost 0 when the type labels match; edge substitution is always free.
struct GedCostModel {
    int node_insert = 1;
    int node_delete = 1;
    int node_substitute = 1; // applied only when labels differ
    int edge_insert = 1;
    int edge_delete = 1;
};

struct GedBudget {
    int exact_node_limit = 8;       // A* runs when max(|V1|,|V2|) is at or below this
    bool upper_bound_on_timeout = true;
    int per_pair_node_budget = 100000; // cap on A* state expansions
};

struct GedResult {
    int64_t value = 0;
    bool exact = false;
};

// Minimum-cost edit path between two labeled directed graphs when it can be
// computed within budget; otherwise the cost of a concrete (greedy) edit
// path, which is a valid upper bound. Never fails.
GedResult graph_edit_distance(const NetlistGraph &g1, const NetlistGraph &g2,
                              const GedCostModel &cost = {}, const GedBudget &budget = {});

struct PairAverages {
    double spatial_avg = 0.0;
    double edit_avg = 0.0;
};

// Arithmetic means of the two kernels between one placement/graph and a list
// of others. Throws Error on an empty member list. The graph comparisons for
// independent members may run on `threads` workers; the reduction is ordered
// by member index, so results do not depend on the worker count.
double average_spatial(const PlacementTriple &candidate,
                       const std::vector<const PlacementTriple *> &members,
                       const DistanceWeights &weights);
double average_edit(const NetlistGraph &candidate,
                    const std::vector<const NetlistGraph *> &members, const GedCostModel &cost,
                    const GedBudget &budget, int threads = 1);
PairAverages average_pair_metrics(const PlacementTriple &candidate_placement,
                                  const NetlistGraph &candidate_graph,
                                  const std::vector<const PlacementTriple *> &member_placements,
                                  const std::vector<const NetlistGraph *> &member_graphs,
                                  const DistanceWeights &weights, const GedCostModel &cost,
                                  const GedBudget &budget, int threads = 1);

} // namespace regroup
