#include "regroup/analysis.hpp"

#include <cstdlib>

#include "regroup/errors.hpp"
#include "regroup/parallel.hpp"

namespace regroup {

DistanceWeights::DistanceWeights(int base) : w(base)
{
    if (base < 2)
        throw Error("distance weight base must be at least 2, got " + std::to_string(base));
    w_site = 1;
    w_tile = base;
    w_clk_region = static_cast<int64_t>(base) * base;
    w_slr = w_clk_region * base;
}

int64_t spatial_distance(const PlacementTriple &a, const PlacementTriple &b,
                         const DistanceWeights &weights)
{
    auto l1 = [](const GridXY &p, const GridXY &q) {
        return static_cast<int64_t>(std::abs(p.x - q.x)) + std::abs(p.y - q.y);
    };
    return weights.w_site * l1(a.site_xy, b.site_xy) + weights.w_tile * l1(a.tile_xy, b.tile_xy) +
           weights.w_clk_region * l1(a.clock_region_xy, b.clock_region_xy);
}

double average_spatial(const PlacementTriple &candidate,
                       const std::vector<const PlacementTriple *> &members,
                       const DistanceWeights &weights)
{
    if (members.empty())
        throw Error("average_spatial called with no members");
    int64_t total = 0;
    for (const auto *member : members)
        total += spatial_distance(candidate, *member, weights);
    return static_cast<double>(total) / static_cast<double>(members.size());
}

double average_edit(const NetlistGraph &candidate, const std::vector<const NetlistGraph *> &members,
                    const GedCostModel &cost, const GedBudget &budget, int threads)
{
    if (members.empty())
        throw Error("average_edit called with no members");
    std::vector<int64_t> values(members.size(), 0);
    parallel_for(members.size(), threads, [&](size_t i) {
        values[i] = graph_edit_distance(candidate, *members[i], cost, budget).value;
    });
    int64_t total = 0;
    for (int64_t v : values)
        total += v;
    return static_cast<double>(total) / static_cast<double>(members.size());
}

PairAverages average_pair_metrics(const PlacementTriple &candidate_placement,
                                  const NetlistGraph &candidate_graph,
                                  const std::vector<const PlacementTriple *> &member_placements,
                                  const std::vector<const NetlistGraph *> &member_graphs,
                                  const DistanceWeights &weights, const GedCostModel &cost,
                                  const GedBudget &budget, int threads)
{
    if (member_placements.empty() || member_placements.size() != member_graphs.size())
        throw Error("average_pair_metrics needs one placement and one graph per member");
    PairAverages out;
    out.spatial_avg = average_spatial(candidate_placement, member_placements, weights);
    out.edit_avg = average_edit(candidate_graph, member_graphs, cost, budget, threads);
    return out;
}

} // namespace regroup
