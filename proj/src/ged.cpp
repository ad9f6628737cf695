#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <queue>
#include <tuple>
#include <vector>

#include "regroup/analysis.hpp"
#include "regroup/errors.hpp"

namespace regroup {

namespace {

// Positional view of a NetlistGraph: nodes renumbered 0..n-1, edges as
// sorted positional pairs.
struct GraphView {
    int n = 0;
    std::vector<CellType> labels;
    std::vector<std::pair<int, int>> edges;

    explicit GraphView(const NetlistGraph &g)
    {
        n = static_cast<int>(g.node_count());
        labels = g.labels();
        const auto &ids = g.node_ids();
        edges.reserve(g.edge_count());
        auto pos = [&](CellId id) {
            return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
        };
        for (const auto &[from, to] : g.edges())
            edges.emplace_back(pos(from), pos(to));
        std::sort(edges.begin(), edges.end());
    }

    bool has_edge(int a, int b) const
    {
        return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
    }
};

// Cost of the complete node mapping `map` (g1 position -> g2 position, -1 =
// delete; uncovered g2 nodes are inserted).
int64_t mapping_cost(const GraphView &g1, const GraphView &g2, const std::vector<int> &map,
                     const GedCostModel &cost)
{
    int64_t total = 0;
    std::vector<int> inverse(static_cast<size_t>(g2.n), -1);
    for (int u = 0; u < g1.n; ++u) {
        if (map[static_cast<size_t>(u)] < 0) {
            total += cost.node_delete;
        } else {
            const int v = map[static_cast<size_t>(u)];
            inverse[static_cast<size_t>(v)] = u;
            if (g1.labels[static_cast<size_t>(u)] != g2.labels[static_cast<size_t>(v)])
                total += cost.node_substitute;
        }
    }
    for (int v = 0; v < g2.n; ++v)
        if (inverse[static_cast<size_t>(v)] < 0)
            total += cost.node_insert;

    for (const auto &[a, b] : g1.edges) {
        const int va = map[static_cast<size_t>(a)];
        const int vb = map[static_cast<size_t>(b)];
        if (va >= 0 && vb >= 0 && g2.has_edge(va, vb))
            continue; // substituted, free
        total += cost.edge_delete;
    }
    for (const auto &[a, b] : g2.edges) {
        const int ua = inverse[static_cast<size_t>(a)];
        const int ub = inverse[static_cast<size_t>(b)];
        if (ua >= 0 && ub >= 0 && g1.has_edge(ua, ub))
            continue;
        total += cost.edge_insert;
    }
    return total;
}

// Deterministic greedy mapping: pair nodes of equal label first (highest
// degree first), then pair leftovers across labels, then delete/insert the
// rest. The resulting edit path is a valid upper bound on the GED.
int64_t greedy_bound(const GraphView &g1, const GraphView &g2, const GedCostModel &cost)
{
    auto degree_order = [](const GraphView &g) {
        std::vector<int> deg(static_cast<size_t>(g.n), 0);
        for (const auto &[a, b] : g.edges) {
            deg[static_cast<size_t>(a)]++;
            deg[static_cast<size_t>(b)]++;
        }
        std::vector<int> order(static_cast<size_t>(g.n));
        for (int i = 0; i < g.n; ++i)
            order[static_cast<size_t>(i)] = i;
        std::sort(order.begin(), order.end(), [&](int x, int y) {
            const auto kx = std::make_tuple(g.labels[static_cast<size_t>(x)],
                                            -deg[static_cast<size_t>(x)], x);
            const auto ky = std::make_tuple(g.labels[static_cast<size_t>(y)],
                                            -deg[static_cast<size_t>(y)], y);
            return kx < ky;
        });
        return order;
    };

    const auto order1 = degree_order(g1);
    const auto order2 = degree_order(g2);

    std::vector<int> map(static_cast<size_t>(g1.n), -1);
    std::vector<bool> used(static_cast<size_t>(g2.n), false);
    std::vector<int> leftover1;

    size_t j = 0;
    for (int u : order1) {
        const CellType label = g1.labels[static_cast<size_t>(u)];
        bool matched = false;
        for (size_t k = j; k < order2.size(); ++k) {
            const int v = order2[k];
            if (used[static_cast<size_t>(v)])
                continue;
            if (g2.labels[static_cast<size_t>(v)] == label) {
                map[static_cast<size_t>(u)] = v;
                used[static_cast<size_t>(v)] = true;
                matched = true;
                break;
            }
            if (g2.labels[static_cast<size_t>(v)] > label)
                break; // labels sorted, no match further on
        }
        if (!matched)
            leftover1.push_back(u);
        while (j < order2.size() && used[static_cast<size_t>(order2[j])])
            ++j;
    }
    // Cross-label substitution beats delete+insert under unit costs.
    size_t k = 0;
    for (int u : leftover1) {
        while (k < order2.size() && used[static_cast<size_t>(order2[k])])
            ++k;
        if (k == order2.size())
            break;
        map[static_cast<size_t>(u)] = order2[k];
        used[static_cast<size_t>(order2[k])] = true;
    }
    return mapping_cost(g1, g2, map, cost);
}

struct AStarState {
    int64_t f = 0;
    int64_t g = 0;
    int depth = 0;
    uint64_t seq = 0;
    uint32_t used_mask = 0;
    std::vector<int8_t> map;
};

struct StateWorse {
    bool operator()(const AStarState &a, const AStarState &b) const
    {
        if (a.f != b.f)
            return a.f > b.f;
        if (a.depth != b.depth)
            return a.depth < b.depth;
        return a.seq > b.seq;
    }
};

class AStarSolver {
  public:
    AStarSolver(const GraphView &g1, const GraphView &g2, const GedCostModel &cost)
        : g1_(g1), g2_(g2), cost_(cost)
    {
        // e1_remaining_[k]: edges of g1 with at least one endpoint >= k.
        e1_remaining_.assign(static_cast<size_t>(g1.n) + 1, 0);
        for (int k = 0; k <= g1.n; ++k)
            for (const auto &[a, b] : g1.edges)
                if (a >= k || b >= k)
                    e1_remaining_[static_cast<size_t>(k)]++;
    }

    // Runs A* for at most `expansion_budget` pops. Returns true when the
    // optimum was found (stored in best_), false on budget exhaustion.
    bool run(int64_t expansion_budget)
    {
        std::priority_queue<AStarState, std::vector<AStarState>, StateWorse> open;
        uint64_t seq = 0;

        AStarState root;
        root.map.assign(static_cast<size_t>(g1_.n), -1);
        root.f = heuristic(root);
        open.push(root);

        int64_t pops = 0;
        while (!open.empty()) {
            AStarState state = open.top();
            open.pop();
            if (++pops > expansion_budget)
                return false;
            if (state.depth == g1_.n) {
                best_ = state.g;
                return true;
            }
            const int u = state.depth;
            for (int v = -1; v < g2_.n; ++v) {
                if (v >= 0 && (state.used_mask >> v) & 1u)
                    continue;
                AStarState next = state;
                next.depth = u + 1;
                next.seq = ++seq;
                next.map[static_cast<size_t>(u)] = static_cast<int8_t>(v);
                if (v >= 0)
                    next.used_mask |= 1u << v;
                next.g = state.g + step_cost(state, u, v);
                if (next.depth == g1_.n)
                    next.g += completion_cost(next);
                next.f = next.g + heuristic(next);
                open.push(next);
            }
        }
        return true; // unreachable: the complete state is always enqueued
    }

    int64_t best() const { return best_; }

  private:
    // Exact cost increment of assigning g1 node u -> v (v = -1 deletes u):
    // the node edit plus all edits of edges joining u (or v) to the already
    // processed part, self-loops included.
    int64_t step_cost(const AStarState &state, int u, int v) const
    {
        int64_t delta = 0;
        if (v < 0) {
            delta += cost_.node_delete;
            for (const auto &[a, b] : g1_.edges)
                if ((a == u && b <= u) || (b == u && a <= u))
                    delta += cost_.edge_delete;
            return delta;
        }
        if (g1_.labels[static_cast<size_t>(u)] != g2_.labels[static_cast<size_t>(v)])
            delta += cost_.node_substitute;
        for (const auto &[a, b] : g1_.edges) {
            if (!((a == u && b <= u) || (b == u && a <= u)))
                continue;
            const int other = (a == u) ? b : a;
            const int mapped = (other == u) ? v : state.map[static_cast<size_t>(other)];
            if (mapped < 0) {
                delta += cost_.edge_delete;
                continue;
            }
            const int from = (a == u) ? v : mapped;
            const int to = (b == u) ? v : mapped;
            if (!g2_.has_edge(from, to))
                delta += cost_.edge_delete;
        }
        // g2 edges between v and the covered image with no counterpart in g1.
        for (const auto &[a, b] : g2_.edges) {
            if (!((a == v && (b == v || covered(state, b))) ||
                  (b == v && (a == v || covered(state, a)))))
                continue;
            if (a != v && b != v)
                continue;
            const int pre_a = (a == v) ? u : preimage(state, a);
            const int pre_b = (b == v) ? u : preimage(state, b);
            if (!g1_.has_edge(pre_a, pre_b))
                delta += cost_.edge_insert;
        }
        return delta;
    }

    bool covered(const AStarState &state, int v) const { return (state.used_mask >> v) & 1u; }

    int preimage(const AStarState &state, int v) const
    {
        for (int u = 0; u < g1_.n; ++u)
            if (state.map[static_cast<size_t>(u)] == v)
                return u;
        return -1;
    }

    // Inserts for g2 nodes never covered and for g2 edges touching them.
    int64_t completion_cost(const AStarState &state) const
    {
        int64_t total = 0;
        for (int v = 0; v < g2_.n; ++v)
            if (!covered(state, v))
                total += cost_.node_insert;
        for (const auto &[a, b] : g2_.edges)
            if (!covered(state, a) || !covered(state, b))
                total += cost_.edge_insert;
        return total;
    }

    // Admissible lower bound on completing `state`: label-multiset matching
    // for nodes plus the imbalance of remaining edge counts.
    int64_t heuristic(const AStarState &state) const
    {
        if (state.depth == g1_.n)
            return 0;
        std::array<int, 32> count1{};
        std::array<int, 32> count2{};
        int r1 = 0;
        int r2 = 0;
        for (int u = state.depth; u < g1_.n; ++u) {
            count1[static_cast<size_t>(g1_.labels[static_cast<size_t>(u)])]++;
            ++r1;
        }
        for (int v = 0; v < g2_.n; ++v) {
            if (covered(state, v))
                continue;
            count2[static_cast<size_t>(g2_.labels[static_cast<size_t>(v)])]++;
            ++r2;
        }
        int matched = 0;
        for (size_t l = 0; l < count1.size(); ++l)
            matched += std::min(count1[l], count2[l]);
        const int64_t min_node_op =
            std::min({cost_.node_substitute, cost_.node_delete, cost_.node_insert});
        const int64_t node_bound = (std::max(r1, r2) - matched) * min_node_op;

        int64_t e2_remaining = 0;
        for (const auto &[a, b] : g2_.edges)
            if (!covered(state, a) || !covered(state, b))
                ++e2_remaining;
        const int64_t e1_remaining = e1_remaining_[static_cast<size_t>(state.depth)];
        const int64_t edge_bound = (e1_remaining > e2_remaining)
                                       ? (e1_remaining - e2_remaining) * cost_.edge_delete
                                       : (e2_remaining - e1_remaining) * cost_.edge_insert;
        return node_bound + edge_bound;
    }

    const GraphView &g1_;
    const GraphView &g2_;
    const GedCostModel &cost_;
    std::vector<int64_t> e1_remaining_;
    int64_t best_ = 0;
};

bool positionally_identical(const GraphView &a, const GraphView &b)
{
    return a.n == b.n && a.labels == b.labels && a.edges == b.edges;
}

} // namespace

GedResult graph_edit_distance(const NetlistGraph &graph1, const NetlistGraph &graph2,
                              const GedCostModel &cost, const GedBudget &budget)
{
    GraphView g1(graph1);
    GraphView g2(graph2);

    if (positionally_identical(g1, g2))
        return {0, true};
    if (g1.n == 0 || g2.n == 0) {
        const GraphView &other = (g1.n == 0) ? g2 : g1;
        const int64_t node_cost = (g1.n == 0) ? cost.node_insert : cost.node_delete;
        const int64_t edge_cost = (g1.n == 0) ? cost.edge_insert : cost.edge_delete;
        return {node_cost * other.n + edge_cost * static_cast<int64_t>(other.edges.size()), true};
    }

    const int largest = std::max(g1.n, g2.n);
    if (largest > budget.exact_node_limit || g2.n > 31)
        return {greedy_bound(g1, g2, cost), false};

    AStarSolver solver(g1, g2, cost);
    const int64_t expansions =
        budget.upper_bound_on_timeout ? budget.per_pair_node_budget
                                      : std::numeric_limits<int64_t>::max();
    if (solver.run(expansions))
        return {solver.best(), true};
    return {greedy_bound(g1, g2, cost), false};
}

} // namespace regroup
