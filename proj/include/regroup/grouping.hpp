#pragma once

#include <optional>
#include <string>
#include <vector>

#include "regroup/analysis.hpp"
#include "regroup/eval.hpp"
#include "regroup/ingest.hpp"
#include "regroup/netlist.hpp"

namespace regroup {

// All cells sharing one site, with the netlist subgraph they induce.
struct SiteGroup {
    int index = 0;
    std::string site_key;
    std::vector<CellId> cell_ids;
    PlacementTriple placement;
    NetlistGraph subgraph;
};

// A cluster of site groups accepted by the dual spatial/edit gate. Members
// are indices into the site-group list, in acceptance order.
struct HigherGroup {
    int index = 0;
    std::vector<int> member_sites;
};

enum class SiteOrder {
    InputOrder,
    LexicographicSiteName,
    CoordinateRaster,
};

std::string to_string(SiteOrder order);
std::optional<SiteOrder> site_order_from_string(const std::string &name);

struct GroupingConfig {
    double spatial_threshold = 100.0;
    double edit_threshold = 3.0;
    DistanceWeights weights{5};
    GedCostModel ged_cost{};
    GedBudget ged_budget{};
    SiteOrder site_order = SiteOrder::LexicographicSiteName;

    void validate() const; // throws Error on negative or NaN thresholds
};

// Nets grouped into a word: same source cell type and Boolean equation,
// sources within the spatial threshold of the first member's placement.
struct WordGroup {
    CellType source_type = CellType::Lut1;
    std::string source_equation;
    PlacementTriple representative;
    std::vector<std::string> net_names;
};

struct WordGroupResult {
    std::vector<WordGroup> groups;
    std::vector<std::string> skipped; // nets without a resolvable source
};

// One SiteGroup per distinct site name, first-fit in input order, so the
// output order is first-occurrence order and the content is exactly the
// partition by site name. Subgraphs are left empty; attach_subgraphs fills
// them once the connectivity graph exists.
std::vector<SiteGroup> group_by_site(const std::vector<Cell> &cells);
void attach_subgraphs(std::vector<SiteGroup> &sites, const NetlistGraph &graph);

// Greedy single-pass merge of site groups under the dual threshold gate:
// a site joins the first existing group whose members are within the
// average spatial threshold and average edit threshold, else founds a new
// group. The spatial gate is evaluated first and a failing average skips
// the edit computation.
std::vector<HigherGroup> group_higher(const std::vector<SiteGroup> &sites,
                                      const GroupingConfig &config, int threads = 1);

// First-fit net-to-word grouping over nets in name order.
WordGroupResult group_nets(const NetlistDocument &doc, const GroupingConfig &config);

// Group id per cell index from a higher-group partition. Throws Error when
// a cell id is out of range or not covered.
Clustering flatten_to_clustering(const std::vector<HigherGroup> &higher,
                                 const std::vector<SiteGroup> &sites, size_t n_cells);

// Cluster output document: config echo, higher groups (site names and cell
// names), word groups. Canonical bytes, deterministic for equal inputs.
std::string cluster_output_to_json(const NetlistDocument &doc,
                                   const std::vector<SiteGroup> &sites,
                                   const std::vector<HigherGroup> &higher,
                                   const WordGroupResult &words, const GroupingConfig &config);

struct ClusterAssignments {
    std::map<std::string, int> group_of_cell; // cell name -> higher group id
    int group_count = 0;
};

ClusterAssignments parse_cluster_json(const std::string &text);

} // namespace regroup
