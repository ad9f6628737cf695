#include "regroup/grouping.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include <json.hpp>

#include "regroup/errors.hpp"

namespace regroup {

std::string to_string(SiteOrder order)
{
    switch (order) {
    case SiteOrder::InputOrder:
        return "input_order";
    case SiteOrder::LexicographicSiteName:
        return "lexicographic_site_name";
    case SiteOrder::CoordinateRaster:
        return "coordinate_raster";
    }
    return "lexicographic_site_name";
}

std::optional<SiteOrder> site_order_from_string(const std::string &name)
{
    if (name == "input_order")
        return SiteOrder::InputOrder;
    if (name == "lexicographic_site_name")
        return SiteOrder::LexicographicSiteName;
    if (name == "coordinate_raster")
        return SiteOrder::CoordinateRaster;
    return std::nullopt;
}

void GroupingConfig::validate() const
{
    if (std::isnan(spatial_threshold) || spatial_threshold < 0.0)
        throw Error("spatial threshold must be non-negative");
    if (std::isnan(edit_threshold) || edit_threshold < 0.0)
        throw Error("edit threshold must be non-negative");
}

std::vector<SiteGroup> group_by_site(const std::vector<Cell> &cells)
{
    std::vector<SiteGroup> sites;
    std::unordered_map<std::string, size_t> index_of;
    for (const Cell &cell : cells) {
        const std::string &key = cell.placement.site_name;
        auto it = index_of.find(key);
        if (it == index_of.end()) {
            SiteGroup group;
            group.index = static_cast<int>(sites.size());
            group.site_key = key;
            group.placement = cell.placement;
            group.cell_ids.push_back(cell.id);
            index_of.emplace(key, sites.size());
            sites.push_back(std::move(group));
        } else {
            SiteGroup &group = sites[it->second];
            if (!(group.placement.site_xy == cell.placement.site_xy &&
                  group.placement.tile_xy == cell.placement.tile_xy &&
                  group.placement.clock_region_xy == cell.placement.clock_region_xy))
                throw Error("cells on site \"" + key + "\" carry conflicting coordinates");
            group.cell_ids.push_back(cell.id);
        }
    }
    return sites;
}

void attach_subgraphs(std::vector<SiteGroup> &sites, const NetlistGraph &graph)
{
    for (SiteGroup &site : sites)
        site.subgraph = induced_subgraph(graph, site.cell_ids);
}

namespace {

std::vector<size_t> processing_order(const std::vector<SiteGroup> &sites, SiteOrder order)
{
    std::vector<size_t> indices(sites.size());
    std::iota(indices.begin(), indices.end(), size_t{0});
    switch (order) {
    case SiteOrder::InputOrder:
        break;
    case SiteOrder::LexicographicSiteName:
        std::sort(indices.begin(), indices.end(), [&](size_t a, size_t b) {
            return sites[a].site_key < sites[b].site_key;
        });
        break;
    case SiteOrder::CoordinateRaster:
        std::sort(indices.begin(), indices.end(), [&](size_t a, size_t b) {
            const auto &pa = sites[a].placement.site_xy;
            const auto &pb = sites[b].placement.site_xy;
            return std::tie(pa.y, pa.x, sites[a].site_key) <
                   std::tie(pb.y, pb.x, sites[b].site_key);
        });
        break;
    }
    return indices;
}

} // namespace

std::vector<HigherGroup> group_higher(const std::vector<SiteGroup> &sites,
                                      const GroupingConfig &config, int threads)
{
    config.validate();
    std::vector<HigherGroup> higher;
    const auto order = processing_order(sites, config.site_order);

    for (size_t site_index : order) {
        const SiteGroup &candidate = sites[site_index];
        bool placed = false;
        for (HigherGroup &group : higher) {
            std::vector<const PlacementTriple *> placements;
            placements.reserve(group.member_sites.size());
            for (int member : group.member_sites)
                placements.push_back(&sites[static_cast<size_t>(member)].placement);
            const double spatial_avg =
                average_spatial(candidate.placement, placements, config.weights);
            if (spatial_avg > config.spatial_threshold)
                continue; // the edit gate cannot rescue a failed spatial gate

            std::vector<const NetlistGraph *> graphs;
            graphs.reserve(group.member_sites.size());
            for (int member : group.member_sites)
                graphs.push_back(&sites[static_cast<size_t>(member)].subgraph);
            const double edit_avg = average_edit(candidate.subgraph, graphs, config.ged_cost,
                                                 config.ged_budget, threads);
            if (edit_avg > config.edit_threshold)
                continue;

            group.member_sites.push_back(static_cast<int>(site_index));
            placed = true;
            break;
        }
        if (!placed) {
            HigherGroup group;
            group.index = static_cast<int>(higher.size());
            group.member_sites.push_back(static_cast<int>(site_index));
            higher.push_back(std::move(group));
        }
    }
    return higher;
}

WordGroupResult group_nets(const NetlistDocument &doc, const GroupingConfig &config)
{
    config.validate();
    WordGroupResult result;

    std::vector<size_t> order(doc.nets.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return std::tie(doc.nets[a].name, a) < std::tie(doc.nets[b].name, b);
    });

    for (size_t net_index : order) {
        const Net &net = doc.nets[net_index];
        if (net.source.cell < 0 || static_cast<size_t>(net.source.cell) >= doc.cells.size()) {
            result.skipped.push_back(net.name);
            continue;
        }
        const Cell &source = doc.cells[static_cast<size_t>(net.source.cell)];

        bool placed = false;
        for (WordGroup &group : result.groups) {
            if (group.source_type != source.cell_type ||
                group.source_equation != source.boolean_equation)
                continue;
            const int64_t distance =
                spatial_distance(source.placement, group.representative, config.weights);
            if (static_cast<double>(distance) > config.spatial_threshold)
                continue;
            group.net_names.push_back(net.name);
            placed = true;
            break;
        }
        if (!placed) {
            WordGroup group;
            group.source_type = source.cell_type;
            group.source_equation = source.boolean_equation;
            group.representative = source.placement;
            group.net_names.push_back(net.name);
            result.groups.push_back(std::move(group));
        }
    }
    return result;
}

Clustering flatten_to_clustering(const std::vector<HigherGroup> &higher,
                                 const std::vector<SiteGroup> &sites, size_t n_cells)
{
    Clustering clustering;
    clustering.labels.assign(n_cells, -1);
    for (const HigherGroup &group : higher) {
        for (int member : group.member_sites) {
            for (CellId id : sites[static_cast<size_t>(member)].cell_ids) {
                if (id < 0 || static_cast<size_t>(id) >= n_cells)
                    throw Error("cell id " + std::to_string(id) +
                                " is outside the clustering range");
                clustering.labels[static_cast<size_t>(id)] = group.index;
            }
        }
    }
    for (size_t i = 0; i < clustering.labels.size(); ++i)
        if (clustering.labels[i] < 0)
            throw Error("cell id " + std::to_string(i) + " is not covered by any higher group");
    return clustering;
}

namespace {

nlohmann::ordered_json threshold_to_json(double value)
{
    if (std::isinf(value))
        return "inf";
    return value;
}

} // namespace

std::string cluster_output_to_json(const NetlistDocument &doc,
                                   const std::vector<SiteGroup> &sites,
                                   const std::vector<HigherGroup> &higher,
                                   const WordGroupResult &words, const GroupingConfig &config)
{
    nlohmann::ordered_json j;
    j["config"] = {{"spatial_threshold", threshold_to_json(config.spatial_threshold)},
                   {"edit_threshold", threshold_to_json(config.edit_threshold)},
                   {"w", config.weights.w},
                   {"site_order", to_string(config.site_order)},
                   {"exact_node_limit", config.ged_budget.exact_node_limit},
                   {"per_pair_node_budget", config.ged_budget.per_pair_node_budget},
                   {"upper_bound_on_timeout", config.ged_budget.upper_bound_on_timeout}};
    j["higher_groups"] = nlohmann::ordered_json::array();
    for (const HigherGroup &group : higher) {
        nlohmann::ordered_json entry;
        entry["id"] = group.index;
        entry["sites"] = nlohmann::ordered_json::array();
        entry["cells"] = nlohmann::ordered_json::array();
        for (int member : group.member_sites) {
            const SiteGroup &site = sites[static_cast<size_t>(member)];
            entry["sites"].push_back(site.site_key);
            for (CellId id : site.cell_ids)
                entry["cells"].push_back(doc.cells[static_cast<size_t>(id)].name);
        }
        j["higher_groups"].push_back(std::move(entry));
    }
    j["word_groups"] = nlohmann::ordered_json::array();
    for (const WordGroup &group : words.groups) {
        nlohmann::ordered_json entry;
        entry["signature"] = {std::string(to_string(group.source_type)), group.source_equation};
        entry["nets"] = group.net_names;
        j["word_groups"].push_back(std::move(entry));
    }
    return j.dump(2) + "\n";
}

ClusterAssignments parse_cluster_json(const std::string &text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw Error(std::string("invalid cluster JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("higher_groups") || !j["higher_groups"].is_array())
        throw SchemaError("/higher_groups", "missing higher_groups array");

    ClusterAssignments out;
    const auto &groups = j["higher_groups"];
    for (size_t g = 0; g < groups.size(); ++g) {
        const std::string ptr = "/higher_groups/" + std::to_string(g);
        if (!groups[g].is_object() || !groups[g].contains("cells") ||
            !groups[g]["cells"].is_array())
            throw SchemaError(ptr + "/cells", "missing cells array");
        for (const auto &name : groups[g]["cells"]) {
            if (!name.is_string())
                throw SchemaError(ptr + "/cells", "cell names must be strings");
            const auto inserted =
                out.group_of_cell.emplace(name.get<std::string>(), static_cast<int>(g));
            if (!inserted.second)
                throw SchemaError(ptr + "/cells", "cell \"" + name.get<std::string>() +
                                                      "\" appears in more than one group");
        }
    }
    out.group_count = static_cast<int>(groups.size());
    return out;
}

} // namespace regroup
