#include "regroup/netlist.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>
#include <unordered_set>

#include "regroup/errors.hpp"

namespace regroup {

namespace {

struct TypeName {
    CellType type;
    std::string_view name;
};

constexpr std::array<TypeName, 25> kTypeNames = {{
    {CellType::Lut1, "LUT1"},
    {CellType::Lut2, "LUT2"},
    {CellType::Lut3, "LUT3"},
    {CellType::Lut4, "LUT4"},
    {CellType::Lut5, "LUT5"},
    {CellType::Lut6, "LUT6"},
    {CellType::Fdre, "FDRE"},
    {CellType::Fdse, "FDSE"},
    {CellType::Fdce, "FDCE"},
    {CellType::Fdpe, "FDPE"},
    {CellType::Ldce, "LDCE"},
    {CellType::Ldpe, "LDPE"},
    {CellType::Carry4, "CARRY4"},
    {CellType::Muxf7, "MUXF7"},
    {CellType::Muxf8, "MUXF8"},
    {CellType::Ram32x1s, "RAM32X1S"},
    {CellType::Ram64x1s, "RAM64X1S"},
    {CellType::Ram32m, "RAM32M"},
    {CellType::Ram64m, "RAM64M"},
    {CellType::Ramd32, "RAMD32"},
    {CellType::Rams32, "RAMS32"},
    {CellType::Ramd64e, "RAMD64E"},
    {CellType::Rams64e, "RAMS64E"},
    {CellType::Srl16e, "SRL16E"},
    {CellType::Srlc32e, "SRLC32E"},
}};

} // namespace

std::string_view to_string(CellType type)
{
    for (const auto &entry : kTypeNames)
        if (entry.type == type)
            return entry.name;
    return "UNKNOWN";
}

std::optional<CellType> cell_type_from_string(std::string_view name)
{
    for (const auto &entry : kTypeNames)
        if (entry.name == name)
            return entry.type;
    return std::nullopt;
}

bool is_dsp_type_name(std::string_view name)
{
    return name.substr(0, 3) == "DSP";
}

int lut_input_count(CellType type)
{
    switch (type) {
    case CellType::Lut1:
        return 1;
    case CellType::Lut2:
        return 2;
    case CellType::Lut3:
        return 3;
    case CellType::Lut4:
        return 4;
    case CellType::Lut5:
        return 5;
    case CellType::Lut6:
        return 6;
    default:
        return 0;
    }
}

NetlistGraph::NetlistGraph(std::vector<CellId> node_ids, std::vector<CellType> labels,
                           std::vector<std::pair<CellId, CellId>> edges)
    : node_ids_(std::move(node_ids)), labels_(std::move(labels)), edges_(std::move(edges))
{
    std::vector<size_t> order(node_ids_.size());
    for (size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return node_ids_[a] < node_ids_[b]; });
    std::vector<CellId> ids(node_ids_.size());
    std::vector<CellType> labs(node_ids_.size());
    for (size_t i = 0; i < order.size(); ++i) {
        ids[i] = node_ids_[order[i]];
        labs[i] = labels_[order[i]];
    }
    node_ids_ = std::move(ids);
    labels_ = std::move(labs);
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool NetlistGraph::has_node(CellId id) const
{
    return std::binary_search(node_ids_.begin(), node_ids_.end(), id);
}

bool NetlistGraph::has_edge(CellId from, CellId to) const
{
    return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(from, to));
}

CellType NetlistGraph::label_of(CellId id) const
{
    auto it = std::lower_bound(node_ids_.begin(), node_ids_.end(), id);
    if (it == node_ids_.end() || *it != id)
        throw Error("graph has no node with cell id " + std::to_string(id));
    return labels_[static_cast<size_t>(it - node_ids_.begin())];
}

NetlistGraph build_graph(const std::vector<Cell> &cells, const std::vector<Net> &nets)
{
    std::vector<CellId> ids(cells.size());
    std::vector<CellType> labels(cells.size());
    for (size_t i = 0; i < cells.size(); ++i) {
        ids[i] = cells[i].id;
        labels[i] = cells[i].cell_type;
    }

    const auto n = static_cast<CellId>(cells.size());
    auto check = [&](CellId id, const Net &net) {
        if (id < 0 || id >= n)
            throw Error("net \"" + net.name + "\" references unknown cell id " +
                        std::to_string(id));
    };

    std::vector<std::pair<CellId, CellId>> edges;
    for (const auto &net : nets) {
        check(net.source.cell, net);
        for (const auto &sink : net.sinks) {
            check(sink.cell, net);
            edges.emplace_back(net.source.cell, sink.cell);
        }
    }
    return NetlistGraph(std::move(ids), std::move(labels), std::move(edges));
}

NetlistGraph induced_subgraph(const NetlistGraph &g, const std::vector<CellId> &ids)
{
    std::unordered_set<CellId> keep;
    std::vector<CellId> nodes;
    std::vector<CellType> labels;
    nodes.reserve(ids.size());
    for (CellId id : ids) {
        if (!g.has_node(id))
            throw Error("induced subgraph requested for unknown cell id " + std::to_string(id));
        if (keep.insert(id).second) {
            nodes.push_back(id);
            labels.push_back(g.label_of(id));
        }
    }
    std::vector<std::pair<CellId, CellId>> edges;
    for (const auto &[from, to] : g.edges())
        if (keep.count(from) && keep.count(to))
            edges.emplace_back(from, to);
    return NetlistGraph(std::move(nodes), std::move(labels), std::move(edges));
}

} // namespace regroup
