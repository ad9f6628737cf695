#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace regroup {

using CellId = int32_t;

// Supported placed-element types on 7-series style devices. DSP blocks are
// deliberately absent: ingestion rejects them.
enum class CellType : uint8_t {
    Lut1,
    Lut2,
    Lut3,
    Lut4,
    Lut5,
    Lut6,
    Fdre,
    Fdse,
    Fdce,
    Fdpe,
    Ldce,
    Ldpe,
    Carry4,
    Muxf7,
    Muxf8,
    Ram32x1s,
    Ram64x1s,
    Ram32m,
    Ram64m,
    Ramd32,
    Rams32,
    Ramd64e,
    Rams64e,
    Srl16e,
    Srlc32e,
};

std::string_view to_string(CellType type);
// Returns nullopt for unknown type names (including DSP types).
std::optional<CellType> cell_type_from_string(std::string_view name);
// True for names of DSP primitives, which are rejected at ingestion.
bool is_dsp_type_name(std::string_view name);
// Number of LUT inputs, or 0 for non-LUT types.
int lut_input_count(CellType type);

struct GridXY {
    int x = 0;
    int y = 0;
    friend bool operator==(const GridXY &, const GridXY &) = default;
};

// Absolute location of a cell in the device hierarchy: site within tile
// within clock region. Coordinates are parsed from the names once, at
// ingestion; nothing downstream re-parses text.
struct PlacementTriple {
    GridXY site_xy;
    GridXY tile_xy;
    GridXY clock_region_xy;
    std::string site_name;
    std::string tile_name;
    std::optional<int> slr_index; // reserved for 2.5D devices, unused

    friend bool operator==(const PlacementTriple &a, const PlacementTriple &b)
    {
        return a.site_xy == b.site_xy && a.tile_xy == b.tile_xy &&
               a.clock_region_xy == b.clock_region_xy && a.site_name == b.site_name &&
               a.tile_name == b.tile_name && a.slr_index == b.slr_index;
    }
};

struct Cell {
    CellId id = 0; // dense, 0..cell_count-1
    std::string name;
    CellType cell_type = CellType::Lut1;
    std::string boolean_equation; // canonical LUT INIT bits, empty for non-LUT
    PlacementTriple placement;
    std::optional<std::string> hier_name;

    friend bool operator==(const Cell &, const Cell &) = default;
};

struct PinRef {
    CellId cell = 0;
    std::string pin;
    friend bool operator==(const PinRef &, const PinRef &) = default;
};

struct Net {
    std::string name;
    PinRef source;
    std::vector<PinRef> sinks; // may be empty (dangling net)
    friend bool operator==(const Net &, const Net &) = default;
};

// Directed cell-connectivity graph. Nodes are cell ids labeled with the cell
// type; one edge per distinct (source cell, sink cell) pair over all nets.
// Self-loops are kept, parallel nets between the same pair collapse.
class NetlistGraph {
  public:
    NetlistGraph() = default;
    NetlistGraph(std::vector<CellId> node_ids, std::vector<CellType> labels,
                 std::vector<std::pair<CellId, CellId>> edges);

    size_t node_count() const { return node_ids_.size(); }
    size_t edge_count() const { return edges_.size(); }

    const std::vector<CellId> &node_ids() const { return node_ids_; }
    const std::vector<CellType> &labels() const { return labels_; }
    // Edges as (from, to) cell-id pairs, sorted ascending.
    const std::vector<std::pair<CellId, CellId>> &edges() const { return edges_; }

    bool has_node(CellId id) const;
    bool has_edge(CellId from, CellId to) const;
    CellType label_of(CellId id) const;

    friend bool operator==(const NetlistGraph &, const NetlistGraph &) = default;

  private:
    std::vector<CellId> node_ids_; // sorted ascending
    std::vector<CellType> labels_; // parallel to node_ids_
    std::vector<std::pair<CellId, CellId>> edges_;
};

// Builds the labeled directed graph for a cell/net list. Throws Error when a
// net references a cell id outside [0, cells.size()), naming the net.
NetlistGraph build_graph(const std::vector<Cell> &cells, const std::vector<Net> &nets);

// Subgraph induced by `ids`: those nodes, their labels, and every edge of `g`
// with both endpoints inside. Throws Error on ids not present in g.
NetlistGraph induced_subgraph(const NetlistGraph &g, const std::vector<CellId> &ids);

} // namespace regroup
