#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "regroup/netlist.hpp"

namespace regroup {

// A parsed placed netlist plus its provenance. Round-trips losslessly
// through the JSON interchange format (format_version "1").
struct NetlistDocument {
    std::string device;
    std::string format_version = "1";
    std::vector<Cell> cells;
    std::vector<Net> nets;

    friend bool operator==(const NetlistDocument &, const NetlistDocument &) = default;
};

// Ground-truth groupings recovered from hierarchical cell names. Cells
// without a hier_name are absent from both maps and listed in `excluded`.
struct ReferenceHierarchy {
    std::map<CellId, int> word_label;
    std::map<CellId, int> module_label;
    std::vector<CellId> excluded;
};

// Site -> (tile, clock region) lookup. Vivado-exported Verilog carries only
// the site LOC; the two outer levels come from a per-device sidecar table,
// or from grid bucketing when the profile declares bucket sizes.
struct DeviceProfile {
    std::optional<GridXY> tile_bucket;   // sites per tile in x and y
    std::optional<GridXY> region_bucket; // sites per clock region in x and y
    std::map<std::string, std::pair<std::string, std::string>> overrides;
};

// Extracts the trailing X<int>Y<int> coordinates from site, tile and clock
// region names ("SLICE_X12Y34", "CLBLM_R_X10Y60", "X0Y1"). Throws Error on
// malformed names.
PlacementTriple parse_location(const std::string &site_name, const std::string &tile_name,
                               const std::string &clock_region_name);

// Coordinate pair from one name of the <PREFIX>_X<int>Y<int> shape.
GridXY parse_grid_xy(const std::string &name);

// Tile and clock-region names for a site: exact override when present, else
// bucketed from the site coordinates when the profile declares buckets.
std::pair<std::string, std::string> derive_tile_and_region(const std::string &site_name,
                                                           const DeviceProfile &profile);

DeviceProfile read_device_profile(const std::string &path);

// Parses the supported structural-Verilog subset: one flattened module,
// wire/port declarations, identity assigns, attribute blocks carrying
// LOC/BEL/INIT, and instantiations of the supported cell types with named
// port connections. Placement below site level comes from `profile`.
// Warnings (dangling nets, skipped constants) are appended when a sink is
// given. Throws ParseError with a line number on unsupported constructs.
NetlistDocument parse_verilog_subset(const std::string &text, const DeviceProfile &profile,
                                     std::vector<std::string> *warnings = nullptr);

// Word- and module-level reference labels from hier_names. The word key
// strips one trailing [<int>] bit index and a trailing _reg replication
// suffix; the module key is the path up to the last '/'. Group ids are
// dense in first-occurrence order over ascending cell id.
ReferenceHierarchy extract_reference(const NetlistDocument &doc);

// Key transforms behind extract_reference, exposed for reuse and testing.
std::string word_key_of(const std::string &hier_name);
std::string module_key_of(const std::string &hier_name);

// JSON interchange readers/writers. write_json emits a canonical byte
// stream: fixed key order, two-space indent, trailing newline, so
// write(read(write(x))) is byte-identical to write(x). Schema violations
// raise SchemaError with a JSON pointer path.
NetlistDocument read_json(const std::string &path);
NetlistDocument parse_json_text(const std::string &text);
std::string document_to_json(const NetlistDocument &doc);
void write_json(const NetlistDocument &doc, const std::string &path);

// Reference labels keyed by cell name, the file format the gen command
// writes next to a synthetic netlist and the eval command consumes.
struct ReferenceLabels {
    std::map<std::string, int> word_label;
    std::map<std::string, int> module_label;
};

ReferenceLabels labels_by_name(const NetlistDocument &doc, const ReferenceHierarchy &ref);
std::string reference_labels_to_json(const ReferenceLabels &labels);
ReferenceLabels parse_reference_labels_json(const std::string &text);

// Whole-file helpers shared by the CLI and tests.
std::string read_text_file(const std::string &path);
void write_text_file_atomic(const std::string &path, const std::string &content);

// Canonical LUT INIT mask: parses a Verilog literal ("4'h8") or bare
// hex/binary digits and returns exactly `width` lowercase binary digits
// (MSB first). Throws Error when the value does not fit.
std::string canonical_init_mask(const std::string &literal, int width);

} // namespace regroup
