#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "regroup/ingest.hpp"

namespace regroup {

// Per-bit structure planted for each word of the synthetic design.
enum class CellPattern {
    FfWord,         // one flip-flop per bit
    LutFfWord,      // LUT2 feeding a flip-flop, both in the bit's site
    CarryChainWord, // CARRY4 + flip-flop per bit, carry net chaining bits
};

std::string to_string(CellPattern pattern);
std::optional<CellPattern> cell_pattern_from_string(const std::string &name);

// Recipe for a synthetic placed netlist with a planted word/module
// hierarchy on a 100x100 site grid (tiles 2x50 sites, clock regions 50x50).
// Generation is a pure function of the spec; placement jitter comes from a
// seeded xoshiro256** stream.
struct SynthSpec {
    int module_count = 2;
    int words_per_module = 1;
    int word_width = 4;
    CellPattern cell_pattern = CellPattern::FfWord;
    int placement_noise = 0;   // max site jitter per axis
    bool region_spread = false; // one clock region per module
    uint64_t seed = 1;
    int word_gap = 1; // site columns between consecutive words of a module

    void validate() const;
};

SynthSpec parse_synth_spec_json(const std::string &text);
std::string synth_spec_to_json(const SynthSpec &spec);

struct GeneratedDesign {
    NetlistDocument doc;
    ReferenceHierarchy reference;
};

// Builds the placed netlist and its planted reference labels. Throws Error
// when the requested layout does not fit the synthetic device grid.
GeneratedDesign generate(const SynthSpec &spec);

// Collapses every placement to a single location (coordinates all zero,
// site names kept distinct) so spatial gates always pass: the no-location
// ablation. The result still round-trips the JSON interchange format.
NetlistDocument ablate_location(const NetlistDocument &doc);

} // namespace regroup
