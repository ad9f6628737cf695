#include "regroup/synth.hpp"

#include <algorithm>

#include <json.hpp>

#include "regroup/errors.hpp"
#include "regroup/rng.hpp"

namespace regroup {

namespace {

constexpr int kGridSize = 100;  // sites per axis
constexpr int kTileX = 2;       // sites per tile, x
constexpr int kTileY = 50;      // sites per tile, y
constexpr int kRegionSize = 50; // sites per clock region, both axes

std::string site_name_at(int x, int y)
{
    return "SLICE_X" + std::to_string(x) + "Y" + std::to_string(y);
}

std::string tile_name_at(int x, int y)
{
    return "TILE_X" + std::to_string(x / kTileX) + "Y" + std::to_string(y / kTileY);
}

std::string region_name_at(int x, int y)
{
    return "X" + std::to_string(x / kRegionSize) + "Y" + std::to_string(y / kRegionSize);
}

PlacementTriple placement_at(int x, int y)
{
    return parse_location(site_name_at(x, y), tile_name_at(x, y), region_name_at(x, y));
}

struct ModuleOrigin {
    int x = 0;
    int y = 0;
};

// Module block origins. Blocks are separated so that under the default
// weights (w = 5) any two cells of different modules are farther apart than
// the default spatial threshold, while cells inside one block stay well
// within it.
std::vector<ModuleOrigin> layout_modules(const SynthSpec &spec)
{
    const int block_w = (spec.words_per_module - 1) * spec.word_gap + 1;
    const int block_h = spec.word_width;
    const int noise = spec.placement_noise;

    std::vector<ModuleOrigin> origins;
    if (spec.region_spread) {
        if (spec.module_count > 4)
            throw Error("spec exceeds the synthetic device grid: region_spread supports at "
                        "most 4 modules (2x2 clock regions)");
        // Row-1 modules sit right of row-0 modules inside their region so
        // that vertically adjacent regions still clear the threshold.
        const int staggered_x = 30 + block_w + 2 * noise;
        if (staggered_x + block_w - 1 + noise > kRegionSize - 3)
            throw Error("spec exceeds the synthetic device grid: module too wide for "
                        "region_spread layout");
        if (2 + block_h - 1 + noise > kRegionSize - 3)
            throw Error("spec exceeds the synthetic device grid: module too tall for "
                        "region_spread layout");
        for (int k = 0; k < spec.module_count; ++k) {
            const int cx = k % 2;
            const int cy = k / 2;
            const int x_local = (cy == 0) ? 2 : staggered_x;
            origins.push_back({cx * kRegionSize + x_local, cy * kRegionSize + 2});
        }
        return origins;
    }

    const int stride_x = 30 + block_w + 2 * noise;
    int n_cols = 0;
    while (n_cols * stride_x + block_w - 1 + noise <= kGridSize - 1)
        ++n_cols;
    const int row1_y = 80 + (block_h - 1) + 2 * noise;
    const bool row1_fits = row1_y + block_h - 1 + noise <= kGridSize - 1;
    const int n_rows = row1_fits ? 2 : 1;
    if (n_cols < 1 || spec.module_count > n_cols * n_rows)
        throw Error("spec exceeds the synthetic device grid: " +
                    std::to_string(spec.module_count) + " modules do not fit (capacity " +
                    std::to_string(n_cols * n_rows) + ")");
    for (int k = 0; k < spec.module_count; ++k) {
        const int col = k % n_cols;
        const int row = k / n_cols;
        origins.push_back({col * stride_x, row == 0 ? 0 : row1_y});
    }
    return origins;
}

int clamp_coord(int v)
{
    return std::clamp(v, 0, kGridSize - 1);
}

} // namespace

std::string to_string(CellPattern pattern)
{
    switch (pattern) {
    case CellPattern::FfWord:
        return "ff_word";
    case CellPattern::LutFfWord:
        return "lut_ff_word";
    case CellPattern::CarryChainWord:
        return "carry_chain_word";
    }
    return "ff_word";
}

std::optional<CellPattern> cell_pattern_from_string(const std::string &name)
{
    if (name == "ff_word")
        return CellPattern::FfWord;
    if (name == "lut_ff_word")
        return CellPattern::LutFfWord;
    if (name == "carry_chain_word")
        return CellPattern::CarryChainWord;
    return std::nullopt;
}

void SynthSpec::validate() const
{
    if (module_count < 1 || words_per_module < 1 || word_width < 1)
        throw Error("synthetic spec counts must all be at least 1");
    if (placement_noise < 0)
        throw Error("placement_noise must be non-negative");
    if (word_gap < 1)
        throw Error("word_gap must be at least 1");
}

SynthSpec parse_synth_spec_json(const std::string &text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw Error(std::string("invalid fixture spec JSON: ") + e.what());
    }
    if (!j.is_object())
        throw SchemaError("/", "fixture spec must be a JSON object");

    auto require_int = [&](const char *key) {
        if (!j.contains(key) || !j.at(key).is_number_integer())
            throw SchemaError(std::string("/") + key, "expected an integer");
        return j.at(key).get<int64_t>();
    };

    SynthSpec spec;
    spec.module_count = static_cast<int>(require_int("module_count"));
    spec.words_per_module = static_cast<int>(require_int("words_per_module"));
    spec.word_width = static_cast<int>(require_int("word_width"));
    spec.placement_noise = static_cast<int>(require_int("placement_noise"));
    spec.seed = static_cast<uint64_t>(require_int("seed"));
    if (!j.contains("region_spread") || !j.at("region_spread").is_boolean())
        throw SchemaError("/region_spread", "expected a boolean");
    spec.region_spread = j.at("region_spread").get<bool>();
    if (!j.contains("cell_pattern") || !j.at("cell_pattern").is_string())
        throw SchemaError("/cell_pattern", "expected a string");
    const auto pattern = cell_pattern_from_string(j.at("cell_pattern").get<std::string>());
    if (!pattern)
        throw SchemaError("/cell_pattern", "unknown cell pattern \"" +
                                               j.at("cell_pattern").get<std::string>() + "\"");
    spec.cell_pattern = *pattern;
    if (j.contains("word_gap")) {
        if (!j.at("word_gap").is_number_integer())
            throw SchemaError("/word_gap", "expected an integer");
        spec.word_gap = j.at("word_gap").get<int>();
    }
    spec.validate();
    return spec;
}

std::string synth_spec_to_json(const SynthSpec &spec)
{
    nlohmann::ordered_json j;
    j["module_count"] = spec.module_count;
    j["words_per_module"] = spec.words_per_module;
    j["word_width"] = spec.word_width;
    j["cell_pattern"] = to_string(spec.cell_pattern);
    j["placement_noise"] = spec.placement_noise;
    j["region_spread"] = spec.region_spread;
    j["seed"] = spec.seed;
    j["word_gap"] = spec.word_gap;
    return j.dump(2) + "\n";
}

GeneratedDesign generate(const SynthSpec &spec)
{
    spec.validate();
    const auto origins = layout_modules(spec);
    Xoshiro256 rng(spec.seed);

    GeneratedDesign design;
    design.doc.device = "synthetic-grid-100x100";

    auto add_cell = [&](const std::string &name, CellType type, const std::string &equation,
                        int x, int y) {
        Cell cell;
        cell.id = static_cast<CellId>(design.doc.cells.size());
        cell.name = name;
        cell.cell_type = type;
        cell.boolean_equation = equation;
        cell.placement = placement_at(x, y);
        cell.hier_name = name;
        design.doc.cells.push_back(std::move(cell));
        return design.doc.cells.back().id;
    };
    auto add_net = [&](const std::string &name, CellId source_cell, const char *source_pin,
                       std::vector<PinRef> sinks) {
        Net net;
        net.name = name;
        net.source = {source_cell, source_pin};
        net.sinks = std::move(sinks);
        design.doc.nets.push_back(std::move(net));
    };

    const int words = spec.words_per_module;
    const int width = spec.word_width;

    // Cell ids, module-major: slice (k, j, i) holds one or two cells.
    const int cells_per_slice = (spec.cell_pattern == CellPattern::FfWord) ? 1 : 2;
    auto ff_id = [&](int k, int j, int i) {
        const int slice = (k * words + j) * width + i;
        return static_cast<CellId>(slice * cells_per_slice + (cells_per_slice - 1));
    };
    auto front_id = [&](int k, int j, int i) { // LUT or CARRY4 of the slice
        const int slice = (k * words + j) * width + i;
        return static_cast<CellId>(slice * cells_per_slice);
    };

    for (int k = 0; k < spec.module_count; ++k) {
        const std::string module_prefix = "m" + std::to_string(k);
        for (int j = 0; j < words; ++j) {
            const std::string word_prefix = module_prefix + "/w" + std::to_string(j);
            for (int i = 0; i < width; ++i) {
                const int x =
                    clamp_coord(origins[static_cast<size_t>(k)].x + j * spec.word_gap +
                                rng.jitter(spec.placement_noise));
                const int y = clamp_coord(origins[static_cast<size_t>(k)].y + i +
                                          rng.jitter(spec.placement_noise));
                const std::string bit = "[" + std::to_string(i) + "]";
                switch (spec.cell_pattern) {
                case CellPattern::FfWord:
                    add_cell(word_prefix + "_reg" + bit, CellType::Fdre, "", x, y);
                    break;
                case CellPattern::LutFfWord:
                    add_cell(word_prefix + bit, CellType::Lut2, "1000", x, y);
                    add_cell(word_prefix + "_reg" + bit, CellType::Fdre, "", x, y);
                    break;
                case CellPattern::CarryChainWord:
                    add_cell(word_prefix + bit, CellType::Carry4, "", x, y);
                    add_cell(word_prefix + "_reg" + bit, CellType::Fdre, "", x, y);
                    break;
                }
                const int word_id = k * words + j;
                const CellId slice_first = front_id(k, j, i);
                for (CellId id = slice_first; id <= ff_id(k, j, i); ++id) {
                    design.reference.word_label[id] = word_id;
                    design.reference.module_label[id] = k;
                }
            }
        }
    }

    for (int k = 0; k < spec.module_count; ++k) {
        for (int j = 0; j < words; ++j) {
            const std::string word_prefix = "m" + std::to_string(k) + "/w" + std::to_string(j);
            for (int i = 0; i < width; ++i) {
                const std::string bit = "[" + std::to_string(i) + "]";
                switch (spec.cell_pattern) {
                case CellPattern::FfWord:
                    break;
                case CellPattern::LutFfWord:
                    add_net(word_prefix + "_d" + bit, front_id(k, j, i), "O",
                            {{ff_id(k, j, i), "D"}});
                    break;
                case CellPattern::CarryChainWord:
                    add_net(word_prefix + "_o" + bit, front_id(k, j, i), "O",
                            {{ff_id(k, j, i), "D"}});
                    if (i + 1 < width)
                        add_net(word_prefix + "_co" + bit, front_id(k, j, i), "CO",
                                {{front_id(k, j, i + 1), "CI"}});
                    break;
                }
                // Bit i of word j feeds bit i of word j+1.
                std::vector<PinRef> sinks;
                if (j + 1 < words) {
                    switch (spec.cell_pattern) {
                    case CellPattern::FfWord:
                        sinks.push_back({ff_id(k, j + 1, i), "D"});
                        break;
                    case CellPattern::LutFfWord:
                        sinks.push_back({front_id(k, j + 1, i), "I0"});
                        break;
                    case CellPattern::CarryChainWord:
                        sinks.push_back({front_id(k, j + 1, i), "S"});
                        break;
                    }
                }
                add_net(word_prefix + "_q" + bit, ff_id(k, j, i), "Q", std::move(sinks));
            }
        }
    }
    return design;
}

NetlistDocument ablate_location(const NetlistDocument &doc)
{
    NetlistDocument out = doc;
    for (Cell &cell : out.cells) {
        const std::string site = cell.placement.site_name + "_X0Y0";
        cell.placement = parse_location(site, "TILE_X0Y0", "X0Y0");
    }
    return out;
}

} // namespace regroup
