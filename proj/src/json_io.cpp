#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <unistd.h>

#include <json.hpp>

#include "regroup/errors.hpp"
#include "regroup/ingest.hpp"

namespace regroup {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string element_ptr(const char *array, size_t index, const char *field = nullptr)
{
    std::string ptr = "/" + std::string(array) + "/" + std::to_string(index);
    if (field)
        ptr += "/" + std::string(field);
    return ptr;
}

const json &require(const json &parent, const char *key, const std::string &ptr_prefix)
{
    if (!parent.contains(key))
        throw SchemaError(ptr_prefix + "/" + key, "missing required key");
    return parent.at(key);
}

std::string require_string(const json &parent, const char *key, const std::string &ptr_prefix)
{
    const json &value = require(parent, key, ptr_prefix);
    if (!value.is_string())
        throw SchemaError(ptr_prefix + "/" + key, "expected a string");
    return value.get<std::string>();
}

} // namespace

std::string read_text_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open " + path + " for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file_atomic(const std::string &path, const std::string &content)
{
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
    }
    const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out)
            throw Error("failed writing " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec)
        throw Error("cannot move " + tmp.string() + " to " + path + ": " + ec.message());
}

NetlistDocument parse_json_text(const std::string &text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw Error(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw SchemaError("/", "netlist document must be a JSON object");

    NetlistDocument doc;
    doc.format_version = require_string(j, "format_version", "");
    if (doc.format_version != "1")
        throw SchemaError("/format_version", "unsupported format_version \"" +
                                                 doc.format_version +
                                                 "\"; this build reads version \"1\" only — "
                                                 "upgrade the tool to read newer documents");
    doc.device = require_string(j, "device", "");

    const json &cells = require(j, "cells", "");
    if (!cells.is_array())
        throw SchemaError("/cells", "expected an array");
    const json &nets = require(j, "nets", "");
    if (!nets.is_array())
        throw SchemaError("/nets", "expected an array");

    std::unordered_map<std::string, CellId> cell_index;
    std::unordered_map<std::string, std::pair<std::string, std::string>> site_consistency;
    doc.cells.reserve(cells.size());
    for (size_t i = 0; i < cells.size(); ++i) {
        const json &entry = cells[i];
        const std::string ptr = element_ptr("cells", i);
        if (!entry.is_object())
            throw SchemaError(ptr, "expected an object");

        Cell cell;
        cell.id = static_cast<CellId>(i);
        cell.name = require_string(entry, "name", ptr);
        if (cell.name.empty())
            throw SchemaError(ptr + "/name", "cell name must not be empty");
        if (!cell_index.emplace(cell.name, cell.id).second)
            throw SchemaError(ptr + "/name", "duplicate cell name \"" + cell.name + "\"");

        const std::string type_name = require_string(entry, "type", ptr);
        if (is_dsp_type_name(type_name))
            throw SchemaError(ptr + "/type",
                              "DSP cell type \"" + type_name + "\" is excluded from ingestion");
        const auto type = cell_type_from_string(type_name);
        if (!type)
            throw SchemaError(ptr + "/type", "unknown cell type \"" + type_name + "\"");
        cell.cell_type = *type;

        cell.boolean_equation = require_string(entry, "init", ptr);
        const int lut_width = lut_input_count(cell.cell_type);
        if (lut_width > 0) {
            const size_t expected = size_t{1} << lut_width;
            if (cell.boolean_equation.size() != expected ||
                cell.boolean_equation.find_first_not_of("01") != std::string::npos)
                throw SchemaError(ptr + "/init", "expected " + std::to_string(expected) +
                                                     " binary digits for " + type_name);
        } else if (!cell.boolean_equation.empty()) {
            throw SchemaError(ptr + "/init", "init must be empty for non-LUT type " + type_name);
        }

        const std::string site = require_string(entry, "site", ptr);
        const std::string tile = require_string(entry, "tile", ptr);
        const std::string region = require_string(entry, "clock_region", ptr);
        try {
            cell.placement = parse_location(site, tile, region);
        } catch (const Error &e) {
            throw SchemaError(ptr, e.what());
        }
        auto [it, inserted] = site_consistency.emplace(site, std::make_pair(tile, region));
        if (!inserted && (it->second.first != tile || it->second.second != region))
            throw SchemaError(ptr + "/site", "site \"" + site +
                                                 "\" appears with conflicting tile or "
                                                 "clock_region values");

        const std::string hier = require_string(entry, "hier_name", ptr);
        if (!hier.empty())
            cell.hier_name = hier;
        doc.cells.push_back(std::move(cell));
    }

    auto pin_ref = [&](const json &entry, const std::string &ptr) {
        if (!entry.is_object())
            throw SchemaError(ptr, "expected an object");
        PinRef ref;
        const std::string cell_name = require_string(entry, "cell", ptr);
        auto it = cell_index.find(cell_name);
        if (it == cell_index.end())
            throw SchemaError(ptr + "/cell", "unknown cell \"" + cell_name + "\"");
        ref.cell = it->second;
        ref.pin = require_string(entry, "pin", ptr);
        if (ref.pin.empty())
            throw SchemaError(ptr + "/pin", "pin must not be empty");
        return ref;
    };

    doc.nets.reserve(nets.size());
    for (size_t i = 0; i < nets.size(); ++i) {
        const json &entry = nets[i];
        const std::string ptr = element_ptr("nets", i);
        if (!entry.is_object())
            throw SchemaError(ptr, "expected an object");
        Net net;
        net.name = require_string(entry, "name", ptr);
        net.source = pin_ref(require(entry, "source", ptr), ptr + "/source");
        const json &sinks = require(entry, "sinks", ptr);
        if (!sinks.is_array())
            throw SchemaError(ptr + "/sinks", "expected an array");
        for (size_t s = 0; s < sinks.size(); ++s)
            net.sinks.push_back(pin_ref(sinks[s], ptr + "/sinks/" + std::to_string(s)));
        doc.nets.push_back(std::move(net));
    }
    return doc;
}

NetlistDocument read_json(const std::string &path)
{
    return parse_json_text(read_text_file(path));
}

std::string document_to_json(const NetlistDocument &doc)
{
    ordered_json j;
    j["format_version"] = doc.format_version;
    j["device"] = doc.device;
    j["cells"] = ordered_json::array();
    for (const Cell &cell : doc.cells) {
        ordered_json entry;
        entry["name"] = cell.name;
        entry["type"] = std::string(to_string(cell.cell_type));
        entry["init"] = cell.boolean_equation;
        entry["site"] = cell.placement.site_name;
        entry["tile"] = cell.placement.tile_name;
        ordered_json region = "X" + std::to_string(cell.placement.clock_region_xy.x) + "Y" +
                              std::to_string(cell.placement.clock_region_xy.y);
        entry["clock_region"] = region;
        entry["hier_name"] = cell.hier_name.value_or("");
        j["cells"].push_back(std::move(entry));
    }
    j["nets"] = ordered_json::array();
    for (const Net &net : doc.nets) {
        ordered_json entry;
        entry["name"] = net.name;
        entry["source"] = {{"cell", doc.cells[static_cast<size_t>(net.source.cell)].name},
                           {"pin", net.source.pin}};
        entry["sinks"] = ordered_json::array();
        for (const PinRef &sink : net.sinks)
            entry["sinks"].push_back({{"cell", doc.cells[static_cast<size_t>(sink.cell)].name},
                                      {"pin", sink.pin}});
        j["nets"].push_back(std::move(entry));
    }
    return j.dump(2) + "\n";
}

void write_json(const NetlistDocument &doc, const std::string &path)
{
    write_text_file_atomic(path, document_to_json(doc));
}

} // namespace regroup
