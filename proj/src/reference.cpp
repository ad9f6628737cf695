#include <cctype>
#include <map>

#include <json.hpp>

#include "regroup/errors.hpp"
#include "regroup/ingest.hpp"

namespace regroup {

namespace {

// Strips one trailing "[<int>]" when present.
std::string strip_bit_index(const std::string &name)
{
    if (name.empty() || name.back() != ']')
        return name;
    const size_t open = name.rfind('[');
    if (open == std::string::npos || open + 1 == name.size() - 1)
        return name;
    for (size_t i = open + 1; i + 1 < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i])))
            return name;
    return name.substr(0, open);
}

std::string strip_suffix(const std::string &name, const std::string &suffix)
{
    if (name.size() > suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
        return name.substr(0, name.size() - suffix.size());
    return name;
}

} // namespace

std::string word_key_of(const std::string &hier_name)
{
    return strip_suffix(strip_bit_index(hier_name), "_reg");
}

std::string module_key_of(const std::string &hier_name)
{
    const size_t slash = hier_name.rfind('/');
    if (slash == std::string::npos)
        return "";
    return hier_name.substr(0, slash);
}

ReferenceHierarchy extract_reference(const NetlistDocument &doc)
{
    ReferenceHierarchy ref;
    std::map<std::string, int> word_ids;
    std::map<std::string, int> module_ids;
    for (const Cell &cell : doc.cells) {
        if (!cell.hier_name) {
            ref.excluded.push_back(cell.id);
            continue;
        }
        const std::string word = word_key_of(*cell.hier_name);
        const std::string module = module_key_of(*cell.hier_name);
        auto w = word_ids.try_emplace(word, static_cast<int>(word_ids.size())).first;
        auto m = module_ids.try_emplace(module, static_cast<int>(module_ids.size())).first;
        ref.word_label[cell.id] = w->second;
        ref.module_label[cell.id] = m->second;
    }
    return ref;
}

ReferenceLabels labels_by_name(const NetlistDocument &doc, const ReferenceHierarchy &ref)
{
    ReferenceLabels labels;
    for (const auto &[id, label] : ref.word_label)
        labels.word_label[doc.cells[static_cast<size_t>(id)].name] = label;
    for (const auto &[id, label] : ref.module_label)
        labels.module_label[doc.cells[static_cast<size_t>(id)].name] = label;
    return labels;
}

std::string reference_labels_to_json(const ReferenceLabels &labels)
{
    nlohmann::ordered_json j;
    j["word_label"] = nlohmann::ordered_json::object();
    for (const auto &[name, label] : labels.word_label)
        j["word_label"][name] = label;
    j["module_label"] = nlohmann::ordered_json::object();
    for (const auto &[name, label] : labels.module_label)
        j["module_label"][name] = label;
    return j.dump(2) + "\n";
}

ReferenceLabels parse_reference_labels_json(const std::string &text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw Error(std::string("invalid reference labels JSON: ") + e.what());
    }
    ReferenceLabels labels;
    auto read_map = [&](const char *key, std::map<std::string, int> &out) {
        if (!j.is_object() || !j.contains(key) || !j.at(key).is_object())
            throw SchemaError(std::string("/") + key, "missing label map");
        for (const auto &[name, value] : j.at(key).items()) {
            if (!value.is_number_integer())
                throw SchemaError(std::string("/") + key + "/" + name, "expected an integer");
            out[name] = value.get<int>();
        }
    };
    read_map("word_label", labels.word_label);
    read_map("module_label", labels.module_label);
    return labels;
}

} // namespace regroup
