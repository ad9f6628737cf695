#include <cctype>
#include <charconv>

#include <json.hpp>

#include "regroup/errors.hpp"
#include "regroup/ingest.hpp"

namespace regroup {

namespace {

bool parse_int_span(const std::string &text, size_t begin, size_t end, int &out)
{
    if (begin >= end)
        return false;
    auto result = std::from_chars(text.data() + begin, text.data() + end, out);
    return result.ec == std::errc() && result.ptr == text.data() + end;
}

} // namespace

GridXY parse_grid_xy(const std::string &name)
{
    const size_t x_pos = name.rfind('X');
    if (x_pos != std::string::npos) {
        const size_t y_pos = name.find('Y', x_pos + 1);
        if (y_pos != std::string::npos) {
            GridXY xy;
            if (parse_int_span(name, x_pos + 1, y_pos, xy.x) &&
                parse_int_span(name, y_pos + 1, name.size(), xy.y) && xy.x >= 0 && xy.y >= 0)
                return xy;
        }
    }
    throw Error("malformed location name \"" + name + "\": expected trailing X<int>Y<int>");
}

PlacementTriple parse_location(const std::string &site_name, const std::string &tile_name,
                               const std::string &clock_region_name)
{
    PlacementTriple triple;
    triple.site_xy = parse_grid_xy(site_name);
    triple.tile_xy = parse_grid_xy(tile_name);
    triple.clock_region_xy = parse_grid_xy(clock_region_name);
    triple.site_name = site_name;
    triple.tile_name = tile_name;
    return triple;
}

std::pair<std::string, std::string> derive_tile_and_region(const std::string &site_name,
                                                           const DeviceProfile &profile)
{
    auto it = profile.overrides.find(site_name);
    if (it != profile.overrides.end())
        return it->second;
    if (profile.tile_bucket && profile.region_bucket) {
        const GridXY site = parse_grid_xy(site_name);
        auto bucket_name = [](const GridXY &xy, const GridXY &bucket) {
            return "X" + std::to_string(xy.x / bucket.x) + "Y" + std::to_string(xy.y / bucket.y);
        };
        return {bucket_name(site, *profile.tile_bucket), bucket_name(site, *profile.region_bucket)};
    }
    throw Error("site \"" + site_name +
                "\" is not in the device profile and the profile declares no bucket fallback");
}

DeviceProfile read_device_profile(const std::string &path)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error &e) {
        throw Error("device profile " + path + ": invalid JSON: " + e.what());
    }
    if (!j.is_object())
        throw SchemaError("/", "device profile must be a JSON object");

    DeviceProfile profile;
    if (j.contains("buckets")) {
        const auto &buckets = j.at("buckets");
        if (!buckets.is_object())
            throw SchemaError("/buckets", "expected an object");
        auto read_bucket = [&](const char *key) -> GridXY {
            const std::string ptr = std::string("/buckets/") + key;
            if (!buckets.contains(key))
                throw SchemaError(ptr, "missing bucket sizes");
            const auto &pair = buckets.at(key);
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
                !pair[1].is_number_integer())
                throw SchemaError(ptr, "expected [x_size, y_size]");
            GridXY xy{pair[0].get<int>(), pair[1].get<int>()};
            if (xy.x < 1 || xy.y < 1)
                throw SchemaError(ptr, "bucket sizes must be positive");
            return xy;
        };
        profile.tile_bucket = read_bucket("tile");
        profile.region_bucket = read_bucket("region");
    }
    if (j.contains("overrides")) {
        const auto &overrides = j.at("overrides");
        if (!overrides.is_object())
            throw SchemaError("/overrides", "expected an object");
        for (const auto &[site, value] : overrides.items()) {
            const std::string ptr = "/overrides/" + site;
            if (!value.is_array() || value.size() != 2 || !value[0].is_string() ||
                !value[1].is_string())
                throw SchemaError(ptr, "expected [tile_name, clock_region_name]");
            profile.overrides[site] = {value[0].get<std::string>(), value[1].get<std::string>()};
        }
    }
    return profile;
}

} // namespace regroup
