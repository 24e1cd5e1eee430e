#include "corpuslens/aspects.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

#include "corpuslens/errors.hpp"
#include "corpuslens/text.hpp"

namespace corpuslens::aspects {

using nlohmann::json;

const std::vector<std::string>& canonical_aspects() {
    static const std::vector<std::string> names = {
        "protected lanes",
        "painted lanes",
        "bike lanes (general)",
        "paths and trails",
        "parking and storage",
        "intersections and signals",
        "transit integration",
        "construction and roadworks",
        "general infrastructure",
    };
    return names;
}

AspectLexicon default_aspect_lexicon() {
    return AspectLexicon{
        {"protected lanes",
         {"protected lane", "protected lanes", "protected bike lane", "separated lane",
          "separated bike lane", "cycle track", "physical barrier", "bollard"}},
        {"painted lanes",
         {"painted lane", "painted lanes", "painted bike lane", "paint only", "sharrow",
          "sharrows", "door zone lane"}},
        {"bike lanes (general)",
         {"bike lane", "bike lanes", "cycling lane", "cycle lane", "bicycle lane"}},
        {"paths and trails",
         {"bike path", "bike paths", "trail", "trails", "greenway", "rail trail",
          "multi use path", "shared path", "towpath"}},
        {"parking and storage",
         {"bike parking", "bike rack", "bike racks", "bike storage", "bike locker",
          "bike lockers", "secure parking", "bike room"}},
        {"intersections and signals",
         {"intersection", "intersections", "traffic light", "traffic lights", "bike signal",
          "signal timing", "crosswalk", "roundabout", "stop sign"}},
        {"transit integration",
         {"bike rack bus", "bus bike rack", "train bike", "bike on transit", "bike on the train",
          "bike on the bus", "metro bike", "transit bike", "bike share station"}},
        {"construction and roadworks",
         {"construction", "roadwork", "roadworks", "repaving", "repaved", "detour",
          "closed for construction", "torn up"}},
        {"general infrastructure",
         {"infrastructure", "road design", "street design", "network", "connectivity",
          "traffic calming", "complete street", "complete streets"}},
    };
}

AspectLexicon load_aspect_lexicon(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("aspect lexicon: cannot read " + path.string());
    json root;
    try {
        root = json::parse(in);
    } catch (const json::exception& e) {
        throw DataError("aspect lexicon: invalid JSON: " + std::string(e.what()));
    }
    if (!root.is_object()) throw DataError("aspect lexicon: top level must be an object");

    const auto& canon = canonical_aspects();
    const std::set<std::string> canon_set(canon.begin(), canon.end());
    AspectLexicon out;
    for (const auto& [aspect, phrases] : root.items()) {
        if (canon_set.count(aspect) == 0) {
            throw DataError("aspect lexicon: unknown aspect '" + aspect + "'");
        }
        if (!phrases.is_array()) {
            throw DataError("aspect lexicon: phrases for '" + aspect + "' must be an array");
        }
        std::vector<std::string> list;
        for (const auto& p : phrases) {
            if (!p.is_string()) {
                throw DataError("aspect lexicon: non-string phrase under '" + aspect + "'");
            }
            list.push_back(text::to_lower(p.get<std::string>()));
        }
        out.emplace(aspect, std::move(list));
    }
    for (const auto& name : canon) {
        if (out.find(name) == out.end()) {
            throw DataError("aspect lexicon: missing aspect '" + name + "'");
        }
    }
    return out;
}

std::vector<std::string> match_aspects(std::string_view text_in, const AspectLexicon& lexicon) {
    const auto tokens = text::tokenize(text_in);
    std::vector<std::string> out;
    for (const auto& aspect : canonical_aspects()) {
        const auto it = lexicon.find(aspect);
        if (it == lexicon.end()) continue;
        for (const auto& phrase : it->second) {
            const auto phrase_tokens = text::tokenize(phrase);
            if (!phrase_tokens.empty() && text::contains_phrase(tokens, phrase_tokens)) {
                out.push_back(aspect);
                break;
            }
        }
    }
    return out;
}

double median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::vector<AspectSummaryRow> aspect_summary(const std::vector<DocAspects>& docs) {
    // (region, aspect) -> compounds of distinct assigned docs
    std::map<std::string, std::map<std::string, std::vector<double>>> cells;
    for (const auto& d : docs) {
        for (const auto& aspect : d.aspects) {
            cells[d.region][aspect].push_back(d.compound);
        }
    }
    std::vector<AspectSummaryRow> rows;
    for (const auto& [region, per_aspect] : cells) {
        for (const auto& aspect : canonical_aspects()) {
            const auto it = per_aspect.find(aspect);
            if (it == per_aspect.end() || it->second.empty()) continue;
            AspectSummaryRow row;
            row.region = region;
            row.aspect = aspect;
            row.n = it->second.size();
            double sum = 0.0;
            for (double v : it->second) sum += v;
            row.mean = sum / static_cast<double>(it->second.size());
            row.median = median(it->second);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace corpuslens::aspects
