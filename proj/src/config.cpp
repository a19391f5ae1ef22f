#include "hashchem/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "hashchem/error.hpp"

namespace hashchem {

namespace {

using json = nlohmann::ordered_json;

std::string normalize_key(std::string_view key) {
    std::string k(key);
    std::replace(k.begin(), k.end(), '-', '_');
    return k;
}

std::int64_t parse_int(std::string_view field, std::string_view text) {
    std::int64_t v = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc{} || ptr != end) {
        throw ConfigError(std::string(field), "expected an integer, got '" + std::string(text) + "'");
    }
    return v;
}

double parse_real(std::string_view field, std::string_view text) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc{} || ptr != end) {
        throw ConfigError(std::string(field), "expected a number, got '" + std::string(text) + "'");
    }
    return v;
}

bool parse_bool(std::string_view field, std::string_view text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ConfigError(std::string(field), "expected true or false, got '" + std::string(text) + "'");
}

std::vector<std::int64_t> parse_int_list(std::string_view field, std::string_view text) {
    std::vector<std::int64_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        if (comma == std::string_view::npos) comma = text.size();
        auto item = text.substr(start, comma - start);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (!item.empty()) {
            const auto v = parse_int(field, item);
            if (v < 0) throw ConfigError(std::string(field), "ticks must be >= 0");
            out.push_back(v);
        }
        start = comma + 1;
    }
    return out;
}

using Setter = std::function<void(Config&, std::string_view)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"seed", [](Config& c, std::string_view v) { c.campaign.master_seed = parse_seed(v); }},
        {"steps", [](Config& c, std::string_view v) { c.campaign.params.steps = parse_int("steps", v); }},
        {"target_runs", [](Config& c, std::string_view v) { c.campaign.target_runs = parse_int("target_runs", v); }},
        {"max_attempts", [](Config& c, std::string_view v) { c.campaign.max_attempts = parse_int("max_attempts", v); }},
        {"mode",
         [](Config& c, std::string_view v) {
             if (v == "filter") c.campaign.mode = CampaignMode::filter_extinct;
             else if (v == "fixed") c.campaign.mode = CampaignMode::fixed_attempts;
             else throw ConfigError("mode", "expected filter or fixed, got '" + std::string(v) + "'");
         }},
        {"evaluator", [](Config& c, std::string_view v) { c.campaign.params.evaluator = parse_evaluator_kind(v); }},
        {"biased.lo", [](Config& c, std::string_view v) { c.campaign.params.biased_lo = parse_real("biased.lo", v); }},
        {"biased.hi", [](Config& c, std::string_view v) { c.campaign.params.biased_hi = parse_real("biased.hi", v); }},
        {"sigma", [](Config& c, std::string_view v) { c.campaign.params.sigma = parse_real("sigma", v); }},
        {"radius", [](Config& c, std::string_view v) { c.campaign.params.radius = parse_real("radius", v); }},
        {"mu", [](Config& c, std::string_view v) { c.campaign.params.mu = parse_real("mu", v); }},
        {"dmax", [](Config& c, std::string_view v) { c.campaign.params.d_max = parse_int("dmax", v); }},
        {"modulus", [](Config& c, std::string_view v) { c.campaign.params.modulus = parse_int("modulus", v); }},
        {"types", [](Config& c, std::string_view v) { c.campaign.params.types = parse_int("types", v); }},
        {"init_pop", [](Config& c, std::string_view v) { c.campaign.params.init_pop = parse_int("init_pop", v); }},
        {"parallelism", [](Config& c, std::string_view v) { c.campaign.parallelism = parse_int("parallelism", v); }},
        {"out", [](Config& c, std::string_view v) { c.output_dir = std::string(v); }},
        {"plot", [](Config& c, std::string_view v) { c.plot = parse_bool("plot", v); }},
        {"snapshot_ticks", [](Config& c, std::string_view v) { c.snapshot_ticks = parse_int_list("snapshot_ticks", v); }},
        {"fit_sampling",
         [](Config& c, std::string_view v) {
             if (v == "every_tick") c.fit_sampling = FitSampling::every_tick;
             else if (v == "log_spaced") c.fit_sampling = FitSampling::log_spaced;
             else if (v == "both") c.fit_sampling = FitSampling::both;
             else throw ConfigError("fit_sampling", "expected every_tick, log_spaced or both");
         }},
        {"fit_log_points",
         [](Config& c, std::string_view v) {
             const auto n = parse_int("fit_log_points", v);
             if (n < 3) throw ConfigError("fit_log_points", "must be >= 3");
             c.fit_log_points = static_cast<std::size_t>(n);
         }},
        {"preset", [](Config& c, std::string_view v) { apply_preset(c, v); }},
    };
    return table;
}

std::string json_scalar_text(const json& value) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
    if (value.is_array()) {
        std::string joined;
        for (const auto& item : value) {
            if (!joined.empty()) joined += ',';
            joined += json_scalar_text(item);
        }
        return joined;
    }
    return value.dump();
}

void flatten(const json& object, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    for (auto it = object.begin(); it != object.end(); ++it) {
        const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (it.value().is_object()) {
            flatten(it.value(), key, out);
        } else if (it.value().is_null()) {
            throw ConfigError(key, "null is not a valid value");
        } else {
            out.emplace_back(key, json_scalar_text(it.value()));
        }
    }
}

} // namespace

std::vector<std::string> preset_names() { return {"main", "control-uniform", "control-biased"}; }

void apply_preset(Config& config, std::string_view name) {
    CampaignSpec& c = config.campaign;
    const std::uint64_t seed = c.master_seed;
    const std::int64_t parallelism = c.parallelism;
    c = CampaignSpec{};
    c.master_seed = seed;
    c.parallelism = parallelism;
    if (name == "main") {
        c.params.evaluator = EvaluatorKind::hash;
        c.target_runs = 50;
        c.mode = CampaignMode::filter_extinct;
    } else if (name == "control-uniform") {
        c.params.evaluator = EvaluatorKind::uniform_random;
        c.target_runs = 100;
        c.mode = CampaignMode::fixed_attempts;
    } else if (name == "control-biased") {
        c.params.evaluator = EvaluatorKind::biased_random;
        c.params.biased_lo = 0.2;
        c.params.biased_hi = 1.0;
        c.target_runs = 30;
        c.mode = CampaignMode::filter_extinct;
    } else {
        throw ConfigError("preset", "unknown preset '" + std::string(name) + "' (main, control-uniform, control-biased)");
    }
}

void set_option(Config& config, std::string_view key, std::string_view value) {
    const auto& table = setters();
    const auto it = table.find(normalize_key(key));
    if (it == table.end()) {
        throw ConfigError(std::string(key), "unknown option");
    }
    it->second(config, value);
}

void apply_json(Config& config, std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("config", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config", "top level must be a JSON object");
    }
    std::vector<std::pair<std::string, std::string>> options;
    flatten(doc, "", options);
    // Preset first so explicit keys override it regardless of their order.
    for (const auto& [k, v] : options) {
        if (normalize_key(k) == "preset") set_option(config, k, v);
    }
    for (const auto& [k, v] : options) {
        if (normalize_key(k) != "preset") set_option(config, k, v);
    }
}

void load_config_file(Config& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config", "cannot read '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    apply_json(config, buf.str());
}

std::string config_to_json(const Config& config) {
    const auto& c = config.campaign;
    const auto& p = c.params;
    json j;
    j["seed"] = c.master_seed;
    j["steps"] = p.steps;
    j["target_runs"] = c.target_runs;
    j["max_attempts"] = c.effective_max_attempts();
    j["mode"] = c.mode == CampaignMode::filter_extinct ? "filter" : "fixed";
    j["evaluator"] = std::string(to_string(p.evaluator));
    j["biased"] = {{"lo", p.biased_lo}, {"hi", p.biased_hi}};
    j["sigma"] = p.sigma;
    j["radius"] = p.radius;
    j["mu"] = p.mu;
    j["dmax"] = p.d_max;
    j["modulus"] = p.modulus;
    j["types"] = p.types;
    j["init_pop"] = p.init_pop;
    j["parallelism"] = c.parallelism;
    j["out"] = config.output_dir;
    j["plot"] = config.plot;
    j["snapshot_ticks"] = config.snapshot_ticks;
    j["fit_sampling"] = config.fit_sampling == FitSampling::every_tick   ? "every_tick"
                        : config.fit_sampling == FitSampling::log_spaced ? "log_spaced"
                                                                          : "both";
    j["fit_log_points"] = config.fit_log_points;
    return j.dump(2);
}

std::string get_option(const Config& config, std::string_view key) {
    const std::string k = normalize_key(key);
    if (k == "preset" || !setters().contains(k)) {
        throw ConfigError(std::string(key), "unknown option");
    }
    const json doc = json::parse(config_to_json(config));
    std::vector<std::pair<std::string, std::string>> flat;
    flatten(doc, "", flat);
    for (const auto& [name, value] : flat) {
        if (name == k) return value;
    }
    throw ConfigError(std::string(key), "unknown option");
}

void validate(const Config& config) {
    config.campaign.validate();
    if (config.output_dir.empty()) {
        throw ConfigError("out", "output directory must not be empty");
    }
}

} // namespace hashchem
