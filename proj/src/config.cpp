#include "gossipmf/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace gossipmf {

std::string method_name(Method m) {
    switch (m) {
        case Method::Classic: return "classic";
        case Method::Refined: return "refined";
        case Method::PopSim: return "popsim";
        case Method::AgentSim: return "agentsim";
        case Method::Exact: return "exact";
    }
    throw Error("unreachable method");
}

std::string measure_kind_name(MeasureKind m) {
    return m == MeasureKind::Replication ? "replication" : "coverage";
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> items;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw TypeMismatch(key + ": expected an integer, got '" + value + "'");
    }
}

Method parse_method(const std::string& name) {
    if (name == "classic") return Method::Classic;
    if (name == "refined") return Method::Refined;
    if (name == "popsim") return Method::PopSim;
    if (name == "agentsim") return Method::AgentSim;
    if (name == "exact") return Method::Exact;
    throw TypeMismatch("methods: unknown method '" + name + "'");
}

MeasureKind parse_measure_kind(const std::string& name) {
    if (name == "replication") return MeasureKind::Replication;
    if (name == "coverage") return MeasureKind::Coverage;
    throw TypeMismatch("measures: unknown measure '" + name + "'");
}

}  // namespace

std::vector<long long> fresh_init_counts(ModelKind kind, int gmax, long long n_population) {
    std::vector<long long> counts(state_count(kind, gmax), 0);
    switch (kind) {
        case ModelKind::TwoState:
            counts[0] = n_population - 1;  // O
            counts[1] = 1;                 // D
            break;
        case ModelKind::ThreeState:
            counts[1] = 1;                 // D
            counts[2] = n_population - 1;  // I
            break;
        case ModelKind::SixState:
            counts[2] = n_population - 1;  // I
            counts[4] = 1;                 // PD
            break;
        default:
            throw InvariantViolation(
                "init: the fresh preset is defined for the aggregate kinds only; "
                "give explicit per-state counts for full models");
    }
    return counts;
}

OccupancyVector ExperimentConfig::initial_occupancy() const {
    return initial_counts().occupancy();
}

CountVector ExperimentConfig::initial_counts() const {
    return CountVector::validated(init_counts, params.n_population);
}

bool ExperimentConfig::has_method(Method m) const {
    return std::find(methods.begin(), methods.end(), m) != methods.end();
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    cfg.params = GossipParams{500, 100, 50, 3, 100};  // overridable defaults

    bool saw_model = false;
    std::string init_value = "fresh";

    std::stringstream lines(text);
    std::string line;
    int line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        if (const std::size_t hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw TypeMismatch("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "model") {
            try {
                cfg.kind = parse_model_kind(value);
            } catch (const InvalidParams& e) {
                throw TypeMismatch(std::string("model: ") + e.what());
            }
            saw_model = true;
        } else if (key == "n_population") {
            cfg.params.n_population = parse_int(key, value);
        } else if (key == "n_items") {
            cfg.params.n_items = static_cast<int>(parse_int(key, value));
        } else if (key == "c") {
            cfg.params.cache_size = static_cast<int>(parse_int(key, value));
        } else if (key == "s") {
            cfg.params.exchange_size = static_cast<int>(parse_int(key, value));
        } else if (key == "gmax") {
            cfg.params.gmax = static_cast<int>(parse_int(key, value));
        } else if (key == "init") {
            init_value = value;
        } else if (key == "t_max") {
            cfg.t_max = parse_int(key, value);
        } else if (key == "runs") {
            cfg.runs = static_cast<int>(parse_int(key, value));
        } else if (key == "base_seed") {
            cfg.base_seed = static_cast<std::uint64_t>(parse_int(key, value));
        } else if (key == "methods") {
            cfg.methods.clear();
            for (const std::string& item : split_list(value))
                cfg.methods.push_back(parse_method(item));
        } else if (key == "measures") {
            cfg.measures.clear();
            for (const std::string& item : split_list(value))
                cfg.measures.push_back(parse_measure_kind(item));
        } else if (key == "out") {
            cfg.out_path = value;
        } else {
            throw UnknownKey("unknown key '" + key + "' on line " + std::to_string(line_no));
        }
    }

    if (!saw_model) throw InvariantViolation("model: missing");

    try {
        GossipParams::validated(cfg.params.n_items, cfg.params.cache_size,
                                cfg.params.exchange_size, cfg.params.gmax,
                                cfg.params.n_population);
    } catch (const InvalidParams& e) {
        throw InvariantViolation(std::string("params: ") + e.what());
    }

    // resolve the initial condition
    if (init_value == "fresh") {
        cfg.init_counts = fresh_init_counts(cfg.kind, cfg.params.gmax, cfg.params.n_population);
        cfg.init_is_fresh = true;
    } else {
        for (const std::string& item : split_list(init_value))
            cfg.init_counts.push_back(parse_int("init", item));
        cfg.init_is_fresh =
            (cfg.kind == ModelKind::TwoState || cfg.kind == ModelKind::ThreeState ||
             cfg.kind == ModelKind::SixState) &&
            cfg.init_counts == fresh_init_counts(cfg.kind, cfg.params.gmax,
                                                 cfg.params.n_population);
    }
    if (static_cast<int>(cfg.init_counts.size()) != state_count(cfg.kind, cfg.params.gmax))
        throw InvariantViolation("init: expected " +
                                 std::to_string(state_count(cfg.kind, cfg.params.gmax)) +
                                 " counts, got " + std::to_string(cfg.init_counts.size()));
    long long total = 0;
    for (long long c : cfg.init_counts) {
        if (c < 0) throw InvariantViolation("init: counts must be non-negative");
        total += c;
    }
    if (total != cfg.params.n_population)
        throw InvariantViolation("init: counts sum to " + std::to_string(total) +
                                 ", expected n_population = " +
                                 std::to_string(cfg.params.n_population));

    if (cfg.runs < 1) throw InvariantViolation("runs: must be at least 1");
    if (cfg.t_max < 0) throw InvariantViolation("t_max: must be non-negative");

    const bool has_coverage = std::find(cfg.measures.begin(), cfg.measures.end(),
                                        MeasureKind::Coverage) != cfg.measures.end();
    if (has_coverage &&
        (cfg.kind == ModelKind::TwoState || cfg.kind == ModelKind::FullReplication))
        throw InvariantViolation("measures: coverage is undefined for " +
                                 model_kind_name(cfg.kind));
    if (cfg.has_method(Method::AgentSim) && !cfg.init_is_fresh)
        throw InvariantViolation(
            "methods: agentsim requires the single-fresh-item initial condition (init = fresh)");

    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace gossipmf
