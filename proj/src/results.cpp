#include "gossipmf/results.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gossipmf/agentsim.hpp"
#include "gossipmf/exact.hpp"
#include "gossipmf/meanfield.hpp"
#include "gossipmf/popsim.hpp"
#include "gossipmf/refined.hpp"

namespace gossipmf {

int ResultTable::find_column(const std::string& name) const {
    const auto it = std::find(column_names.begin(), column_names.end(), name);
    return it == column_names.end() ? -1 : static_cast<int>(it - column_names.begin());
}

const std::vector<double>& ResultTable::column(const std::string& name) const {
    const int idx = find_column(name);
    if (idx < 0) throw Error("no such result column: " + name);
    return columns[idx];
}

namespace {

Measure measure_for(MeasureKind kind, ModelKind model_kind, int gmax) {
    return kind == MeasureKind::Replication ? replication_measure(model_kind, gmax)
                                            : coverage_measure(model_kind, gmax);
}

}  // namespace

ResultTable run_table(const ExperimentConfig& cfg) {
    ResultTable table;
    table.t_max = cfg.t_max;
    if (cfg.methods.empty()) {
        table.t_max = -1;  // header-only output
        return table;
    }

    const PopulationModel model = build_model(cfg.kind, cfg.params);
    const OccupancyVector mu0 = cfg.initial_occupancy();

    // compute shared inputs once
    Trajectory classic;
    RefinedTrajectory refined;
    if (cfg.has_method(Method::Classic)) classic = classic_trajectory(model, mu0, cfg.t_max);
    if (cfg.has_method(Method::Refined)) refined = refined_trajectory(model, mu0, cfg.t_max);

    std::vector<SimStats> pop_stats(cfg.measures.size());
    if (cfg.has_method(Method::PopSim))
        for (std::size_t mi = 0; mi < cfg.measures.size(); ++mi)
            pop_stats[mi] =
                simulate_measure(model, cfg.initial_counts(), cfg.t_max, cfg.runs, cfg.base_seed,
                                 measure_for(cfg.measures[mi], cfg.kind, cfg.params.gmax));

    AgentStats agent_stats;
    if (cfg.has_method(Method::AgentSim))
        agent_stats = run_experiment(cfg.params, cfg.t_max, cfg.runs, cfg.base_seed);

    std::vector<std::vector<double>> exact_occupancy;  // per t
    if (cfg.has_method(Method::Exact)) {
        exact_occupancy.reserve(cfg.t_max + 1);
        CountDistribution dist = CountDistribution::point_mass(cfg.initial_counts());
        const double population = static_cast<double>(cfg.params.n_population);
        for (long t = 0; t <= cfg.t_max; ++t) {
            if (t > 0) dist = exact_step(model, dist);
            std::vector<double> expected(model.n_states(), 0.0);
            for (std::uint64_t key : dist.sorted_keys()) {
                const double p = dist.table().at(key);
                const std::vector<long long> counts = dist.unpack(key);
                for (int i = 0; i < model.n_states(); ++i)
                    expected[i] += p * static_cast<double>(counts[i]) / population;
            }
            exact_occupancy.push_back(std::move(expected));
        }
    }

    auto add_column = [&](const std::string& name, std::vector<double> values) {
        table.column_names.push_back(name);
        table.columns.push_back(std::move(values));
    };

    // fixed column order: classic, refined, popsim_mean, popsim_std,
    // agentsim_mean, agentsim_std, exact, each crossed with the measures in
    // the order replication-then-coverage
    struct Group {
        Method method;
        const char* prefix;
        bool is_std;
    };
    static constexpr Group kGroups[] = {
        {Method::Classic, "classic", false},        {Method::Refined, "refined", false},
        {Method::PopSim, "popsim_mean", false},     {Method::PopSim, "popsim_std", true},
        {Method::AgentSim, "agentsim_mean", false}, {Method::AgentSim, "agentsim_std", true},
        {Method::Exact, "exact", false},
    };
    auto measures_ordered = [&]() {
        std::vector<MeasureKind> ms;
        for (MeasureKind mk : {MeasureKind::Replication, MeasureKind::Coverage})
            if (std::find(cfg.measures.begin(), cfg.measures.end(), mk) != cfg.measures.end())
                ms.push_back(mk);
        return ms;
    }();

    for (const Group& group : kGroups) {
        if (!cfg.has_method(group.method)) continue;
        for (MeasureKind mk : measures_ordered) {
            const std::string name = std::string(group.prefix) + "_" + measure_kind_name(mk);
            const Measure h = measure_for(mk, cfg.kind, cfg.params.gmax);
            const std::size_t mi = static_cast<std::size_t>(
                std::find(cfg.measures.begin(), cfg.measures.end(), mk) - cfg.measures.begin());
            switch (group.method) {
                case Method::Classic:
                    add_column(name, measure_series(classic, h));
                    break;
                case Method::Refined: {
                    std::vector<double> vals;
                    vals.reserve(cfg.t_max + 1);
                    for (long t = 0; t <= cfg.t_max; ++t)
                        vals.push_back(
                            refined_measure(refined.at(t), h, cfg.params.n_population));
                    add_column(name, std::move(vals));
                    break;
                }
                case Method::PopSim:
                    add_column(name, group.is_std ? pop_stats[mi].stddev : pop_stats[mi].mean);
                    break;
                case Method::AgentSim: {
                    const SimStats& s = mk == MeasureKind::Replication ? agent_stats.replication
                                                                       : agent_stats.coverage;
                    add_column(name, group.is_std ? s.stddev : s.mean);
                    break;
                }
                case Method::Exact: {
                    std::vector<double> vals;
                    vals.reserve(cfg.t_max + 1);
                    for (long t = 0; t <= cfg.t_max; ++t)
                        vals.push_back(h.value(exact_occupancy[t]));
                    add_column(name, std::move(vals));
                    break;
                }
            }
        }
    }
    return table;
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_csv(const ResultTable& table, const std::string& path) {
    std::ostringstream out;
    out << "t";
    for (const std::string& name : table.column_names) out << ',' << name;
    out << '\n';
    for (long t = 0; t <= table.t_max; ++t) {
        out << t;
        for (const std::vector<double>& col : table.columns) out << ',' << format_double(col[t]);
        out << '\n';
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open for writing: " + path);
    file << out.str();
    if (!file) throw IoError("write failed: " + path);
}

ResultTable read_csv(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open for reading: " + path);
    ResultTable table;
    std::string line;
    if (!std::getline(file, line)) throw IoError("empty CSV: " + path);
    {
        std::stringstream header(line);
        std::string name;
        bool first = true;
        while (std::getline(header, name, ',')) {
            if (first) {
                if (name != "t") throw IoError("CSV must start with a t column: " + path);
                first = false;
            } else {
                table.column_names.push_back(name);
                table.columns.emplace_back();
            }
        }
    }
    long rows = 0;
    while (std::getline(file, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string cell;
        std::size_t idx = 0;
        bool first = true;
        while (std::getline(row, cell, ',')) {
            if (first) {
                first = false;
                continue;
            }
            if (idx >= table.columns.size()) throw IoError("ragged CSV row: " + path);
            table.columns[idx++].push_back(std::strtod(cell.c_str(), nullptr));
        }
        ++rows;
    }
    table.t_max = rows - 1;
    return table;
}

void write_plot_script(const ResultTable& table, const std::string& csv_path,
                       const std::string& script_path) {
    std::ostringstream py;
    py << "#!/usr/bin/env python3\n"
       << "\"\"\"Plots " << csv_path << ": one panel per measure, std-dev bars for\n"
       << "simulation columns.\"\"\"\n"
       << "import csv\n"
       << "import matplotlib.pyplot as plt\n\n"
       << "CSV = " << '"' << csv_path << '"' << "\n\n"
       << "with open(CSV, newline=\"\") as fh:\n"
       << "    rows = list(csv.DictReader(fh))\n"
       << "t = [int(r[\"t\"]) for r in rows]\n"
       << "col = lambda name: [float(r[name]) for r in rows]\n\n"
       << "columns = " << "[";
    for (std::size_t i = 0; i < table.column_names.size(); ++i)
        py << (i ? ", " : "") << '"' << table.column_names[i] << '"';
    py << "]\n"
       << "measures = sorted({c.rsplit(\"_\", 1)[-1] for c in columns})\n"
       << "fig, axes = plt.subplots(1, max(1, len(measures)), figsize=(6 * max(1, "
          "len(measures)), 4), squeeze=False)\n"
       << "for ax, measure in zip(axes[0], measures):\n"
       << "    for name in columns:\n"
       << "        if not name.endswith(measure) or name.startswith((\"popsim_std\", "
          "\"agentsim_std\")):\n"
       << "            continue\n"
       << "        if name.startswith((\"popsim_mean\", \"agentsim_mean\")):\n"
       << "            std_name = name.replace(\"_mean_\", \"_std_\")\n"
       << "            every = max(1, len(t) // 25)\n"
       << "            ax.errorbar(t[::every], col(name)[::every], "
          "yerr=col(std_name)[::every],\n"
       << "                        fmt=\".\", capsize=2, label=name)\n"
       << "        else:\n"
       << "            ax.plot(t, col(name), label=name)\n"
       << "    ax.set_xlabel(\"t\")\n"
       << "    ax.set_ylabel(measure)\n"
       << "    ax.legend()\n"
       << "fig.tight_layout()\n"
       << "fig.savefig(CSV.rsplit(\".\", 1)[0] + \".png\", dpi=150)\n"
       << "print(\"wrote\", CSV.rsplit(\".\", 1)[0] + \".png\")\n";

    std::ofstream file(script_path, std::ios::binary);
    if (!file) throw IoError("cannot open for writing: " + script_path);
    file << py.str();
    if (!file) throw IoError("write failed: " + script_path);
}

}  // namespace gossipmf
