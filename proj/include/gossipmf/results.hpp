#pragma once

#include <string>
#include <vector>

#include "gossipmf/config.hpp"

namespace gossipmf {

/// Aligned per-time-step results: one named column per method x measure
/// (simulation methods contribute a mean and a std column). Row r holds
/// time step r; the implicit first CSV column is t itself.
struct ResultTable {
    long t_max = 0;
    std::vector<std::string> column_names;
    std::vector<std::vector<double>> columns;  // column-major, length t_max+1

    int find_column(const std::string& name) const;  // -1 if absent
    const std::vector<double>& column(const std::string& name) const;
};

/// Runs every method requested by the config and assembles the table.
/// Column order: methods in the fixed order classic, refined, popsim_mean,
/// popsim_std, agentsim_mean, agentsim_std, exact, each crossed with the
/// requested measures in the order replication, coverage.
ResultTable run_table(const ExperimentConfig& cfg);

/// CSV: header then one row per t; floats at 17 significant digits, '.'
/// decimal separator, '\n' newlines. Bit-exact round trip via read_csv.
void write_csv(const ResultTable& table, const std::string& path);
ResultTable read_csv(const std::string& path);

/// Emits a small matplotlib script that reads the CSV and draws the
/// replication/coverage curves, with std-dev bars for simulation columns.
void write_plot_script(const ResultTable& table, const std::string& csv_path,
                       const std::string& script_path);

}  // namespace gossipmf
