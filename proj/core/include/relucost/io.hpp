#ifndef RELUCOST_IO_HPP
#define RELUCOST_IO_HPP

#include <map>
#include <string>
#include <vector>

#include "relucost/dataset.hpp"
#include "relucost/experiment.hpp"

namespace relucost {

// Text dataset format: a tag line, a header with d, m, seed, labeled, then one
// row per point (2d coordinates plus the label when present), full precision.
void save_dataset(const std::string& path, const SphereDataset& data);
SphereDataset load_dataset(const std::string& path);

std::string experiment_csv(const ExperimentResult& result);

// Inverse of experiment_csv for the row set (the config is not recoverable
// from the CSV and is left default). Throws ParseError on schema mismatch.
ExperimentResult parse_experiment_csv(const std::string& text);

// Per-(d, m, depth) aggregates, each recomputable from the CSV rows.
std::string experiment_summary(const ExperimentResult& result);

// Long format: one (d, m, depth, seed, metric, value) row per numeric field.
std::string experiment_long_csv(const ExperimentResult& result);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// key = value lines; '#' comments; blank lines ignored. Duplicate keys are an
// error so config files stay unambiguous.
std::map<std::string, std::string> parse_kv_file(const std::string& path);

// Applies known keys to cfg, rejecting unknown keys. Lists are comma-separated.
void apply_experiment_config(const std::map<std::string, std::string>& kv, ExperimentConfig& cfg);

// The resolved configuration, in the same key = value schema.
std::string experiment_config_text(const ExperimentConfig& cfg);

}  // namespace relucost

#endif
