#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "assocmine/assoc_graph.hpp"
#include "assocmine/frequent.hpp"
#include "assocmine/linkpred.hpp"

namespace assocmine::report {

/// Shortest round-trip decimal form, used everywhere a float reaches a file.
std::string format_double(double v);

/// RFC-4180 style quoting, applied only when needed.
std::string csv_field(const std::string& value);

/// Reproducibility record written next to every output. Carries no
/// timestamps so identical invocations stay byte-identical.
struct Manifest {
  std::string subcommand;
  nlohmann::json parameters;  // flag -> value
  std::map<std::string, std::string> input_digests;
  std::uint64_t seed = 0;
  int threads = 1;

  nlohmann::json to_json() const;
  /// Writes <stem>.manifest.json and returns the manifest's file name (no
  /// directory), for the header comment every output file starts with.
  std::string write(const std::string& stem) const;
};

void write_lines(const std::string& path, const std::vector<std::string>& lines);

std::vector<std::string> association_lines(
    const std::vector<SignificantAssociation>& assocs,
    const std::vector<std::string>& attr_names);

std::vector<std::string> cluster_lines(const AssociationGraph& ag);

std::vector<std::string> ancestry_lines(const AssociationGraph& ag);

std::vector<std::string> frequent_lines(const std::vector<FrequentEntry>& entries,
                                        const std::vector<std::string>& attr_names);

std::vector<std::string> roc_lines(const RocResult& roc);

}  // namespace assocmine::report
