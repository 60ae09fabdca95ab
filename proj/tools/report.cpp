#include "report.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <stdexcept>

namespace assocmine::report {

std::string format_double(double v) {
  std::array<char, 40> buf;
  const auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf.data(), p);
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

nlohmann::json Manifest::to_json() const {
  nlohmann::json j;
  j["tool"] = "assocmine";
  j["version"] = "0.1.0";
  j["subcommand"] = subcommand;
  j["parameters"] = parameters;
  j["inputs"] = input_digests;
  j["seed"] = seed;
  j["threads"] = threads;
  return j;
}

std::string Manifest::write(const std::string& stem) const {
  const std::string path = stem + ".manifest.json";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write manifest: " + path);
  out << to_json().dump(2) << "\n";
  // Name just the file, not the directory, so moving a result set around
  // does not break the reference.
  std::string base = path;
  if (const auto pos = base.find_last_of('/'); pos != std::string::npos)
    base = base.substr(pos + 1);
  return base;
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write output: " + path);
  for (const auto& line : lines) out << line << "\n";
}

std::vector<std::string> association_lines(
    const std::vector<SignificantAssociation>& assocs,
    const std::vector<std::string>& attr_names) {
  std::vector<std::string> lines;
  lines.reserve(assocs.size());
  for (const auto& a : assocs) {
    nlohmann::json j;
    j["sig_a"] = a.signature_a.format(attr_names);
    j["sig_b"] = a.signature_b.format(attr_names);
    j["strength"] = a.strength;
    j["pvalue"] = a.pvalue;
    j["cluster_sizes"] = {a.size_a, a.size_b};
    j["cluster_ids"] = {a.cluster_a, a.cluster_b};
    lines.push_back(j.dump());
  }
  return lines;
}

std::vector<std::string> cluster_lines(const AssociationGraph& ag) {
  std::vector<std::string> lines;
  lines.push_back("cluster_id,size,signature");
  const auto& names = ag.source().attribute_names();
  for (const auto& [id, c] : ag.clusters()) {
    const auto sig = ag.signature(id).format(names);
    std::string joined;
    for (std::size_t i = 0; i < sig.size(); ++i) {
      if (i) joined += '|';
      joined += sig[i];
    }
    lines.push_back(std::to_string(id) + "," + std::to_string(c.members.size()) +
                    "," + csv_field(joined));
  }
  return lines;
}

std::vector<std::string> ancestry_lines(const AssociationGraph& ag) {
  std::vector<std::string> lines;
  lines.push_back("child_id,parent_id");
  for (const auto& [child, parent] : ag.ancestry())
    lines.push_back(std::to_string(child) + "," + std::to_string(parent));
  return lines;
}

std::vector<std::string> frequent_lines(const std::vector<FrequentEntry>& entries,
                                        const std::vector<std::string>& attr_names) {
  std::vector<std::string> lines;
  lines.push_back("side_a,side_b,frequency");
  for (const auto& e : entries) {
    const auto join = [&](const std::vector<std::uint32_t>& side) {
      std::string out;
      for (std::size_t i = 0; i < side.size(); ++i) {
        if (i) out += '|';
        out += attr_names[side[i]];
      }
      return out;
    };
    lines.push_back(csv_field(join(e.assoc.side_a)) + "," +
                    csv_field(join(e.assoc.side_b)) + "," +
                    std::to_string(e.frequency));
  }
  return lines;
}

std::vector<std::string> roc_lines(const RocResult& roc) {
  std::vector<std::string> lines;
  lines.push_back("fpr,tpr");
  for (const auto& [fpr, tpr] : roc.points)
    lines.push_back(format_double(fpr) + "," + format_double(tpr));
  lines.push_back("# auc = " + format_double(roc.auc));
  return lines;
}

}  // namespace assocmine::report
