#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "assocmine/assoc_graph.hpp"
#include "assocmine/graph.hpp"

namespace assocmine {

/// Attribute association of a connected node pair: the two sets of attribute
/// indices that are 1 at each endpoint, stored with the lexicographically
/// smaller side first so that (a, b) and (b, a) are the same key.
struct ExactAssociation {
  std::vector<std::uint32_t> side_a;
  std::vector<std::uint32_t> side_b;

  auto operator<=>(const ExactAssociation&) const = default;
};

ExactAssociation make_exact_association(std::vector<std::uint32_t> a,
                                        std::vector<std::uint32_t> b);

/// Association of a concrete edge's endpoints.
ExactAssociation association_of(const AttributedGraph& g, NodeId u, NodeId v);

using FrequencyTable = std::map<ExactAssociation, std::uint64_t>;

/// One count per edge of E; the counts sum to |E|.
FrequencyTable enumerate_associations(const AttributedGraph& g);

struct FrequentEntry {
  ExactAssociation assoc;
  std::uint64_t frequency = 0;
};

/// Associations with frequency >= sigma * edge_count (inclusive boundary),
/// sorted by descending frequency, ties by key.
std::vector<FrequentEntry> frequent_associations(const FrequencyTable& freqs,
                                                 double sigma,
                                                 std::uint64_t edge_count);

/// True when one of the two endpoint orderings matches: an attribute in the
/// exact side needs mark ONE or WILDCARD, an attribute absent from it needs
/// ABSENT or WILDCARD.
bool wildcard_match(const AttributeSignature& sig_a, const AttributeSignature& sig_b,
                    const ExactAssociation& exact);

/// Same matching rule expressed on attribute-name sets (what the report files
/// carry): ONE names must all be inside the exact set, and the exact set must
/// be inside ONE + WILDCARD names.
bool wildcard_match_names(const std::vector<std::string>& ones_a,
                          const std::vector<std::string>& wilds_a,
                          const std::vector<std::string>& ones_b,
                          const std::vector<std::string>& wilds_b,
                          const std::vector<std::string>& exact_a,
                          const std::vector<std::string>& exact_b);

/// Flags each significant association that wildcard-matches some entry of the
/// top-k frequent list.
std::vector<bool> matched_against_frequent(
    std::span<const SignificantAssociation> significant,
    std::span<const FrequentEntry> top_frequent);

/// Significant associations with no wildcard match in the top-k frequent
/// list, original order preserved.
std::vector<SignificantAssociation> significant_minus_frequent(
    std::span<const SignificantAssociation> significant,
    std::span<const FrequentEntry> top_frequent);

}  // namespace assocmine
