#ifndef PGG_SEARCH_HPP
#define PGG_SEARCH_HPP

// Depth-first search of the descendant tree of a base quotient P, pruned by
// the arithmetic tests, with checkpoints that resume to identical output.

#include "pgg/constraints.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace pgg {

enum class NodeStatus { open, pruned, dead, candidate, class_limit };

std::string status_name(NodeStatus s);
NodeStatus parse_status(const std::string& s);

struct SearchConfig {
  unsigned p = 2;
  std::size_t d = 0;
  std::size_t rank_gap_bound = 0;
  std::shared_ptr<const PcPresentation> base;
  std::vector<PlaceConstraint> places;
  TargetData targets;
  unsigned max_class = 1;
  ConstraintOptions options;
  // Not part of the configuration hash: they cannot change a finished result.
  unsigned long long orbit_cap = 1ull << 22;
  unsigned width = 1;
};

// Throws StructuralError when the configuration is unusable.
void validate(const SearchConfig& cfg);

// Canonical JSON of the semantic fields, and its 64-bit FNV-1a hash.
std::string config_document(const SearchConfig& cfg);
SearchConfig config_from_document(const std::string& json);
std::uint64_t config_hash(const SearchConfig& cfg);
std::string hash_hex(std::uint64_t h);

struct SearchNode {
  std::string id;      // "0" for the root, children append ".k"
  std::string parent;  // empty for the root
  std::shared_ptr<const PcPresentation> group;
  unsigned order_exponent = 0;
  unsigned p_class = 0;
  NodeStatus status = NodeStatus::open;
  std::string reason;
  WitnessSet witnesses;
  std::size_t descendant_count = 0;
};

enum class Verdict { complete, inconclusive };

struct SearchResult {
  std::vector<SearchNode> nodes;        // ordered by id
  std::vector<std::string> candidates;  // ids of candidate nodes
  Verdict verdict = Verdict::complete;
  bool finished = true;
  std::size_t class_limit_count = 0;
  std::size_t expansions = 0;
  std::string checkpoint;  // set when the run stopped early

  const SearchNode& node(const std::string& id) const;
  std::vector<const SearchNode*> children(const std::string& id) const;
};

struct SearchControl {
  // Stop (with a checkpoint) once this many nodes have been expanded.
  std::size_t stop_after = static_cast<std::size_t>(-1);
  std::size_t checkpoint_every = 0;
  std::function<void(const std::string&)> on_checkpoint;
};

SearchResult run_search(const SearchConfig& cfg, const SearchControl& control = {});
// Continues from a checkpoint document; the configuration stored in it is used.
SearchResult resume_search(const std::string& checkpoint, const SearchControl& control = {});
// As above, but rejects a checkpoint taken under a different configuration.
SearchResult resume_search(const SearchConfig& cfg, const std::string& checkpoint,
                           const SearchControl& control = {});
SearchConfig checkpoint_config(const std::string& checkpoint);

// Numeric comparison of dot-separated ids.
bool id_less(const std::string& a, const std::string& b);

// Graph with one vertex per node labeled by its order exponent.
std::string emit_tree(const SearchResult& result);

}  // namespace pgg

#endif  // PGG_SEARCH_HPP
