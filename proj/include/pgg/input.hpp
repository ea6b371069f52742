#ifndef PGG_INPUT_HPP
#define PGG_INPUT_HPP

// Search input files (INI sections) and result documents.
//
//   # comment
//   [problem]
//   p = 2
//   d = 2
//   max_class = 6
//   comparison_depth = 2
//   [start]
//   base = elementary_abelian
//   [place.1]
//   prime = infinity
//   classes = g1
//   [targets]
//   index1 = [2, 2]
//   index_p.10 = [8]
//
// Only whole lines starting with '#' are comments. Full grammar in README.md.

#include "pgg/search.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pgg {

struct StartSpec {
  enum class Kind { elementary_abelian, pc, fp };
  Kind kind = Kind::elementary_abelian;
  std::string text;  // pc presentation or finite presentation
  unsigned fp_class = 0;
  bool operator==(const StartSpec& o) const = default;
};

struct InputSpec {
  SearchConfig config;
  StartSpec start;
  std::vector<std::string> comments;  // leading comment lines, without '#'
  // Images of the finite presentation's generators in the base (fp starts).
  std::vector<std::string> fp_generators;
  std::vector<PcElement> fp_images;

  std::uint64_t hash() const { return config_hash(config); }
};

InputSpec parse_input(const std::string& text);
std::string render_input(const InputSpec& spec);

// File name used for a candidate's presentation.
std::string candidate_file_name(const std::string& node_id);

// Results document: verdict, node statistics, candidates with their
// low-index abelianization tables, and the node list.
std::string results_json(const SearchResult& result, const SearchConfig& cfg);

struct AbelianizationTable {
  AbelianType index1;
  std::vector<std::pair<std::string, AbelianType>> index_p;  // by character label
  std::vector<AbelianType> index_p2;                         // sorted
  bool operator==(const AbelianizationTable& o) const = default;
};
// Labels are characters on the group's own Frattini quotient.
AbelianizationTable abelianization_table(std::shared_ptr<const PcPresentation> g,
                                         unsigned long long max_index);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace pgg

#endif  // PGG_INPUT_HPP
