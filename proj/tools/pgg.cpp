// Command-line front end: searches, checkpoints and small group utilities.

#include "pgg/error.hpp"
#include "pgg/galois_data.hpp"
#include "pgg/input.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace pgg;
namespace fs = std::filesystem;

enum Exit {
  kComplete = 0,
  kStopped = 2,
  kInconclusive = 3,
  kUsage = 4,
  kStructural = 5,
  kOrbitCap = 6,
};

struct RunOptions {
  std::string out = "pgg-out";
  unsigned width = 0;
  std::string checkpoint;
  std::size_t checkpoint_every = 0;
  std::size_t stop_after = 0;
  bool quiet = false;
};

std::string text_or_file(const std::string& arg) {
  std::error_code ec;
  if (fs::is_regular_file(arg, ec)) return read_file(arg);
  return arg;
}

std::shared_ptr<const PcPresentation> read_group(const std::string& path) {
  return std::make_shared<const PcPresentation>(parse_presentation(read_file(path)));
}

void add_run_options(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--out", o.out, "Directory for results, tree and candidate files");
  cmd->add_option("--width", o.width, "Number of sibling subtrees expanded in parallel");
  cmd->add_option("--checkpoint", o.checkpoint, "Checkpoint file (default <out>/checkpoint.json)");
  cmd->add_option("--checkpoint-every", o.checkpoint_every, "Write a checkpoint every N expansions");
  cmd->add_option("--stop-after", o.stop_after, "Stop with a checkpoint after N expansions");
  cmd->add_flag("--quiet", o.quiet, "Only print the verdict line");
}

int finish_run(const SearchConfig& cfg, const SearchResult& r, const RunOptions& o) {
  fs::create_directories(o.out);
  const std::string checkpoint = o.checkpoint.empty() ? (fs::path(o.out) / "checkpoint.json").string() : o.checkpoint;
  write_file((fs::path(o.out) / "results.json").string(), results_json(r, cfg));
  write_file((fs::path(o.out) / "tree.dot").string(), emit_tree(r));
  for (const std::string& id : r.candidates)
    write_file((fs::path(o.out) / candidate_file_name(id)).string(),
               format_presentation(*r.node(id).group));
  if (!r.finished) write_file(checkpoint, r.checkpoint);

  if (!o.quiet) {
    std::cout << "nodes " << r.nodes.size() << ", expansions " << r.expansions << "\n";
    for (const std::string& id : r.candidates) {
      const SearchNode& n = r.node(id);
      std::cout << "candidate " << id << ": order " << cfg.p << "^" << n.order_exponent << ", class "
                << n.p_class << " (" << candidate_file_name(id) << ")\n";
    }
    if (r.class_limit_count) std::cout << "class_limit nodes " << r.class_limit_count << "\n";
  }
  if (!r.finished) {
    std::cout << "STOPPED checkpoint " << checkpoint << "\n";
    return kStopped;
  }
  if (r.verdict == Verdict::complete) {
    std::cout << "COMPLETE " << r.candidates.size() << " candidate(s)\n";
    return kComplete;
  }
  std::cout << "INCONCLUSIVE " << r.candidates.size() << " candidate(s), " << r.class_limit_count
            << " class_limit node(s)\n";
  return kInconclusive;
}

SearchControl control_for(const RunOptions& o) {
  SearchControl c;
  if (o.stop_after) c.stop_after = o.stop_after;
  if (o.checkpoint_every) {
    const std::string path = o.checkpoint.empty() ? (fs::path(o.out) / "checkpoint.json").string() : o.checkpoint;
    c.checkpoint_every = o.checkpoint_every;
    c.on_checkpoint = [path, out = o.out](const std::string& doc) {
      fs::create_directories(out);
      const std::string tmp = path + ".tmp";
      write_file(tmp, doc);
      fs::rename(tmp, path);
    };
  }
  return c;
}

int cmd_search(const std::string& file, const RunOptions& o) {
  const InputSpec spec = parse_input(read_file(file));
  SearchConfig cfg = spec.config;
  if (o.width) cfg.width = o.width;
  if (!o.quiet) std::cout << "config " << hash_hex(spec.hash()) << "\n";
  return finish_run(cfg, run_search(cfg, control_for(o)), o);
}

int cmd_resume(const std::string& file, const std::string& input, const RunOptions& o) {
  const std::string doc = read_file(file);
  SearchConfig cfg = input.empty() ? checkpoint_config(doc) : parse_input(read_file(input)).config;
  if (o.width) cfg.width = o.width;
  if (!o.quiet) std::cout << "config " << hash_hex(config_hash(cfg)) << "\n";
  return finish_run(cfg, resume_search(cfg, doc, control_for(o)), o);
}

int cmd_pquotient(unsigned p, unsigned c, const std::string& text, const std::string& out) {
  const PQuotientResult q = p_quotient(parse_fp_presentation(text_or_file(text)), p, c);
  std::cout << "order " << p << "^" << q.group->order_exponent() << ", class " << q.group->p_class()
            << (q.maximal ? " (largest p-quotient)" : "") << "\n";
  const std::string pc = format_presentation(*q.group);
  if (out.empty())
    std::cout << pc;
  else
    write_file(out, pc);
  return kComplete;
}

int cmd_descendants(const std::string& file, std::size_t max_step, unsigned long long cap,
                    const std::string& out) {
  const auto g = read_group(file);
  DescendantOptions opt;
  opt.orbit_cap = cap;
  opt.max_step = max_step;
  const PCoverData cover = p_cover(g);
  std::cout << "multiplicator rank " << cover.mult_rank << ", nuclear rank " << cover.nuclear_rank << "\n";
  const auto records = immediate_descendants(cover, automorphism_group(g), opt);
  for (std::size_t k = 0; k < records.size(); ++k) {
    const DescendantRecord& r = records[k];
    std::cout << "#" << k + 1 << " order " << g->prime() << "^" << r.quotient->order_exponent()
              << ", step " << r.step << ", orbit " << r.orbit_size << "\n";
    if (!out.empty()) {
      fs::create_directories(out);
      write_file((fs::path(out) / ("descendant_" + std::to_string(k + 1) + ".pc")).string(),
                 format_presentation(*r.quotient));
    }
  }
  std::cout << records.size() << " descendant(s)\n";
  return kComplete;
}

int cmd_classify(unsigned a, unsigned b, std::optional<unsigned> n) {
  const PairClassification c = classify_pair(a, b, n);
  std::cout << "case " << case_name(c.kind) << " (p = " << c.p << ", q = " << c.q << ", k = " << c.k
            << ")\n";
  if (c.order_exponent) std::cout << "predicted order 2^" << *c.order_exponent << ", class " << *c.p_class << "\n";
  if (c.kind != PairCase::unclassified) {
    try {
      for (const FpPresentation& f : predicted_presentations(c)) std::cout << format_fp_presentation(f) << "\n";
    } catch (const StructuralError& e) {
      std::cout << e.what() << "\n";
    }
  }
  return kComplete;
}

int cmd_abelian(const std::string& file, unsigned long long index) {
  const auto g = read_group(file);
  const unsigned long long p = g->prime();
  if (index != 1 && index != p && index != p * p)
    throw ParseError("--index must be 1, p or p^2");
  const AbelianizationTable t = abelianization_table(g, index);
  std::cout << "index 1: " << t.index1.render(g->prime()) << "\n";
  for (const auto& [label, type] : t.index_p)
    std::cout << "index " << p << " [" << label << "]: " << type.render(g->prime()) << "\n";
  if (index == p * p)
    for (const auto& type : t.index_p2) std::cout << "index " << p * p << ": " << type.render(g->prime()) << "\n";
  return kComplete;
}

int cmd_verify(const std::string& file) {
  const PcPresentation g = parse_presentation(read_file(file));
  const ConsistencyReport c = check_consistency(g);
  if (!c.consistent) {
    std::cout << "INCONSISTENT: " << c.failing_test << "\n";
    return kStructural;
  }
  std::cout << "consistent, order " << g.prime() << "^" << g.order_exponent();
  if (g.has_weights()) {
    const std::string w = weighted_violation(g);
    if (!w.empty()) {
      std::cout << "\nnot weighted: " << w << "\n";
      return kStructural;
    }
    std::cout << ", rank " << g.rank() << ", class " << g.p_class();
  }
  std::cout << "\n";
  return kComplete;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-group generation search"};
  app.require_subcommand(1);

  RunOptions run;
  std::string file, input, out;
  auto* search = app.add_subcommand("search", "Run a search from an input file");
  search->add_option("file", file, "Input file")->required();
  add_run_options(search, run);

  auto* resume = app.add_subcommand("resume", "Continue a search from a checkpoint");
  resume->add_option("state", file, "Checkpoint file to continue from")->required();
  resume->add_option("--input", input, "Input file the checkpoint must match");
  add_run_options(resume, run);

  unsigned p = 2, cls = 10;
  std::string text;
  auto* pq = app.add_subcommand("pquotient", "Largest p-quotient up to a class");
  pq->add_option("-p", p, "Prime")->required();
  pq->add_option("-c", cls, "Maximal class")->required();
  pq->add_option("presentation", text, "Finite presentation, or a file holding one")->required();
  pq->add_option("-o,--out", out, "Write the pc presentation here");

  std::size_t max_step = static_cast<std::size_t>(-1);
  unsigned long long cap = 1ull << 22;
  auto* desc = app.add_subcommand("descendants", "Immediate descendants of a pc group");
  desc->add_option("group", file, "pc presentation file")->required();
  desc->add_option("--max-step", max_step, "Largest step size");
  desc->add_option("--orbit-cap", cap, "Largest number of allowable subgroups");
  desc->add_option("-o,--out", out, "Directory for the descendant presentations");

  unsigned a = 0, b = 0;
  std::optional<unsigned> n;
  auto* cl = app.add_subcommand("classify", "Family of a pair of odd primes");
  cl->add_option("p", a)->required();
  cl->add_option("q", b)->required();
  cl->add_option("-n", n, "Number of ramified primes when predicting the conjectural case");

  unsigned long long index = 1;
  auto* ab = app.add_subcommand("abelian", "Abelianizations of low-index subgroups");
  ab->add_option("group", file, "pc presentation file")->required();
  ab->add_option("--index", index, "Largest index: 1, p or p^2");

  auto* ver = app.add_subcommand("verify", "Check a pc presentation for consistency");
  ver->add_option("group", file, "pc presentation file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*search) return cmd_search(file, run);
    if (*resume) return cmd_resume(file, input, run);
    if (*pq) return cmd_pquotient(p, cls, text, out);
    if (*desc) return cmd_descendants(file, max_step, cap, out);
    if (*cl) return cmd_classify(a, b, n);
    if (*ab) return cmd_abelian(file, index);
    if (*ver) return cmd_verify(file);
  } catch (const OrbitCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOrbitCap;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kStructural;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
