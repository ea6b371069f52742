#include "pgg/search.hpp"

#include "pgg/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <exception>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

namespace pgg {

using nlohmann::json;

namespace {

constexpr int kCheckpointVersion = 1;

using Group = std::shared_ptr<const PcPresentation>;

std::string render_label(const FpVector& v) {
  std::string s;
  for (auto c : v) s += static_cast<char>('0' + c);
  return s;
}

FpVector parse_label(const std::string& s) {
  FpVector v;
  for (char ch : s) {
    if (ch < '0' || ch > '9') throw ParseError("bad character label '" + s + "'");
    v.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return v;
}

PcElement parse_element(const PcPresentation& g, const std::string& word) {
  return g.evaluate(parse_pc_word(word, g.size()));
}

Group parse_group(const std::string& text) {
  return std::make_shared<const PcPresentation>(parse_presentation(text));
}

json witnesses_to_json(const PcPresentation& g, const WitnessSet& w) {
  json out = json::array();
  for (const PlaceWitnesses& pw : w) {
    json classes = json::array();
    for (const PcElement& x : pw.classes) classes.push_back(format_element(g, x));
    out.push_back({{"place", pw.place}, {"classes", classes}});
  }
  return out;
}

WitnessSet witnesses_from_json(const PcPresentation& g, const json& j) {
  WitnessSet w;
  for (const json& pw : j) {
    PlaceWitnesses x{pw.at("place").get<std::string>(), {}};
    for (const json& c : pw.at("classes")) x.classes.push_back(parse_element(g, c.get<std::string>()));
    w.push_back(std::move(x));
  }
  return w;
}

json config_json(const SearchConfig& cfg) {
  const PcPresentation& base = *cfg.base;
  json places = json::array();
  for (const PlaceConstraint& pc : cfg.places) {
    json allowed = json::array();
    for (const PcElement& x : pc.allowed) allowed.push_back(format_element(base, x));
    places.push_back({{"place", pc.name()}, {"allowed", allowed}});
  }
  const TargetData& t = cfg.targets;
  json labeled = json::object();
  for (const auto& [label, type] : t.index_p) labeled[render_label(label)] = type.render(cfg.p);
  json unlabeled = json::array();
  for (const auto& type : t.index_p_unlabeled) unlabeled.push_back(type.render(cfg.p));
  json p2 = json::array();
  for (const auto& type : t.index_p2) p2.push_back(type.render(cfg.p));
  json targets = {{"index1", t.index1.render(cfg.p)},
                  {"index_p", labeled},
                  {"index_p_unlabeled", unlabeled},
                  {"index_p2", p2},
                  {"comparison_depth", t.comparison_depth},
                  {"strict_from_class", t.strict_from_class ? json(*t.strict_from_class) : json()}};
  return {{"p", cfg.p},
          {"d", cfg.d},
          {"rank_gap_bound", cfg.rank_gap_bound},
          {"max_class", cfg.max_class},
          {"base", format_presentation(base)},
          {"places", places},
          {"targets", targets},
          {"options",
           {{"infinite_place", cfg.options.infinite_place},
            {"require_generation", cfg.options.require_generation},
            {"lift_witnesses", cfg.options.lift_witnesses}}}};
}

SearchConfig config_from_json(const json& j) {
  SearchConfig cfg;
  cfg.p = j.at("p").get<unsigned>();
  cfg.d = j.at("d").get<std::size_t>();
  cfg.rank_gap_bound = j.at("rank_gap_bound").get<std::size_t>();
  cfg.max_class = j.at("max_class").get<unsigned>();
  cfg.base = parse_group(j.at("base").get<std::string>());
  for (const json& pc : j.at("places")) {
    PlaceConstraint c;
    const std::string name = pc.at("place").get<std::string>();
    if (name != "infinity") c.prime = static_cast<unsigned>(std::stoul(name));
    for (const json& w : pc.at("allowed")) c.allowed.push_back(parse_element(*cfg.base, w.get<std::string>()));
    cfg.places.push_back(std::move(c));
  }
  const json& t = j.at("targets");
  cfg.targets.index1 = AbelianType::parse(t.at("index1").get<std::string>(), cfg.p);
  for (const auto& [label, type] : t.at("index_p").items())
    cfg.targets.index_p[parse_label(label)] = AbelianType::parse(type.get<std::string>(), cfg.p);
  for (const json& type : t.at("index_p_unlabeled"))
    cfg.targets.index_p_unlabeled.push_back(AbelianType::parse(type.get<std::string>(), cfg.p));
  for (const json& type : t.at("index_p2"))
    cfg.targets.index_p2.push_back(AbelianType::parse(type.get<std::string>(), cfg.p));
  cfg.targets.comparison_depth = t.at("comparison_depth").get<unsigned long long>();
  if (!t.at("strict_from_class").is_null())
    cfg.targets.strict_from_class = t.at("strict_from_class").get<unsigned>();
  const json& o = j.at("options");
  cfg.options.infinite_place = o.at("infinite_place").get<bool>();
  cfg.options.require_generation = o.at("require_generation").get<bool>();
  cfg.options.lift_witnesses = o.at("lift_witnesses").get<bool>();
  return cfg;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

constexpr std::size_t kStabilizerEnumerationCap = 1u << 18;

std::string images_key(const Automorphism& a) {
  std::string k;
  for (const PcElement& x : a.images())
    k.append(reinterpret_cast<const char*>(x.exponents().data()), x.size());
  return k;
}

FpVector normalized(FpVector v, unsigned p) {
  const auto lead = std::find_if(v.begin(), v.end(), [](auto c) { return c != 0; });
  if (lead == v.end()) return v;
  unsigned inv = 1;
  while (inv * *lead % p != 1) ++inv;
  for (auto& c : v) c = static_cast<std::uint8_t>(c * inv % p);
  return v;
}

bool preserves_data(const SearchConfig& cfg, const Automorphism& a) {
  const Group& g = cfg.base;
  for (const PlaceConstraint& pc : cfg.places)
    for (const PcElement& x : pc.allowed) {
      const PcElement y = a.apply(x);
      bool found = false;
      for (const PcElement& z : pc.allowed) found = found || are_conjugate(g, y, z);
      if (!found) return false;
    }
  const TargetData& t = cfg.targets;
  if (t.comparison_depth >= cfg.p && t.labeled()) {
    const FpMatrix m = a.top_matrix();
    for (const auto& [chi, type] : t.index_p) {
      FpVector moved(cfg.d, 0);
      for (std::size_t i = 0; i < cfg.d; ++i) {
        unsigned s = 0;
        for (std::size_t j = 0; j < cfg.d; ++j) s += m.at(i, j) * chi[j];
        moved[i] = static_cast<std::uint8_t>(s % cfg.p);
      }
      const auto it = t.index_p.find(normalized(moved, cfg.p));
      if (it == t.index_p.end() || !(it->second == type)) return false;
    }
  }
  return true;
}

// Automorphisms of the base that permute the allowed classes of every place
// and the labeled targets; descendants are enumerated up to this group.
AutomorphismGroup data_stabilizer(const SearchConfig& cfg) {
  const Group& g = cfg.base;
  const AutomorphismGroup full = automorphism_group(g);
  if (full.order > kStabilizerEnumerationCap)
    throw StructuralError("automorphism group of the base quotient has order " + full.order.str() +
                          ", too large to enumerate");
  std::vector<Automorphism> elements{Automorphism::identity(g)};
  std::set<std::string> seen{images_key(elements[0])};
  for (std::size_t k = 0; k < elements.size(); ++k)
    for (const Automorphism& s : full.generators) {
      Automorphism next = elements[k].then(s);
      if (seen.insert(images_key(next)).second) elements.push_back(std::move(next));
    }
  AutomorphismChain chain(g);
  for (const Automorphism& a : elements)
    if (preserves_data(cfg, a)) chain.add(a);
  chain.close();
  return {chain.generators(), chain.order()};
}

// An expanded-but-unfinished node waiting on the stack.
struct Pending {
  std::string id;
  Group group;
  AutomorphismGroup auts;
  WitnessSet witnesses;
};

struct Expansion {
  std::vector<SearchNode> nodes;
  std::vector<Pending> open;  // in child order
};

class Searcher {
 public:
  explicit Searcher(const SearchConfig& cfg) : cfg_(cfg) {
    params_.places = &cfg_.places;
    params_.targets = &cfg_.targets;
    params_.rank_gap_bound = cfg_.rank_gap_bound;
    params_.d = cfg_.d;
    params_.options = cfg_.options;
  }

  void start() {
    const Group g = cfg_.base;
    const PCoverData cover = p_cover(g);
    const Homomorphism pi = Homomorphism::truncation(g, cfg_.base);
    const TestReport report = evaluate(g, cover, pi, cfg_.base, params_, nullptr);
    SearchNode node = make_node("0", "", g, report);
    std::optional<AutomorphismGroup> auts;
    const auto get_auts = [&]() -> const AutomorphismGroup& {
      if (!auts) auts = data_stabilizer(cfg_);
      return *auts;
    };
    settle(node, report, cover, get_auts);
    if (node.status == NodeStatus::open) stack_.push_back({node.id, g, get_auts(), node.witnesses});
    record(std::move(node));
  }

  void load(const json& doc) {
    expansions_ = doc.at("expansions").get<std::size_t>();
    for (const json& n : doc.at("nodes")) {
      SearchNode node;
      node.id = n.at("id").get<std::string>();
      node.parent = n.at("parent").get<std::string>();
      node.group = parse_group(n.at("group").get<std::string>());
      node.order_exponent = n.at("order_exponent").get<unsigned>();
      node.p_class = n.at("p_class").get<unsigned>();
      node.status = parse_status(n.at("status").get<std::string>());
      node.reason = n.at("reason").get<std::string>();
      node.witnesses = witnesses_from_json(*node.group, n.at("witnesses"));
      node.descendant_count = n.at("descendants").get<std::size_t>();
      record(std::move(node));
    }
    for (const json& e : doc.at("pending")) {
      Pending p;
      p.id = e.at("id").get<std::string>();
      p.group = parse_group(e.at("group").get<std::string>());
      p.witnesses = witnesses_from_json(*p.group, e.at("witnesses"));
      p.auts.order = BigInt(e.at("aut_order").get<std::string>());
      for (const json& a : e.at("automorphisms")) {
        std::vector<PcElement> imgs;
        for (const json& w : a) imgs.push_back(parse_element(*p.group, w.get<std::string>()));
        p.auts.generators.push_back(Automorphism::from_images(p.group, imgs, false));
      }
      stack_.push_back(std::move(p));
    }
  }

  std::string checkpoint() const {
    json nodes = json::array();
    for (const auto& [key, node] : nodes_) {
      (void)key;
      nodes.push_back({{"id", node.id},
                       {"parent", node.parent},
                       {"group", format_presentation(*node.group)},
                       {"order_exponent", node.order_exponent},
                       {"p_class", node.p_class},
                       {"status", status_name(node.status)},
                       {"reason", node.reason},
                       {"witnesses", witnesses_to_json(*node.group, node.witnesses)},
                       {"descendants", node.descendant_count}});
    }
    json pending = json::array();
    for (const Pending& p : stack_) {
      json auts = json::array();
      for (const Automorphism& a : p.auts.generators) {
        json imgs = json::array();
        for (const PcElement& x : a.rank_images()) imgs.push_back(format_element(*p.group, x));
        auts.push_back(imgs);
      }
      pending.push_back({{"id", p.id},
                         {"group", format_presentation(*p.group)},
                         {"witnesses", witnesses_to_json(*p.group, p.witnesses)},
                         {"aut_order", p.auts.order.str()},
                         {"automorphisms", auts}});
    }
    json doc = {{"format", "pgg-checkpoint"},
                {"version", kCheckpointVersion},
                {"config_hash", hash_hex(config_hash(cfg_))},
                {"config", config_json(cfg_)},
                {"expansions", expansions_},
                {"nodes", nodes},
                {"pending", pending}};
    return doc.dump(1);
  }

  // Expands nodes until the stack empties or the control asks to stop;
  // false when stopped early.
  bool run(const SearchControl& control) {
    const std::size_t width = std::max(1u, cfg_.width);
    while (!stack_.empty()) {
      if (expansions_ >= control.stop_after) return false;
      const std::size_t take =
          std::min({width, stack_.size(), control.stop_after - expansions_});
      std::vector<Pending> batch;
      for (std::size_t k = 0; k < take; ++k) {
        batch.push_back(std::move(stack_.back()));
        stack_.pop_back();
      }
      std::vector<Expansion> out(batch.size());
      std::vector<std::exception_ptr> errors(batch.size());
      const auto work = [&](std::size_t k) {
        try {
          out[k] = expand(batch[k]);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      };
      if (batch.size() == 1) {
        work(0);
      } else {
        std::vector<std::thread> threads;
        for (std::size_t k = 0; k < batch.size(); ++k) threads.emplace_back(work, k);
        for (auto& t : threads) t.join();
      }
      // Report the failure of the least node id, independent of scheduling.
      std::optional<std::size_t> first;
      for (std::size_t k = 0; k < batch.size(); ++k)
        if (errors[k] && (!first || id_less(batch[k].id, batch[*first].id))) first = k;
      if (first) std::rethrow_exception(errors[*first]);

      for (std::size_t k = batch.size(); k-- > 0;) {
        nodes_.at(batch[k].id).descendant_count = out[k].nodes.size();
        for (SearchNode& n : out[k].nodes) record(std::move(n));
        for (auto it = out[k].open.rbegin(); it != out[k].open.rend(); ++it)
          stack_.push_back(std::move(*it));
      }
      expansions_ += batch.size();
      if (control.checkpoint_every && control.on_checkpoint &&
          expansions_ / control.checkpoint_every !=
              (expansions_ - batch.size()) / control.checkpoint_every)
        control.on_checkpoint(checkpoint());
    }
    return true;
  }

  SearchResult result(bool finished) {
    SearchResult r;
    r.finished = finished;
    r.expansions = expansions_;
    if (finished) mark_dead();
    for (auto& [key, node] : nodes_) {
      (void)key;
      if (node.status == NodeStatus::candidate) r.candidates.push_back(node.id);
      if (node.status == NodeStatus::class_limit) ++r.class_limit_count;
      r.nodes.push_back(node);
    }
    r.verdict = finished && r.class_limit_count == 0 ? Verdict::complete : Verdict::inconclusive;
    if (!finished) r.checkpoint = checkpoint();
    return r;
  }

 private:
  struct IdOrder {
    bool operator()(const std::string& a, const std::string& b) const { return id_less(a, b); }
  };

  SearchNode make_node(const std::string& id, const std::string& parent, const Group& g,
                       const TestReport& report) const {
    SearchNode n;
    n.id = id;
    n.parent = parent;
    n.group = g;
    n.order_exponent = g->order_exponent();
    n.p_class = g->size() ? g->p_class() : 0;
    n.witnesses = report.i.witnesses;
    return n;
  }

  // Fixes the status of a freshly tested node.
  template <class AutsFn>
  void settle(SearchNode& node, const TestReport& report, const PCoverData& cover,
              AutsFn&& auts) const {
    if (!report.pass()) {
      node.status = NodeStatus::pruned;
      node.reason = report.reason();
      return;
    }
    if (report.candidate) {
      node.status = NodeStatus::candidate;
      if (cover.nuclear_rank > 0) require_outgrown(node, cover, auts());
      return;
    }
    node.status = node.p_class >= cfg_.max_class ? NodeStatus::class_limit : NodeStatus::open;
  }

  // A candidate that is not terminal (only cyclic ones) must have no
  // descendant that could still match the targets.
  void require_outgrown(const SearchNode& node, const PCoverData& cover,
                        const AutomorphismGroup& auts) const {
    if (cfg_.d >= 2)
      throw StructuralError("candidate " + node.id + " has a nontrivial nucleus");
    DescendantOptions opt;
    opt.orbit_cap = cfg_.orbit_cap;
    opt.node_id = node.id;
    for (const DescendantRecord& r : immediate_descendants(cover, auts, opt)) {
      const Homomorphism pi = Homomorphism::truncation(r.quotient, cfg_.base);
      if (test_ii(r.quotient, pi, cfg_.targets, r.quotient->p_class()).pass)
        throw StructuralError("candidate " + node.id + " has a descendant passing test ii");
    }
  }

  Expansion expand(const Pending& at) const {
    Expansion out;
    const PCoverData cover = p_cover(at.group);
    DescendantOptions opt;
    opt.orbit_cap = cfg_.orbit_cap;
    opt.node_id = at.id;
    const auto records = immediate_descendants(cover, at.auts, opt);
    for (std::size_t k = 0; k < records.size(); ++k) {
      const DescendantRecord& rec = records[k];
      const Group q = rec.quotient;
      const PCoverData qc = p_cover(q);
      const Homomorphism pi = Homomorphism::truncation(q, cfg_.base);
      const TestReport report = evaluate(q, qc, pi, cfg_.base, params_, &at.witnesses);
      SearchNode node = make_node(at.id + "." + std::to_string(k), at.id, q, report);
      std::optional<AutomorphismGroup> auts;
      const auto get_auts = [&]() -> const AutomorphismGroup& {
        if (!auts) auts = propagate_automorphisms(rec);
        return *auts;
      };
      settle(node, report, qc, get_auts);
      if (node.status == NodeStatus::open) out.open.push_back({node.id, q, get_auts(), node.witnesses});
      out.nodes.push_back(std::move(node));
    }
    return out;
  }

  void record(SearchNode node) {
    const std::string id = node.id;
    nodes_.insert_or_assign(id, std::move(node));
  }

  // Expanded nodes all of whose children are pruned or dead.
  void mark_dead() {
    std::map<std::string, std::vector<std::string>, IdOrder> kids;
    for (const auto& [id, node] : nodes_)
      if (!node.parent.empty()) kids[node.parent].push_back(id);
    // Reverse id order visits children before parents.
    for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) {
      SearchNode& n = it->second;
      if (n.status != NodeStatus::open) continue;
      bool dead = true;
      for (const std::string& c : kids[n.id]) {
        const NodeStatus s = nodes_.at(c).status;
        dead = dead && (s == NodeStatus::pruned || s == NodeStatus::dead);
      }
      if (dead) n.status = NodeStatus::dead;
    }
  }

  const SearchConfig& cfg_;
  TestParameters params_;
  std::map<std::string, SearchNode, IdOrder> nodes_;
  std::vector<Pending> stack_;
  std::size_t expansions_ = 0;
};

json parse_checkpoint(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("corrupt checkpoint: ") + e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != "pgg-checkpoint")
    throw ParseError("not a checkpoint document");
  if (doc.value("version", 0) != kCheckpointVersion)
    throw ParseError("checkpoint version " + std::to_string(doc.value("version", 0)) +
                     " is not supported (expected " + std::to_string(kCheckpointVersion) + ")");
  return doc;
}

SearchResult resume_from(const SearchConfig& cfg, const json& doc, const SearchControl& control) {
  validate(cfg);
  Searcher s(cfg);
  try {
    s.load(doc);
  } catch (const json::exception& e) {
    throw ParseError(std::string("corrupt checkpoint: ") + e.what());
  }
  const bool finished = s.run(control);
  return s.result(finished);
}

}  // namespace

std::string status_name(NodeStatus s) {
  switch (s) {
    case NodeStatus::open: return "open";
    case NodeStatus::pruned: return "pruned";
    case NodeStatus::dead: return "dead";
    case NodeStatus::candidate: return "candidate";
    case NodeStatus::class_limit: return "class_limit";
  }
  return "open";
}

NodeStatus parse_status(const std::string& s) {
  for (NodeStatus x : {NodeStatus::open, NodeStatus::pruned, NodeStatus::dead, NodeStatus::candidate,
                       NodeStatus::class_limit})
    if (status_name(x) == s) return x;
  throw ParseError("unknown node status '" + s + "'");
}

bool id_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const std::size_t ei = std::min(a.find('.', i), a.size());
    const std::size_t ej = std::min(b.find('.', j), b.size());
    const unsigned long long x = std::stoull(a.substr(i, ei - i));
    const unsigned long long y = std::stoull(b.substr(j, ej - j));
    if (x != y) return x < y;
    i = ei + 1;
    j = ej + 1;
  }
  return a.size() < b.size();
}

void validate(const SearchConfig& cfg) {
  if (!is_prime(cfg.p)) throw StructuralError("p = " + std::to_string(cfg.p) + " is not prime");
  if (!cfg.base) throw StructuralError("no base quotient");
  const PcPresentation& b = *cfg.base;
  if (b.prime() != cfg.p) throw StructuralError("base quotient has the wrong prime");
  if (!b.has_weights() || !weighted_violation(b).empty())
    throw StructuralError("base quotient is not a weighted pc presentation");
  if (!is_consistent(b)) throw StructuralError("base quotient is inconsistent");
  if (b.rank() != cfg.d)
    throw StructuralError("base quotient has Frattini rank " + std::to_string(b.rank()) +
                          ", expected d = " + std::to_string(cfg.d));
  if (cfg.max_class < 1 || cfg.max_class < b.p_class())
    throw StructuralError("max_class " + std::to_string(cfg.max_class) +
                          " is below the class of the base quotient");
  for (const PlaceConstraint& pc : cfg.places) {
    if (pc.prime && (*pc.prime < 3 || !is_prime(*pc.prime)))
      throw StructuralError("place " + pc.name() + " is not an odd prime");
    if (!pc.prime && cfg.p != 2)
      throw StructuralError("the infinite place needs p = 2 (its element has order 2)");
    if (pc.allowed.empty()) throw StructuralError("place " + pc.name() + " allows no class");
    for (const PcElement& x : pc.allowed)
      if (x.size() != b.size()) throw StructuralError("allowed class not in the base quotient");
  }
  const TargetData& t = cfg.targets;
  const unsigned long long p = cfg.p;
  if (t.comparison_depth != 1 && t.comparison_depth != p && t.comparison_depth != p * p)
    throw StructuralError("comparison depth must be 1, p or p^2");
  if (t.comparison_depth >= p) {
    if (t.labeled()) {
      if (cfg.p > 9) throw StructuralError("labeled index-p targets need p <= 9");
      unsigned long long count = 0;
      for (const auto& [label, type] : t.index_p) {
        (void)type;
        if (label.size() != cfg.d) throw StructuralError("character label of wrong length");
        FpVector norm = label;
        const auto lead = std::find_if(norm.begin(), norm.end(), [](auto c) { return c != 0; });
        if (lead == norm.end()) throw StructuralError("zero character label");
        if (*lead != 1) throw StructuralError("character label " + render_label(label) + " is not normalized");
        ++count;
      }
      unsigned long long expected = 0, pk = 1;
      for (std::size_t i = 0; i < cfg.d; ++i) {
        expected += pk;
        pk *= p;
      }
      if (count != expected)
        throw StructuralError("index-p targets must cover all " + std::to_string(expected) +
                              " characters");
    } else {
      unsigned long long expected = 0, pk = 1;
      for (std::size_t i = 0; i < cfg.d; ++i) {
        expected += pk;
        pk *= p;
      }
      if (t.index_p_unlabeled.size() != expected)
        throw StructuralError("unlabeled index-p targets must list " + std::to_string(expected) +
                              " types");
    }
  }
}

std::string config_document(const SearchConfig& cfg) { return config_json(cfg).dump(); }

SearchConfig config_from_document(const std::string& text) {
  try {
    return config_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad configuration document: ") + e.what());
  }
}

std::uint64_t config_hash(const SearchConfig& cfg) { return fnv1a(config_document(cfg)); }

std::string hash_hex(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

const SearchNode& SearchResult::node(const std::string& id) const {
  for (const SearchNode& n : nodes)
    if (n.id == id) return n;
  throw Error("no node " + id);
}

std::vector<const SearchNode*> SearchResult::children(const std::string& id) const {
  std::vector<const SearchNode*> out;
  for (const SearchNode& n : nodes)
    if (n.parent == id) out.push_back(&n);
  return out;
}

SearchResult run_search(const SearchConfig& cfg, const SearchControl& control) {
  validate(cfg);
  Searcher s(cfg);
  s.start();
  const bool finished = s.run(control);
  return s.result(finished);
}

SearchConfig checkpoint_config(const std::string& checkpoint) {
  const json doc = parse_checkpoint(checkpoint);
  try {
    return config_from_json(doc.at("config"));
  } catch (const json::exception& e) {
    throw ParseError(std::string("corrupt checkpoint: ") + e.what());
  }
}

SearchResult resume_search(const std::string& checkpoint, const SearchControl& control) {
  const SearchConfig cfg = checkpoint_config(checkpoint);
  return resume_from(cfg, parse_checkpoint(checkpoint), control);
}

SearchResult resume_search(const SearchConfig& cfg, const std::string& checkpoint,
                           const SearchControl& control) {
  const json doc = parse_checkpoint(checkpoint);
  const std::string want = hash_hex(config_hash(cfg));
  if (doc.value("config_hash", "") != want)
    throw StructuralError("checkpoint was taken under a different configuration (hash " +
                          doc.value("config_hash", std::string("?")) + ", expected " + want + ")");
  return resume_from(cfg, doc, control);
}

std::string emit_tree(const SearchResult& result) {
  std::ostringstream os;
  os << "digraph search {\n";
  os << "  node [fontname=\"Helvetica\"];\n";
  for (const SearchNode& n : result.nodes) {
    std::string shape;
    switch (n.status) {
      case NodeStatus::pruned:
      case NodeStatus::dead: shape = "shape=circle"; break;
      case NodeStatus::candidate: shape = "shape=box, peripheries=2"; break;
      case NodeStatus::class_limit: shape = "shape=diamond"; break;
      case NodeStatus::open: shape = "shape=plain"; break;
    }
    os << "  \"" << n.id << "\" [label=\"" << n.order_exponent << "\", " << shape << "];\n";
  }
  for (const SearchNode& n : result.nodes)
    if (!n.parent.empty()) os << "  \"" << n.parent << "\" -> \"" << n.id << "\";\n";
  os << "}\n";
  return os.str();
}

}  // namespace pgg
