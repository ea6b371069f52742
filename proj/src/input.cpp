#include "pgg/input.hpp"

#include "pgg/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace pgg {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

struct Entry {
  std::string value;
  std::size_t line = 0;
};

struct Section {
  std::string name;
  std::size_t line = 0;
  std::vector<std::pair<std::string, Entry>> entries;
};

ParseError at(std::size_t line, const std::string& msg) {
  return ParseError("line " + std::to_string(line) + ": " + msg);
}

unsigned long long to_number(const Entry& e, const std::string& key) {
  const std::string v = trim(e.value);
  if (v.empty() || !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw at(e.line, key + " must be a nonnegative integer, got '" + v + "'");
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    throw at(e.line, key + " is out of range");
  }
}

bool to_bool(const Entry& e, const std::string& key) {
  const std::string v = trim(e.value);
  if (v == "true" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "no" || v == "off") return false;
  throw at(e.line, key + " must be true or false, got '" + v + "'");
}

std::string render_label(const FpVector& v) {
  std::string s;
  for (auto c : v) s += static_cast<char>('0' + c);
  return s;
}

std::string render_types(const std::vector<AbelianType>& ts, unsigned p) {
  std::string s;
  for (std::size_t i = 0; i < ts.size(); ++i) s += (i ? "; " : "") + ts[i].render(p);
  return s;
}

std::vector<AbelianType> parse_types(const Entry& e, unsigned p) {
  std::vector<AbelianType> out;
  for (const std::string& t : split_top(e.value, ';')) {
    if (t.empty()) continue;
    try {
      out.push_back(AbelianType::parse(t, p));
    } catch (const Error& err) {
      throw at(e.line, err.what());
    }
  }
  return out;
}

class Reader {
 public:
  explicit Reader(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    std::string* last = nullptr;
    bool before_sections = true;
    while (std::getline(in, raw)) {
      ++lineno;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      const std::string line = trim(raw);
      if (line.empty()) continue;
      if (line[0] == '#') {
        if (before_sections) comments.push_back(trim(line.substr(1)));
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(raw[0]))) {
        if (!last) throw at(lineno, "indented line outside a value");
        *last += (last->empty() ? "" : "\n") + line;
        continue;
      }
      if (line.front() == '[') {
        if (line.back() != ']') throw at(lineno, "bad section header");
        before_sections = false;
        const std::string name = trim(line.substr(1, line.size() - 2));
        for (const Section& s : sections)
          if (s.name == name) throw at(lineno, "duplicate section [" + name + "]");
        sections.push_back({name, lineno, {}});
        last = nullptr;
        continue;
      }
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos) throw at(lineno, "expected key = value");
      if (sections.empty()) throw at(lineno, "key outside a section");
      sections.back().entries.push_back({trim(line.substr(0, eq)), {trim(line.substr(eq + 1)), lineno}});
      last = &sections.back().entries.back().second.value;
    }
  }

  std::vector<Section> sections;
  std::vector<std::string> comments;
};

// Key lookup with unknown-key and duplicate checks.
class Keys {
 public:
  Keys(const Section& s, std::set<std::string> known, std::set<std::string> repeatable = {},
       std::string prefix = "")
      : s_(s) {
    std::set<std::string> seen;
    for (const auto& [key, entry] : s.entries) {
      const bool prefixed = !prefix.empty() && key.rfind(prefix, 0) == 0;
      if (!known.count(key) && !prefixed)
        throw at(entry.line, "unknown key '" + key + "' in [" + s.name + "]");
      if (!repeatable.count(key) && !seen.insert(key).second)
        throw at(entry.line, "duplicate key '" + key + "'");
    }
  }
  const Entry* get(const std::string& key) const {
    for (const auto& [k, e] : s_.entries)
      if (k == key) return &e;
    return nullptr;
  }
  const Entry& need(const std::string& key) const {
    if (const Entry* e = get(key)) return *e;
    throw at(s_.line, "[" + s_.name + "] needs '" + key + "'");
  }
  std::vector<const Entry*> all(const std::string& key) const {
    std::vector<const Entry*> out;
    for (const auto& [k, e] : s_.entries)
      if (k == key) out.push_back(&e);
    return out;
  }

 private:
  const Section& s_;
};

PcElement parse_word(const InputSpec& spec, const std::string& word, std::size_t line) {
  const PcPresentation& base = *spec.config.base;
  if (spec.start.kind == StartSpec::Kind::fp) {
    try {
      const Word w = parse_fp_word(word, spec.fp_generators);
      PcElement x = base.identity();
      for (const Letter& l : w) base.multiply_in_place(x, base.pow(spec.fp_images.at(l.gen), l.power));
      return x;
    } catch (const ParseError&) {
    }
  }
  try {
    return base.evaluate(parse_pc_word(word, base.size()));
  } catch (const Error& e) {
    throw at(line, "word '" + word + "': " + e.what());
  }
}

}  // namespace

InputSpec parse_input(const std::string& text) {
  const Reader reader(text);
  InputSpec spec;
  spec.comments = reader.comments;
  SearchConfig& cfg = spec.config;
  const Section *problem = nullptr, *start = nullptr, *targets = nullptr;
  std::vector<std::pair<unsigned long long, const Section*>> places;
  for (const Section& s : reader.sections) {
    if (s.name == "problem") {
      problem = &s;
    } else if (s.name == "start") {
      start = &s;
    } else if (s.name == "targets") {
      targets = &s;
    } else if (s.name.rfind("place.", 0) == 0) {
      const std::string n = s.name.substr(6);
      if (n.empty() || !std::all_of(n.begin(), n.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw at(s.line, "place sections are named [place.N]");
      places.emplace_back(std::stoull(n), &s);
    } else {
      throw at(s.line, "unknown section [" + s.name + "]");
    }
  }
  if (!problem) throw ParseError("missing [problem] section");
  if (!start) throw ParseError("missing [start] section");
  if (!targets) throw ParseError("missing [targets] section");

  const Keys pk(*problem, {"p", "d", "rank_gap_bound", "max_class", "comparison_depth",
                           "strict_from_class", "orbit_cap", "width", "infinite_place",
                           "require_generation", "lift_witnesses"});
  cfg.p = static_cast<unsigned>(to_number(pk.need("p"), "p"));
  if (!is_prime(cfg.p)) throw at(pk.need("p").line, "p must be prime");
  cfg.d = to_number(pk.need("d"), "d");
  cfg.max_class = static_cast<unsigned>(to_number(pk.need("max_class"), "max_class"));
  cfg.rank_gap_bound = pk.get("rank_gap_bound") ? to_number(*pk.get("rank_gap_bound"), "rank_gap_bound") : cfg.d;
  cfg.targets.comparison_depth =
      pk.get("comparison_depth") ? to_number(*pk.get("comparison_depth"), "comparison_depth") : 1;
  if (const Entry* e = pk.get("strict_from_class"); e && trim(e->value) != "off")
    cfg.targets.strict_from_class = static_cast<unsigned>(to_number(*e, "strict_from_class"));
  if (const Entry* e = pk.get("orbit_cap")) cfg.orbit_cap = to_number(*e, "orbit_cap");
  if (const Entry* e = pk.get("width")) cfg.width = static_cast<unsigned>(to_number(*e, "width"));
  if (const Entry* e = pk.get("infinite_place")) cfg.options.infinite_place = to_bool(*e, "infinite_place");
  if (const Entry* e = pk.get("require_generation"))
    cfg.options.require_generation = to_bool(*e, "require_generation");
  if (const Entry* e = pk.get("lift_witnesses")) cfg.options.lift_witnesses = to_bool(*e, "lift_witnesses");

  const Keys sk(*start, {"base", "pc", "fp", "class"});
  const Entry& base = sk.need("base");
  const std::string kind = trim(base.value);
  try {
    if (kind == "elementary_abelian") {
      auto g = std::make_shared<PcPresentation>(cfg.p, cfg.d);
      for (std::size_t i = 0; i < cfg.d; ++i) g->set_weight(i, 1);
      cfg.base = g;
      spec.start.kind = StartSpec::Kind::elementary_abelian;
    } else if (kind == "pc") {
      spec.start.kind = StartSpec::Kind::pc;
      spec.start.text = sk.need("pc").value;
      cfg.base = std::make_shared<const PcPresentation>(parse_presentation(spec.start.text + "\n"));
    } else if (kind == "fp") {
      spec.start.kind = StartSpec::Kind::fp;
      spec.start.text = sk.need("fp").value;
      spec.start.fp_class = static_cast<unsigned>(to_number(sk.need("class"), "class"));
      const FpPresentation f = parse_fp_presentation(spec.start.text);
      const PQuotientResult q = p_quotient(f, cfg.p, spec.start.fp_class);
      cfg.base = q.group;
      spec.fp_generators = f.generators;
      spec.fp_images = q.images;
    } else {
      throw at(base.line, "base must be elementary_abelian, pc or fp");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw at(base.line, e.what());
  }

  std::sort(places.begin(), places.end());
  for (std::size_t k = 1; k < places.size(); ++k)
    if (places[k].first == places[k - 1].first) throw at(places[k].second->line, "duplicate place");
  for (const auto& [n, s] : places) {
    (void)n;
    const Keys keys(*s, {"prime", "classes"});
    PlaceConstraint pc;
    const Entry& prime = keys.need("prime");
    if (trim(prime.value) != "infinity") pc.prime = static_cast<unsigned>(to_number(prime, "prime"));
    const Entry& classes = keys.need("classes");
    for (const std::string& w : split_top(classes.value, ','))
      if (!w.empty()) pc.allowed.push_back(parse_word(spec, w, classes.line));
    cfg.places.push_back(std::move(pc));
  }

  const Keys tk(*targets, {"index1", "index_p", "index_p2"}, {"index_p", "index_p2"}, "index_p.");
  const Entry& i1 = tk.need("index1");
  const auto one = parse_types(i1, cfg.p);
  if (one.size() != 1) throw at(i1.line, "index1 takes one abelian type");
  cfg.targets.index1 = one.front();
  for (const Entry* e : tk.all("index_p")) {
    const auto ts = parse_types(*e, cfg.p);
    cfg.targets.index_p_unlabeled.insert(cfg.targets.index_p_unlabeled.end(), ts.begin(), ts.end());
  }
  for (const Entry* e : tk.all("index_p2")) {
    const auto ts = parse_types(*e, cfg.p);
    cfg.targets.index_p2.insert(cfg.targets.index_p2.end(), ts.begin(), ts.end());
  }
  for (const auto& [key, entry] : targets->entries) {
    if (key.rfind("index_p.", 0) != 0) continue;
    const std::string label = key.substr(8);
    FpVector chi;
    for (char ch : label) {
      if (ch < '0' || ch >= static_cast<char>('0' + std::min(cfg.p, 10u)))
        throw at(entry.line, "bad character label '" + label + "'");
      chi.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    if (chi.size() != cfg.d) throw at(entry.line, "character label '" + label + "' needs d digits");
    if (std::all_of(chi.begin(), chi.end(), [](auto c) { return c == 0; }))
      throw at(entry.line, "character label '" + label + "' is the zero character");
    const auto ts = parse_types(entry, cfg.p);
    if (ts.size() != 1) throw at(entry.line, "index_p." + label + " takes one abelian type");
    if (!cfg.targets.index_p.emplace(chi, ts.front()).second)
      throw at(entry.line, "duplicate label '" + label + "'");
  }
  if (!cfg.targets.index_p.empty() && !cfg.targets.index_p_unlabeled.empty())
    throw ParseError("index-p targets are either all labeled or all unlabeled");
  if (cfg.targets.comparison_depth >= cfg.p && cfg.targets.labeled()) {
    // Every normalized character needs a target.
    std::vector<FpVector> all{{}};
    for (std::size_t i = 0; i < cfg.d; ++i) {
      std::vector<FpVector> next;
      for (const FpVector& v : all)
        for (unsigned c = 0; c < cfg.p; ++c) {
          FpVector w = v;
          w.push_back(static_cast<std::uint8_t>(c));
          next.push_back(w);
        }
      all = next;
    }
    for (const FpVector& v : all) {
      const auto lead = std::find_if(v.begin(), v.end(), [](auto c) { return c != 0; });
      if (lead == v.end() || *lead != 1) continue;
      if (!cfg.targets.index_p.count(v))
        throw ParseError("missing index-p target for character " + render_label(v));
    }
  }

  try {
    validate(cfg);
  } catch (const StructuralError& e) {
    throw ParseError(e.what());
  }
  return spec;
}

std::string render_input(const InputSpec& spec) {
  const SearchConfig& cfg = spec.config;
  std::ostringstream os;
  for (const std::string& c : spec.comments) os << "# " << c << "\n";
  os << "[problem]\n";
  os << "p = " << cfg.p << "\n";
  os << "d = " << cfg.d << "\n";
  os << "rank_gap_bound = " << cfg.rank_gap_bound << "\n";
  os << "max_class = " << cfg.max_class << "\n";
  os << "comparison_depth = " << cfg.targets.comparison_depth << "\n";
  os << "strict_from_class = "
     << (cfg.targets.strict_from_class ? std::to_string(*cfg.targets.strict_from_class) : "off")
     << "\n";
  os << "orbit_cap = " << cfg.orbit_cap << "\n";
  os << "width = " << cfg.width << "\n";
  os << "infinite_place = " << (cfg.options.infinite_place ? "true" : "false") << "\n";
  os << "require_generation = " << (cfg.options.require_generation ? "true" : "false") << "\n";
  os << "lift_witnesses = " << (cfg.options.lift_witnesses ? "true" : "false") << "\n";

  os << "\n[start]\n";
  switch (spec.start.kind) {
    case StartSpec::Kind::elementary_abelian: os << "base = elementary_abelian\n"; break;
    case StartSpec::Kind::pc: {
      os << "base = pc\npc =\n";
      std::istringstream in(spec.start.text);
      std::string line;
      while (std::getline(in, line))
        if (!trim(line).empty()) os << "  " << trim(line) << "\n";
      break;
    }
    case StartSpec::Kind::fp:
      os << "base = fp\nfp = " << spec.start.text << "\nclass = " << spec.start.fp_class << "\n";
      break;
  }

  for (std::size_t k = 0; k < cfg.places.size(); ++k) {
    const PlaceConstraint& pc = cfg.places[k];
    os << "\n[place." << k + 1 << "]\n";
    os << "prime = " << pc.name() << "\n";
    os << "classes = ";
    for (std::size_t i = 0; i < pc.allowed.size(); ++i)
      os << (i ? ", " : "") << format_element(*cfg.base, pc.allowed[i]);
    os << "\n";
  }

  os << "\n[targets]\n";
  os << "index1 = " << cfg.targets.index1.render(cfg.p) << "\n";
  for (const auto& [label, type] : cfg.targets.index_p)
    os << "index_p." << render_label(label) << " = " << type.render(cfg.p) << "\n";
  if (!cfg.targets.index_p_unlabeled.empty())
    os << "index_p = " << render_types(cfg.targets.index_p_unlabeled, cfg.p) << "\n";
  if (!cfg.targets.index_p2.empty())
    os << "index_p2 = " << render_types(cfg.targets.index_p2, cfg.p) << "\n";
  return os.str();
}

std::string candidate_file_name(const std::string& node_id) {
  std::string s = node_id;
  std::replace(s.begin(), s.end(), '.', '_');
  return "candidate_" + s + ".pc";
}

AbelianizationTable abelianization_table(std::shared_ptr<const PcPresentation> g,
                                         unsigned long long max_index) {
  AbelianizationTable t;
  t.index1 = abelian_invariants(*g);
  const unsigned long long p = g->prime();
  if (max_index >= p)
    for (const LabeledSubgroup& s : index_p_subgroups(g))
      t.index_p.emplace_back(render_label(s.label), abelian_invariants(s.subgroup));
  if (max_index >= p * p) {
    for (const Subgroup& s : index_p2_subgroups(g)) t.index_p2.push_back(abelian_invariants(s));
    std::sort(t.index_p2.begin(), t.index_p2.end());
  }
  return t;
}

std::string results_json(const SearchResult& result, const SearchConfig& cfg) {
  const unsigned p = cfg.p;
  std::map<std::string, std::size_t> counts;
  for (const char* s : {"open", "pruned", "dead", "candidate", "class_limit"}) counts[s] = 0;
  for (const SearchNode& n : result.nodes) ++counts[status_name(n.status)];

  json candidates = json::array();
  for (const std::string& id : result.candidates) {
    const SearchNode& n = result.node(id);
    const AbelianizationTable t = abelianization_table(n.group, static_cast<unsigned long long>(p) * p);
    json ip = json::object();
    for (const auto& [label, type] : t.index_p) ip[label] = type.render(p);
    json ip2 = json::array();
    for (const auto& type : t.index_p2) ip2.push_back(type.render(p));
    candidates.push_back({{"id", id},
                          {"order_exponent", n.order_exponent},
                          {"p_class", n.p_class},
                          {"abelianization", {{"index1", t.index1.render(p)}, {"index_p", ip}, {"index_p2", ip2}}},
                          {"presentation", candidate_file_name(id)}});
  }
  json nodes = json::array();
  for (const SearchNode& n : result.nodes)
    nodes.push_back({{"id", n.id},
                     {"parent", n.parent},
                     {"order_exponent", n.order_exponent},
                     {"p_class", n.p_class},
                     {"status", status_name(n.status)},
                     {"reason", n.reason},
                     {"descendants", n.descendant_count}});
  json doc = {{"format", "pgg-results"},
              {"version", 1},
              {"config_hash", hash_hex(config_hash(cfg))},
              {"verdict", result.verdict == Verdict::complete ? "complete" : "inconclusive"},
              {"finished", result.finished},
              {"class_limit_nodes", result.class_limit_count},
              {"statistics", {{"nodes", result.nodes.size()}, {"expansions", result.expansions}, {"by_status", counts}}},
              {"candidates", candidates},
              {"nodes", nodes}};
  return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("failed writing " + path);
}

}  // namespace pgg
