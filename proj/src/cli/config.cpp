#include "dseq/cli.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace dseq::cli {

namespace pt = boost::property_tree;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::vector<std::string> words(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

template <class T>
T get_number(const pt::ptree& sec, const std::string& section, const std::string& key, T fallback) {
  auto v = sec.get_optional<std::string>(key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    T out;
    if constexpr (std::is_floating_point_v<T>) {
      out = static_cast<T>(std::stod(*v, &used));
    } else if constexpr (std::is_signed_v<T>) {
      out = static_cast<T>(std::stol(*v, &used));
    } else {
      if (!v->empty() && v->front() == '-') throw std::invalid_argument("negative");
      out = static_cast<T>(std::stoull(*v, &used));
    }
    if (used != v->size()) throw std::invalid_argument("trailing characters");
    return out;
  } catch (const std::exception&) {
    throw ParseError("[" + section + "] " + key + ": bad number '" + *v + "'");
  }
}

bool get_bool(const pt::ptree& sec, const std::string& section, const std::string& key) {
  auto v = sec.get_optional<std::string>(key);
  if (!v) return false;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw ParseError("[" + section + "] " + key + ": expected true or false, got '" + *v + "'");
}

ExactComplex get_complex(const pt::ptree& sec, const std::string& key, const ExactComplex& fallback) {
  auto v = sec.get_optional<std::string>(key);
  return v ? parse_exact_complex(*v) : fallback;
}

FamilySpec parse_family(const pt::ptree& sec, const std::string& section, bool& seed_given) {
  FamilySpec f;
  const std::string kind = sec.get<std::string>("family", "ones");
  f.kind = parse_family_kind(kind);
  if (kind == "zero") f.coef = ExactComplex(0);
  f.coef = get_complex(sec, "coef", f.coef);
  f.row_power = get_number<int>(sec, section, "row_power", 0);
  f.col_power = get_number<int>(sec, section, "col_power", 0);
  f.row_ratio = get_complex(sec, "row_ratio", f.row_ratio);
  f.col_ratio = get_complex(sec, "col_ratio", f.col_ratio);
  f.k0 = get_number<std::size_t>(sec, section, "k0", 0);
  f.l0 = get_number<std::size_t>(sec, section, "l0", 0);
  seed_given = sec.count("seed") > 0;
  f.seed = get_number<std::uint64_t>(sec, section, "seed", 1);
  f.support = get_number<std::size_t>(sec, section, "support", 4);
  f.projected = get_bool(sec, section, "projected");
  if (auto t = sec.get_optional<std::string>("table")) {
    for (const auto& row : split(*t, ';')) {
      std::vector<ExactComplex> vals;
      for (const auto& cell : split(row, ',')) vals.push_back(parse_exact_complex(cell));
      f.table.push_back(std::move(vals));
    }
  }
  return f;
}

std::vector<StencilTap<ExactComplex>> parse_taps(const std::string& text) {
  std::vector<StencilTap<ExactComplex>> taps;
  for (const auto& w : words(text)) {
    auto parts = split(w, ':');
    if (parts.size() != 3) throw ParseError("stencil tap '" + w + "' must be dk:dl:coef");
    try {
      taps.push_back({std::stol(parts[0]), std::stol(parts[1]), parse_exact_complex(parts[2])});
    } catch (const std::logic_error&) {
      throw ParseError("bad stencil tap '" + w + "'");
    }
  }
  return taps;
}

}  // namespace

JobConfig JobConfig::parse(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  JobConfig cfg;
  std::set<std::string> seen;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) throw ParseError("config: key '" + section + "' outside a section");
    auto dot = section.find('.');
    const std::string head = section.substr(0, dot);
    const std::string name = dot == std::string::npos ? "" : section.substr(dot + 1);
    if (head == "detect") {
      cfg.detect.epsilon = get_number<double>(body, section, "epsilon", cfg.detect.epsilon);
      cfg.detect.window = get_number<std::size_t>(body, section, "window", cfg.detect.window);
      if (body.count("diag_start")) cfg.detect.diag_start = get_number<std::size_t>(body, section, "diag_start", 0);
      if (auto m = body.get_optional<std::string>("mode")) cfg.mode = parse_mode(*m);
      cfg.threads = get_number<unsigned>(body, section, "threads", cfg.threads);
      continue;
    }
    if (name.empty()) throw ParseError("config: section [" + section + "] needs a name");
    if (!seen.insert(head + "." + name).second) throw ParseError("config: duplicate section [" + section + "]");
    if (head == "sequence") {
      SequenceDef d;
      d.name = name;
      d.family = parse_family(body, section, d.seed_given);
      d.rows = get_number<std::size_t>(body, section, "rows", d.rows);
      d.cols = get_number<std::size_t>(body, section, "cols", d.rows);
      if (auto c = body.get_optional<std::string>("csv")) d.csv = *c;
      cfg.sequences.push_back(std::move(d));
    } else if (head == "matrix") {
      MatrixDef d;
      d.name = name;
      d.spec.kind = body.get<std::string>("kind", "identity");
      d.spec.rows = get_number<std::size_t>(body, section, "rows", d.spec.rows);
      d.spec.cols = get_number<std::size_t>(body, section, "cols", d.spec.rows);
      if (body.count("col_rows")) d.spec.col_rows = get_number<std::size_t>(body, section, "col_rows", 0);
      if (body.count("col_cols")) d.spec.col_cols = get_number<std::size_t>(body, section, "col_cols", 0);
      bool family_seed = false;
      d.spec.family = parse_family(body, section, family_seed);
      d.seed_given = family_seed;
      d.spec.seed = d.spec.family.seed;
      if (auto t = body.get_optional<std::string>("taps")) d.spec.taps = parse_taps(*t);
      cfg.matrices.push_back(std::move(d));
    } else if (head == "job") {
      JobDef j;
      j.id = name;
      auto cmd = body.get_optional<std::string>("command");
      if (!cmd) throw ParseError("config: [" + section + "] has no command");
      j.command = *cmd;
      j.args = words(body.get<std::string>("args", ""));
      if (auto c = body.get_optional<std::string>("csv")) j.csv = *c;
      cfg.jobs.push_back(std::move(j));
    } else {
      throw ParseError("config: unknown section [" + section + "]");
    }
  }
  cfg.validate();
  return cfg;
}

JobConfig JobConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config '" + path + "'");
  return parse(in);
}

const std::vector<CommandInfo>& commands() {
  static const std::vector<CommandInfo> table = {
      {"space_membership", "SEQ SPACE [Q]"},
      {"delta_membership", "SEQ SPACE [Q]"},
      {"norm", "SEQ KIND [Q]"},
      {"delta_norm", "SEQ"},
      {"cs", "SEQ THETA"},
      {"export", "SEQ"},
      {"forward_difference", "SEQ"},
      {"inverse_difference", "SEQ"},
      {"project", "SEQ"},
      {"partial_sums", "SEQ"},
      {"abel", "SEQ M N S T"},
      {"lemma31", "SEQ"},
      {"corollary41", "SEQ PART [THETA]"},
      {"lemma_equivalence", "SEQ"},
      {"functional", "SEQ SEQ"},
      {"dset", "SEQ DSET"},
      {"dual_side", "SEQ DUAL"},
      {"dual_membership", "SEQ DUAL SPACE"},
      {"dual_harness", "DUAL SPACE SEQ..."},
      {"apply", "MATRIX SEQ SPACE [THETA]"},
      {"condition_check", "MATRIX CONDITION"},
      {"class_check", "MATRIX SOURCE TARGET"},
      {"domain_source_class_check", "MATRIX SOURCE TARGET"},
      {"domain_target_class_check", "MATRIX SOURCE TARGET"},
      {"thm41", "MATRIX COUNT"},
  };
  return table;
}

const CommandInfo& find_command(const std::string& name) {
  for (const auto& c : commands()) {
    if (c.name == name) return c;
  }
  throw ParseError("unknown command '" + name + "'");
}

void JobConfig::validate() const {
  std::set<std::string> seqs;
  for (const auto& s : sequences) seqs.insert(s.name);
  std::set<std::string> mats;
  for (const auto& m : matrices) mats.insert(m.name);
  for (const auto& j : jobs) {
    const CommandInfo& info = find_command(j.command);
    std::vector<std::string> pattern = words(info.usage);
    bool repeat = !pattern.empty() && pattern.back().size() > 3 &&
                  pattern.back().compare(pattern.back().size() - 3, 3, "...") == 0;
    if (repeat) pattern.back().resize(pattern.back().size() - 3);
    std::size_t required = 0;
    for (const auto& p : pattern) required += p.front() == '[' ? 0 : 1;
    if (j.args.size() < required || (!repeat && j.args.size() > pattern.size())) {
      throw ParseError("job " + j.id + ": usage " + j.command + " " + info.usage);
    }
    for (std::size_t i = 0; i < j.args.size(); ++i) {
      const std::string& role = pattern[std::min(i, pattern.size() - 1)];
      if (role == "SEQ" && !seqs.count(j.args[i])) {
        throw ParseError("job " + j.id + ": unknown sequence '" + j.args[i] + "'");
      }
      if (role == "MATRIX" && !mats.count(j.args[i])) {
        throw ParseError("job " + j.id + ": unknown matrix '" + j.args[i] + "'");
      }
    }
  }
}

void Overrides::apply(JobConfig& cfg) const {
  if (mode) cfg.mode = *mode;
  if (epsilon) cfg.detect.epsilon = *epsilon;
  if (window) cfg.detect.window = *window;
  if (threads) cfg.threads = std::max(1u, *threads);
  if (size) {
    for (auto& s : cfg.sequences) s.rows = s.cols = *size;
    for (auto& m : cfg.matrices) {
      m.spec.rows = m.spec.cols = *size;
      m.spec.col_rows.reset();
      m.spec.col_cols.reset();
    }
  }
  if (seed) {
    for (auto& s : cfg.sequences) {
      if (!s.seed_given) s.family.seed = *seed;
    }
    for (auto& m : cfg.matrices) {
      if (!m.seed_given) m.spec.seed = m.spec.family.seed = *seed;
    }
  }
}

}  // namespace dseq::cli
