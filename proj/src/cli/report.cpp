#include "dseq/cli.hpp"

#include <cmath>
#include <sstream>

namespace dseq::cli {

using nlohmann::json;

namespace {

json bound_json(const std::optional<double>& b) {
  if (!b) return nullptr;
  if (std::isinf(*b)) return *b > 0 ? "inf" : "-inf";
  if (std::isnan(*b)) return "nan";
  return *b;
}

}  // namespace

template <class S>
json to_json(const Verdict<S>& v) {
  json out;
  out["state"] = to_string(v.state);
  out["reason"] = v.reason;
  if (!v.witness.empty()) {
    json w;
    json idx = json::array();
    for (const auto& i : v.witness.indices) idx.push_back({i.k, i.l});
    w["indices"] = idx;
    w["bound"] = bound_json(v.witness.bound);
    w["detail"] = v.witness.detail;
    out["witness"] = w;
  }
  if (v.estimate) {
    const auto& e = *v.estimate;
    out["limit"] = {{"value", ScalarTraits<S>::format(e.value)},
                    {"residual", bound_json(e.residual)},
                    {"n0", e.n0},
                    {"window", e.window},
                    {"epsilon", e.epsilon},
                    {"analytic", e.analytic}};
  }
  return out;
}

template <class S>
json to_json(const ClassReport<S>& r) {
  json out;
  out["source"] = r.source;
  out["target"] = r.target;
  out["class"] = r.class_number;
  json conds = json::array();
  for (const auto& c : r.conditions) conds.push_back({{"condition", c.name}, {"verdict", to_json(c.verdict)}});
  out["conditions"] = conds;
  if (!r.extra.empty()) {
    json extra = json::array();
    for (const auto& c : r.extra) extra.push_back({{"check", c.name}, {"verdict", to_json(c.verdict)}});
    out["extra"] = extra;
  }
  out["overall"] = to_json(r.overall);
  return out;
}

template json to_json<FloatComplex>(const Verdict<FloatComplex>&);
template json to_json<ExactComplex>(const Verdict<ExactComplex>&);
template json to_json<FloatComplex>(const ClassReport<FloatComplex>&);
template json to_json<ExactComplex>(const ClassReport<ExactComplex>&);

Summary Report::summary() const {
  Summary s;
  for (const auto& r : records) {
    const std::string status = r.value("status", "error");
    if (status == "ok") ++s.ok;
    else if (status == "Holds") ++s.holds;
    else if (status == "Fails") ++s.fails;
    else if (status == "Inconclusive") ++s.inconclusive;
    else if (status == "Unsupported") ++s.unsupported;
    else ++s.errors;
  }
  return s;
}

int exit_code_for(const Summary& s) {
  if (s.errors > 0) return 2;
  if (s.fails > 0) return 1;
  return 0;
}

std::string Report::to_jsonl() const {
  std::ostringstream os;
  json head = {{"report", id}, {"timestamp", timestamp ? json(*timestamp) : json(nullptr)}, {"records", records.size()}};
  os << head.dump() << '\n';
  for (const auto& r : records) os << r.dump() << '\n';
  Summary s = summary();
  json tail = {{"summary",
                {{"ok", s.ok},
                 {"holds", s.holds},
                 {"fails", s.fails},
                 {"inconclusive", s.inconclusive},
                 {"unsupported", s.unsupported},
                 {"errors", s.errors}}}};
  os << tail.dump() << '\n';
  return os.str();
}

std::string Report::human_summary() const {
  std::ostringstream os;
  for (const auto& r : records) {
    std::string name = r.contains("job") ? r["job"].get<std::string>() : r.value("check", "?");
    os << "  " << name << ": " << r.value("status", "error");
    if (r.contains("message")) os << " (" << r["message"].get<std::string>() << ")";
    os << '\n';
  }
  Summary s = summary();
  os << id << ": " << records.size() << " records, " << s.holds << " holds, " << s.fails << " fails, "
     << s.inconclusive << " inconclusive, " << s.unsupported << " unsupported, " << s.errors << " errors";
  if (s.ok) os << ", " << s.ok << " ok";
  os << '\n';
  return os.str();
}

}  // namespace dseq::cli
