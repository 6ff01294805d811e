#include "common.hpp"

#include "dseq/diffops.hpp"
#include "dseq/duals.hpp"
#include "dseq/summation.hpp"

#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <thread>

namespace dseq::cli {

using nlohmann::json;

namespace detail {

/// Runs task(i) for i < count on up to `threads` workers; results land in slot i.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) task(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace detail

namespace {

using detail::close;

template <class S>
json norm_json(const NormValue<RealOf<S>>& n) {
  json out = {{"value", ScalarTraits<S>::format_real(n.value)}, {"exact", n.exact}, {"truncated", n.truncated}};
  if (n.trend) out["trend"] = *n.trend;
  return out;
}

template <class S>
json grid_shape(const DoubleSeq<S>& x) {
  return {{"rows", x.rows()}, {"cols", x.cols()}, {"sup", detail::sup_modulus(x)}};
}

SpaceSpec space_arg(const std::vector<std::string>& args, std::size_t at) {
  SpaceSpec s{parse_space(args.at(at))};
  if (args.size() > at + 1) {
    try {
      s.q = std::stod(args[at + 1]);
    } catch (const std::logic_error&) {
      throw InvalidArgument("bad exponent '" + args[at + 1] + "'");
    }
  }
  return s;
}

std::size_t count_arg(const std::string& text) {
  try {
    std::size_t used = 0;
    long v = std::stol(text, &used);
    if (used != text.size() || v < 0) throw std::invalid_argument(text);
    return static_cast<std::size_t>(v);
  } catch (const std::logic_error&) {
    throw InvalidArgument("expected a non-negative integer, got '" + text + "'");
  }
}

template <class S>
class Runner {
 public:
  explicit Runner(const JobConfig& cfg) : cfg_(cfg) {}

  json run_job(const JobDef& job) const {
    json rec;
    try {
      rec = dispatch(job);
    } catch (const Unsupported& e) {
      rec = {{"status", "Unsupported"}, {"message", e.what()}};
    } catch (const std::exception& e) {
      rec = detail::error_record(e.what());
    }
    json out = {{"job", job.id}, {"command", job.command}, {"args", job.args}};
    out.update(rec);
    return out;
  }

 private:
  DoubleSeq<S> sequence(const std::string& name) const {
    for (const auto& d : cfg_.sequences) {
      if (d.name != name) continue;
      if (d.csv) {
        std::ifstream in(*d.csv);
        if (!in) throw InvalidArgument("cannot open grid '" + *d.csv + "'");
        DoubleSeq<S> x = read_csv<S>(in);
        x.set_name(name);
        return x;
      }
      DoubleSeq<S> x = make_family<S>(d.family, d.rows, d.cols);
      x.set_name(name);
      return x;
    }
    throw InvalidArgument("unknown sequence '" + name + "'");
  }

  const MatrixDef& matrix_def(const std::string& name) const {
    for (const auto& d : cfg_.matrices) {
      if (d.name == name) return d;
    }
    throw InvalidArgument("unknown matrix '" + name + "'");
  }

  Matrix4D<S> matrix(const std::string& name) const { return make_matrix<S>(matrix_def(name).spec); }

  json verdict_record(const Verdict<S>& v) const {
    return {{"status", to_string(v.state)}, {"verdict", to_json(v)}};
  }

  json grid_record(const JobDef& job, const DoubleSeq<S>& x) const {
    if (job.csv) {
      std::ofstream out(*job.csv);
      if (!out) throw InvalidArgument("cannot write '" + *job.csv + "'");
      write_csv(out, x);
    }
    json rec = {{"status", "ok"}, {"grid", grid_shape(x)}};
    if (job.csv) rec["csv"] = *job.csv;
    return rec;
  }

  json dispatch(const JobDef& job) const {
    const auto& a = job.args;
    const DetectParams& p = cfg_.detect;
    const std::string& c = job.command;
    if (c == "space_membership") return verdict_record(space_membership(sequence(a[0]), space_arg(a, 1), p));
    if (c == "delta_membership") return verdict_record(delta_space_membership(sequence(a[0]), space_arg(a, 1), p));
    if (c == "norm") {
      double q = a.size() > 2 ? space_arg({"C_p", a[2]}, 0).q : 1.0;
      return {{"status", "ok"}, {"norm", norm_json<S>(norm(sequence(a[0]), parse_norm_kind(a[1]), q, p))}};
    }
    if (c == "delta_norm") return {{"status", "ok"}, {"norm", norm_json<S>(delta_norm(sequence(a[0])))}};
    if (c == "cs") return verdict_record(cs_verdict(sequence(a[0]), parse_theta(a[1]), p));
    if (c == "export") return grid_record(job, sequence(a[0]));
    if (c == "forward_difference") return grid_record(job, forward_difference(sequence(a[0])));
    if (c == "inverse_difference") {
      DoubleSeq<S> y = sequence(a[0]);
      return grid_record(job, inverse_difference(y, BoundaryData<S>::zero(y.rows() + 1, y.cols() + 1)));
    }
    if (c == "project") return grid_record(job, project_interior(sequence(a[0])));
    if (c == "partial_sums") return grid_record(job, partial_sum_grid(sequence(a[0])));
    if (c == "abel") {
      auto [lhs, rhs] = abel_identity_check(sequence(a[0]), count_arg(a[1]), count_arg(a[2]), count_arg(a[3]),
                                            count_arg(a[4]));
      return {{"status", close(lhs, rhs) ? "Holds" : "Fails"},
              {"lhs", ScalarTraits<S>::format(lhs)},
              {"rhs", ScalarTraits<S>::format(rhs)}};
    }
    if (c == "lemma31") {
      BoundCheck<S> b = lemma31_bound_check(sequence(a[0]));
      json rec = verdict_record(b.verdict);
      rec["bound"] = b.bound;
      rec["worst"] = b.worst;
      return rec;
    }
    if (c == "corollary41") {
      Theta theta = a.size() > 2 ? parse_theta(a[2]) : Theta::p;
      return verdict_record(corollary41_check(sequence(a[0]), parse_corollary_part(a[1]), p, theta));
    }
    if (c == "lemma_equivalence") {
      EquivalenceReport<S> r = lemma_equivalence(sequence(a[0]), p);
      std::string status = !r.agree ? "Inconclusive" : (*r.agree ? "Holds" : "Fails");
      return {{"status", status},
              {"scaled_bound", to_json(r.scaled_bound)},
              {"weighted_difference", to_json(r.weighted_difference)},
              {"difference_bound", to_json(r.difference_bound)}};
    }
    if (c == "functional") {
      auto coef = PairingCoefficients<S>::from(sequence(a[0]));
      FunctionalValue<S> f = functional_apply(coef, sequence(a[1]));
      return {{"status", f.within ? "Holds" : "Fails"},
              {"value", ScalarTraits<S>::format(f.value)},
              {"bound", ScalarTraits<S>::format_real(f.bound)}};
    }
    if (c == "dset") return verdict_record(in_dset(sequence(a[0]), DSetId::parse(a[1]), p));
    if (c == "dual_side") return verdict_record(dset_side(sequence(a[0]), DualSpec::parse(a[1]), p));
    if (c == "dual_membership") {
      DoubleSeq<S> x = sequence(a[0]);
      auto samples = sample_battery<S>(parse_space(a[2]), x.rows(), x.cols(), p);
      json rec = verdict_record(dual_membership(x, DualSpec::parse(a[1]), samples, p));
      rec["samples"] = samples.size();
      return rec;
    }
    if (c == "dual_harness") {
      DualSpec kind = DualSpec::parse(a[0]);
      std::vector<Sample<S>> coefs;
      for (std::size_t i = 2; i < a.size(); ++i) coefs.push_back({a[i], sequence(a[i])});
      auto samples = sample_battery<S>(parse_space(a[1]), coefs.front().x.rows(), coefs.front().x.cols(), p);
      HarnessReport<S> r = dual_theorem_harness(kind, coefs, samples, p);
      json rows = json::array();
      for (const auto& row : r.rows) {
        rows.push_back({{"family", row.family},
                        {"dset", to_json(row.dset)},
                        {"pairing", to_json(row.pairing)},
                        {"agree", row.agree ? json(*row.agree) : json(nullptr)}});
      }
      std::string status = r.disagreements ? "Fails" : (r.agreements ? "Holds" : "Inconclusive");
      return {{"status", status},
              {"kind", kind.label()},
              {"rows", rows},
              {"agreements", r.agreements},
              {"disagreements", r.disagreements},
              {"inconclusive", r.inconclusive}};
    }
    if (c == "apply") {
      Matrix4D<S> A = matrix(a[0]);
      DoubleSeq<S> x = sequence(a[1]);
      Theta theta = a.size() > 3 ? parse_theta(a[3]) : Theta::p;
      json rec = verdict_record(summability_domain_member(A, x, SpaceSpec{parse_space(a[2])}, theta, p));
      if (job.csv) {
        std::ofstream out(*job.csv);
        if (!out) throw InvalidArgument("cannot write '" + *job.csv + "'");
        write_csv(out, apply_matrix(A, x, theta, p).y);
        rec["csv"] = *job.csv;
      }
      return rec;
    }
    if (c == "condition_check") return verdict_record(condition_check(matrix(a[0]), ConditionId::parse(a[1]), p));
    if (c == "class_check" || c == "domain_source_class_check" || c == "domain_target_class_check") {
      Matrix4D<S> A = matrix(a[0]);
      Space source = parse_space(a[1]);
      Space target = parse_space(a[2]);
      ClassReport<S> r = c == "class_check"                 ? class_check(A, source, target, p)
                         : c == "domain_source_class_check" ? domain_source_class_check(A, source, target, p)
                                                            : domain_target_class_check(A, source, target, p);
      return {{"status", to_string(r.overall.state)}, {"class_report", to_json(r)}};
    }
    if (c == "thm41") {
      Matrix4D<S> A = matrix(a[0]);
      std::mt19937_64 rng(matrix_def(a[0]).spec.seed);
      std::vector<DoubleSeq<S>> ys;
      for (std::size_t i = 0, n = count_arg(a[1]); i < n; ++i) {
        ys.push_back(detail::random_grid<S>(A.K() - 1, A.L() - 1, rng));
      }
      IdentityReport<S> r = thm41_identity_harness(A, ys, p);
      json rec = verdict_record(r.verdict);
      rec["instances"] = r.instances;
      rec["mismatches"] = r.mismatches;
      return rec;
    }
    throw InvalidArgument("unknown command '" + c + "'");
  }

  const JobConfig& cfg_;
};

template <class S>
RunResult run_mode(const JobConfig& cfg, const std::string& id) {
  Runner<S> runner(cfg);
  RunResult result;
  result.report.id = id;
  result.report.records.resize(cfg.jobs.size());
  detail::parallel_for(cfg.jobs.size(), cfg.threads,
                       [&](std::size_t i) { result.report.records[i] = runner.run_job(cfg.jobs[i]); });
  result.exit_code = exit_code_for(result.report.summary());
  return result;
}

std::string utc_now() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace

RunResult run(const JobConfig& cfg, const std::string& id) {
  cfg.validate();
  return cfg.mode == Mode::exact ? run_mode<ExactComplex>(cfg, id) : run_mode<FloatComplex>(cfg, id);
}

RunResult run_file(const std::string& path, const Overrides& overrides) {
  JobConfig cfg = JobConfig::load(path);
  overrides.apply(cfg);
  RunResult r = run(cfg, path);
  if (overrides.timestamp) r.report.timestamp = utc_now();
  return r;
}

}  // namespace dseq::cli
