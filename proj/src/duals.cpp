#include "dseq/duals.hpp"

#include "dseq/diffops.hpp"
#include "dseq/summation.hpp"

#include <algorithm>

namespace dseq {

std::string DualSpec::label() const {
  switch (kind) {
    case DualKind::alpha: return "alpha";
    case DualKind::beta: return "beta(" + to_string(theta) + ")";
    case DualKind::gamma: return "gamma";
  }
  return "?";
}

namespace {

/// Splits "name(arg)" into name and arg.
std::pair<std::string, std::string> split_call(const std::string& text) {
  auto open = text.find('(');
  if (open == std::string::npos) return {text, {}};
  if (text.back() != ')') throw ParseError("unbalanced parenthesis in '" + text + "'");
  return {text.substr(0, open), text.substr(open + 1, text.size() - open - 2)};
}

}  // namespace

DualSpec DualSpec::parse(const std::string& text) {
  auto [name, arg] = split_call(text);
  DualSpec d;
  if (name == "alpha" && arg.empty()) {
    d.kind = DualKind::alpha;
  } else if (name == "gamma" && arg.empty()) {
    d.kind = DualKind::gamma;
  } else if (name == "beta") {
    if (arg.empty()) throw InvalidArgument("beta dual needs a limit sense, e.g. beta(bp)");
    d.kind = DualKind::beta;
    d.theta = parse_theta(arg);
  } else {
    throw InvalidArgument("unknown dual '" + text + "'");
  }
  return d;
}

std::string DSetId::label() const {
  switch (id) {
    case DSet::D1: return "D1";
    case DSet::D2: return "D2(" + to_string(theta) + ")";
    case DSet::D3: return "D3";
    case DSet::D4: return "D4";
  }
  return "?";
}

DSetId DSetId::parse(const std::string& text) {
  auto [name, arg] = split_call(text);
  DSetId d;
  if (name == "D2") {
    if (arg.empty()) throw InvalidArgument("D2 needs a limit sense, e.g. D2(bp)");
    d.id = DSet::D2;
    d.theta = parse_theta(arg);
    return d;
  }
  if (!arg.empty()) throw InvalidArgument("unexpected argument in '" + text + "'");
  if (name == "D1") {
    d.id = DSet::D1;
  } else if (name == "D3") {
    d.id = DSet::D3;
  } else if (name == "D4") {
    d.id = DSet::D4;
  } else {
    throw InvalidArgument("unknown set '" + text + "'");
  }
  return d;
}

template <class S>
DoubleSeq<S> abs_grid(const DoubleSeq<S>& x) {
  std::vector<S> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = ScalarTraits<S>::from_real(ScalarTraits<S>::abs(x.data()[i]));
  std::optional<FamilyTag> t;
  if (x.family()) t = tag::abs(*x.family());
  return DoubleSeq<S>(x.rows(), x.cols(), std::move(out), t);
}

namespace {

template <class S>
Verdict<S> tail_set(const DoubleSeq<S>& a, const DetectParams& params) {
  DoubleSeq<S> inner = project_interior(a);
  TailGrid<S> tg = tail_grid(inner);
  // Inclusive tail at (k, l) is the strict tail at (k-1, l-1).
  const DoubleSeq<S>& strict = tg.analytic ? *tg.analytic : tg.R;
  std::size_t rows = a.rows();
  std::size_t cols = a.cols();
  if (!tg.analytic) {
    rows = std::max<std::size_t>(rows / 2, 2);
    cols = std::max<std::size_t>(cols / 2, 2);
  }
  std::vector<S> vals(rows * cols);
  for (std::size_t k = 1; k < rows; ++k) {
    for (std::size_t l = 1; l < cols; ++l) vals[k * cols + l] = strict(k - 1, l - 1);
  }
  DoubleSeq<S> sums = partial_sum_grid(abs_grid(DoubleSeq<S>(rows, cols, std::move(vals))));
  std::optional<GridAnalysis> facts;
  if (inner.family()) {
    if (std::holds_alternative<FiniteSupportTag>(*inner.family())) {
      GridAnalysis g;
      g.pringsheim = Behavior::converges;
      facts = g;
    } else if (const auto* s = std::get_if<SeparableTag>(&*inner.family())) {
      auto u = tail_abs_summable(s->rows);
      auto v = tail_abs_summable(s->cols);
      bool zero = s->rows.identically_zero() || s->cols.identically_zero();
      GridAnalysis g;
      if (zero || (u && v && *u && *v)) {
        g.pringsheim = Behavior::converges;
        facts = g;
      } else if ((u && !*u) || (v && !*v)) {
        g.pringsheim = Behavior::unbounded;
        facts = g;
      }
    }
  }
  return space_membership(sums, SpaceSpec{Space::C_p}, params, facts);
}

}  // namespace

template <class S>
Verdict<S> in_dset(const DoubleSeq<S>& a, DSetId id, const DetectParams& params) {
  DoubleSeq<S> weighted = scale_by_index(project_interior(a), IndexScaling::integral);
  switch (id.id) {
    case DSet::D1: return cs_verdict(abs_grid(weighted), Theta::bp, params);
    case DSet::D2: return cs_verdict(weighted, id.theta, params);
    case DSet::D3: return space_membership(partial_sum_grid(weighted), SpaceSpec{Space::M_u}, params);
    case DSet::D4: return tail_set(a, params);
  }
  throw InvalidArgument("unknown set");
}

template <class S>
Verdict<S> dset_side(const DoubleSeq<S>& a, DualSpec kind, const DetectParams& params) {
  auto named = [&](DSetId id) {
    Verdict<S> v = in_dset(a, id, params);
    v.reason = id.label() + ": " + v.reason;
    return v;
  };
  switch (kind.kind) {
    case DualKind::alpha: return named({DSet::D1});
    case DualKind::beta: return conjoin<S>({named({DSet::D2, kind.theta}), named({DSet::D4})});
    case DualKind::gamma: return conjoin<S>({named({DSet::D3}), named({DSet::D4})});
  }
  throw InvalidArgument("unknown dual");
}

namespace {

std::vector<FamilySpec> battery_specs(std::uint64_t seed) {
  std::vector<FamilySpec> specs;
  for (int a = 0; a <= 2; ++a) {
    for (int b = 0; b <= 2; ++b) specs.push_back(FamilySpec::monomial(a, b));
  }
  specs.push_back(FamilySpec::basis_point(1, 1));
  specs.push_back(FamilySpec::basis_point(2, 3));
  specs.push_back(FamilySpec::geometric(ExactComplex(Rational(1, 2)), ExactComplex(Rational(1, 2))));
  specs.push_back(FamilySpec::alternating());
  specs.push_back(FamilySpec::boos());
  specs.push_back(FamilySpec::random_support(seed, 4));
  return specs;
}

}  // namespace

template <class S>
std::vector<Sample<S>> sample_battery(Space base, std::size_t rows, std::size_t cols, const DetectParams& params,
                                      std::uint64_t seed) {
  std::vector<Sample<S>> out;
  for (const auto& spec : battery_specs(seed)) {
    FamilySpec p = spec.with_projection();
    DoubleSeq<S> x = make_family<S>(p, rows, cols);
    if (delta_space_membership(x, SpaceSpec{base}, params).holds()) out.push_back({p.label(), std::move(x)});
  }
  return out;
}

template <class S>
std::vector<Sample<S>> plain_battery(Space base, std::size_t rows, std::size_t cols, const DetectParams& params,
                                     std::uint64_t seed) {
  std::vector<Sample<S>> out;
  for (const auto& spec : battery_specs(seed)) {
    DoubleSeq<S> x = make_family<S>(spec, rows, cols);
    if (space_membership(x, SpaceSpec{base}, params).holds()) out.push_back({spec.label(), std::move(x)});
  }
  return out;
}

template <class S>
Verdict<S> dual_membership(const DoubleSeq<S>& a, DualSpec kind, const std::vector<Sample<S>>& samples,
                           const DetectParams& params) {
  if (samples.empty()) throw InvalidArgument("dual membership needs at least one sample");
  std::optional<Verdict<S>> pending;
  for (const auto& s : samples) {
    if (s.x.rows() != a.rows() || s.x.cols() != a.cols()) {
      throw DimensionMismatch("sample " + s.name + " does not match the coefficient truncation");
    }
    DoubleSeq<S> z = pointwise(PointwiseOp::hadamard, a, s.x);
    Verdict<S> v;
    switch (kind.kind) {
      case DualKind::alpha: v = space_membership(z, SpaceSpec{Space::L_q, 1.0}, params); break;
      case DualKind::beta: v = cs_verdict(z, kind.theta, params); break;
      case DualKind::gamma: v = space_membership(partial_sum_grid(z), SpaceSpec{Space::M_u}, params); break;
    }
    if (v.fails()) {
      v.reason = "sample " + s.name + ": " + v.reason;
      v.witness.detail = s.name + ": " + v.witness.detail;
      return v;
    }
    if (v.state == State::inconclusive && !pending) {
      v.reason = "sample " + s.name + ": " + v.reason;
      pending = v;
    }
  }
  if (pending) return *pending;
  return holds_verdict<S>("pairing holds on " + std::to_string(samples.size()) + " samples");
}

template <class S>
HarnessReport<S> dual_theorem_harness(DualSpec kind, const std::vector<Sample<S>>& coefficients,
                                      const std::vector<Sample<S>>& samples, const DetectParams& params) {
  HarnessReport<S> report;
  report.kind = kind;
  for (const auto& c : coefficients) {
    HarnessRow<S> row{c.name, dset_side(c.x, kind, params), dual_membership(c.x, kind, samples, params), std::nullopt};
    if (row.dset.decisive() && row.pairing.decisive()) {
      row.agree = row.dset.holds() == row.pairing.holds();
      ++(*row.agree ? report.agreements : report.disagreements);
    } else {
      ++report.inconclusive;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

#define DSEQ_INSTANTIATE(S)                                                                                          \
  template DoubleSeq<S> abs_grid<S>(const DoubleSeq<S>&);                                                            \
  template Verdict<S> in_dset<S>(const DoubleSeq<S>&, DSetId, const DetectParams&);                                  \
  template Verdict<S> dset_side<S>(const DoubleSeq<S>&, DualSpec, const DetectParams&);                              \
  template std::vector<Sample<S>> sample_battery<S>(Space, std::size_t, std::size_t, const DetectParams&,            \
                                                    std::uint64_t);                                                  \
  template std::vector<Sample<S>> plain_battery<S>(Space, std::size_t, std::size_t, const DetectParams&,             \
                                                   std::uint64_t);                                                   \
  template Verdict<S> dual_membership<S>(const DoubleSeq<S>&, DualSpec, const std::vector<Sample<S>>&,               \
                                         const DetectParams&);                                                       \
  template HarnessReport<S> dual_theorem_harness<S>(DualSpec, const std::vector<Sample<S>>&,                         \
                                                    const std::vector<Sample<S>>&, const DetectParams&);

DSEQ_INSTANTIATE(FloatComplex)
DSEQ_INSTANTIATE(ExactComplex)

}  // namespace dseq
