#include "dseq/convergence.hpp"

#include "dseq/summation.hpp"

#include <algorithm>
#include <cmath>

namespace dseq {

std::string to_string(State s) {
  switch (s) {
    case State::holds: return "Holds";
    case State::fails: return "Fails";
    case State::inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string to_string(Space s) {
  switch (s) {
    case Space::M_u: return "M_u";
    case Space::C_p: return "C_p";
    case Space::C_p0: return "C_p0";
    case Space::C_bp: return "C_bp";
    case Space::C_bp0: return "C_bp0";
    case Space::C_r: return "C_r";
    case Space::C_r0: return "C_r0";
    case Space::L_q: return "L_q";
  }
  return "?";
}

std::string to_string(Theta t) {
  switch (t) {
    case Theta::p: return "p";
    case Theta::bp: return "bp";
    case Theta::r: return "r";
  }
  return "?";
}

Space parse_space(const std::string& text) {
  for (Space s : {Space::M_u, Space::C_p, Space::C_p0, Space::C_bp, Space::C_bp0, Space::C_r, Space::C_r0, Space::L_q}) {
    if (text == to_string(s)) return s;
  }
  throw InvalidArgument("unknown space '" + text + "'");
}

Theta parse_theta(const std::string& text) {
  for (Theta t : {Theta::p, Theta::bp, Theta::r}) {
    if (text == to_string(t)) return t;
  }
  throw InvalidArgument("unknown limit sense '" + text + "' (expected p, bp or r)");
}

Space theta_space(Theta t, bool null) {
  switch (t) {
    case Theta::p: return null ? Space::C_p0 : Space::C_p;
    case Theta::bp: return null ? Space::C_bp0 : Space::C_bp;
    case Theta::r: return null ? Space::C_r0 : Space::C_r;
  }
  return Space::C_p;
}

std::string to_string(NormKind k) {
  switch (k) {
    case NormKind::sup: return "sup";
    case NormKind::cp_seminorm: return "cp_seminorm";
    case NormKind::bs: return "bs";
    case NormKind::bv: return "bv";
    case NormKind::lq: return "lq";
  }
  return "?";
}

NormKind parse_norm_kind(const std::string& text) {
  for (NormKind k : {NormKind::sup, NormKind::cp_seminorm, NormKind::bs, NormKind::bv, NormKind::lq}) {
    if (text == to_string(k)) return k;
  }
  throw InvalidArgument("unknown norm '" + text + "'");
}

std::size_t DetectParams::n0(std::size_t rows, std::size_t cols) const {
  if (diag_start) return *diag_start;
  std::size_t m = std::min(rows, cols);
  std::size_t n = m / 2;
  if (m > window && n + window >= m) n = m - window - 1;
  return n;
}

void DetectParams::validate(std::size_t rows, std::size_t cols) const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InvalidArgument("epsilon must be a positive finite number");
  if (window < 2) throw InvalidArgument("window must be at least 2");
  std::size_t start = n0(rows, cols);
  if (rows <= start + window || cols <= start + window) {
    throw InvalidArgument("truncation " + std::to_string(rows) + "x" + std::to_string(cols) +
                          " too small for diag_start " + std::to_string(start) + " and window " +
                          std::to_string(window));
  }
}

namespace {

template <class S>
using Tr = ScalarTraits<S>;
template <class S>
using R = RealOf<S>;

template <class S>
R<S> real_of(double d) {
  return Tr<S>::real_from_double(d);
}

template <class S>
double as_double(const R<S>& r) {
  return Tr<S>::to_double(r);
}

template <class S>
double modulus(const S& z) {
  return std::sqrt(as_double<S>(Tr<S>::abs2(z)));
}

template <class S>
S mean(const std::vector<S>& v) {
  S s{};
  for (const auto& z : v) s += z;
  return s / Tr<S>::from_int(static_cast<long>(v.size()));
}

template <class S>
struct Spread {
  R<S> value{};
  std::size_t a = 0;
  std::size_t b = 0;
};

template <class S>
Spread<S> max_spread(const std::vector<S>& vals) {
  Spread<S> out;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    for (std::size_t j = i + 1; j < vals.size(); ++j) {
      R<S> d = Tr<S>::abs2(vals[i] - vals[j]);
      if (d > out.value) out = {d, i, j};
    }
  }
  return out;
}

struct Layout {
  std::size_t rows;
  std::size_t cols;
  std::size_t n0;
  std::size_t window;
  double epsilon;
};

template <class S>
struct GridScan {
  S candidate{};
  R<S> dev2{};
  Index2 dev_at;
  R<S> far2{};
  Index2 far_a;
  Index2 far_b;
  R<S> mid2{};
};

template <class S>
GridScan<S> scan_grid(const DoubleSeq<S>& x, const Layout& lay) {
  GridScan<S> g;
  const long far_from = static_cast<long>(lay.rows + lay.cols) - 2 - (static_cast<long>(lay.window) - 1);
  const std::size_t mid_lo = 2 * lay.n0;
  const std::size_t mid_hi = mid_lo + lay.window - 1;
  std::vector<S> far;
  std::vector<Index2> far_idx;
  std::vector<S> mid;
  for (std::size_t m = lay.n0; m < lay.rows; ++m) {
    for (std::size_t n = lay.n0; n < lay.cols; ++n) {
      if (static_cast<long>(m + n) >= far_from) {
        far.push_back(x(m, n));
        far_idx.push_back({m, n});
      }
      if (m + n >= mid_lo && m + n <= mid_hi) mid.push_back(x(m, n));
    }
  }
  g.candidate = mean(far);
  for (std::size_t m = lay.n0; m < lay.rows; ++m) {
    for (std::size_t n = lay.n0; n < lay.cols; ++n) {
      R<S> d = Tr<S>::abs2(x(m, n) - g.candidate);
      if (d > g.dev2) {
        g.dev2 = d;
        g.dev_at = {m, n};
      }
    }
  }
  auto fs = max_spread(far);
  g.far2 = fs.value;
  g.far_a = far_idx[fs.a];
  g.far_b = far_idx[fs.b];
  g.mid2 = max_spread(mid).value;
  return g;
}

template <class S>
R<S> max_dev2(const DoubleSeq<S>& x, const S& target, std::size_t n0, Index2* at = nullptr) {
  R<S> best{};
  for (std::size_t m = n0; m < x.rows(); ++m) {
    for (std::size_t n = n0; n < x.cols(); ++n) {
      R<S> d = Tr<S>::abs2(x(m, n) - target);
      if (d > best) {
        best = d;
        if (at != nullptr) *at = {m, n};
      }
    }
  }
  return best;
}

template <class S>
LimitEstimate<S> estimate_for(const DoubleSeq<S>& x, const S& value, const Layout& lay, bool analytic) {
  LimitEstimate<S> e;
  e.value = value;
  e.n0 = lay.n0;
  e.window = lay.window;
  e.residual = std::sqrt(as_double<S>(max_dev2(x, value, lay.n0)));
  e.epsilon = analytic ? std::max(lay.epsilon, e.residual) : lay.epsilon;
  e.analytic = analytic;
  return e;
}

template <class S>
Verdict<S> decide_grid_limit(const DoubleSeq<S>& x, const GridScan<S>& g, const Layout& lay, bool null_limit) {
  const R<S> eps = real_of<S>(lay.epsilon);
  const R<S> eps2 = eps * eps;
  const S zero{};
  const S& target = null_limit ? zero : g.candidate;
  Index2 worst = g.dev_at;
  R<S> dev2 = null_limit ? max_dev2(x, zero, lay.n0, &worst) : g.dev2;
  if (dev2 <= eps2) {
    Verdict<S> v = holds_verdict<S>("entries beyond n0 within epsilon of the far-corner limit");
    v.estimate = estimate_for(x, target, lay, false);
    return v;
  }
  if (g.far2 > R<S>(4) * eps2 && g.far2 >= g.mid2) {
    Witness w{{g.far_a, g.far_b}, std::sqrt(as_double<S>(g.far2)), "far-band spread exceeds 2 epsilon"};
    return fails_verdict<S>(std::move(w), "entries near the far corner do not settle");
  }
  if (null_limit && g.dev2 <= eps2 && Tr<S>::abs2(g.candidate) > R<S>(4) * eps2) {
    Witness w{{Index2{lay.rows - 1, lay.cols - 1}}, modulus(g.candidate), "limit differs from zero"};
    return fails_verdict<S>(std::move(w), "grid settles at a nonzero value");
  }
  return inconclusive_verdict<S>("deviation " + format_real(std::sqrt(as_double<S>(dev2))) +
                                 " beyond n0 exceeds epsilon without a divergence witness");
}

/// Last-window limit protocol on a single sequence.
template <class S>
Verdict<S> decide_line(const std::vector<S>& vals, std::size_t n0, std::size_t window, double epsilon, bool null_limit,
                       const std::function<Index2(std::size_t)>& index_of) {
  const std::size_t n = vals.size();
  const R<S> eps = real_of<S>(epsilon);
  const R<S> eps2 = eps * eps;
  std::vector<S> last(vals.end() - static_cast<long>(window), vals.end());
  std::vector<S> mid(vals.begin() + static_cast<long>(n0), vals.begin() + static_cast<long>(n0 + window));
  S candidate = null_limit ? S{} : mean(last);
  R<S> dev2{};
  for (std::size_t i = n0; i < n; ++i) dev2 = std::max(dev2, R<S>(Tr<S>::abs2(vals[i] - candidate)));
  if (dev2 <= eps2) {
    Verdict<S> v = holds_verdict<S>();
    LimitEstimate<S> e;
    e.value = candidate;
    e.epsilon = epsilon;
    e.n0 = n0;
    e.window = window;
    e.residual = std::sqrt(as_double<S>(dev2));
    v.estimate = e;
    return v;
  }
  auto ls = max_spread(last);
  auto ms = max_spread(mid);
  if (ls.value > R<S>(4) * eps2 && ls.value >= ms.value) {
    std::size_t base = n - window;
    Witness w{{index_of(base + ls.a), index_of(base + ls.b)}, std::sqrt(as_double<S>(ls.value)),
              "trailing spread exceeds 2 epsilon"};
    return fails_verdict<S>(std::move(w), "sequence does not settle");
  }
  if (null_limit) {
    S tail_mean = mean(last);
    R<S> around{};
    for (std::size_t i = n0; i < n; ++i) around = std::max(around, R<S>(Tr<S>::abs2(vals[i] - tail_mean)));
    if (around <= eps2 && Tr<S>::abs2(tail_mean) > R<S>(4) * eps2) {
      Witness w{{index_of(n - 1)}, modulus(tail_mean), "limit differs from zero"};
      return fails_verdict<S>(std::move(w), "sequence settles at a nonzero value");
    }
  }
  return inconclusive_verdict<S>("sequence not within epsilon beyond n0");
}

template <class S>
Verdict<S> lines_numeric(const DoubleSeq<S>& x, bool rows, const Layout& lay) {
  const std::size_t count = rows ? x.rows() : x.cols();
  const std::size_t len = rows ? x.cols() : x.rows();
  Verdict<S> pending = holds_verdict<S>(rows ? "every row settles" : "every column settles");
  bool inconclusive = false;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<S> vals(len);
    for (std::size_t j = 0; j < len; ++j) vals[j] = rows ? x(i, j) : x(j, i);
    auto v = decide_line<S>(vals, lay.n0, lay.window, lay.epsilon, false, [&](std::size_t j) {
      return rows ? Index2{i, j} : Index2{j, i};
    });
    if (v.fails()) {
      v.reason = (rows ? "row " : "column ") + std::to_string(i) + " does not settle";
      return v;
    }
    if (v.state == State::inconclusive && !inconclusive) {
      inconclusive = true;
      pending = inconclusive_verdict<S>((rows ? "row " : "column ") + std::to_string(i) + " undecided");
    }
  }
  return pending;
}

/// Line with the widest trailing spread, used as the witness of an analytic failure.
template <class S>
Witness widest_line(const DoubleSeq<S>& x, bool rows, std::size_t window) {
  const std::size_t count = rows ? x.rows() : x.cols();
  const std::size_t len = rows ? x.cols() : x.rows();
  Witness best;
  R<S> best_v{};
  bool first = true;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<S> last;
    for (std::size_t j = len - window; j < len; ++j) last.push_back(rows ? x(i, j) : x(j, i));
    auto s = max_spread(last);
    if (first || s.value > best_v) {
      first = false;
      best_v = s.value;
      std::size_t a = len - window + s.a;
      std::size_t b = len - window + s.b;
      best.indices = rows ? std::vector<Index2>{{i, a}, {i, b}} : std::vector<Index2>{{a, i}, {b, i}};
      best.bound = std::sqrt(as_double<S>(s.value));
    }
  }
  best.detail = rows ? "row does not converge" : "column does not converge";
  return best;
}

template <class S>
struct BoundScan {
  R<S> edge{};
  R<S> inner{};
  R<S> head{};
  R<S> max{};
  Index2 argmax;
};

template <class S>
BoundScan<S> scan_bound(const DoubleSeq<S>& x, const Layout& lay) {
  BoundScan<S> b;
  bool first = true;
  for (std::size_t k = 0; k < x.rows(); ++k) {
    for (std::size_t l = 0; l < x.cols(); ++l) {
      R<S> a = Tr<S>::abs2(x(k, l));
      bool edge = k + lay.window >= x.rows() || l + lay.window >= x.cols();
      if (edge) {
        b.edge = std::max(b.edge, a);
      } else {
        b.inner = std::max(b.inner, a);
      }
      if (k < lay.n0 && l < lay.n0) b.head = std::max(b.head, a);
      if (first || a > b.max) {
        first = false;
        b.max = a;
        b.argmax = {k, l};
      }
    }
  }
  return b;
}

template <class S>
Verdict<S> bounded_component(const DoubleSeq<S>& x, const std::optional<GridAnalysis>& an, const Layout& lay) {
  BoundScan<S> b = scan_bound(x, lay);
  const double sup = std::sqrt(as_double<S>(b.max));
  if (an && an->bounded) {
    if (*an->bounded) return holds_verdict<S>("closed form is bounded", Witness{{}, sup, "sup on grid"});
    return fails_verdict<S>(Witness{{b.argmax}, sup, "largest entry; closed form grows without bound"},
                            "closed form is unbounded");
  }
  if (b.edge <= b.inner) return holds_verdict<S>("maximum attained away from the grid edge", Witness{{}, sup, "sup on grid"});
  const double ratio = 1.5 * static_cast<double>(std::max(x.rows(), x.cols())) / static_cast<double>(std::max<std::size_t>(lay.n0, 1));
  const R<S> env = real_of<S>(ratio);
  if (lay.n0 > 0 && b.head > R<S>(0) && b.edge > env * env * b.head) {
    return fails_verdict<S>(Witness{{b.argmax}, sup, "growth beyond the linear envelope"}, "entries grow toward the edge");
  }
  return inconclusive_verdict<S>("maximum sits on the grid edge; growth undecided");
}

template <class S>
Verdict<S> limit_component(const DoubleSeq<S>& x, const std::optional<GridAnalysis>& an, const Layout& lay,
                           bool null_limit) {
  GridScan<S> g = scan_grid(x, lay);
  Verdict<S> numeric = decide_grid_limit(x, g, lay, null_limit);
  if (!an || an->pringsheim == Behavior::unknown) return numeric;
  if (an->pringsheim == Behavior::zero_tail || an->pringsheim == Behavior::converges) {
    std::optional<S> limit;
    if (an->limit) limit = Tr<S>::from_exact(*an->limit);
    if (!limit && an->limit_at && an->limit_at->first < x.rows() && an->limit_at->second < x.cols()) {
      limit = x(an->limit_at->first, an->limit_at->second);
    }
    if (!limit) {
      if (null_limit) return numeric;
      limit = g.candidate;
    }
    if (null_limit && !Tr<S>::is_zero(*limit)) {
      Witness w{{Index2{lay.rows - 1, lay.cols - 1}}, modulus(*limit), "limit differs from zero"};
      return fails_verdict<S>(std::move(w), "closed-form limit is nonzero");
    }
    Verdict<S> v = holds_verdict<S>("closed form converges");
    v.estimate = estimate_for(x, *limit, lay, true);
    return v;
  }
  if (numeric.fails()) {
    numeric.reason = "closed form diverges";
    return numeric;
  }
  Witness w{{g.far_a, g.far_b}, std::sqrt(as_double<S>(g.far2)), "far-band pair; closed form diverges"};
  return fails_verdict<S>(std::move(w), "closed form diverges");
}

template <class S>
Verdict<S> lines_component(const DoubleSeq<S>& x, const std::optional<GridAnalysis>& an, const Layout& lay, bool rows) {
  const auto& known = rows ? (an ? an->rows_converge : std::nullopt) : (an ? an->cols_converge : std::nullopt);
  if (known) {
    if (*known) return holds_verdict<S>(rows ? "every row converges" : "every column converges");
    Verdict<S> numeric = lines_numeric(x, rows, lay);
    if (numeric.fails()) return numeric;
    return fails_verdict<S>(widest_line(x, rows, lay.window), rows ? "a row diverges" : "a column diverges");
  }
  return lines_numeric(x, rows, lay);
}

template <class S>
std::optional<bool> lq_summable(const FamilyTag& t, double q) {
  if (std::holds_alternative<FiniteSupportTag>(t)) return true;
  if (std::holds_alternative<ClampedTag>(t)) return std::nullopt;
  const auto& s = std::get<SeparableTag>(t);
  if (s.rows.identically_zero() || s.cols.identically_zero()) return true;
  auto su = abs_power_summable(s.rows, q);
  auto sv = abs_power_summable(s.cols, q);
  if (su && sv) return *su && *sv;
  if ((su && !*su) || (sv && !*sv)) return false;
  return std::nullopt;
}

template <class S>
DoubleSeq<S> abs_power_grid(const DoubleSeq<S>& x, double q) {
  std::vector<S> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const S& z = x.data()[i];
    if constexpr (std::is_same_v<S, ExactComplex>) {
      bool exact = false;
      Rational a = Tr<S>::abs(z, &exact);
      if (exact && q == std::floor(q) && q <= 64) {
        Rational p = 1;
        for (int j = 0; j < static_cast<int>(q); ++j) p *= a;
        out[i] = ExactComplex(p);
        continue;
      }
    }
    out[i] = Tr<S>::from_real(real_of<S>(std::pow(modulus(z), q)));
  }
  return DoubleSeq<S>(x.rows(), x.cols(), std::move(out));
}

}  // namespace

template <class S>
Verdict<S> space_membership(const DoubleSeq<S>& x, SpaceSpec spec, const DetectParams& params) {
  std::optional<GridAnalysis> an;
  if (x.family()) an = analyze(*x.family());
  return space_membership(x, spec, params, an);
}

template <class S>
Verdict<S> space_membership(const DoubleSeq<S>& x, SpaceSpec spec, const DetectParams& params,
                            const std::optional<GridAnalysis>& an) {
  params.validate(x.rows(), x.cols());
  Layout lay{x.rows(), x.cols(), params.n0(x.rows(), x.cols()), params.window, params.epsilon};
  switch (spec.space) {
    case Space::M_u: return bounded_component(x, an, lay);
    case Space::C_p: return limit_component(x, an, lay, false);
    case Space::C_p0: return limit_component(x, an, lay, true);
    case Space::C_bp:
    case Space::C_bp0:
      return conjoin<S>({limit_component(x, an, lay, spec.space == Space::C_bp0), bounded_component(x, an, lay)});
    case Space::C_r:
    case Space::C_r0:
      return conjoin<S>({limit_component(x, an, lay, spec.space == Space::C_r0), bounded_component(x, an, lay),
                         lines_component(x, an, lay, true), lines_component(x, an, lay, false)});
    case Space::L_q: {
      if (!(spec.q >= 1.0)) throw InvalidArgument("L_q requires q >= 1");
      DoubleSeq<S> sums = partial_sum_grid(abs_power_grid(x, spec.q));
      std::optional<GridAnalysis> lan;
      if (x.family()) {
        if (auto s = lq_summable<S>(*x.family(), spec.q)) {
          GridAnalysis g;
          g.pringsheim = *s ? Behavior::converges : Behavior::unbounded;
          lan = g;
        }
      }
      return limit_component(sums, lan, lay, false);
    }
  }
  throw InvalidArgument("unknown space");
}

template <class S>
Verdict<S> cs_verdict(const DoubleSeq<S>& x, Theta theta, const DetectParams& params) {
  return space_membership(partial_sum_grid(x), SpaceSpec{theta_space(theta)}, params);
}

template <class S>
Verdict<S> pringsheim_verdict(const DoubleSeq<S>& x, const DetectParams& params, bool null_limit) {
  return space_membership(x, SpaceSpec{null_limit ? Space::C_p0 : Space::C_p}, params);
}

template <class S>
Verdict<S> sequence_limit_verdict(const std::vector<S>& values, const DetectParams& params, bool null_limit) {
  params.validate(values.size(), values.size());
  std::size_t n0 = params.n0(values.size(), values.size());
  return decide_line<S>(values, n0, params.window, params.epsilon, null_limit,
                        [](std::size_t j) { return Index2{0, j}; });
}

namespace {

template <class S>
NormValue<R<S>> modulus_value(const S& z) {
  NormValue<R<S>> out;
  bool exact = false;
  out.value = Tr<S>::abs(z, &exact);
  out.exact = exact;
  return out;
}

template <class S>
NormValue<R<S>> region_sup(const DoubleSeq<S>& x, std::size_t from) {
  R<S> best{};
  S arg{};
  for (std::size_t k = from; k < x.rows(); ++k) {
    for (std::size_t l = from; l < x.cols(); ++l) {
      R<S> a = Tr<S>::abs2(x(k, l));
      if (a > best) {
        best = a;
        arg = x(k, l);
      }
    }
  }
  return modulus_value(arg);
}

template <class S>
bool support_inside(const DoubleSeq<S>& x, std::size_t extra) {
  if (!x.family()) return false;
  const auto* f = std::get_if<FiniteSupportTag>(&*x.family());
  return f != nullptr && f->rows + extra <= x.rows() && f->cols + extra <= x.cols();
}

}  // namespace

template <class S>
NormValue<RealOf<S>> norm(const DoubleSeq<S>& x, NormKind which, double q, const DetectParams& params) {
  NormValue<R<S>> out;
  switch (which) {
    case NormKind::sup:
      out = region_sup(x, 0);
      out.truncated = !support_inside(x, 0);
      return out;
    case NormKind::cp_seminorm: {
      std::size_t n0 = params.n0(x.rows(), x.cols());
      out = region_sup(x, n0);
      std::size_t later = n0 + (std::min(x.rows(), x.cols()) - n0) / 2;
      out.trend = as_double<S>(out.value) - as_double<S>(region_sup(x, later).value);
      out.truncated = true;
      return out;
    }
    case NormKind::bs:
      out = region_sup(partial_sum_grid(x), 0);
      out.truncated = !support_inside(x, 0);
      return out;
    case NormKind::bv: {
      R<S> total{};
      bool exact = true;
      for (std::size_t k = 0; k < x.rows(); ++k) {
        for (std::size_t l = 0; l < x.cols(); ++l) {
          S v = x(k, l);
          if (k > 0) v -= x(k - 1, l);
          if (l > 0) v -= x(k, l - 1);
          if (k > 0 && l > 0) v += x(k - 1, l - 1);
          bool e = false;
          total += Tr<S>::abs(v, &e);
          exact = exact && e;
        }
      }
      out.value = total;
      out.exact = exact;
      out.truncated = !support_inside(x, 1);
      return out;
    }
    case NormKind::lq: {
      if (!(q >= 1.0)) throw InvalidArgument("lq norm requires q >= 1");
      R<S> total{};
      bool exact = true;
      for (std::size_t k = 0; k < x.rows(); ++k) {
        for (std::size_t l = 0; l < x.cols(); ++l) {
          bool e = false;
          R<S> a = Tr<S>::abs(x(k, l), &e);
          if (q == 1.0) {
            total += a;
            exact = exact && e;
          } else {
            total += real_of<S>(std::pow(as_double<S>(a), q));
            exact = false;
          }
        }
      }
      out.value = q == 1.0 ? total : real_of<S>(std::pow(as_double<S>(total), 1.0 / q));
      out.exact = exact;
      out.truncated = !support_inside(x, 0);
      return out;
    }
  }
  throw InvalidArgument("unknown norm");
}

#define DSEQ_INSTANTIATE(S)                                                                         \
  template Verdict<S> space_membership<S>(const DoubleSeq<S>&, SpaceSpec, const DetectParams&);     \
  template Verdict<S> space_membership<S>(const DoubleSeq<S>&, SpaceSpec, const DetectParams&,      \
                                          const std::optional<GridAnalysis>&);                      \
  template NormValue<RealOf<S>> norm<S>(const DoubleSeq<S>&, NormKind, double, const DetectParams&); \
  template Verdict<S> cs_verdict<S>(const DoubleSeq<S>&, Theta, const DetectParams&);               \
  template Verdict<S> pringsheim_verdict<S>(const DoubleSeq<S>&, const DetectParams&, bool);        \
  template Verdict<S> sequence_limit_verdict<S>(const std::vector<S>&, const DetectParams&, bool);

DSEQ_INSTANTIATE(FloatComplex)
DSEQ_INSTANTIATE(ExactComplex)

}  // namespace dseq
