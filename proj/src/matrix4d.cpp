#include "dseq/matrix4d.hpp"

#include "dseq/diffops.hpp"
#include "dseq/summation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace dseq {

std::string to_string(MatrixKind k) {
  switch (k) {
    case MatrixKind::stencil: return "stencil";
    case MatrixKind::closed: return "closed";
    case MatrixKind::block: return "block";
  }
  return "?";
}

namespace {

template <class S>
using Tr = ScalarTraits<S>;

// acc += a * b without temporaries.
void add_product(FloatComplex& acc, const FloatComplex& a, const FloatComplex& b) { acc += a * b; }

void add_product(ExactComplex& acc, const ExactComplex& a, const ExactComplex& b) { acc.add_product(a, b); }

template <class S>
using R = RealOf<S>;

template <class S>
double modulus(const S& z) {
  return std::sqrt(Tr<S>::to_double(Tr<S>::abs2(z)));
}

template <class S>
bool same_value(const S& a, const S& b) {
  if constexpr (std::is_same_v<S, ExactComplex>) {
    return a == b;
  } else {
    return std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a) + std::abs(b));
  }
}

template <class S>
std::vector<StencilTap<S>> delta_taps() {
  return {{0, 0, Tr<S>::from_int(1)}, {1, 0, Tr<S>::from_int(-1)}, {0, 1, Tr<S>::from_int(-1)}, {1, 1, Tr<S>::from_int(1)}};
}

template <class S>
bool same_taps(std::vector<StencilTap<S>> a, std::vector<StencilTap<S>> b) {
  auto key = [](const StencilTap<S>& t) { return std::make_pair(t.dk, t.dl); };
  auto cmp = [&](const StencilTap<S>& x, const StencilTap<S>& y) { return key(x) < key(y); };
  std::sort(a.begin(), a.end(), cmp);
  std::sort(b.begin(), b.end(), cmp);
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (key(a[i]) != key(b[i]) || !(a[i].coef == b[i].coef)) return false;
  }
  return true;
}

/// Merges taps with equal offsets and drops zero coefficients.
template <class S>
std::vector<StencilTap<S>> normalize_taps(const std::vector<StencilTap<S>>& taps) {
  std::map<std::pair<long, long>, S> acc;
  for (const auto& t : taps) acc[{t.dk, t.dl}] += t.coef;
  std::vector<StencilTap<S>> out;
  for (const auto& [key, coef] : acc) {
    if (!Tr<S>::is_zero(coef)) out.push_back({key.first, key.second, coef});
  }
  return out;
}

}  // namespace

template <class S>
Matrix4D<S> Matrix4D<S>::stencil(std::vector<StencilTap<S>> taps, std::size_t M, std::size_t N, std::size_t K,
                                 std::size_t L, std::string name) {
  Matrix4D A;
  A.kind_ = MatrixKind::stencil;
  A.name_ = std::move(name);
  A.M_ = M;
  A.N_ = N;
  A.K_ = K;
  A.L_ = L;
  A.taps_ = normalize_taps(taps);
  A.triangular_ = std::all_of(A.taps_.begin(), A.taps_.end(), [](const auto& t) { return t.dk <= 0 && t.dl <= 0; });
  return A;
}

template <class S>
Matrix4D<S> Matrix4D<S>::identity(std::size_t M, std::size_t N) {
  return stencil({{0, 0, Tr<S>::from_int(1)}}, M, N, M, N, "identity");
}

template <class S>
Matrix4D<S> Matrix4D<S>::delta(std::size_t M, std::size_t N) {
  return stencil(delta_taps<S>(), M, N, M + 1, N + 1, "delta");
}

template <class S>
Matrix4D<S> Matrix4D<S>::zero(std::size_t M, std::size_t N, std::size_t K, std::size_t L) {
  return stencil({}, M, N, K, L, "zero");
}

template <class S>
Matrix4D<S> Matrix4D<S>::closed(std::string name, Entry entry, std::size_t M, std::size_t N, std::size_t K,
                                std::size_t L, bool finite_rows, bool triangular, RowTag row_tag) {
  Matrix4D A;
  A.kind_ = MatrixKind::closed;
  A.name_ = std::move(name);
  A.M_ = M;
  A.N_ = N;
  A.K_ = K;
  A.L_ = L;
  A.entry_ = std::move(entry);
  A.row_tag_ = std::move(row_tag);
  A.closed_finite_rows_ = finite_rows;
  A.triangular_ = triangular;
  return A;
}

template <class S>
Matrix4D<S> Matrix4D<S>::block(std::size_t M, std::size_t N, std::size_t K, std::size_t L, std::vector<S> data,
                               std::string name) {
  if (data.size() != M * N * K * L) {
    throw DimensionMismatch("block has " + std::to_string(data.size()) + " entries, expected " +
                            std::to_string(M * N * K * L));
  }
  Matrix4D A;
  A.kind_ = MatrixKind::block;
  A.name_ = std::move(name);
  A.M_ = M;
  A.N_ = N;
  A.K_ = K;
  A.L_ = L;
  A.block_ = std::make_shared<const std::vector<S>>(std::move(data));
  bool tri = true;
  for (std::size_t m = 0; m < M && tri; ++m) {
    for (std::size_t n = 0; n < N && tri; ++n) {
      for (std::size_t k = 0; k < K && tri; ++k) {
        for (std::size_t l = 0; l < L; ++l) {
          if ((k > m || l > n) && !Tr<S>::is_zero((*A.block_)[((m * N + n) * K + k) * L + l])) {
            tri = false;
            break;
          }
        }
      }
    }
  }
  A.triangular_ = tri;
  return A;
}

template <class S>
Matrix4D<S> Matrix4D<S>::ones_row(std::size_t M, std::size_t N, std::size_t K, std::size_t L) {
  auto entry = [](std::size_t m, std::size_t n, std::size_t, std::size_t) {
    return Tr<S>::from_int(m == 0 && n == 0 ? 1 : 0);
  };
  auto tag = [](std::size_t m, std::size_t n) -> std::optional<FamilyTag> {
    if (m == 0 && n == 0) return FamilySpec::ones().closed_form();
    return FamilyTag{FiniteSupportTag{0, 0}};
  };
  return closed("ones_row", entry, M, N, K, L, false, false, tag);
}

template <class S>
Matrix4D<S> Matrix4D<S>::constant_rows(const FamilySpec& family, std::size_t M, std::size_t N, std::size_t K,
                                       std::size_t L) {
  auto grid = std::make_shared<const DoubleSeq<S>>(make_family<S>(family, K, L));
  auto tag = family.closed_form();
  bool finite = false;
  if (tag) {
    if (const auto* f = std::get_if<FiniteSupportTag>(&*tag)) finite = f->rows <= K && f->cols <= L;
  }
  auto entry = [grid](std::size_t, std::size_t, std::size_t k, std::size_t l) { return (*grid)(k, l); };
  auto row_tag = [tag](std::size_t, std::size_t) { return tag; };
  return closed("constant_rows(" + family.label() + ")", entry, M, N, K, L, finite, false, row_tag);
}

template <class S>
Matrix4D<S> Matrix4D<S>::cesaro(std::size_t n) {
  auto entry = [](std::size_t m, std::size_t nn, std::size_t k, std::size_t l) {
    if (k > m || l > nn) return S{};
    return Tr<S>::from_int(1) / Tr<S>::from_int(static_cast<long>((m + 1) * (nn + 1)));
  };
  return closed("cesaro", entry, n, n, n, n, true, true);
}

template <class S>
Matrix4D<S> Matrix4D<S>::random_triangle(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<S> data(n * n * n * n);
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t nn = 0; nn < n; ++nn) {
      for (std::size_t k = 0; k <= m; ++k) {
        for (std::size_t l = 0; l <= nn; ++l) {
          long num = static_cast<long>(rng() % 19) - 9;
          long den = static_cast<long>(rng() % 9) + 1;
          if (k == m && l == nn && num == 0) num = 1;
          data[((m * n + nn) * n + k) * n + l] = Tr<S>::from_exact(ExactComplex(Rational(num, den)));
        }
      }
    }
  }
  return block(n, n, n, n, std::move(data), "random_triangle(" + std::to_string(n) + "," + std::to_string(seed) + ")");
}

template <class S>
S Matrix4D<S>::operator()(std::size_t m, std::size_t n, std::size_t k, std::size_t l) const {
  switch (kind_) {
    case MatrixKind::stencil: {
      S v{};
      for (const auto& t : taps_) {
        if (static_cast<long>(m) + t.dk == static_cast<long>(k) && static_cast<long>(n) + t.dl == static_cast<long>(l)) {
          v += t.coef;
        }
      }
      return v;
    }
    case MatrixKind::closed: return entry_(m, n, k, l);
    case MatrixKind::block:
      if (m >= M_ || n >= N_ || k >= K_ || l >= L_) return S{};
      return (*block_)[((m * N_ + n) * K_ + k) * L_ + l];
  }
  return S{};
}

template <class S>
const S* Matrix4D<S>::block_row(std::size_t m, std::size_t n) const {
  if (kind_ != MatrixKind::block || m >= M_ || n >= N_) return nullptr;
  return block_->data() + (m * N_ + n) * K_ * L_;
}

template <class S>
DoubleSeq<S> Matrix4D<S>::row(std::size_t m, std::size_t n) const {
  std::vector<S> vals(K_ * L_);
  std::optional<FamilyTag> tag;
  if (kind_ == MatrixKind::stencil) {
    for (const auto& t : taps_) {
      long k = static_cast<long>(m) + t.dk;
      long l = static_cast<long>(n) + t.dl;
      if (k >= 0 && l >= 0 && k < static_cast<long>(K_) && l < static_cast<long>(L_)) {
        vals[static_cast<std::size_t>(k) * L_ + static_cast<std::size_t>(l)] += t.coef;
      }
    }
  } else if (kind_ == MatrixKind::block) {
    auto first = block_->begin() + static_cast<long>((m * N_ + n) * K_ * L_);
    std::copy(first, first + static_cast<long>(K_ * L_), vals.begin());
  } else {
    for (std::size_t k = 0; k < K_; ++k) {
      for (std::size_t l = 0; l < L_; ++l) vals[k * L_ + l] = entry_(m, n, k, l);
    }
    if (row_tag_) tag = row_tag_(m, n);
  }
  if (!tag && finite_rows()) tag = FamilyTag{FiniteSupportTag{K_, L_}};
  return DoubleSeq<S>(K_, L_, std::move(vals), tag);
}

template <class S>
bool Matrix4D<S>::finite_rows() const {
  switch (kind_) {
    case MatrixKind::stencil:
      for (const auto& t : taps_) {
        if (static_cast<long>(M_) - 1 + t.dk >= static_cast<long>(K_)) return false;
        if (static_cast<long>(N_) - 1 + t.dl >= static_cast<long>(L_)) return false;
      }
      return true;
    case MatrixKind::closed: return closed_finite_rows_;
    case MatrixKind::block: return true;
  }
  return false;
}

template <class S>
Matrix4D<S> make_matrix(const MatrixSpec& spec) {
  const std::size_t M = spec.rows;
  const std::size_t N = spec.cols;
  if (M < 1 || N < 1) throw InvalidArgument("matrix bounds must be positive");
  auto cols_or = [&](std::size_t k, std::size_t l) {
    return std::make_pair(spec.col_rows.value_or(k), spec.col_cols.value_or(l));
  };
  if (spec.kind == "identity") {
    auto [K, L] = cols_or(M, N);
    return Matrix4D<S>::stencil({{0, 0, Tr<S>::from_int(1)}}, M, N, K, L, "identity");
  }
  if (spec.kind == "delta") {
    auto [K, L] = cols_or(M + 1, N + 1);
    return Matrix4D<S>::stencil(delta_taps<S>(), M, N, K, L, "delta");
  }
  if (spec.kind == "zero") {
    auto [K, L] = cols_or(M, N);
    return Matrix4D<S>::zero(M, N, K, L);
  }
  if (spec.kind == "ones_row") {
    auto [K, L] = cols_or(M, N);
    return Matrix4D<S>::ones_row(M, N, K, L);
  }
  if (spec.kind == "constant_rows") {
    auto [K, L] = cols_or(M, N);
    return Matrix4D<S>::constant_rows(spec.family, M, N, K, L);
  }
  if (spec.kind == "cesaro") return Matrix4D<S>::cesaro(M);
  if (spec.kind == "random_triangle") return Matrix4D<S>::random_triangle(M, spec.seed);
  if (spec.kind == "stencil") {
    long dk = 0;
    long dl = 0;
    std::vector<StencilTap<S>> taps;
    for (const auto& t : spec.taps) {
      dk = std::max(dk, t.dk);
      dl = std::max(dl, t.dl);
      taps.push_back({t.dk, t.dl, Tr<S>::from_exact(t.coef)});
    }
    auto [K, L] = cols_or(M + static_cast<std::size_t>(dk), N + static_cast<std::size_t>(dl));
    return Matrix4D<S>::stencil(std::move(taps), M, N, K, L, "stencil");
  }
  throw InvalidArgument("unknown matrix kind '" + spec.kind + "'");
}

template <class S>
ApplyResult<S> apply_matrix(const Matrix4D<S>& A, const DoubleSeq<S>& x, Theta theta, const DetectParams& params) {
  if (x.rows() != A.K() || x.cols() != A.L()) {
    throw DimensionMismatch("matrix columns are " + std::to_string(A.K()) + "x" + std::to_string(A.L()) +
                            " but the sequence is " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
  }
  ApplyResult<S> out;
  std::vector<S> y(A.M() * A.N());
  const bool finite = A.finite_rows();
  for (std::size_t m = 0; m < A.M(); ++m) {
    for (std::size_t n = 0; n < A.N(); ++n) {
      S& v = y[m * A.N() + n];
      if (finite && A.kind() == MatrixKind::stencil) {
        for (const auto& t : A.taps()) {
          long k = static_cast<long>(m) + t.dk;
          long l = static_cast<long>(n) + t.dl;
          if (k >= 0 && l >= 0) v += t.coef * x(static_cast<std::size_t>(k), static_cast<std::size_t>(l));
        }
        out.entries.push_back(holds_verdict<S>());
        continue;
      }
      if (finite) {
        if (const S* row = A.block_row(m, n)) {
          for (std::size_t i = 0; i < x.data().size(); ++i) add_product(v, row[i], x.data()[i]);
        } else {
          for (std::size_t k = 0; k < A.K(); ++k) {
            for (std::size_t l = 0; l < A.L(); ++l) add_product(v, A(m, n, k, l), x(k, l));
          }
        }
        out.entries.push_back(holds_verdict<S>());
        continue;
      }
      DoubleSeq<S> z = pointwise(PointwiseOp::hadamard, A.row(m, n), x);
      for (const auto& e : z.data()) v += e;
      Verdict<S> verdict = cs_verdict(z, theta, params);
      if (verdict.holds() && verdict.estimate) v = verdict.estimate->value;
      verdict.witness.indices.insert(verdict.witness.indices.begin(), Index2{m, n});
      out.entries.push_back(std::move(verdict));
    }
  }
  std::optional<FamilyTag> tag;
  if (x.family() && A.kind() == MatrixKind::stencil) {
    if (same_taps(A.taps(), delta_taps<S>())) {
      tag = tag::forward_diff(*x.family());
    } else if (same_taps(A.taps(), {{0, 0, Tr<S>::from_int(1)}})) {
      tag = x.family();
    }
  }
  out.y = DoubleSeq<S>(A.M(), A.N(), std::move(y), tag);
  return out;
}

template <class S>
Verdict<S> summability_domain_member(const Matrix4D<S>& A, const DoubleSeq<S>& x, SpaceSpec target, Theta theta,
                                     const DetectParams& params) {
  ApplyResult<S> r = apply_matrix(A, x, theta, params);
  std::optional<Verdict<S>> pending;
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    const auto& v = r.entries[i];
    if (v.fails()) {
      Verdict<S> f = v;
      f.reason = "series for entry (" + std::to_string(i / A.N()) + "," + std::to_string(i % A.N()) + ") diverges";
      return f;
    }
    if (v.state == State::inconclusive && !pending) pending = v;
  }
  Verdict<S> member = space_membership(r.y, target, params);
  if (member.fails()) return member;
  if (pending) return *pending;
  return member;
}

template <class S>
Matrix4D<S> build_B(const Matrix4D<S>& A) {
  const std::string name = "B(" + A.name() + ")";
  if (A.kind() == MatrixKind::stencil) {
    auto taps = A.taps();
    auto entry = [taps](std::size_t m, std::size_t n, std::size_t k, std::size_t l) {
      S v{};
      for (const auto& t : taps) {
        long i = static_cast<long>(m) + t.dk;
        long j = static_cast<long>(n) + t.dl;
        if (i >= 0 && j >= 0 && i >= static_cast<long>(k) && j >= static_cast<long>(l)) v += t.coef;
      }
      return v;
    };
    return Matrix4D<S>::closed(name, entry, A.M(), A.N(), A.K(), A.L(), A.finite_rows(), false);
  }
  const std::size_t K = A.K();
  const std::size_t L = A.L();
  auto data = std::make_shared<std::vector<S>>(A.M() * A.N() * K * L);
  bool truncated = false;
  for (std::size_t m = 0; m < A.M(); ++m) {
    for (std::size_t n = 0; n < A.N(); ++n) {
      DoubleSeq<S> row = A.row(m, n);
      auto* out = data->data() + (m * A.N() + n) * K * L;
      bool done = A.finite_rows();
      if (!done && row.family()) {
        if (const auto* f = std::get_if<FiniteSupportTag>(&*row.family())) {
          done = f->rows <= K && f->cols <= L;
        } else if (const auto* s = std::get_if<SeparableTag>(&*row.family())) {
          AxisBehavior su = classify_series(s->rows);
          AxisBehavior sv = classify_series(s->cols);
          if (su.convergent() && sv.convergent() && su.limit && sv.limit) {
            // Inclusive tails from the exact series sums.
            std::vector<ExactComplex> tu(K), tv(L);
            ExactComplex run;
            for (std::size_t k = 0; k < K; ++k) {
              tu[k] = *su.limit - run;
              run += s->rows.value(k);
            }
            run = ExactComplex();
            for (std::size_t l = 0; l < L; ++l) {
              tv[l] = *sv.limit - run;
              run += s->cols.value(l);
            }
            for (std::size_t k = 0; k < K; ++k) {
              for (std::size_t l = 0; l < L; ++l) out[k * L + l] = Tr<S>::from_exact(tu[k] * tv[l]);
            }
            continue;
          }
        }
      }
      if (!done) truncated = true;
      DoubleSeq<S> tails = suffix_sum_grid(row);
      std::copy(tails.data().begin(), tails.data().end(), out);
    }
  }
  std::shared_ptr<const std::vector<S>> frozen = data;
  auto entry = [frozen, N = A.N(), K, L](std::size_t m, std::size_t n, std::size_t k, std::size_t l) {
    if (k >= K || l >= L) return S{};
    return (*frozen)[((m * N + n) * K + k) * L + l];
  };
  Matrix4D<S> B = Matrix4D<S>::closed(name, entry, A.M(), A.N(), K, L, !truncated, false);
  B.set_tail_truncated(truncated);
  return B;
}

template <class S>
Matrix4D<S> build_F(const Matrix4D<S>& A) {
  if (A.M() < 2 || A.N() < 2) throw InvalidArgument("difference matrix needs at least 2x2 rows");
  const std::string name = "F(" + A.name() + ")";
  if (A.kind() == MatrixKind::stencil) {
    std::vector<StencilTap<S>> taps;
    for (const auto& t : A.taps()) {
      // Row (m+1, n) of a stencil is row (m, n) shifted one column index down.
      taps.push_back({t.dk, t.dl, t.coef});
      taps.push_back({t.dk + 1, t.dl, -t.coef});
      taps.push_back({t.dk, t.dl + 1, -t.coef});
      taps.push_back({t.dk + 1, t.dl + 1, t.coef});
    }
    return Matrix4D<S>::stencil(std::move(taps), A.M() - 1, A.N() - 1, A.K(), A.L(), name);
  }
  auto entry = [A](std::size_t m, std::size_t n, std::size_t k, std::size_t l) {
    return A(m, n, k, l) - A(m + 1, n, k, l) - A(m, n + 1, k, l) + A(m + 1, n + 1, k, l);
  };
  auto row_tag = [A](std::size_t m, std::size_t n) -> std::optional<FamilyTag> {
    auto t00 = A.row(m, n).family();
    auto t10 = A.row(m + 1, n).family();
    auto t01 = A.row(m, n + 1).family();
    auto t11 = A.row(m + 1, n + 1).family();
    if (!t00 || !t10 || !t01 || !t11) return std::nullopt;
    auto neg = [](const FamilyTag& t) { return tag::scaled(t, ExactComplex(-1)); };
    auto n10 = neg(*t10);
    auto n01 = neg(*t01);
    if (!n10 || !n01) return std::nullopt;
    auto s1 = tag::sum(*t00, *n10);
    if (!s1) return std::nullopt;
    auto s2 = tag::sum(*s1, *n01);
    if (!s2) return std::nullopt;
    return tag::sum(*s2, *t11);
  };
  return Matrix4D<S>::closed(name, entry, A.M() - 1, A.N() - 1, A.K(), A.L(), A.finite_rows(), false, row_tag);
}

std::string ConditionId::label() const {
  switch (id) {
    case Condition::c3_0: return "C3.0";
    case Condition::c3_01: return "C3.01";
    case Condition::c3_99: return "C3.99";
    case Condition::c3_9: return "C3.9";
    case Condition::c3_10: return "C3.10";
    case Condition::c3_7: return "C3.7";
    case Condition::c3_8: return "C3.8";
    case Condition::c3_15: return "C3.15";
    case Condition::c3_151: return "C3.151";
    case Condition::c3_152: return "C3.152";
    case Condition::c3_153: return "C3.153";
  }
  return "?";
}

ConditionId ConditionId::parse(const std::string& text) {
  std::string name = text;
  Theta theta = Theta::bp;
  auto open = text.find('(');
  if (open != std::string::npos) {
    if (text.back() != ')') throw ParseError("unbalanced parenthesis in '" + text + "'");
    name = text.substr(0, open);
    theta = parse_theta(text.substr(open + 1, text.size() - open - 2));
  }
  for (auto c : {Condition::c3_0, Condition::c3_01, Condition::c3_99, Condition::c3_9, Condition::c3_10, Condition::c3_7,
                 Condition::c3_8, Condition::c3_15, Condition::c3_151, Condition::c3_152, Condition::c3_153}) {
    ConditionId id{c, theta};
    if (id.label() == name) return id;
  }
  throw InvalidArgument("unknown condition '" + text + "'");
}

namespace {

std::string pair_text(std::size_t a, std::size_t b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

/// Evaluates the registry conditions on one matrix, sharing rows and limits between them.
template <class S>
class ConditionEvaluator {
 public:
  ConditionEvaluator(const Matrix4D<S>& A, const DetectParams& params) : A_(A), params_(params) {
    params_.validate(A.M(), A.N());
    n0_ = params_.n0(A.M(), A.N());
    rows_.reserve(A.M() * A.N());
    for (std::size_t m = 0; m < A.M(); ++m) {
      for (std::size_t n = 0; n < A.N(); ++n) rows_.push_back(A.row(m, n));
    }
  }

  Verdict<S> check(ConditionId id) {
    switch (id.id) {
      case Condition::c3_0: return absolute_bound();
      case Condition::c3_01: return limits(id.theta).box;
      case Condition::c3_99: return total_limit(id.theta);
      case Condition::c3_9: return deviation_line(id.theta, true);
      case Condition::c3_10: return deviation_line(id.theta, false);
      case Condition::c3_7: return line_sum_limit(id.theta, false);
      case Condition::c3_8: return line_sum_limit(id.theta, true);
      case Condition::c3_15: return total_deviation();
      case Condition::c3_151: return partial_line_limits(true);
      case Condition::c3_152: return partial_line_limits(false);
      case Condition::c3_153: return rows_absolutely_summable();
    }
    throw InvalidArgument("unknown condition");
  }

 private:
  struct Limits {
    Verdict<S> box;
    DoubleSeq<S> values;
  };

  const DoubleSeq<S>& row(std::size_t m, std::size_t n) const { return rows_[m * A_.N() + n]; }

  template <class F>
  DoubleSeq<S> over_rows(F f) const {
    std::vector<S> vals(A_.M() * A_.N());
    for (std::size_t m = 0; m < A_.M(); ++m) {
      for (std::size_t n = 0; n < A_.N(); ++n) vals[m * A_.N() + n] = f(row(m, n));
    }
    return DoubleSeq<S>(A_.M(), A_.N(), std::move(vals));
  }

  std::size_t box_rows() const { return std::min(n0_, A_.K()); }
  std::size_t box_cols() const { return std::min(n0_, A_.L()); }

  Verdict<S> rows_absolutely_summable() {
    if (A_.finite_rows()) return holds_verdict<S>("rows have finite support");
    std::optional<Verdict<S>> pending;
    for (std::size_t m = 0; m < A_.M(); ++m) {
      for (std::size_t n = 0; n < A_.N(); ++n) {
        Verdict<S> v = space_membership(partial_sum_grid(abs_grid(row(m, n))), SpaceSpec{Space::C_p}, params_);
        if (v.fails()) {
          return fails_verdict<S>(Witness{{Index2{m, n}}, v.witness.bound, "row " + pair_text(m, n) + " is not absolutely summable"},
                                  "row " + pair_text(m, n) + " is not absolutely summable");
        }
        if (v.state == State::inconclusive && !pending) {
          pending = inconclusive_verdict<S>("absolute summability of row " + pair_text(m, n) + " undecided");
        }
      }
    }
    if (pending) return *pending;
    return holds_verdict<S>("every row is absolutely summable");
  }

  Verdict<S> absolute_bound() {
    Verdict<S> rows = rows_absolutely_summable();
    if (rows.fails()) return rows;
    DoubleSeq<S> sums = over_rows([](const DoubleSeq<S>& r) {
      RealOf<S> t{};
      for (const auto& v : r.data()) t += Tr<S>::abs(v);
      return Tr<S>::from_real(t);
    });
    Verdict<S> bound = space_membership(sums, SpaceSpec{Space::M_u}, params_);
    if (bound.fails()) {
      bound.witness.detail = "absolute row sums grow; largest at row " + pair_text(bound.witness.indices.at(0).k,
                                                                                 bound.witness.indices.at(0).l);
      return bound;
    }
    if (rows.state == State::inconclusive) return rows;
    double sup = 0.0;
    for (const auto& v : sums.data()) sup = std::max(sup, modulus(v));
    bound.witness = Witness{{}, sup, "sup of absolute row sums"};
    return bound;
  }

  const Limits& limits(Theta theta) {
    auto it = limits_.find(theta);
    if (it != limits_.end()) return it->second;
    std::vector<S> vals(A_.K() * A_.L());
    std::vector<Verdict<S>> box;
    for (std::size_t k = 0; k < A_.K(); ++k) {
      for (std::size_t l = 0; l < A_.L(); ++l) {
        DoubleSeq<S> g = over_rows([&](const DoubleSeq<S>& r) { return r(k, l); });
        Verdict<S> v = space_membership(g, SpaceSpec{theta_space(theta)}, params_);
        vals[k * A_.L() + l] = v.holds() && v.estimate ? v.estimate->value : g(A_.M() - 1, A_.N() - 1);
        if (k < box_rows() && l < box_cols()) {
          if (!v.holds()) {
            v.reason = "entry " + pair_text(k, l) + ": " + v.reason;
            v.witness.detail = "column index " + pair_text(k, l) + (v.witness.detail.empty() ? "" : "; " + v.witness.detail);
          }
          box.push_back(std::move(v));
        }
      }
    }
    Verdict<S> joined = conjoin(box);
    if (joined.holds()) joined = holds_verdict<S>("every entry limit exists on the " + pair_text(box_rows(), box_cols()) + " box");
    auto [pos, ok] = limits_.emplace(theta, Limits{joined, DoubleSeq<S>(A_.K(), A_.L(), std::move(vals))});
    (void)ok;
    return pos->second;
  }

  Verdict<S> total_limit(Theta theta) {
    DoubleSeq<S> g = over_rows([](const DoubleSeq<S>& r) {
      S t{};
      for (const auto& v : r.data()) t += v;
      return t;
    });
    return space_membership(g, SpaceSpec{theta_space(theta)}, params_);
  }

  /// Existential search: Holds on the first candidate that works, Fails when all fail.
  template <class F>
  Verdict<S> exists(std::size_t count, const std::string& what, F candidate) {
    std::optional<Verdict<S>> first_fail;
    bool undecided = false;
    for (std::size_t i = 0; i < count; ++i) {
      Verdict<S> v = candidate(i);
      if (v.holds()) {
        v.reason = what + " = " + std::to_string(i) + " works";
        v.witness = Witness{{}, static_cast<double>(i), what + " = " + std::to_string(i)};
        return v;
      }
      if (v.fails() && !first_fail) first_fail = v;
      if (v.state == State::inconclusive) undecided = true;
    }
    if (undecided || !first_fail) return inconclusive_verdict<S>("no " + what + " decided");
    Verdict<S> f = *first_fail;
    f.reason = "no " + what + " works";
    return f;
  }

  Verdict<S> inherit(const Verdict<S>& base) {
    if (base.fails()) {
      Verdict<S> v = base;
      v.reason = "entry limits do not exist: " + base.reason;
      return v;
    }
    return inconclusive_verdict<S>("entry limits undecided: " + base.reason);
  }

  Verdict<S> deviation_line(Theta theta, bool fixed_row) {
    const Limits& lim = limits(theta);
    if (!lim.box.holds()) return inherit(lim.box);
    const std::size_t count = fixed_row ? A_.K() : A_.L();
    return exists(count, fixed_row ? "k0" : "l0", [&](std::size_t i) {
      DoubleSeq<S> g = over_rows([&](const DoubleSeq<S>& r) {
        RealOf<S> t{};
        const std::size_t len = fixed_row ? A_.L() : A_.K();
        for (std::size_t j = 0; j < len; ++j) {
          t += fixed_row ? Tr<S>::abs(r(i, j) - lim.values(i, j)) : Tr<S>::abs(r(j, i) - lim.values(j, i));
        }
        return Tr<S>::from_real(t);
      });
      return space_membership(g, SpaceSpec{theta_space(theta, true)}, params_);
    });
  }

  Verdict<S> line_sum_limit(Theta theta, bool fixed_row) {
    const std::size_t count = fixed_row ? A_.K() : A_.L();
    return exists(count, fixed_row ? "k0" : "l0", [&](std::size_t i) {
      DoubleSeq<S> g = over_rows([&](const DoubleSeq<S>& r) {
        S t{};
        const std::size_t len = fixed_row ? A_.L() : A_.K();
        for (std::size_t j = 0; j < len; ++j) t += fixed_row ? r(i, j) : r(j, i);
        return t;
      });
      return space_membership(g, SpaceSpec{theta_space(theta)}, params_);
    });
  }

  Verdict<S> total_deviation() {
    const Limits& lim = limits(Theta::bp);
    if (!lim.box.holds()) return inherit(lim.box);
    DoubleSeq<S> g = over_rows([&](const DoubleSeq<S>& r) {
      RealOf<S> t{};
      for (std::size_t i = 0; i < r.size(); ++i) t += Tr<S>::abs(r.data()[i] - lim.values.data()[i]);
      return Tr<S>::from_real(t);
    });
    return space_membership(g, SpaceSpec{Space::C_bp0}, params_);
  }

  Verdict<S> partial_line_limits(bool fixed_row) {
    const std::size_t count = fixed_row ? box_rows() : box_cols();
    std::vector<Verdict<S>> parts;
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<S> vals(A_.M() * A_.N());
      for (std::size_t m = 0; m < A_.M(); ++m) {
        for (std::size_t n = 0; n < A_.N(); ++n) {
          const DoubleSeq<S>& r = row(m, n);
          S t{};
          const std::size_t stop = fixed_row ? std::min(n + 1, A_.L()) : std::min(m + 1, A_.K());
          for (std::size_t j = 0; j < stop; ++j) t += fixed_row ? r(i, j) : r(j, i);
          vals[m * A_.N() + n] = t;
        }
      }
      Verdict<S> v = space_membership(DoubleSeq<S>(A_.M(), A_.N(), std::move(vals)), SpaceSpec{Space::C_bp}, params_);
      if (!v.holds()) v.reason = (fixed_row ? "k = " : "l = ") + std::to_string(i) + ": " + v.reason;
      parts.push_back(std::move(v));
    }
    return conjoin(parts);
  }

  const Matrix4D<S>& A_;
  DetectParams params_;
  std::size_t n0_ = 0;
  std::vector<DoubleSeq<S>> rows_;
  std::map<Theta, Limits> limits_;
};

std::vector<Condition> class_conditions(int number) {
  using C = Condition;
  switch (number) {
    case 1:
    case 3: return {C::c3_0};
    case 2: return {C::c3_0, C::c3_01, C::c3_15, C::c3_151, C::c3_152, C::c3_153};
    case 4: return {C::c3_0, C::c3_01, C::c3_99, C::c3_9, C::c3_10};
    case 5: return {C::c3_0, C::c3_01, C::c3_99, C::c3_7, C::c3_8};
  }
  throw InvalidArgument("unknown class " + std::to_string(number));
}

Theta target_theta(Space target) { return target == Space::C_r ? Theta::r : Theta::bp; }

/// Overall verdict naming the first failing or undecided part.
template <class S>
Verdict<S> overall_of(const std::vector<NamedVerdict<S>>& parts) {
  for (const auto& p : parts) {
    if (p.verdict.fails()) {
      Verdict<S> v = p.verdict;
      v.witness.detail = p.name + (v.witness.detail.empty() ? "" : ": " + v.witness.detail);
      v.reason = p.name + " fails: " + v.reason;
      return v;
    }
  }
  for (const auto& p : parts) {
    if (p.verdict.state == State::inconclusive) {
      Verdict<S> v = p.verdict;
      v.reason = p.name + " undecided: " + v.reason;
      return v;
    }
  }
  return holds_verdict<S>("all " + std::to_string(parts.size()) + " conditions hold");
}

}  // namespace

template <class S>
Verdict<S> condition_check(const Matrix4D<S>& A, ConditionId id, const DetectParams& params) {
  ConditionEvaluator<S> eval(A, params);
  return eval.check(id);
}

bool registry_space(Space s) { return s == Space::M_u || s == Space::C_bp || s == Space::C_r; }

int class_number(Space source, Space target) {
  if (!registry_space(source) || !registry_space(target)) {
    throw InvalidArgument("class registry covers M_u, C_bp and C_r only, got (" + to_string(source) + ", " +
                          to_string(target) + ")");
  }
  if ((source == Space::M_u && target == Space::C_r) || (source == Space::C_r && target == Space::M_u)) {
    throw Unsupported("no known characterization for (" + to_string(source) + " : " + to_string(target) + ")");
  }
  if (source == Space::M_u) return target == Space::M_u ? 1 : 2;
  if (source == Space::C_bp) return target == Space::M_u ? 3 : 4;
  return 5;
}

template <class S>
ClassReport<S> class_check(const Matrix4D<S>& A, Space source, Space target, const DetectParams& params) {
  ClassReport<S> report;
  report.source = to_string(source);
  report.target = to_string(target);
  report.class_number = class_number(source, target);
  const Theta theta = target_theta(target);
  ConditionEvaluator<S> eval(A, params);
  for (Condition c : class_conditions(report.class_number)) {
    ConditionId id{c, theta};
    report.conditions.push_back({id.label(), eval.check(id)});
  }
  report.overall = overall_of(report.conditions);
  return report;
}

namespace {

template <class S>
Verdict<S> rows_in_dual(const Matrix4D<S>& A, const std::vector<Sample<S>>& samples, Theta theta,
                        const DetectParams& params) {
  if (samples.empty()) return inconclusive_verdict<S>("no samples survived the membership filter");
  DualSpec beta{DualKind::beta, theta};
  std::optional<Verdict<S>> pending;
  for (std::size_t m = 0; m < A.M(); ++m) {
    for (std::size_t n = 0; n < A.N(); ++n) {
      Verdict<S> v = dual_membership(A.row(m, n), beta, samples, params);
      if (v.fails()) {
        v.witness.indices = {Index2{m, n}};
        v.witness.detail = "row " + pair_text(m, n) + ": " + v.witness.detail;
        v.reason = "row " + pair_text(m, n) + " outside the beta dual; " + v.reason;
        return v;
      }
      if (v.state == State::inconclusive && !pending) {
        v.reason = "row " + pair_text(m, n) + ": " + v.reason;
        pending = v;
      }
    }
  }
  if (pending) return *pending;
  return holds_verdict<S>("every row pairs with all " + std::to_string(samples.size()) + " samples");
}

template <class S>
void append_prefixed(ClassReport<S>& report, const ClassReport<S>& inner, const std::string& prefix) {
  for (const auto& c : inner.conditions) report.conditions.push_back({prefix + c.name, c.verdict});
}

}  // namespace

template <class S>
ClassReport<S> domain_source_class_check(const Matrix4D<S>& A, Space source, Space target, const DetectParams& params) {
  ClassReport<S> report;
  report.source = to_string(source) + "(Delta)";
  report.target = to_string(target);
  report.class_number = class_number(source, target);
  const Theta theta = target_theta(target);
  auto samples = sample_battery<S>(source, A.K(), A.L(), params);
  report.extra.push_back({"rows_in_beta_dual", rows_in_dual(A, samples, theta, params)});
  std::vector<S> sums(A.M() * A.N());
  for (std::size_t m = 0; m < A.M(); ++m) {
    for (std::size_t n = 0; n < A.N(); ++n) {
      DoubleSeq<S> r = A.row(m, n);
      S t{};
      for (std::size_t k = 1; k < r.rows(); ++k) {
        for (std::size_t l = 1; l < r.cols(); ++l) t += Tr<S>::from_int(static_cast<long>(k * l)) * r(k, l);
      }
      sums[m * A.N() + n] = t;
    }
  }
  report.extra.push_back({"weighted_row_sums", space_membership(DoubleSeq<S>(A.M(), A.N(), std::move(sums)),
                                                                SpaceSpec{target}, params)});
  ClassReport<S> inner = class_check(build_B(A), source, target, params);
  append_prefixed(report, inner, "B:");
  std::vector<NamedVerdict<S>> all = report.extra;
  all.insert(all.end(), report.conditions.begin(), report.conditions.end());
  report.overall = overall_of(all);
  return report;
}

template <class S>
ClassReport<S> domain_target_class_check(const Matrix4D<S>& A, Space source, Space target, const DetectParams& params) {
  ClassReport<S> report;
  report.source = to_string(source);
  report.target = to_string(target) + "(Delta)";
  report.class_number = class_number(source, target);
  const Theta theta = target_theta(target);
  auto samples = plain_battery<S>(source, A.K(), A.L(), params);
  report.extra.push_back({"rows_in_beta_dual", rows_in_dual(A, samples, theta, params)});
  ClassReport<S> inner = class_check(build_F(A), source, target, params);
  append_prefixed(report, inner, "F:");
  std::vector<NamedVerdict<S>> all = report.extra;
  all.insert(all.end(), report.conditions.begin(), report.conditions.end());
  report.overall = overall_of(all);
  return report;
}

template <class S>
IdentityReport<S> thm41_identity_harness(const Matrix4D<S>& A, const std::vector<DoubleSeq<S>>& samples,
                                         const DetectParams& params) {
  if (!A.finite_rows()) throw InvalidArgument("identity harness needs a matrix with finite rows");
  Matrix4D<S> B = build_B(A);
  IdentityReport<S> report;
  for (const auto& y : samples) {
    if (y.rows() + 1 != A.K() || y.cols() + 1 != A.L()) {
      throw DimensionMismatch("sample must be " + std::to_string(A.K() - 1) + "x" + std::to_string(A.L() - 1));
    }
    DoubleSeq<S> x = inverse_difference(y, BoundaryData<S>::zero(A.K(), A.L()));
    DoubleSeq<S> ax = apply_matrix(A, x, Theta::p, params).y;
    for (std::size_t m = 0; m < A.M(); ++m) {
      for (std::size_t n = 0; n < A.N(); ++n) {
        S by{};
        for (std::size_t k = 1; k < A.K(); ++k) {
          for (std::size_t l = 1; l < A.L(); ++l) {
            if (const S* row = B.block_row(m, n)) {
              add_product(by, row[k * B.L() + l], y(k - 1, l - 1));
            } else {
              add_product(by, B(m, n, k, l), y(k - 1, l - 1));
            }
          }
        }
        if (!same_value(ax(m, n), by)) {
          ++report.mismatches;
          report.max_error = std::max(report.max_error, modulus(S(ax(m, n) - by)));
          if (!report.first_mismatch) report.first_mismatch = Index2{m, n};
        }
      }
    }
    ++report.instances;
  }
  if (report.mismatches == 0) {
    report.verdict = holds_verdict<S>("Ax = By on " + std::to_string(report.instances) + " samples");
  } else {
    report.verdict = fails_verdict<S>(Witness{{*report.first_mismatch}, report.max_error, "Ax differs from By"},
                                      std::to_string(report.mismatches) + " mismatched entries");
  }
  return report;
}

#define DSEQ_INSTANTIATE(S)                                                                                           \
  template class Matrix4D<S>;                                                                                         \
  template Matrix4D<S> make_matrix<S>(const MatrixSpec&);                                                             \
  template ApplyResult<S> apply_matrix<S>(const Matrix4D<S>&, const DoubleSeq<S>&, Theta, const DetectParams&);       \
  template Verdict<S> summability_domain_member<S>(const Matrix4D<S>&, const DoubleSeq<S>&, SpaceSpec, Theta,         \
                                                   const DetectParams&);                                              \
  template Matrix4D<S> build_B<S>(const Matrix4D<S>&);                                                                \
  template Matrix4D<S> build_F<S>(const Matrix4D<S>&);                                                                \
  template Verdict<S> condition_check<S>(const Matrix4D<S>&, ConditionId, const DetectParams&);                      \
  template ClassReport<S> class_check<S>(const Matrix4D<S>&, Space, Space, const DetectParams&);                      \
  template ClassReport<S> domain_source_class_check<S>(const Matrix4D<S>&, Space, Space, const DetectParams&);        \
  template ClassReport<S> domain_target_class_check<S>(const Matrix4D<S>&, Space, Space, const DetectParams&);        \
  template IdentityReport<S> thm41_identity_harness<S>(const Matrix4D<S>&, const std::vector<DoubleSeq<S>>&,          \
                                                       const DetectParams&);

DSEQ_INSTANTIATE(FloatComplex)
DSEQ_INSTANTIATE(ExactComplex)

}  // namespace dseq
