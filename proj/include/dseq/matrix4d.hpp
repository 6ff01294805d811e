#pragma once

#include "dseq/convergence.hpp"
#include "dseq/double_seq.hpp"
#include "dseq/duals.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dseq {

enum class MatrixKind { stencil, closed, block };

std::string to_string(MatrixKind k);

/// a_{mn,m+dk,n+dl} = coef.
template <class S>
struct StencilTap {
  long dk = 0;
  long dl = 0;
  S coef{};
};

/// A four-dimensional matrix a_mnkl seen on rows m < M, n < N and columns k < K, l < L.
template <class S>
class Matrix4D {
 public:
  using Entry = std::function<S(std::size_t, std::size_t, std::size_t, std::size_t)>;
  using RowTag = std::function<std::optional<FamilyTag>(std::size_t, std::size_t)>;

  Matrix4D() = default;

  static Matrix4D stencil(std::vector<StencilTap<S>> taps, std::size_t M, std::size_t N, std::size_t K, std::size_t L,
                          std::string name = "stencil");
  static Matrix4D identity(std::size_t M, std::size_t N);
  /// The forward difference; columns extend one past the rows.
  static Matrix4D delta(std::size_t M, std::size_t N);
  static Matrix4D zero(std::size_t M, std::size_t N, std::size_t K, std::size_t L);
  /// finite_rows promises every row vanishes outside [0, K) x [0, L).
  static Matrix4D closed(std::string name, Entry entry, std::size_t M, std::size_t N, std::size_t K, std::size_t L,
                         bool finite_rows, bool triangular = false, RowTag row_tag = {});
  /// Row-major over (m, n, k, l); zero outside the bounds.
  static Matrix4D block(std::size_t M, std::size_t N, std::size_t K, std::size_t L, std::vector<S> data,
                        std::string name = "block");
  /// a_{00kl} = 1 for every k, l; all other rows zero.
  static Matrix4D ones_row(std::size_t M, std::size_t N, std::size_t K, std::size_t L);
  /// a_mnkl = x_kl for every m, n.
  static Matrix4D constant_rows(const FamilySpec& family, std::size_t M, std::size_t N, std::size_t K, std::size_t L);
  /// a_mnkl = 1 / ((m+1)(n+1)) for k <= m, l <= n.
  static Matrix4D cesaro(std::size_t n);
  /// Random rational lower triangle on n^4 entries with a nonzero diagonal.
  static Matrix4D random_triangle(std::size_t n, std::uint64_t seed);

  MatrixKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  std::size_t M() const { return M_; }
  std::size_t N() const { return N_; }
  std::size_t K() const { return K_; }
  std::size_t L() const { return L_; }
  const std::vector<StencilTap<S>>& taps() const { return taps_; }

  S operator()(std::size_t m, std::size_t n, std::size_t k, std::size_t l) const;
  /// Row (m, n) of a block matrix as K * L contiguous entries; null for other kinds.
  const S* block_row(std::size_t m, std::size_t n) const;

  /// Row (m, n) as a K x L grid, tagged when its closed form is known.
  DoubleSeq<S> row(std::size_t m, std::size_t n) const;
  /// Every row vanishes outside the column bounds, so row sums on the truncation are exact.
  bool finite_rows() const;
  bool triangular() const { return triangular_; }
  /// Entries were obtained from tails cut at the column bounds.
  bool tail_truncated() const { return tail_truncated_; }
  void set_tail_truncated(bool t) { tail_truncated_ = t; }

 private:
  MatrixKind kind_ = MatrixKind::block;
  std::string name_;
  std::size_t M_ = 0, N_ = 0, K_ = 0, L_ = 0;
  std::vector<StencilTap<S>> taps_;
  Entry entry_;
  RowTag row_tag_;
  bool closed_finite_rows_ = false;
  bool triangular_ = false;
  bool tail_truncated_ = false;
  std::shared_ptr<const std::vector<S>> block_;
};

/// Matrix description used by configs.
struct MatrixSpec {
  /// identity, delta, zero, ones_row, constant_rows, cesaro, random_triangle or stencil.
  std::string kind = "identity";
  std::size_t rows = 8;
  std::size_t cols = 8;
  /// Column bounds; default to the natural bounds of the kind.
  std::optional<std::size_t> col_rows;
  std::optional<std::size_t> col_cols;
  std::uint64_t seed = 1;
  FamilySpec family;
  std::vector<StencilTap<ExactComplex>> taps;
};

template <class S>
Matrix4D<S> make_matrix(const MatrixSpec& spec);

template <class S>
struct ApplyResult {
  DoubleSeq<S> y;
  /// Row-major over (m, n): whether each series sum_kl a_mnkl x_kl has a theta-limit.
  std::vector<Verdict<S>> entries;
};

template <class S>
ApplyResult<S> apply_matrix(const Matrix4D<S>& A, const DoubleSeq<S>& x, Theta theta = Theta::p,
                            const DetectParams& params = {});

/// Ax exists and lies in the target space.
template <class S>
Verdict<S> summability_domain_member(const Matrix4D<S>& A, const DoubleSeq<S>& x, SpaceSpec target,
                                     Theta theta = Theta::p, const DetectParams& params = {});

/// b_mnkl = sum_{i>=k, j>=l} a_mnij.
template <class S>
Matrix4D<S> build_B(const Matrix4D<S>& A);

/// f_mnkl = a_mnkl - a_{m+1,n,kl} - a_{m,n+1,kl} + a_{m+1,n+1,kl}.
template <class S>
Matrix4D<S> build_F(const Matrix4D<S>& A);

enum class Condition { c3_0, c3_01, c3_99, c3_9, c3_10, c3_7, c3_8, c3_15, c3_151, c3_152, c3_153 };

struct ConditionId {
  Condition id = Condition::c3_0;
  Theta theta = Theta::bp;

  std::string label() const;
  static ConditionId parse(const std::string& text);
};

template <class S>
Verdict<S> condition_check(const Matrix4D<S>& A, ConditionId id, const DetectParams& params = {});

template <class S>
struct NamedVerdict {
  std::string name;
  Verdict<S> verdict;
};

template <class S>
struct ClassReport {
  std::string source;
  std::string target;
  int class_number = 0;
  std::vector<NamedVerdict<S>> conditions;
  std::vector<NamedVerdict<S>> extra;
  Verdict<S> overall;
};

/// Spaces the class registry covers.
bool registry_space(Space s);
/// Class number of (source : target); throws Unsupported on the unknown cells.
int class_number(Space source, Space target);

template <class S>
ClassReport<S> class_check(const Matrix4D<S>& A, Space source, Space target, const DetectParams& params = {});

/// A in (source(Delta) : target).
template <class S>
ClassReport<S> domain_source_class_check(const Matrix4D<S>& A, Space source, Space target,
                                         const DetectParams& params = {});

/// A in (source : target(Delta)).
template <class S>
ClassReport<S> domain_target_class_check(const Matrix4D<S>& A, Space source, Space target,
                                         const DetectParams& params = {});

template <class S>
struct IdentityReport {
  std::size_t instances = 0;
  std::size_t mismatches = 0;
  double max_error = 0.0;
  std::optional<Index2> first_mismatch;
  Verdict<S> verdict;
};

/// Ax = By for x = inverse_difference(y, zero boundary), on each sample y of size (K-1) x (L-1).
template <class S>
IdentityReport<S> thm41_identity_harness(const Matrix4D<S>& A, const std::vector<DoubleSeq<S>>& samples,
                                         const DetectParams& params = {});

}  // namespace dseq
