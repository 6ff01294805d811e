#pragma once

#include "dseq/errors.hpp"
#include "dseq/family.hpp"
#include "dseq/scalar.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dseq {

template <class S>
ExactComplex to_exact(const S& z);

/// A truncated complex double sequence x_kl, k < rows, l < cols, stored row-major.
template <class S>
class DoubleSeq {
 public:
  using scalar_type = S;

  DoubleSeq() = default;
  DoubleSeq(std::size_t rows, std::size_t cols);
  DoubleSeq(std::size_t rows, std::size_t cols, std::vector<S> data, std::optional<FamilyTag> family = std::nullopt,
            std::string name = {});

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  const S& operator()(std::size_t k, std::size_t l) const { return data_[k * cols_ + l]; }
  /// Mutable access drops the family tag since the closed form no longer applies.
  S& mut(std::size_t k, std::size_t l) {
    family_.reset();
    return data_[k * cols_ + l];
  }
  const std::vector<S>& data() const { return data_; }

  const std::optional<FamilyTag>& family() const { return family_; }
  void set_family(std::optional<FamilyTag> tag) { family_ = std::move(tag); }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  /// Set when boundary entries were passed through an operation undefined there.
  bool boundary_flagged() const { return boundary_flagged_; }
  void set_boundary_flagged(bool f) { boundary_flagged_ = f; }

  DoubleSeq restrict(std::size_t rows, std::size_t cols) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
  std::optional<FamilyTag> family_;
  std::string name_;
  bool boundary_flagged_ = false;
};

enum class FamilyKind {
  constant,
  ones,
  boos,
  monomial,
  geometric,
  alternating,
  basis_point,
  basis_row,
  basis_col,
  table,
  random_support,
};

std::string to_string(FamilyKind k);
FamilyKind parse_family_kind(const std::string& text);

/// Parameters of a builtin family. Unused fields are ignored by the chosen kind.
struct FamilySpec {
  FamilyKind kind = FamilyKind::ones;
  ExactComplex coef{1};
  int row_power = 0;
  int col_power = 0;
  ExactComplex row_ratio{1};
  ExactComplex col_ratio{1};
  std::size_t k0 = 0;
  std::size_t l0 = 0;
  std::vector<std::vector<ExactComplex>> table;
  std::uint64_t seed = 0;
  std::size_t support = 4;
  /// Apply the projection that zeroes row 0 and column 0.
  bool projected = false;

  static FamilySpec constant(const ExactComplex& c);
  static FamilySpec ones();
  static FamilySpec boos();
  static FamilySpec monomial(int a, int b, const ExactComplex& c = ExactComplex(1));
  static FamilySpec geometric(const ExactComplex& r, const ExactComplex& s, const ExactComplex& c = ExactComplex(1));
  static FamilySpec alternating();
  static FamilySpec basis_point(std::size_t k, std::size_t l);
  static FamilySpec basis_row(std::size_t k);
  static FamilySpec basis_col(std::size_t l);
  static FamilySpec from_table(std::vector<std::vector<ExactComplex>> rows);
  static FamilySpec random_support(std::uint64_t seed, std::size_t support);
  FamilySpec with_projection() const;

  std::string label() const;
  std::optional<FamilyTag> closed_form() const;
};

template <class S>
DoubleSeq<S> make_family(const FamilySpec& spec, std::size_t rows, std::size_t cols);

enum class PointwiseOp { add, sub, scale, hadamard };

template <class S>
DoubleSeq<S> pointwise(PointwiseOp op, const DoubleSeq<S>& x, const DoubleSeq<S>& y);
template <class S>
DoubleSeq<S> pointwise(PointwiseOp op, const DoubleSeq<S>& x, const S& c);

enum class IndexScaling { d, integral };

/// integral: x_kl -> k l x_kl. d: x_kl -> x_kl / (k l) for k, l >= 1, boundary passed through and flagged.
template <class S>
DoubleSeq<S> scale_by_index(const DoubleSeq<S>& x, IndexScaling direction);

DoubleSeq<FloatComplex> to_float_seq(const DoubleSeq<ExactComplex>& x);

template <class S>
void write_csv(std::ostream& os, const DoubleSeq<S>& x);
template <class S>
DoubleSeq<S> read_csv(std::istream& is);

template <class S>
bool same_grid(const DoubleSeq<S>& a, const DoubleSeq<S>& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a.data() == b.data();
}

}  // namespace dseq
