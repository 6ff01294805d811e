#pragma once

#include "dseq/convergence.hpp"
#include "dseq/double_seq.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace dseq {

/// First column x_{k,0}, first row x_{0,l} and the corner of a grid.
template <class S>
struct BoundaryData {
  std::vector<S> row0;
  std::vector<S> col0;
  S corner{};

  static BoundaryData zero(std::size_t rows, std::size_t cols);
  static BoundaryData of(const DoubleSeq<S>& x);
  void validate() const;
};

/// y_mn = x_mn - x_{m+1,n} - x_{m,n+1} + x_{m+1,n+1}; output is (K-1) x (L-1).
template <class S>
DoubleSeq<S> forward_difference(const DoubleSeq<S>& x);

/// Rebuilds a (K+1) x (L+1) grid from its differences and boundary.
template <class S>
DoubleSeq<S> inverse_difference(const DoubleSeq<S>& y, const BoundaryData<S>& boundary);

/// Both sides of sum_{i<=k, j<=l} (dx)_ij = x_{k+1,l+1} + x_00 - x_{k+1,0} - x_{0,l+1}.
template <class S>
std::pair<S, S> telescoping_identity(const DoubleSeq<S>& x, std::size_t k, std::size_t l);

/// Zeroes row 0 and column 0.
template <class S>
DoubleSeq<S> project_interior(const DoubleSeq<S>& x);

/// Membership of x in lambda(Delta): the base space applied to the difference grid.
template <class S>
Verdict<S> delta_space_membership(const DoubleSeq<S>& x, SpaceSpec base, const DetectParams& params = {});

/// sup |x_k0 + x_0l - x_00| + sup |dx|.
template <class S>
NormValue<RealOf<S>> delta_norm(const DoubleSeq<S>& x);

template <class S>
struct PairingCoefficients {
  DoubleSeq<S> a;
  RealOf<S> l1_norm{};
  bool l1_exact = true;
  /// The closed form of a is not absolutely summable.
  bool tail_diverges = false;

  /// Takes a_kl for k, l >= 1; row 0 and column 0 are ignored.
  static PairingCoefficients from(const DoubleSeq<S>& a);
};

template <class S>
struct FunctionalValue {
  S value{};
  RealOf<S> bound{};
  bool within = true;
};

/// sum_{k,l>=1} a_kl (dx)_kl with the bound sup|dx| * |a|_1. x must vanish on row 0 and column 0.
template <class S>
FunctionalValue<S> functional_apply(const PairingCoefficients<S>& a, const DoubleSeq<S>& x);

}  // namespace dseq
