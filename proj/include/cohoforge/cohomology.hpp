#pragma once

// Products and functoriality on H^*(G, F_p) computed from resolutions.
//
// A class of degree m is lifted to a chain map u_j: P_{m+j} -> P_j; the
// product with b of degree n is the cocycle b composed with u_n. Induced maps
// along a homomorphism G1 -> G2 use a chain map from a resolution of G1 into
// a resolution of G2 viewed as G1-modules.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "cohoforge/resolution.hpp"

namespace cohoforge {

struct ChainMapLift {
  CohClass cls;
  /// maps[j]: P_{m+j} -> P_j.
  std::vector<FreeModuleMap> maps;

  std::size_t stages() const { return maps.size(); }
};

/// Lift through stage k (maps u_0..u_k). Needs length >= degree + k.
ChainMapLift lift_cocycle(const CohClass& cls, std::size_t k);
/// Extends an existing lift to stage k.
void extend_lift(ChainMapLift& lift, std::size_t k);
/// Checks the lift invariants directly.
bool verify_lift(const ChainMapLift& lift);

/// b composed with stage deg(b) of the lift; the lift must reach that stage.
CohClass compose(const ChainMapLift& lift, const CohClass& b);
CohClass cup(const CohClass& a, const CohClass& b);

/// Chain map from a resolution P of G1 to a resolution R of G2 along psi,
/// built degree by degree on demand.
class ComparisonMap {
 public:
  ComparisonMap(GroupHom psi, ResolutionPtr source, ResolutionPtr target);

  const GroupHom& hom() const { return psi_; }
  const ResolutionPtr& source() const { return source_; }
  const ResolutionPtr& target() const { return target_; }

  /// Images F_k(e_i) in R_k for the free generators of P_k.
  const std::vector<FpVector>& stage(std::size_t k);
  /// Pulls a class on G2 back to G1.
  CohClass pull_back(const CohClass& cls);

 private:
  FpVector apply_previous(std::size_t k, const FpVector& v) const;

  GroupHom psi_;
  ResolutionPtr source_;
  ResolutionPtr target_;
  std::vector<std::vector<FpVector>> stages_;
};

/// Inflation along a surjection phi: G -> Q. `source` resolves G, `target`
/// resolves Q. Throws std::invalid_argument when phi is not surjective.
CohClass inflation(const GroupHom& phi, const ResolutionPtr& source, const ResolutionPtr& target,
                   const CohClass& cls);
/// Restriction along an injection H -> G. `source` resolves H, `target`
/// resolves G. Throws std::invalid_argument when the map is not injective.
CohClass restriction(const GroupHom& inclusion, const ResolutionPtr& source, const ResolutionPtr& target,
                     const CohClass& cls);

// ------------------------------------------------------------------ Dec ladder

class DecLadder {
 public:
  /// Needs length >= n + 1.
  DecLadder(ResolutionPtr res, std::size_t n);

  const ResolutionPtr& resolution() const { return res_; }
  std::size_t max_degree() const { return dec_.size() - 1; }
  /// Dec^k as a subspace of canonical H^k coordinates.
  const Subspace& dec(std::size_t k) const;
  std::vector<std::size_t> dims() const;

 private:
  ResolutionPtr res_;
  std::vector<Subspace> dec_;
};

DecLadder dec_ladder(const ResolutionPtr& res, std::size_t n);
/// Throws std::out_of_range when the ladder does not reach the degree.
bool is_fully_decomposable(const CohClass& cls, const DecLadder& ladder);

/// Convolution of two dimension sequences, truncated to the shorter length.
std::vector<std::size_t> kunneth_dims(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);

struct RingFingerprint {
  std::vector<std::size_t> dims;
  std::vector<std::size_t> dec_dims;
  std::vector<std::pair<std::string, bool>> identities;
};

/// Dims and Dec dims through degree n, plus degree-one identities among the
/// duals of the group's generators (products vanishing, y^2 = x y).
RingFingerprint ring_fingerprint(const ResolutionPtr& res, std::size_t n);

// ------------------------------------------------------------------ bar oracle

/// Normalized bar cochains over F_p: functions on tuples of non-identity
/// elements, stored densely in base (|G|-1) with the first entry most
/// significant.
struct BarCochain {
  std::size_t degree = 0;
  std::vector<std::uint32_t> values;
};

inline constexpr std::size_t kBarCellBudget = 1u << 16;

/// Transport between a resolution and the normalized bar resolution.
class BarComparison {
 public:
  /// Throws BudgetError when (|G|-1)^max_degree exceeds kBarCellBudget.
  BarComparison(ResolutionPtr res, std::size_t max_degree);

  const ResolutionPtr& resolution() const { return res_; }
  /// Bar cocycle representing a class of the resolution.
  BarCochain to_bar(const CohClass& cls);
  /// Class of a bar cocycle, pulled back to the resolution.
  CohClass from_bar(const BarCochain& c);
  /// Bar coboundary, for checking the cocycle condition.
  BarCochain coboundary(const BarCochain& c) const;

 private:
  const std::vector<FpVector>& psi(std::size_t k);
  const std::vector<std::vector<std::uint32_t>>& phi(std::size_t k);

  ResolutionPtr res_;
  std::size_t max_degree_;
  std::vector<std::vector<FpVector>> psi_;                   // bar tuple -> P_k
  std::vector<std::vector<std::vector<std::uint32_t>>> phi_;  // generator of P_k -> bar chain
};

/// Alexander-Whitney cup of bar cochains.
BarCochain cup_bar(const BarCochain& f, const BarCochain& g, std::size_t order, std::uint32_t p);
/// The oracle product: both classes moved to the bar complex, multiplied
/// there, and transported back.
CohClass cup_bar_oracle(BarComparison& bar, const CohClass& a, const CohClass& b);

}  // namespace cohoforge
