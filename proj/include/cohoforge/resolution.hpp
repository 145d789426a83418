#pragma once

// Free resolutions of the trivial module F_p over the group algebra F_p[G].
//
// A free module of rank r is stored as F_p^{r|G|}; entry j*|G| + h is the
// coefficient of h*e_j. The left action is g.(h e_j) = (gh) e_j. A map of
// free modules is stored by the images of the free generators, and the
// expanded matrix (rows h.d(e_i)) is only formed for kernel and solve work.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cohoforge/fp_linalg.hpp"
#include "cohoforge/group.hpp"

namespace cohoforge {

enum class Strategy { minimal, greedy };

std::string to_string(Strategy s);
/// Accepts "minimal" or "greedy"; throws std::invalid_argument otherwise.
Strategy parse_strategy(const std::string& s);

/// g.v on a free module of rank v.size()/|G|.
FpVector act(const FiniteGroup& g, Element x, const FpVector& v);

class FreeModuleMap {
 public:
  FreeModuleMap() = default;
  FreeModuleMap(GroupPtr group, std::uint32_t p, std::size_t source_rank, std::size_t target_rank,
                std::vector<FpVector> images);

  const GroupPtr& group() const { return group_; }
  std::uint32_t prime() const { return p_; }
  std::size_t source_rank() const { return source_rank_; }
  std::size_t target_rank() const { return target_rank_; }
  const std::vector<FpVector>& images() const { return images_; }
  const FpVector& image(std::size_t i) const { return images_[i]; }

  /// Applies the equivariant map to a vector of the source module.
  FpVector apply(const FpVector& v) const;
  /// The (source_rank |G|) x (target_rank |G|) matrix with rows h.image(i).
  FpMatrix expanded() const;
  /// Augmentation of each image component: r_source x r_target matrix.
  FpMatrix augmented() const;

 private:
  GroupPtr group_;
  std::uint32_t p_ = 2;
  std::size_t source_rank_ = 0;
  std::size_t target_rank_ = 0;
  std::vector<FpVector> images_;
};

/// Per-degree data of the cochain complex Hom_G(P_*, F_p) = F_p^{r_*}.
struct CohomologyDegree {
  Subspace cocycles;
  Subspace coboundaries;
  /// Cocycles reduced modulo the coboundaries' pivots; its rref basis is the
  /// canonical basis of H^n.
  Subspace quotient;
};

struct ExactnessReport {
  struct Degree {
    std::size_t degree;
    std::size_t rank;             // r_n
    std::size_t kernel_dim;       // dim ker d_n (ker of augmentation for n = 0)
    std::size_t next_image_dim;   // rank of d_{n+1}, or 0 past the end
    bool composite_zero;          // d_n d_{n+1} = 0 (augmentation for n = 0)
    bool exact;                   // kernel_dim == next_image_dim (only below N)
    bool minimal;                 // entries in the augmentation ideal
  };
  bool pass = true;
  std::vector<Degree> degrees;
  std::vector<std::string> failures;
};

class Resolution {
 public:
  /// differentials[k] is d_{k+1}: P_{k+1} -> P_k. Shapes are validated.
  Resolution(GroupPtr group, std::uint32_t p, Strategy strategy, std::vector<FreeModuleMap> differentials);

  const GroupPtr& group() const { return group_; }
  std::uint32_t prime() const { return p_; }
  Strategy strategy() const { return strategy_; }
  /// Number of differentials N.
  std::size_t length() const { return differentials_.size(); }
  std::size_t rank(std::size_t n) const;
  std::vector<std::size_t> ranks() const;
  /// d_n for 1 <= n <= length().
  const FreeModuleMap& differential(std::size_t n) const;

  /// Row solver for the expanded d_n (n >= 1) or the augmentation (n = 0).
  /// Built on first use and cached.
  std::shared_ptr<const RowSolver> solver(std::size_t n) const;
  /// Solves d_n(x) = y; throws std::logic_error when y is not a boundary.
  FpVector lift_through(std::size_t n, const FpVector& y) const;

  /// Needs n + 1 <= length().
  const CohomologyDegree& cohomology(std::size_t n) const;
  std::size_t cohomology_dim(std::size_t n) const { return cohomology(n).quotient.dim(); }
  /// Canonical representative: the cocycle reduced modulo coboundaries.
  FpVector canonical(std::size_t n, const FpVector& cocycle) const;
  /// Coordinates of the class of `cocycle` in the canonical basis of H^n.
  /// Throws std::invalid_argument when it is not a cocycle.
  FpVector coordinates(std::size_t n, const FpVector& cocycle) const;

  void install_solver(std::size_t n, std::shared_ptr<const RowSolver> s) const;

 private:
  GroupPtr group_;
  std::uint32_t p_;
  Strategy strategy_;
  std::vector<FreeModuleMap> differentials_;
  mutable std::mutex mutex_;
  mutable std::vector<std::shared_ptr<const RowSolver>> solvers_;
  mutable std::vector<std::unique_ptr<CohomologyDegree>> cohomology_;
};

using ResolutionPtr = std::shared_ptr<const Resolution>;

inline constexpr std::size_t kDefaultExpandedBudget = 16384;

struct BuildOptions {
  /// Largest allowed r_n |G| for any module in the resolution.
  std::size_t expanded_budget = kDefaultExpandedBudget;
};

/// Builds P_0..P_N. Throws std::invalid_argument for a non-prime p or for
/// the minimal strategy on a group that is not a p-group, and BudgetError
/// when some r_n |G| passes the budget.
ResolutionPtr build_resolution(const GroupPtr& g, std::uint32_t p, std::size_t n, Strategy strategy,
                               const BuildOptions& options = {});

/// Recomputes every resolution invariant. Never throws for bad data.
ExactnessReport verify_exactness(const Resolution& res);

/// dim H^0..H^n; needs length() >= n + 1.
std::vector<std::size_t> cohomology_dims(const Resolution& res, std::size_t n);

// ------------------------------------------------------------------ classes

struct CohClass {
  ResolutionPtr resolution;
  std::size_t degree = 0;
  FpVector cocycle;  // canonical-reduced, length r_degree

  bool is_zero() const { return cocycle.is_zero(); }
  FpVector coordinates() const { return resolution->coordinates(degree, cocycle); }
  friend bool operator==(const CohClass& a, const CohClass& b) {
    return a.resolution == b.resolution && a.degree == b.degree && a.cocycle == b.cocycle;
  }
};

/// Canonical basis of H^n in rref order.
std::vector<CohClass> cocycle_basis(const ResolutionPtr& res, std::size_t n);
/// Class of an arbitrary cocycle, reduced to canonical form.
CohClass make_class(const ResolutionPtr& res, std::size_t n, const FpVector& cocycle);
CohClass class_from_coordinates(const ResolutionPtr& res, std::size_t n, const FpVector& coords);
CohClass zero_class(const ResolutionPtr& res, std::size_t n);
CohClass operator+(const CohClass& a, const CohClass& b);
CohClass scale(const CohClass& a, std::uint32_t c);

/// Basis of Hom(G, F_p) as value tables over all elements.
std::vector<FpVector> hom_basis(const FiniteGroup& g, std::uint32_t p);
/// The hom with the given values on g.generators(), if it exists.
std::optional<FpVector> hom_from_generator_values(const FiniteGroup& g, std::uint32_t p,
                                                  const std::vector<std::uint32_t>& values);
/// The degree-one class of a homomorphism chi: G -> F_p.
CohClass class_of_hom(const ResolutionPtr& res, const FpVector& chi);
/// Dual of the named generator: the hom that is 1 there and 0 on the other
/// generators. Throws std::invalid_argument when no such hom exists.
CohClass generator_dual(const ResolutionPtr& res, const std::string& generator);

/// homs[i] is the homomorphism whose class is cocycle_basis(res, 1)[i].
std::vector<FpVector> h1_as_homs(const ResolutionPtr& res);

// ------------------------------------------------------------------ cache

/// Resolution cache directory: the given override, else $COHOFORGE_CACHE,
/// else ".cohoforge-cache".
std::filesystem::path cache_directory(const std::optional<std::string>& override_dir = {});

class ResolutionCache {
 public:
  explicit ResolutionCache(std::filesystem::path dir, BuildOptions options = {});

  /// In-memory, then disk, then build. A cached resolution at least as long
  /// as requested is reused as-is.
  ResolutionPtr get(const GroupPtr& g, std::uint32_t p, std::size_t n, Strategy strategy);
  const std::filesystem::path& directory() const { return dir_; }
  std::size_t disk_hits() const { return disk_hits_; }
  std::size_t builds() const { return builds_; }
  /// Snapshot of the resolutions held in memory.
  std::vector<ResolutionPtr> resolutions();

 private:
  std::filesystem::path dir_;
  BuildOptions options_;
  std::mutex mutex_;
  std::vector<ResolutionPtr> memory_;
  std::size_t disk_hits_ = 0;
  std::size_t builds_ = 0;
};

/// Binary format: "COHORES1", u32 p, u32 N, u32 |G|, u8 strategy,
/// u64 group fingerprint, u32 ranks[N+1], then the generator images of
/// d_1..d_N row-major, one byte per entry.
void save_resolution(const Resolution& res, const std::filesystem::path& file);
/// Returns nullptr when the file is missing, malformed, or for another group.
ResolutionPtr load_resolution(const GroupPtr& g, const std::filesystem::path& file);
std::string cache_file_name(const FiniteGroup& g, std::uint32_t p, std::size_t n, Strategy strategy);

}  // namespace cohoforge
