#pragma once

#include <optional>
#include <vector>

#include "coarse/cover.hpp"
#include "coarse/filtration.hpp"

namespace coarse {

// Witness that a carrier has property C against a concrete challenge chain:
// families U^1..U^n with n at most the chain depth, the i-th one disjoint at
// the i-th challenge level, all bounded by one explicit entourage, jointly
// covering the carrier. The carrier makes certificates on subspaces of a
// common ambient space composable.
struct PropertyCCertificate {
  Filtration challenge;
  std::vector<SubsetFamily> families;
  Entourage bound;
  PointSet carrier;
};

// Witness that a carrier has asymptotic dimension at most n at one scale:
// n + 1 families, each scale-disjoint and bounded, jointly covering the
// carrier.
struct DimensionCertificate {
  Entourage scale;
  std::vector<SubsetFamily> families;
  Entourage bound;
  PointSet carrier;
};

Verdict verify_property_c(const PropertyCCertificate& cert);
Verdict verify_dimension(const DimensionCertificate& cert);

// A dimension certificate answers every challenge chain whose level at the
// certificate's family count is inside the scale.
PropertyCCertificate propc_from_dimension(const DimensionCertificate& cert,
                                          const Filtration& challenge);

enum class SearchMode { exact, greedy };

// certificate set: found. Otherwise exhausted distinguishes a refutation
// backed by exhaustive search from a greedy give-up.
struct DimensionSearchResult {
  std::optional<DimensionCertificate> certificate;
  bool exhausted = false;
};

// Searches for a cover by at most n + 1 scale-disjoint families of
// bound-cliques over the full space. Exact mode enumerates point-to-family
// assignments with family-order symmetry breaking and is complete: any
// certificate restricts to one where each point lives in a single block, so
// an exhausted search refutes. Greedy mode sweeps points in index order into
// the first feasible family and block, and never refutes.
DimensionSearchResult search_dimension_certificate(const Entourage& scale,
                                                   const Entourage& bound,
                                                   int n, SearchMode mode,
                                                   int exact_limit = 16);

// Merges certificates on two carriers over the same challenge chain into one
// on the union, by saturating the second certificate's families into the
// first's. Requires the second certificate's families disjoint at the
// strengthened challenges built from the first's pooled family; fails
// otherwise with the violation.
PropertyCCertificate combine_covers_finite_union(
    const PropertyCCertificate& a, const PropertyCCertificate& b);

// Merges any number of certificates over a shared challenge chain and a
// common bound, given a core certificate absorbing the pairwise overlaps:
// piece families are restricted away from the core carrier, pooled across
// pieces (legal while the trimmed carriers stay separation-disjoint for a
// separation dominating the strengthened top challenge), then saturated into
// the core families, which must answer the strengthened challenges.
PropertyCCertificate combine_covers_infinite_union(
    const std::vector<PropertyCCertificate>& pieces,
    const PropertyCCertificate& core, const Entourage& separation);

}  // namespace coarse
