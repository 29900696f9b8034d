#ifndef CAPAX_RANDOM_HPP
#define CAPAX_RANDOM_HPP

#include <random>
#include <vector>

#include "capax/choquet.hpp"
#include "capax/psym.hpp"
#include "capax/set_function.hpp"

namespace capax {

using Rng = std::mt19937_64;

/// Random valid capacity: monotone fill over the subset lattice, normalized
/// so that mu(X) = 1.  Not belief in general.
Capacity random_capacity(const GroundSet& ground, Rng& rng);

/// Random axis-monotone compressed capacity over the given partition.
/// With continuous entries the planted partition is the coarsest one almost
/// surely.
PSymmetricCapacity random_psym_capacity(const GroundSet& ground,
                                        const IndifferencePartition& partition, Rng& rng);

/// Random belief p-symmetric capacity via nonnegative Mobius mass on
/// composition classes.  When within_blocks_only is set, mass is confined to
/// single-block compositions, which makes the interaction degree vanish.
PSymmetricCapacity random_belief_psym(const GroundSet& ground,
                                      const IndifferencePartition& partition, Rng& rng,
                                      bool within_blocks_only = false);

/// Random partition of the ground set into p nonempty blocks.
IndifferencePartition random_partition(const GroundSet& ground, int p, Rng& rng);

/// Uniform scores in [lo, hi].
ScoreVector random_scores(int n, Rng& rng, double lo = 0.0, double hi = 1.0);

}  // namespace capax

#endif
