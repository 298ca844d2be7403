#ifndef QSL_TESTS_ORACLES_HPP
#define QSL_TESTS_ORACLES_HPP

// Brute-force reference implementations, deliberately independent of the
// library's interned-signature machinery. Everything here recomputes
// verdicts straight from the definitions.

#include <vector>

#include "qsl/universe.hpp"

namespace qsl::oracle {

/// Indistinguishability from the definitions: atoms by kind and species,
/// qsets by matching their member quotients class-for-class (equal sizes,
/// all cross pairs indistinguishable), recursively.
bool naive_indist(const Universe& u, EntityHandle a, EntityHandle b);

/// Member partition of a qset under naive_indist, classes ordered by first
/// member.
std::vector<std::vector<EntityHandle>> naive_quotient(const Universe& u,
                                                      EntityHandle x);

ExtEq naive_ext_eq(const Universe& u, EntityHandle a, EntityHandle b);

/// Linear-scan weak-pair member set: every entity indistinguishable from x
/// or from y, in handle order.
std::vector<EntityHandle> weak_pair_members(const Universe& u, EntityHandle x,
                                            EntityHandle y);

} // namespace qsl::oracle

#endif
