#ifndef QSL_UNIVERSE_HPP
#define QSL_UNIVERSE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsl/errors.hpp"

namespace qsl {

/// Opaque universe-local identifier of an entity. The handle is the
/// modeling device for the hidden label: exposing handle equality is what
/// realizes classical identity, so nothing that computes an
/// indistinguishability-level verdict may branch on the handle of an
/// m-atom.
struct EntityHandle {
    std::uint32_t index = 0;
    friend auto operator<=>(const EntityHandle&, const EntityHandle&) = default;
};

enum class EntityKind { m_atom, M_atom, qset };

/// Tri-state verdict of extensional equality. The relation is simply not
/// a formula when either side denotes an m-atom, so that case gets its
/// own verdict instead of `distinct`.
enum class ExtEq { equal, distinct, not_applicable };

struct QuasiCardinal {
    std::uint64_t value = 0;
    friend auto operator<=>(const QuasiCardinal&, const QuasiCardinal&) = default;
};

/// Immutable finite structure of m-atoms, M-atoms and qsets. Entities are
/// stored in declaration order; qset members always refer to
/// earlier-declared entities, which makes membership well-founded by
/// construction. Every entity carries an interned indistinguishability
/// signature: two entities are indistinguishable exactly when their
/// signatures coincide (see indist() for the defining relation).
class Universe {
public:
    std::size_t size() const { return entities_.size(); }

    bool contains(EntityHandle h) const { return h.index < entities_.size(); }
    EntityHandle handle_at(std::size_t i) const {
        return EntityHandle{static_cast<std::uint32_t>(i)};
    }

    EntityKind kind_of(EntityHandle h) const { return rec(h).kind; }
    bool is_qset(EntityHandle h) const { return kind_of(h) == EntityKind::qset; }
    bool is_atom(EntityHandle h) const { return kind_of(h) != EntityKind::qset; }
    bool is_m_atom(EntityHandle h) const { return kind_of(h) == EntityKind::m_atom; }
    bool is_M_atom(EntityHandle h) const { return kind_of(h) == EntityKind::M_atom; }

    const std::string& id_of(EntityHandle h) const { return rec(h).id; }
    std::optional<EntityHandle> find(std::string_view id) const;

    /// Species tag of an atom (throws on qsets).
    const std::string& species_of(EntityHandle h) const;

    /// Members of a qset, sorted by handle, duplicate-free (throws on atoms).
    const std::vector<EntityHandle>& members_of(EntityHandle h) const;

    /// True when the transitive closure of the qset contains no m-atom.
    bool is_zfu_set(EntityHandle h) const;

    /// Interned indistinguishability class of the entity.
    std::uint32_t sig_of(EntityHandle h) const { return rec(h).sig; }

    std::vector<EntityHandle> all_entities() const;
    std::vector<EntityHandle> all_qsets() const;
    std::vector<EntityHandle> all_atoms() const;

    /// First-declared qset with exactly this member collection, if any.
    std::optional<EntityHandle> find_qset_with_members(
        std::vector<EntityHandle> members) const;

private:
    friend class UniverseBuilder;

    struct EntityRec {
        std::string id;
        EntityKind kind = EntityKind::qset;
        std::string species;                // atoms only
        std::vector<EntityHandle> members;  // qsets only, sorted, unique
        bool zfu = false;                   // qsets only, derived by traversal
        std::uint32_t sig = 0;
    };

    const EntityRec& rec(EntityHandle h) const;

    std::vector<EntityRec> entities_;
    std::map<std::string, EntityHandle, std::less<>> by_id_;
    // Signature intern tables. Atom key: (kind, species). QSet key: the
    // quotient profile, i.e. the set of (member signature, class size)
    // pairs of the member partition.
    std::map<std::pair<int, std::string>, std::uint32_t> atom_sigs_;
    std::map<std::vector<std::pair<std::uint32_t, std::uint64_t>>, std::uint32_t>
        qset_sigs_;
    std::uint32_t next_sig_ = 0;
};

/// Builds a universe entity by entity. Validation enforced here:
/// unique ids, qset members declared earlier, no duplicate members,
/// species tags never shared between m- and M-atoms, and any declared
/// ZFU flag must match the traversal-derived one.
class UniverseBuilder {
public:
    UniverseBuilder() = default;
    explicit UniverseBuilder(const Universe& base) : u_(base) {}

    EntityHandle add_m_atom(std::string id, std::string species);
    EntityHandle add_M_atom(std::string id, std::string species);
    EntityHandle add_qset(std::string id, std::vector<EntityHandle> members,
                          std::optional<bool> declared_zfu = std::nullopt);

    /// Adds a qset with an auto-generated id, reusing the first existing
    /// qset with an identical member collection instead of growing.
    EntityHandle add_or_reuse_qset(std::vector<EntityHandle> members);

    const Universe& current() const { return u_; }
    Universe build() { return u_; }

private:
    EntityHandle add_atom(std::string id, std::string species, EntityKind kind);
    std::uint32_t intern_atom_sig(EntityKind kind, const std::string& species);
    std::uint32_t intern_qset_sig(const std::vector<EntityHandle>& members);
    void check_fresh_id(const std::string& id) const;

    Universe u_;
};

// --- quasi-set operations ------------------------------------------------

/// Result of an operation that extends a universe with new qsets.
struct QSetResult {
    Universe universe;
    EntityHandle qset;
};

/// The indistinguishability relation over all entities. Atoms: same kind
/// and same species. Atom vs qset: false. QSets: the weak-extensionality
/// antecedent, i.e. the member partitions into indistinguishability
/// classes match class-for-class with equal sizes.
bool indist(const Universe& u, EntityHandle a, EntityHandle b);

/// Extensional equality: qsets with the same member collection, or
/// indistinguishable M-atoms. Not applicable when either side is an
/// m-atom.
ExtEq ext_eq(const Universe& u, EntityHandle a, EntityHandle b);

/// Quasi-cardinal of a qset: its member count.
QuasiCardinal qc(const Universe& u, EntityHandle x);

/// The qset of every entity indistinguishable from x or from y.
QSetResult weak_pair(const Universe& u, EntityHandle x, EntityHandle y);

/// All sub-collections of x's members, each materialized as a qset, plus
/// the qset collecting them. Guarded by `bound` on qc(x).
QSetResult power_qset(const Universe& u, EntityHandle x, std::size_t bound = 16);

/// Deterministic witness sub-qset with exactly beta members (first beta
/// members in handle order).
QSetResult sub_qset_of_card(const Universe& u, EntityHandle x, std::uint64_t beta);

/// Partition of an atom-only qset into indistinguishability classes; the
/// returned qset's members are the class qsets.
QSetResult quotient(const Universe& u, EntityHandle x);

/// Every member of x is indistinguishable from every member of y.
bool sim(const Universe& u, EntityHandle x, EntityHandle y);

/// sim and equal quasi-cardinals.
bool qsim(const Universe& u, EntityHandle x, EntityHandle y);

/// Kuratowski-style pair built from weak pairs: [[x],[x,y]]. When x and y
/// are indistinguishable this collapses to [[x]].
QSetResult ordered_qpair(const Universe& u, EntityHandle x, EntityHandle y);

/// Quasi-function condition over a finite relation: indistinguishable
/// inputs map to indistinguishable outputs.
bool check_quasi_function(
    const Universe& u,
    const std::vector<std::pair<EntityHandle, EntityHandle>>& pairs);

/// One round of witness closure over the input universe's entities: the
/// weak pair of every entity pair and/or the power-qset family of every
/// qset with qc up to max_card. New qsets never trigger further rounds.
struct ClosureOptions {
    bool weak_pairs = true;
    bool powers = false;
    std::size_t max_card = 12;
};
struct ClosureStats {
    std::size_t weak_pairs_added = 0;
    std::size_t subsets_added = 0;
};
Universe witness_closure(const Universe& u, const ClosureOptions& opts,
                         ClosureStats* stats = nullptr);

} // namespace qsl

#endif
