#include "qsl/universe.hpp"

#include <algorithm>
#include <set>

namespace qsl {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond)
        throw validation_error(msg);
}

} // namespace

// --- Universe -------------------------------------------------------------

const Universe::EntityRec& Universe::rec(EntityHandle h) const {
    if (h.index >= entities_.size())
        throw validation_error("unknown entity handle #" + std::to_string(h.index));
    return entities_[h.index];
}

std::optional<EntityHandle> Universe::find(std::string_view id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end())
        return std::nullopt;
    return it->second;
}

const std::string& Universe::species_of(EntityHandle h) const {
    const EntityRec& r = rec(h);
    require(r.kind != EntityKind::qset,
            "entity '" + r.id + "' is a qset and has no species");
    return r.species;
}

const std::vector<EntityHandle>& Universe::members_of(EntityHandle h) const {
    const EntityRec& r = rec(h);
    require(r.kind == EntityKind::qset, "entity '" + r.id + "' is not a qset");
    return r.members;
}

bool Universe::is_zfu_set(EntityHandle h) const {
    const EntityRec& r = rec(h);
    require(r.kind == EntityKind::qset, "entity '" + r.id + "' is not a qset");
    return r.zfu;
}

std::vector<EntityHandle> Universe::all_entities() const {
    std::vector<EntityHandle> out;
    out.reserve(entities_.size());
    for (std::size_t i = 0; i < entities_.size(); ++i)
        out.push_back(handle_at(i));
    return out;
}

std::vector<EntityHandle> Universe::all_qsets() const {
    std::vector<EntityHandle> out;
    for (std::size_t i = 0; i < entities_.size(); ++i)
        if (entities_[i].kind == EntityKind::qset)
            out.push_back(handle_at(i));
    return out;
}

std::vector<EntityHandle> Universe::all_atoms() const {
    std::vector<EntityHandle> out;
    for (std::size_t i = 0; i < entities_.size(); ++i)
        if (entities_[i].kind != EntityKind::qset)
            out.push_back(handle_at(i));
    return out;
}

std::optional<EntityHandle> Universe::find_qset_with_members(
    std::vector<EntityHandle> members) const {
    std::sort(members.begin(), members.end());
    for (std::size_t i = 0; i < entities_.size(); ++i)
        if (entities_[i].kind == EntityKind::qset && entities_[i].members == members)
            return handle_at(i);
    return std::nullopt;
}

// --- UniverseBuilder --------------------------------------------------------

void UniverseBuilder::check_fresh_id(const std::string& id) const {
    require(!id.empty(), "entity id must be nonempty");
    require(!u_.by_id_.contains(id), "duplicate entity id '" + id + "'");
}

std::uint32_t UniverseBuilder::intern_atom_sig(EntityKind kind,
                                               const std::string& species) {
    auto key = std::make_pair(static_cast<int>(kind), species);
    auto [it, inserted] = u_.atom_sigs_.try_emplace(key, u_.next_sig_);
    if (inserted)
        ++u_.next_sig_;
    return it->second;
}

std::uint32_t UniverseBuilder::intern_qset_sig(
    const std::vector<EntityHandle>& members) {
    // Quotient profile: multiplicity of each member signature. Members of
    // one indistinguishability class share a signature, so (sig, count)
    // pairs are exactly the (class, class size) pairs.
    std::map<std::uint32_t, std::uint64_t> counts;
    for (EntityHandle m : members)
        ++counts[u_.entities_[m.index].sig];
    std::vector<std::pair<std::uint32_t, std::uint64_t>> profile(counts.begin(),
                                                                 counts.end());
    auto [it, inserted] = u_.qset_sigs_.try_emplace(profile, u_.next_sig_);
    if (inserted)
        ++u_.next_sig_;
    return it->second;
}

EntityHandle UniverseBuilder::add_atom(std::string id, std::string species,
                                       EntityKind kind) {
    check_fresh_id(id);
    require(!species.empty(), "atom '" + id + "' needs a species tag");
    // A species tag may serve m-atoms or M-atoms, never both.
    EntityKind other =
        kind == EntityKind::m_atom ? EntityKind::M_atom : EntityKind::m_atom;
    require(!u_.atom_sigs_.contains({static_cast<int>(other), species}),
            "species '" + species + "' already used by the other atom kind");

    Universe::EntityRec r;
    r.id = std::move(id);
    r.kind = kind;
    r.species = std::move(species);
    r.sig = intern_atom_sig(kind, r.species);
    EntityHandle h{static_cast<std::uint32_t>(u_.entities_.size())};
    u_.by_id_.emplace(r.id, h);
    u_.entities_.push_back(std::move(r));
    return h;
}

EntityHandle UniverseBuilder::add_m_atom(std::string id, std::string species) {
    return add_atom(std::move(id), std::move(species), EntityKind::m_atom);
}

EntityHandle UniverseBuilder::add_M_atom(std::string id, std::string species) {
    return add_atom(std::move(id), std::move(species), EntityKind::M_atom);
}

EntityHandle UniverseBuilder::add_qset(std::string id,
                                       std::vector<EntityHandle> members,
                                       std::optional<bool> declared_zfu) {
    check_fresh_id(id);
    std::sort(members.begin(), members.end());
    for (std::size_t i = 0; i < members.size(); ++i) {
        require(members[i].index < u_.entities_.size(),
                "qset '" + id + "' references an undeclared entity");
        require(i == 0 || members[i] != members[i - 1],
                "qset '" + id + "' has duplicate member '" +
                    u_.entities_[members[i].index].id + "'");
    }

    bool zfu = true;
    for (EntityHandle m : members) {
        const auto& mr = u_.entities_[m.index];
        if (mr.kind == EntityKind::m_atom ||
            (mr.kind == EntityKind::qset && !mr.zfu))
            zfu = false;
    }
    if (declared_zfu && *declared_zfu != zfu)
        throw validation_error(
            "qset '" + id + "' declares zfu=" + (*declared_zfu ? "true" : "false") +
            " but its transitive closure says otherwise");

    Universe::EntityRec r;
    r.id = std::move(id);
    r.kind = EntityKind::qset;
    r.members = std::move(members);
    r.zfu = zfu;
    r.sig = intern_qset_sig(r.members);
    EntityHandle h{static_cast<std::uint32_t>(u_.entities_.size())};
    u_.by_id_.emplace(r.id, h);
    u_.entities_.push_back(std::move(r));
    return h;
}

EntityHandle UniverseBuilder::add_or_reuse_qset(std::vector<EntityHandle> members) {
    std::sort(members.begin(), members.end());
    if (auto existing = u_.find_qset_with_members(members))
        return *existing;
    std::string id = "#q" + std::to_string(u_.entities_.size());
    while (u_.by_id_.contains(id))
        id += "'";
    return add_qset(std::move(id), std::move(members));
}

// --- operations -------------------------------------------------------------

bool indist(const Universe& u, EntityHandle a, EntityHandle b) {
    return u.sig_of(a) == u.sig_of(b);
}

ExtEq ext_eq(const Universe& u, EntityHandle a, EntityHandle b) {
    if (u.is_m_atom(a) || u.is_m_atom(b))
        return ExtEq::not_applicable;
    if (u.is_qset(a) && u.is_qset(b))
        return u.members_of(a) == u.members_of(b) ? ExtEq::equal : ExtEq::distinct;
    if (u.is_M_atom(a) && u.is_M_atom(b))
        return indist(u, a, b) ? ExtEq::equal : ExtEq::distinct;
    return ExtEq::distinct;
}

QuasiCardinal qc(const Universe& u, EntityHandle x) {
    return QuasiCardinal{u.members_of(x).size()};
}

QSetResult weak_pair(const Universe& u, EntityHandle x, EntityHandle y) {
    std::uint32_t sx = u.sig_of(x);
    std::uint32_t sy = u.sig_of(y);
    std::vector<EntityHandle> members;
    for (std::size_t i = 0; i < u.size(); ++i) {
        EntityHandle t = u.handle_at(i);
        if (u.sig_of(t) == sx || u.sig_of(t) == sy)
            members.push_back(t);
    }
    UniverseBuilder b(u);
    EntityHandle z = b.add_or_reuse_qset(std::move(members));
    return {b.build(), z};
}

QSetResult power_qset(const Universe& u, EntityHandle x, std::size_t bound) {
    const auto& members = u.members_of(x);
    if (members.size() > bound)
        throw resource_error("power qset of '" + u.id_of(x) + "' exceeds bound " +
                             std::to_string(bound) + " (qc = " +
                             std::to_string(members.size()) + ")");
    UniverseBuilder b(u);
    std::vector<EntityHandle> subsets;
    subsets.reserve(std::size_t{1} << members.size());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << members.size());
         ++mask) {
        std::vector<EntityHandle> sub;
        for (std::size_t i = 0; i < members.size(); ++i)
            if (mask & (std::uint64_t{1} << i))
                sub.push_back(members[i]);
        subsets.push_back(b.add_or_reuse_qset(std::move(sub)));
    }
    // Subset member collections are pairwise distinct, so their handles are
    // distinct and qc of the power qset is exactly 2^qc(x).
    EntityHandle p = b.add_or_reuse_qset(std::move(subsets));
    return {b.build(), p};
}

QSetResult sub_qset_of_card(const Universe& u, EntityHandle x, std::uint64_t beta) {
    const auto& members = u.members_of(x);
    if (beta > members.size())
        throw validation_error("requested sub-qset cardinal " + std::to_string(beta) +
                               " exceeds qc(" + u.id_of(x) + ") = " +
                               std::to_string(members.size()));
    std::vector<EntityHandle> sub(members.begin(),
                                  members.begin() + static_cast<std::ptrdiff_t>(beta));
    UniverseBuilder b(u);
    EntityHandle y = b.add_or_reuse_qset(std::move(sub));
    return {b.build(), y};
}

QSetResult quotient(const Universe& u, EntityHandle x) {
    const auto& members = u.members_of(x);
    for (EntityHandle m : members)
        if (u.is_qset(m))
            throw validation_error("quotient of '" + u.id_of(x) +
                                   "' unsupported: member '" + u.id_of(m) +
                                   "' is a qset (atom-level qsets only)");
    // Group members by signature, classes ordered by first occurrence.
    std::vector<std::uint32_t> seen;
    std::vector<std::vector<EntityHandle>> classes;
    for (EntityHandle m : members) {
        std::uint32_t s = u.sig_of(m);
        auto it = std::find(seen.begin(), seen.end(), s);
        if (it == seen.end()) {
            seen.push_back(s);
            classes.push_back({m});
        } else {
            classes[static_cast<std::size_t>(it - seen.begin())].push_back(m);
        }
    }
    UniverseBuilder b(u);
    std::vector<EntityHandle> class_handles;
    for (auto& cls : classes)
        class_handles.push_back(b.add_or_reuse_qset(std::move(cls)));
    EntityHandle q = b.add_or_reuse_qset(std::move(class_handles));
    return {b.build(), q};
}

bool sim(const Universe& u, EntityHandle x, EntityHandle y) {
    for (EntityHandle a : u.members_of(x))
        for (EntityHandle b : u.members_of(y))
            if (!indist(u, a, b))
                return false;
    return true;
}

bool qsim(const Universe& u, EntityHandle x, EntityHandle y) {
    return qc(u, x) == qc(u, y) && sim(u, x, y);
}

QSetResult ordered_qpair(const Universe& u, EntityHandle x, EntityHandle y) {
    QSetResult first = weak_pair(u, x, x);
    QSetResult second = weak_pair(first.universe, x, y);
    return weak_pair(second.universe, first.qset, second.qset);
}

bool check_quasi_function(
    const Universe& u,
    const std::vector<std::pair<EntityHandle, EntityHandle>>& pairs) {
    for (const auto& [a, fa] : pairs)
        for (const auto& [b, fb] : pairs)
            if (indist(u, a, b) && !indist(u, fa, fb))
                return false;
    return true;
}

Universe witness_closure(const Universe& u, const ClosureOptions& opts,
                         ClosureStats* stats) {
    if (opts.max_card > 16)
        throw resource_error("closure max_card beyond the hard power bound 16");
    UniverseBuilder b(u);
    ClosureStats local;
    if (opts.weak_pairs) {
        // The member set of a weak pair depends only on the two signatures.
        std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
        auto entities = u.all_entities();
        for (std::size_t i = 0; i < entities.size(); ++i)
            for (std::size_t j = i; j < entities.size(); ++j) {
                std::uint32_t si = u.sig_of(entities[i]);
                std::uint32_t sj = u.sig_of(entities[j]);
                if (!seen.insert({std::min(si, sj), std::max(si, sj)}).second)
                    continue;
                std::vector<EntityHandle> members;
                for (EntityHandle t : entities)
                    if (u.sig_of(t) == si || u.sig_of(t) == sj)
                        members.push_back(t);
                std::size_t before = b.current().size();
                b.add_or_reuse_qset(std::move(members));
                if (b.current().size() > before)
                    ++local.weak_pairs_added;
            }
    }
    if (opts.powers) {
        for (EntityHandle x : u.all_qsets()) {
            const auto& members = u.members_of(x);
            if (members.size() > opts.max_card)
                continue;
            std::vector<EntityHandle> subsets;
            for (std::uint64_t mask = 0;
                 mask < (std::uint64_t{1} << members.size()); ++mask) {
                std::vector<EntityHandle> sub;
                for (std::size_t i = 0; i < members.size(); ++i)
                    if (mask & (std::uint64_t{1} << i))
                        sub.push_back(members[i]);
                std::size_t before = b.current().size();
                subsets.push_back(b.add_or_reuse_qset(std::move(sub)));
                if (b.current().size() > before)
                    ++local.subsets_added;
            }
            b.add_or_reuse_qset(std::move(subsets));
        }
    }
    if (stats)
        *stats = local;
    return b.build();
}

} // namespace qsl
