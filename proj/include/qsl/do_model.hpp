#ifndef QSL_DO_MODEL_HPP
#define QSL_DO_MODEL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsl/rational.hpp"
#include "qsl/universe.hpp"

namespace qsl {

/// One named intrinsic property: an exact magnitude times a unit tag.
struct PropertyValue {
    Rational magnitude;
    std::string unit;
    friend bool operator==(const PropertyValue&, const PropertyValue&) = default;
};

/// State-independent measurement values (rest mass, charge, spin, ...).
/// Components are kept sorted by property name; equal tuples mean
/// physically indistinguishable carriers.
struct IntrinsicState {
    std::vector<std::pair<std::string, PropertyValue>> components;

    void normalize();
    std::string to_string() const;
    friend bool operator==(const IntrinsicState&, const IntrinsicState&) = default;
};

/// Particle as an ordered pair (intrinsic state, hidden value), stored as
/// indices into the system's pools. The micro/macro predicates are kept as
/// independent flags so that degenerate inputs (neither or both) remain
/// representable for the D6 checker.
struct Particle {
    std::size_t x_index = 0;    // 0-based into DOSystem::pool
    std::size_t lam_index = 0;  // 0-based into DOSystem::lambda
    bool micro = false;
    bool macro_flag = false;
};

struct DOSystem {
    std::size_t n = 0;                 // size of the hidden-value index set
    std::vector<Rational> lambda;      // hidden values, one per index
    std::vector<IntrinsicState> pool;  // the set X
    std::vector<Particle> particles;   // the set P

    const IntrinsicState& state_of(const Particle& p) const { return pool[p.x_index]; }
    const Rational& hidden_of(const Particle& p) const { return lambda[p.lam_index]; }
    bool indices_valid(const Particle& p) const {
        return p.x_index < pool.size() && p.lam_index < lambda.size();
    }
};

/// Structural validation of the container itself (not the D axioms):
/// n >= 1, lambda sized n, X free of duplicate states, P free of duplicate
/// (state value, hidden value) pairs. Throws validation_error.
void validate_do_system(const DOSystem& s);

enum class DAxiom { D1, D2, D3, D4, D5, D6 };
const char* d_axiom_name(DAxiom a);
std::optional<DAxiom> d_axiom_from_name(std::string_view name);

struct AxiomWitness {
    std::vector<std::size_t> particle_indices; // 0-based positions in P
    std::vector<std::size_t> lambda_indices;   // 0-based positions in lambda
    std::string detail;
};

struct AxiomVerdict {
    DAxiom axiom;
    bool holds = true;
    std::optional<AxiomWitness> witness;
    std::string note; // e.g. whether the D2 inclusion is strict
};

AxiomVerdict check_d1(const DOSystem& s);
AxiomVerdict check_d2(const DOSystem& s);
AxiomVerdict check_d3(const DOSystem& s);
AxiomVerdict check_d4(const DOSystem& s);
AxiomVerdict check_d5(const DOSystem& s);
AxiomVerdict check_d6(const DOSystem& s);
AxiomVerdict check_axiom(const DOSystem& s, DAxiom a);
std::vector<AxiomVerdict> check_all(const DOSystem& s);

/// Physical indistinguishability: equal intrinsic states.
bool phys_indist(const DOSystem& s, const Particle& p, const Particle& q);

/// Ontological indistinguishability: equality of the full pairs.
bool onto_indist(const DOSystem& s, const Particle& p, const Particle& q);

/// Maximal class of particles physically indistinguishable from the one at
/// `index` (0-based into P), as sorted particle positions.
std::vector<std::size_t> pdot_class(const DOSystem& s, std::size_t index);

/// Set-level physical indistinguishability: all cross pairs indistinguishable
/// and equal cardinalities.
bool set_phys_indist(const DOSystem& s, const std::vector<std::size_t>& a,
                     const std::vector<std::size_t>& b);

/// Raised when interpret() is asked to translate a system that fails a
/// D axiom; carries the refusing verdict.
class do_axiom_violation : public error {
public:
    explicit do_axiom_violation(AxiomVerdict verdict);
    const AxiomVerdict& verdict() const { return verdict_; }

private:
    AxiomVerdict verdict_;
};

/// Result of interpreting a valid system as a quasi-set universe: one atom
/// per particle (micro -> m-atom, macro -> M-atom, species = intrinsic
/// state), one qset per physical-indistinguishability class, the weak pairs
/// of class pairs, and the power qset of each class up to the bound.
struct Interpretation {
    Universe universe;
    std::vector<EntityHandle> atom_of_particle;   // by particle position
    std::vector<EntityHandle> class_qsets;        // one per distinct class
    std::vector<std::size_t> class_of_particle;   // index into class_qsets
};

struct InterpretOptions {
    std::size_t power_materialize_bound = 12;
};

Interpretation interpret(const DOSystem& s, const InterpretOptions& opts = {});

// --- generator -----------------------------------------------------------------

struct GenConfig {
    std::size_t n = 1;
    std::size_t species_count = 1;
    double micro_fraction = 1.0;
    std::uint64_t seed = 0;
};

/// Deterministic random system satisfying D1-D6 by construction: distinct
/// rational hidden values; macro particles get intrinsic states not shared
/// with anything else.
DOSystem gen_do(const GenConfig& config);

} // namespace qsl

#endif
