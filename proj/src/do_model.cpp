#include "qsl/do_model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace qsl {

void IntrinsicState::normalize() {
    std::sort(components.begin(), components.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < components.size(); ++i)
        if (components[i].first == components[i - 1].first)
            throw validation_error("intrinsic state repeats property '" +
                                   components[i].first + "'");
}

std::string IntrinsicState::to_string() const {
    std::string out;
    for (const auto& [name, value] : components) {
        if (!out.empty())
            out += ';';
        out += name;
        out += '=';
        out += value.magnitude.to_string();
        if (!value.unit.empty()) {
            out += ' ';
            out += value.unit;
        }
    }
    return out;
}

void validate_do_system(const DOSystem& s) {
    if (s.n == 0)
        throw validation_error("a particle system needs n >= 1");
    if (s.lambda.size() != s.n)
        throw validation_error("lambda lists " + std::to_string(s.lambda.size()) +
                               " values but n = " + std::to_string(s.n));
    for (std::size_t i = 0; i < s.pool.size(); ++i)
        for (std::size_t j = i + 1; j < s.pool.size(); ++j)
            if (s.pool[i] == s.pool[j])
                throw validation_error("X repeats one intrinsic state at entries " +
                                       std::to_string(i + 1) + " and " +
                                       std::to_string(j + 1));
    // P is a set of pairs; the same (state value, hidden value) twice would
    // denote the same element twice.
    for (std::size_t i = 0; i < s.particles.size(); ++i)
        for (std::size_t j = i + 1; j < s.particles.size(); ++j) {
            const Particle& p = s.particles[i];
            const Particle& q = s.particles[j];
            if (!s.indices_valid(p) || !s.indices_valid(q)) {
                if (p.x_index == q.x_index && p.lam_index == q.lam_index)
                    throw validation_error("P lists the same pair twice at entries " +
                                           std::to_string(i + 1) + " and " +
                                           std::to_string(j + 1));
                continue;
            }
            if (s.state_of(p) == s.state_of(q) && s.hidden_of(p) == s.hidden_of(q))
                throw validation_error("P lists the same pair twice at entries " +
                                       std::to_string(i + 1) + " and " +
                                       std::to_string(j + 1));
        }
}

const char* d_axiom_name(DAxiom a) {
    switch (a) {
    case DAxiom::D1: return "D1";
    case DAxiom::D2: return "D2";
    case DAxiom::D3: return "D3";
    case DAxiom::D4: return "D4";
    case DAxiom::D5: return "D5";
    case DAxiom::D6: return "D6";
    }
    return "?";
}

std::optional<DAxiom> d_axiom_from_name(std::string_view name) {
    for (DAxiom a : {DAxiom::D1, DAxiom::D2, DAxiom::D3, DAxiom::D4, DAxiom::D5,
                     DAxiom::D6})
        if (name == d_axiom_name(a))
            return a;
    return std::nullopt;
}

bool phys_indist(const DOSystem& s, const Particle& p, const Particle& q) {
    return s.state_of(p) == s.state_of(q);
}

bool onto_indist(const DOSystem& s, const Particle& p, const Particle& q) {
    return s.state_of(p) == s.state_of(q) && s.hidden_of(p) == s.hidden_of(q);
}

AxiomVerdict check_d1(const DOSystem& s) {
    AxiomVerdict v;
    v.axiom = DAxiom::D1;
    for (std::size_t i = 0; i < s.lambda.size(); ++i)
        for (std::size_t j = i + 1; j < s.lambda.size(); ++j)
            if (s.lambda[i] == s.lambda[j]) {
                v.holds = false;
                v.witness = AxiomWitness{
                    {},
                    {i, j},
                    "lambda_" + std::to_string(i + 1) + " = lambda_" +
                        std::to_string(j + 1) + " = " + s.lambda[i].to_string()};
                return v;
            }
    // Injectivity makes the image as large as the index set.
    std::set<Rational> image(s.lambda.begin(), s.lambda.end());
    v.note = "#Lambda_N = " + std::to_string(image.size()) + " = #N";
    return v;
}

AxiomVerdict check_d2(const DOSystem& s) {
    AxiomVerdict v;
    v.axiom = DAxiom::D2;
    for (std::size_t i = 0; i < s.particles.size(); ++i) {
        const Particle& p = s.particles[i];
        if (p.x_index >= s.pool.size()) {
            v.holds = false;
            v.witness = AxiomWitness{
                {i},
                {},
                "particle " + std::to_string(i + 1) + " names intrinsic state #" +
                    std::to_string(p.x_index + 1) + " but X has " +
                    std::to_string(s.pool.size()) + " entries"};
            return v;
        }
        if (p.lam_index >= s.lambda.size()) {
            v.holds = false;
            v.witness = AxiomWitness{
                {i},
                {},
                "particle " + std::to_string(i + 1) + " names hidden value #" +
                    std::to_string(p.lam_index + 1) + " but lambda has " +
                    std::to_string(s.lambda.size()) + " entries"};
            return v;
        }
    }
    // Report whether the inclusion is strict (P = X x Lambda_N or smaller).
    std::set<Rational> image(s.lambda.begin(), s.lambda.end());
    std::size_t full = s.pool.size() * image.size();
    v.note = s.particles.size() < full ? "inclusion is strict"
                                       : "P exhausts X x Lambda_N";
    return v;
}

namespace {

// In-range particle positions; axioms D3-D5 quantify over X x Lambda_N, so
// entries rejected by D2 are left to that verdict.
std::vector<std::size_t> valid_positions(const DOSystem& s) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < s.particles.size(); ++i)
        if (s.indices_valid(s.particles[i]))
            out.push_back(i);
    return out;
}

} // namespace

AxiomVerdict check_d3(const DOSystem& s) {
    AxiomVerdict v;
    v.axiom = DAxiom::D3;
    auto idx = valid_positions(s);
    for (std::size_t a : idx)
        for (std::size_t b : idx) {
            if (a >= b)
                continue;
            const Particle& p = s.particles[a];
            const Particle& q = s.particles[b];
            if (s.hidden_of(p) == s.hidden_of(q) && !(s.state_of(p) == s.state_of(q))) {
                v.holds = false;
                v.witness = AxiomWitness{
                    {a, b},
                    {},
                    "particles " + std::to_string(a + 1) + " and " +
                        std::to_string(b + 1) + " share hidden value " +
                        s.hidden_of(p).to_string() + " with distinct states"};
                return v;
            }
        }
    v.note = "a shared hidden value forces identity";
    return v;
}

AxiomVerdict check_d4(const DOSystem& s) {
    AxiomVerdict v;
    v.axiom = DAxiom::D4;
    auto idx = valid_positions(s);
    for (std::size_t a : idx)
        for (std::size_t b : idx) {
            if (a >= b)
                continue;
            const Particle& p = s.particles[a];
            const Particle& q = s.particles[b];
            if (p.macro_flag && q.macro_flag && phys_indist(s, p, q) &&
                !onto_indist(s, p, q)) {
                v.holds = false;
                v.witness = AxiomWitness{
                    {a, b},
                    {},
                    "macro particles " + std::to_string(a + 1) + " and " +
                        std::to_string(b + 1) +
                        " are physically indistinguishable yet distinct"};
                return v;
            }
        }
    return v;
}

AxiomVerdict check_d5(const DOSystem& s) {
    AxiomVerdict v;
    v.axiom = DAxiom::D5;
    auto idx = valid_positions(s);
    for (std::size_t a : idx)
        for (std::size_t b : idx) {
            if (a >= b)
                continue;
            const Particle& p = s.particles[a];
            const Particle& q = s.particles[b];
            if (phys_indist(s, p, q) && !onto_indist(s, p, q) &&
                !(p.micro && q.micro)) {
                v.holds = false;
                v.witness = AxiomWitness{
                    {a, b},
                    {},
                    "particles " + std::to_string(a + 1) + " and " +
                        std::to_string(b + 1) +
                        " are physically indistinguishable and distinct but not "
                        "both microscopic"};
                return v;
            }
        }
    return v;
}

AxiomVerdict check_d6(const DOSystem& s) {
    AxiomVerdict v;
    v.axiom = DAxiom::D6;
    for (std::size_t i = 0; i < s.particles.size(); ++i) {
        const Particle& p = s.particles[i];
        if (p.micro == p.macro_flag) {
            v.holds = false;
            v.witness = AxiomWitness{
                {i},
                {},
                "particle " + std::to_string(i + 1) +
                    (p.micro ? " is both microscopic and macroscopic"
                             : " is neither microscopic nor macroscopic")};
            return v;
        }
    }
    return v;
}

AxiomVerdict check_axiom(const DOSystem& s, DAxiom a) {
    switch (a) {
    case DAxiom::D1: return check_d1(s);
    case DAxiom::D2: return check_d2(s);
    case DAxiom::D3: return check_d3(s);
    case DAxiom::D4: return check_d4(s);
    case DAxiom::D5: return check_d5(s);
    case DAxiom::D6: return check_d6(s);
    }
    throw validation_error("unknown axiom");
}

std::vector<AxiomVerdict> check_all(const DOSystem& s) {
    return {check_d1(s), check_d2(s), check_d3(s),
            check_d4(s), check_d5(s), check_d6(s)};
}

std::vector<std::size_t> pdot_class(const DOSystem& s, std::size_t index) {
    if (index >= s.particles.size())
        throw validation_error("particle position " + std::to_string(index + 1) +
                               " out of range");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < s.particles.size(); ++i)
        if (phys_indist(s, s.particles[index], s.particles[i]))
            out.push_back(i);
    return out;
}

bool set_phys_indist(const DOSystem& s, const std::vector<std::size_t>& a,
                     const std::vector<std::size_t>& b) {
    auto as_set = [&](const std::vector<std::size_t>& v) {
        std::set<std::size_t> out(v.begin(), v.end());
        for (std::size_t i : out)
            if (i >= s.particles.size())
                throw validation_error("particle position " + std::to_string(i + 1) +
                                       " out of range");
        return out;
    };
    auto sa = as_set(a);
    auto sb = as_set(b);
    if (sa.size() != sb.size())
        return false;
    for (std::size_t i : sa)
        for (std::size_t j : sb)
            if (!phys_indist(s, s.particles[i], s.particles[j]))
                return false;
    return true;
}

do_axiom_violation::do_axiom_violation(AxiomVerdict verdict)
    : error(std::string(d_axiom_name(verdict.axiom)) + " violated: " +
            (verdict.witness ? verdict.witness->detail : "no witness")),
      verdict_(std::move(verdict)) {}

Interpretation interpret(const DOSystem& s, const InterpretOptions& opts) {
    validate_do_system(s);
    for (const AxiomVerdict& v : check_all(s))
        if (!v.holds)
            throw do_axiom_violation(v);

    Interpretation out;
    UniverseBuilder b;

    // Urelemente: one atom per particle; micro -> m-atom, macro -> M-atom;
    // the species tag is the intrinsic state, so universe
    // indistinguishability coincides with physical indistinguishability.
    for (std::size_t i = 0; i < s.particles.size(); ++i) {
        const Particle& p = s.particles[i];
        std::string id = "p" + std::to_string(i + 1);
        std::string species = s.state_of(p).to_string();
        out.atom_of_particle.push_back(p.micro ? b.add_m_atom(id, species)
                                               : b.add_M_atom(id, species));
    }

    // One qset per maximal physical-indistinguishability class.
    out.class_of_particle.assign(s.particles.size(), 0);
    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < s.particles.size(); ++i) {
        bool placed = false;
        for (std::size_t c = 0; c < classes.size(); ++c)
            if (phys_indist(s, s.particles[classes[c].front()], s.particles[i])) {
                classes[c].push_back(i);
                out.class_of_particle[i] = c;
                placed = true;
                break;
            }
        if (!placed) {
            out.class_of_particle[i] = classes.size();
            classes.push_back({i});
        }
    }
    for (std::size_t c = 0; c < classes.size(); ++c) {
        std::vector<EntityHandle> members;
        for (std::size_t i : classes[c])
            members.push_back(out.atom_of_particle[i]);
        out.class_qsets.push_back(
            b.add_qset("class" + std::to_string(c + 1), std::move(members)));
    }

    // Weak pairs of class pairs: with only atoms and saturated class qsets
    // declared so far, [class_i, class_j] is exactly {class_i, class_j}.
    for (std::size_t i = 0; i < out.class_qsets.size(); ++i)
        for (std::size_t j = i; j < out.class_qsets.size(); ++j) {
            Universe current = b.build();
            QSetResult wp =
                weak_pair(current, out.class_qsets[i], out.class_qsets[j]);
            if (!current.find_qset_with_members(
                    wp.universe.members_of(wp.qset))) {
                b.add_qset("wp" + std::to_string(i + 1) + "_" + std::to_string(j + 1),
                           wp.universe.members_of(wp.qset));
            }
        }

    // Power qset of each class, bounded.
    for (std::size_t c = 0; c < out.class_qsets.size(); ++c) {
        if (classes[c].size() > opts.power_materialize_bound)
            continue;
        Universe current = b.build();
        QSetResult pw = power_qset(current, out.class_qsets[c],
                                   opts.power_materialize_bound);
        // Replay the extension into the builder (new qsets keep their order).
        for (std::size_t idx = current.size(); idx < pw.universe.size(); ++idx) {
            EntityHandle h = pw.universe.handle_at(idx);
            b.add_qset(pw.universe.id_of(h), pw.universe.members_of(h));
        }
    }

    out.universe = b.build();
    return out;
}

DOSystem gen_do(const GenConfig& config) {
    if (config.n == 0)
        throw validation_error("gen-do needs n >= 1");
    if (config.species_count == 0)
        throw validation_error("gen-do needs at least one species");
    if (config.micro_fraction < 0.0 || config.micro_fraction > 1.0)
        throw validation_error("micro fraction must lie in [0, 1]");

    std::size_t micro_count = static_cast<std::size_t>(
        std::llround(config.micro_fraction * static_cast<double>(config.n)));
    micro_count = std::min(micro_count, config.n);
    std::size_t macro_count = config.n - micro_count;

    // Macro particles take exclusive intrinsic states (D4); micros share the
    // remaining pool.
    if (macro_count > config.species_count)
        throw validation_error("more macro particles than available distinct "
                               "intrinsic states");
    std::size_t micro_pool = config.species_count - macro_count;
    if (micro_count > 0 && micro_pool == 0)
        throw validation_error("no intrinsic state left for microscopic particles");

    std::mt19937_64 rng(config.seed);
    auto next_below = [&rng](std::uint64_t bound) {
        // Rejection sampling keeps the stream portable across libraries.
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v = rng();
        while (v >= limit)
            v = rng();
        return v % bound;
    };

    DOSystem s;
    s.n = config.n;

    std::set<Rational> used;
    while (s.lambda.size() < config.n) {
        Rational value(static_cast<std::int64_t>(next_below(1000000)),
                       static_cast<std::int64_t>(1 + next_below(16)));
        if (used.insert(value).second)
            s.lambda.push_back(value);
    }

    for (std::size_t i = 0; i < config.species_count; ++i) {
        IntrinsicState state;
        state.components = {
            {"charge", {Rational(static_cast<std::int64_t>(i % 3) - 1), "e"}},
            {"mass", {Rational(static_cast<std::int64_t>(i + 1)), "MeV"}},
            {"spin", {i % 2 == 0 ? Rational(1, 2) : Rational(1), "hbar"}},
        };
        state.normalize();
        s.pool.push_back(std::move(state));
    }

    for (std::size_t i = 0; i < micro_count; ++i) {
        Particle p;
        p.x_index = micro_pool == 0 ? 0 : next_below(micro_pool);
        p.lam_index = i;
        p.micro = true;
        s.particles.push_back(p);
    }
    for (std::size_t i = 0; i < macro_count; ++i) {
        Particle p;
        p.x_index = micro_pool + i;
        p.lam_index = micro_count + i;
        p.macro_flag = true;
        s.particles.push_back(p);
    }

    validate_do_system(s);
    return s;
}

} // namespace qsl
