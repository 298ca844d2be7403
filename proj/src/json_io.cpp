#include "qsl/json_io.hpp"

#include <fstream>

namespace qsl {

using nlohmann::json;

namespace {

void check_format(const json& j, const char* what) {
    if (!j.is_object())
        throw validation_error(std::string(what) + ": expected a JSON object");
    if (!j.contains("format") || !j["format"].is_number_integer() ||
        j["format"].get<int>() != format_version)
        throw validation_error(std::string(what) +
                               ": missing or unsupported \"format\" (expected " +
                               std::to_string(format_version) + ")");
}

const json& field(const json& j, const char* name, const std::string& context) {
    if (!j.contains(name))
        throw validation_error(context + ": missing field \"" + name + "\"");
    return j[name];
}

std::string string_field(const json& j, const char* name,
                         const std::string& context) {
    const json& f = field(j, name, context);
    if (!f.is_string())
        throw validation_error(context + ": field \"" + name + "\" must be a string");
    return f.get<std::string>();
}

} // namespace

Universe universe_from_json(const json& j) {
    check_format(j, "universe");
    UniverseBuilder b;
    const json& atoms = field(j, "atoms", "universe");
    const json& qsets = field(j, "qsets", "universe");
    if (!atoms.is_array() || !qsets.is_array())
        throw validation_error("universe: \"atoms\" and \"qsets\" must be arrays");

    std::size_t index = 0;
    for (const json& a : atoms) {
        std::string context = "atom " + std::to_string(index++);
        std::string id = string_field(a, "id", context);
        std::string kind = string_field(a, "kind", context);
        std::string species = string_field(a, "species", context);
        if (kind == "m")
            b.add_m_atom(std::move(id), std::move(species));
        else if (kind == "M")
            b.add_M_atom(std::move(id), std::move(species));
        else
            throw validation_error(context + ": kind must be \"m\" or \"M\"");
    }

    index = 0;
    for (const json& q : qsets) {
        std::string context = "qset " + std::to_string(index++);
        std::string id = string_field(q, "id", context);
        const json& members = field(q, "members", context);
        if (!members.is_array())
            throw validation_error(context + ": \"members\" must be an array");
        std::vector<EntityHandle> handles;
        for (const json& m : members) {
            if (!m.is_string())
                throw validation_error(context + ": members must be id strings");
            auto h = b.current().find(m.get<std::string>());
            if (!h)
                throw validation_error(context + ": member '" +
                                       m.get<std::string>() +
                                       "' is not declared earlier (forward "
                                       "references are forbidden)");
            handles.push_back(*h);
        }
        std::optional<bool> zfu;
        if (q.contains("zfu")) {
            if (!q["zfu"].is_boolean())
                throw validation_error(context + ": \"zfu\" must be a boolean");
            zfu = q["zfu"].get<bool>();
        }
        b.add_qset(std::move(id), std::move(handles), zfu);
    }
    return b.build();
}

json universe_to_json(const Universe& u) {
    json atoms = json::array();
    json qsets = json::array();
    for (std::size_t i = 0; i < u.size(); ++i) {
        EntityHandle h = u.handle_at(i);
        if (u.is_atom(h)) {
            atoms.push_back({{"id", u.id_of(h)},
                             {"kind", u.is_m_atom(h) ? "m" : "M"},
                             {"species", u.species_of(h)}});
        } else {
            json members = json::array();
            for (EntityHandle m : u.members_of(h))
                members.push_back(u.id_of(m));
            qsets.push_back({{"id", u.id_of(h)},
                             {"members", std::move(members)},
                             {"zfu", u.is_zfu_set(h)}});
        }
    }
    return json{{"format", format_version},
                {"atoms", std::move(atoms)},
                {"qsets", std::move(qsets)}};
}

DOSystem do_system_from_json(const json& j) {
    check_format(j, "particle system");
    DOSystem s;
    const json& n = field(j, "n", "particle system");
    if (!n.is_number_unsigned() || n.get<std::uint64_t>() == 0)
        throw validation_error("particle system: \"n\" must be a positive integer");
    s.n = n.get<std::size_t>();

    const json& lambda = field(j, "lambda", "particle system");
    if (!lambda.is_array())
        throw validation_error("particle system: \"lambda\" must be an array");
    for (const json& v : lambda) {
        if (!v.is_string())
            throw validation_error("lambda values must be rational strings");
        s.lambda.push_back(Rational::parse(v.get<std::string>()));
    }

    const json& pool = field(j, "X", "particle system");
    if (!pool.is_array())
        throw validation_error("particle system: \"X\" must be an array");
    std::size_t index = 0;
    for (const json& x : pool) {
        std::string context = "X entry " + std::to_string(index++);
        if (!x.is_object())
            throw validation_error(context + ": expected an object of components");
        IntrinsicState state;
        for (auto it = x.begin(); it != x.end(); ++it) {
            if (!it.value().is_string())
                throw validation_error(context + ": component \"" + it.key() +
                                       "\" must be a string");
            std::string text = it.value().get<std::string>();
            // "p/q" with an optional unit tag after whitespace.
            std::size_t space = text.find(' ');
            PropertyValue value;
            value.magnitude = Rational::parse(text.substr(0, space));
            if (space != std::string::npos) {
                std::size_t unit_begin = text.find_first_not_of(' ', space);
                if (unit_begin != std::string::npos)
                    value.unit = text.substr(unit_begin);
            }
            state.components.emplace_back(it.key(), std::move(value));
        }
        state.normalize();
        s.pool.push_back(std::move(state));
    }

    const json& particles = field(j, "P", "particle system");
    if (!particles.is_array())
        throw validation_error("particle system: \"P\" must be an array");
    index = 0;
    for (const json& p : particles) {
        std::string context = "P entry " + std::to_string(index++);
        const json& x = field(p, "x", context);
        const json& lam = field(p, "lam", context);
        if (!x.is_number_unsigned() || !lam.is_number_unsigned() ||
            x.get<std::uint64_t>() == 0 || lam.get<std::uint64_t>() == 0)
            throw validation_error(context +
                                   ": \"x\" and \"lam\" are 1-based indices");
        Particle particle;
        particle.x_index = x.get<std::size_t>() - 1;
        particle.lam_index = lam.get<std::size_t>() - 1;
        std::string scale = string_field(p, "scale", context);
        if (scale == "micro") {
            particle.micro = true;
        } else if (scale == "macro") {
            particle.macro_flag = true;
        } else if (scale == "both") {
            particle.micro = particle.macro_flag = true;
        } else if (scale != "none") {
            throw validation_error(context + ": scale must be \"micro\", \"macro\", "
                                             "\"both\" or \"none\"");
        }
        s.particles.push_back(particle);
    }

    validate_do_system(s);
    return s;
}

json do_system_to_json(const DOSystem& s) {
    json lambda = json::array();
    for (const Rational& v : s.lambda)
        lambda.push_back(v.to_string());
    json pool = json::array();
    for (const IntrinsicState& x : s.pool) {
        json entry = json::object();
        for (const auto& [name, value] : x.components) {
            std::string text = value.magnitude.to_string();
            if (!value.unit.empty())
                text += " " + value.unit;
            entry[name] = text;
        }
        pool.push_back(std::move(entry));
    }
    json particles = json::array();
    for (const Particle& p : s.particles) {
        const char* scale = p.micro ? (p.macro_flag ? "both" : "micro")
                                    : (p.macro_flag ? "macro" : "none");
        particles.push_back({{"x", p.x_index + 1},
                             {"lam", p.lam_index + 1},
                             {"scale", scale}});
    }
    return json{{"format", format_version},
                {"n", s.n},
                {"lambda", std::move(lambda)},
                {"X", std::move(pool)},
                {"P", std::move(particles)}};
}

RationalUniverseSpec rational_spec_from_json(const json& j) {
    check_format(j, "rational spec");
    RationalUniverseSpec spec;
    const json& rationals = field(j, "rationals", "rational spec");
    const json& sequences = field(j, "sequences", "rational spec");
    if (!rationals.is_array() || !sequences.is_array())
        throw validation_error(
            "rational spec: \"rationals\" and \"sequences\" must be arrays");
    for (const json& r : rationals) {
        if (!r.is_string())
            throw validation_error("rational entries must be \"p/q\" strings");
        spec.rationals.push_back(Rational::parse(r.get<std::string>()));
    }
    std::size_t index = 0;
    for (const json& s : sequences) {
        std::string context = "sequence " + std::to_string(index++);
        MSequence seq;
        seq.limit.q = Rational::parse(string_field(s, "q", context));
        seq.limit.r = Rational::parse(string_field(s, "r", context));
        const json& d = field(s, "d", context);
        if (!d.is_number_integer())
            throw validation_error(context + ": \"d\" must be an integer");
        seq.limit.d = d.get<std::int64_t>();
        std::string tail = string_field(s, "tail", context);
        auto shape = tail_shape_from_name(tail);
        if (!shape)
            throw validation_error(context + ": unknown tail shape '" + tail + "'");
        seq.tail = *shape;
        spec.sequences.push_back(seq);
    }
    if (j.contains("qsets")) {
        if (!j["qsets"].is_array())
            throw validation_error("rational spec: \"qsets\" must be an array");
        index = 0;
        for (const json& q : j["qsets"]) {
            std::string context = "qset " + std::to_string(index);
            RationalSpecQSet out;
            out.id = q.contains("id") ? string_field(q, "id", context)
                                      : "q" + std::to_string(index);
            const json& members = field(q, "members", context);
            if (!members.is_array())
                throw validation_error(context + ": \"members\" must be an array");
            for (const json& m : members) {
                if (!m.is_string() || m.get<std::string>().size() < 2)
                    throw validation_error(
                        context + ": members are strings like \"r0\", \"s1\", \"q0\"");
                std::string text = m.get<std::string>();
                char kind = text[0];
                std::size_t member_index = 0;
                try {
                    member_index = std::stoull(text.substr(1));
                } catch (const std::exception&) {
                    throw validation_error(context + ": bad member reference '" +
                                           text + "'");
                }
                out.members.emplace_back(kind, member_index);
            }
            if (q.contains("zfu")) {
                if (!q["zfu"].is_boolean())
                    throw validation_error(context + ": \"zfu\" must be a boolean");
                out.zfu = q["zfu"].get<bool>();
            }
            spec.qsets.push_back(std::move(out));
            ++index;
        }
    }
    return spec;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw validation_error(path + ": cannot open file");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw validation_error(path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out)
        throw validation_error(path + ": cannot open file for writing");
    out << j.dump(2) << '\n';
}

namespace {

template <typename F>
auto with_path_context(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const parse_error&) {
        throw;
    } catch (const validation_error& e) {
        throw validation_error(path + ": " + e.what());
    }
}

} // namespace

Universe load_universe(const std::string& path) {
    json j = load_json_file(path);
    return with_path_context(path, [&] { return universe_from_json(j); });
}

void save_universe(const std::string& path, const Universe& u) {
    save_json_file(path, universe_to_json(u));
}

DOSystem load_do_system(const std::string& path) {
    json j = load_json_file(path);
    return with_path_context(path, [&] { return do_system_from_json(j); });
}

void save_do_system(const std::string& path, const DOSystem& s) {
    save_json_file(path, do_system_to_json(s));
}

RationalUniverseSpec load_rational_spec(const std::string& path) {
    json j = load_json_file(path);
    return with_path_context(path, [&] { return rational_spec_from_json(j); });
}

} // namespace qsl
