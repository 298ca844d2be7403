#ifndef QSL_AXIOM_CORPUS_HPP
#define QSL_AXIOM_CORPUS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsl/universe.hpp"

namespace qsl {

enum class CorpusAxiom {
    weak_pair,
    separation,
    quasi_cardinality,
    subqset_cardinals,
    power_qset,
    weak_extensionality,
};

const char* corpus_axiom_name(CorpusAxiom a);
std::optional<CorpusAxiom> corpus_axiom_from_name(std::string_view name);
std::vector<CorpusAxiom> all_corpus_axioms();

struct CorpusOptions {
    // Largest qc(x) for which the power-qset identity is exercised; larger
    // qsets are reported as skipped rather than exploded.
    std::size_t power_check_bound = 12;
    // Hard guard handed to the power_qset operation itself.
    std::size_t power_op_bound = 16;
};

/// Outcome of one constructive axiom check. Existential axioms are
/// discharged by building the witness with the universe operations and
/// evaluating the defining formula on the witness-extended universe, never
/// by quantifying over all conceivable sub-collections.
struct CorpusVerdict {
    CorpusAxiom axiom;
    bool holds = true;
    std::size_t instances_checked = 0;
    std::size_t instances_skipped = 0;
    std::vector<std::string> witnesses;    // deterministic, handle order
    std::optional<std::string> violation;  // first violating instance
};

CorpusVerdict check_axiom(const Universe& u, CorpusAxiom axiom,
                          const CorpusOptions& opts = {});

std::vector<CorpusVerdict> check_all_axioms(const Universe& u,
                                            const CorpusOptions& opts = {});

} // namespace qsl

#endif
