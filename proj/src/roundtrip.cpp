#include "ecc/roundtrip.hpp"

#include "ecc/errors.hpp"
#include "ecc/sampling.hpp"

namespace ecc {

RoundtripReport roundtrip_check(const ConePresentation& p, const RoundtripOptions& options) {
    if (options.sample_size == 0) throw PreconditionError("roundtrip: empty sample");
    Rng sampler(options.sample_seed);
    std::vector<LscFn> sample;
    for (std::size_t i = 0; i < options.sample_size; ++i) sample.push_back(random_affine(p, sampler));
    Rng rng(options.seed);
    const CuSystem sys = build_inductive_system(p, sample, options.rounds, options.probe_cap);
    const System dual = dualize(sys.system);

    RoundtripReport report;
    report.dims = sys.system.dims;
    const std::size_t stages = sys.psi.size();
    for (std::size_t t = 0; t < options.pairings; ++t) {
        const ConeElement y = random_element(p, rng);
        std::map<std::string, ExtVector> thread;
        std::vector<ExtVector> tables(stages);
        for (std::size_t k = 0; k < stages; ++k) {
            for (const auto& f : sys.psi[k].gens) tables[k].push_back(eval(p, f, y));
            thread[sys.system.indices[k]] = tables[k];
        }
        ++report.threads_checked;
        if (!thread_eval(dual, thread))
            report.mismatches.push_back("pairing " + std::to_string(t) + ": tables of " + to_string(p, y) +
                                        " do not form a thread of the dual system");

        const std::size_t k = t % stages;
        RatVector v(sys.psi[k].gens.size());
        for (auto& c : v) c = rng.uniform(0, 4);
        const ExtScalar through = functional_eval(tables[k], to_ext(v));
        const ExtScalar direct = eval(p, morphism_apply(p, sys.psi[k], v), y);
        ++report.compared;
        if (through != direct)
            report.mismatches.push_back("pairing " + std::to_string(t) + " at stage " + std::to_string(k) + ": " +
                                        through.to_string() + " through the system, " + direct.to_string() +
                                        " directly");
    }
    return report;
}

}  // namespace ecc
